#pragma once

// Scalar expressions over named chart coordinates: parsing, rendering,
// evaluation, exact symbolic partial derivatives and constant folding.
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?
//   atom   := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
//
// Expr values are immutable and share subtrees, so copying is cheap and a
// tree may be evaluated from several threads at once.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

namespace acm {

using Scope = std::vector<std::string>;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error("parse error at byte " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Raised when a tree cannot be evaluated at a point; carries the rendering
/// of the offending subtree.
class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& what, std::string subtree)
      : std::runtime_error(what + " in '" + subtree + "'"), subtree_(std::move(subtree)) {}
  const std::string& subtree() const noexcept { return subtree_; }

 private:
  std::string subtree_;
};

enum class Op { Constant, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Func { Exp, Log, Sin, Cos, Tan, Sinh, Cosh, Tanh, Sqrt };

namespace detail {
struct Node;
}

class Expr {
 public:
  Expr();  // the constant 0

  static Expr constant(double v);
  static Expr variable(std::size_t index, std::string name);
  static Expr unary(Op op, Expr arg);
  static Expr binary(Op op, Expr lhs, Expr rhs);
  static Expr call(Func f, Expr arg);

  Op op() const;
  double value() const;
  std::size_t index() const;
  const std::string& name() const;
  Func func() const;
  Expr lhs() const;
  Expr rhs() const;
  Expr arg() const { return lhs(); }

  bool is_constant() const { return op() == Op::Constant; }
  bool is_constant(double v) const { return is_constant() && value() == v; }

 private:
  explicit Expr(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::Node> node_;
};

namespace detail {
struct Node {
  Op op = Op::Constant;
  double value = 0.0;
  std::size_t index = 0;
  std::string name;
  Func func = Func::Exp;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

inline const std::shared_ptr<const Node>& zero_node() {
  static const std::shared_ptr<const Node> z = std::make_shared<const Node>();
  return z;
}
}  // namespace detail

inline Expr::Expr() : node_(detail::zero_node()) {}

inline Expr Expr::constant(double v) {
  auto n = std::make_shared<detail::Node>();
  n->op = Op::Constant;
  n->value = v;
  return Expr(std::move(n));
}

inline Expr Expr::variable(std::size_t index, std::string name) {
  auto n = std::make_shared<detail::Node>();
  n->op = Op::Variable;
  n->index = index;
  n->name = std::move(name);
  return Expr(std::move(n));
}

inline Expr Expr::unary(Op op, Expr arg) {
  if (op != Op::Neg) throw std::invalid_argument("Expr::unary: not a unary operator");
  auto n = std::make_shared<detail::Node>();
  n->op = op;
  n->a = std::move(arg.node_);
  return Expr(std::move(n));
}

inline Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  if (op != Op::Add && op != Op::Sub && op != Op::Mul && op != Op::Div && op != Op::Pow)
    throw std::invalid_argument("Expr::binary: not a binary operator");
  auto n = std::make_shared<detail::Node>();
  n->op = op;
  n->a = std::move(lhs.node_);
  n->b = std::move(rhs.node_);
  return Expr(std::move(n));
}

inline Expr Expr::call(Func f, Expr arg) {
  auto n = std::make_shared<detail::Node>();
  n->op = Op::Call;
  n->func = f;
  n->a = std::move(arg.node_);
  return Expr(std::move(n));
}

inline Op Expr::op() const { return node_->op; }
inline double Expr::value() const { return node_->value; }
inline std::size_t Expr::index() const { return node_->index; }
inline const std::string& Expr::name() const { return node_->name; }
inline Func Expr::func() const { return node_->func; }
inline Expr Expr::lhs() const { return Expr(node_->a); }
inline Expr Expr::rhs() const { return Expr(node_->b); }

inline const char* func_name(Func f) {
  switch (f) {
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
    case Func::Tanh: return "tanh";
    case Func::Sqrt: return "sqrt";
  }
  return "?";
}

inline bool lookup_func(std::string_view name, Func& out) {
  static constexpr std::pair<std::string_view, Func> table[] = {
      {"exp", Func::Exp},   {"log", Func::Log},   {"sin", Func::Sin},
      {"cos", Func::Cos},   {"tan", Func::Tan},   {"sinh", Func::Sinh},
      {"cosh", Func::Cosh}, {"tanh", Func::Tanh}, {"sqrt", Func::Sqrt}};
  for (const auto& [k, f] : table) {
    if (k == name) {
      out = f;
      return true;
    }
  }
  return false;
}

inline bool is_reserved_name(std::string_view name) {
  Func f;
  return name == "pi" || name == "e" || lookup_func(name, f);
}

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s[0])) return false;
  for (char c : s.substr(1))
    if (!alpha(c) && !digit(c)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline int precedence(const Expr& e) {
  switch (e.op()) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    default: return 5;
  }
}

inline void render_into(const Expr& e, std::string& out);

inline void render_wrapped(const Expr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  render_into(e, out);
  if (wrap) out += ')';
}

inline void render_into(const Expr& e, std::string& out) {
  switch (e.op()) {
    case Op::Constant:
      if (std::signbit(e.value())) {
        out += '(';
        out += format_number(e.value());
        out += ')';
      } else {
        out += format_number(e.value());
      }
      return;
    case Op::Variable: out += e.name(); return;
    case Op::Neg:
      out += '-';
      // A bare literal after '-' would be read back as a negative constant.
      render_wrapped(e.arg(), precedence(e.arg()) < 3 || e.arg().is_constant(), out);
      return;
    case Op::Call:
      out += func_name(e.func());
      out += '(';
      render_into(e.arg(), out);
      out += ')';
      return;
    case Op::Pow:
      render_wrapped(e.lhs(), precedence(e.lhs()) <= 4, out);
      out += '^';
      render_wrapped(e.rhs(), precedence(e.rhs()) < 3, out);
      return;
    default: {
      const int p = precedence(e);
      render_wrapped(e.lhs(), precedence(e.lhs()) < p, out);
      out += e.op() == Op::Add ? " + " : e.op() == Op::Sub ? " - " : e.op() == Op::Mul ? "*" : "/";
      render_wrapped(e.rhs(), precedence(e.rhs()) <= p, out);
      return;
    }
  }
}

}  // namespace detail

/// Text that parses back to a structurally equal tree.
inline std::string render(const Expr& e) {
  std::string out;
  detail::render_into(e, out);
  return out;
}

inline bool structurally_equal(const Expr& x, const Expr& y) {
  if (x.op() != y.op()) return false;
  switch (x.op()) {
    case Op::Constant: return x.value() == y.value();
    case Op::Variable: return x.name() == y.name() && x.index() == y.index();
    case Op::Neg: return structurally_equal(x.arg(), y.arg());
    case Op::Call: return x.func() == y.func() && structurally_equal(x.arg(), y.arg());
    default: return structurally_equal(x.lhs(), y.lhs()) && structurally_equal(x.rhs(), y.rhs());
  }
}

inline bool depends_on_variables(const Expr& e) {
  switch (e.op()) {
    case Op::Constant: return false;
    case Op::Variable: return true;
    case Op::Neg:
    case Op::Call: return depends_on_variables(e.arg());
    default: return depends_on_variables(e.lhs()) || depends_on_variables(e.rhs());
  }
}

inline bool depends_on(const Expr& e, std::string_view name) {
  switch (e.op()) {
    case Op::Constant: return false;
    case Op::Variable: return e.name() == name;
    case Op::Neg:
    case Op::Call: return depends_on(e.arg(), name);
    default: return depends_on(e.lhs(), name) || depends_on(e.rhs(), name);
  }
}

// ---------------------------------------------------------------------------
// Points

/// Coordinate values of one chart point, addressed by position or by name.
class Point {
 public:
  Point() : names_(std::make_shared<const Scope>()) {}
  Point(std::shared_ptr<const Scope> names, std::vector<double> values)
      : names_(std::move(names)), values_(std::move(values)) {
    if (names_->size() != values_.size())
      throw std::invalid_argument("Point: expected " + std::to_string(names_->size()) +
                                  " coordinates, got " + std::to_string(values_.size()));
  }
  Point(const Scope& names, std::vector<double> values)
      : Point(std::make_shared<const Scope>(names), std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(std::string_view name) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
      if ((*names_)[i] == name) return values_[i];
    throw std::out_of_range("Point: no coordinate named '" + std::string(name) + "'");
  }
  std::span<const double> values() const { return values_; }
  const Scope& names() const { return *names_; }
  const std::shared_ptr<const Scope>& shared_names() const { return names_; }

  Point with(std::size_t i, double v) const {
    Point q = *this;
    q.values_.at(i) = v;
    return q;
  }

  std::string describe() const {
    std::string s = "(";
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i) s += ", ";
      s += (*names_)[i] + "=" + format_number(values_[i]);
    }
    return s + ")";
  }

 private:
  std::shared_ptr<const Scope> names_;
  std::vector<double> values_;
};

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

inline double checked(double v, const Expr& e, const char* what) {
  if (!std::isfinite(v)) throw EvalError(what, render(e));
  return v;
}

inline double eval_values(const Expr& e, std::span<const double> x) {
  switch (e.op()) {
    case Op::Constant: return e.value();
    case Op::Variable:
      if (e.index() >= x.size()) throw EvalError("unbound variable", e.name());
      return x[e.index()];
    case Op::Neg: return -eval_values(e.arg(), x);
    case Op::Add: return checked(eval_values(e.lhs(), x) + eval_values(e.rhs(), x), e, "non-finite result");
    case Op::Sub: return checked(eval_values(e.lhs(), x) - eval_values(e.rhs(), x), e, "non-finite result");
    case Op::Mul: return checked(eval_values(e.lhs(), x) * eval_values(e.rhs(), x), e, "non-finite result");
    case Op::Div: {
      const double num = eval_values(e.lhs(), x);
      const double den = eval_values(e.rhs(), x);
      if (den == 0.0) throw EvalError("division by zero", render(e));
      return checked(num / den, e, "non-finite result");
    }
    case Op::Pow: {
      const double base = eval_values(e.lhs(), x);
      const double expo = eval_values(e.rhs(), x);
      const bool integral = std::trunc(expo) == expo;
      if (!integral && base <= 0.0)
        throw EvalError("non-integer power of a non-positive base", render(e));
      if (integral && base == 0.0 && expo < 0.0) throw EvalError("division by zero", render(e));
      return checked(std::pow(base, expo), e, "non-finite result");
    }
    case Op::Call: {
      const double u = eval_values(e.arg(), x);
      switch (e.func()) {
        case Func::Exp: return checked(std::exp(u), e, "overflow");
        case Func::Log:
          if (u <= 0.0) throw EvalError("log of a non-positive value", render(e));
          return std::log(u);
        case Func::Sin: return std::sin(u);
        case Func::Cos: return std::cos(u);
        case Func::Tan:
          if (std::cos(u) == 0.0) throw EvalError("tan at a pole", render(e));
          return checked(std::tan(u), e, "non-finite result");
        case Func::Sinh: return checked(std::sinh(u), e, "overflow");
        case Func::Cosh: return checked(std::cosh(u), e, "overflow");
        case Func::Tanh: return std::tanh(u);
        case Func::Sqrt:
          if (u < 0.0) throw EvalError("sqrt of a negative value", render(e));
          return std::sqrt(u);
      }
    }
  }
  throw EvalError("corrupt expression", "?");
}

}  // namespace detail

inline double eval(const Expr& e, std::span<const double> values) {
  return detail::eval_values(e, values);
}
inline double eval(const Expr& e, const Point& p) { return detail::eval_values(e, p.values()); }

// ---------------------------------------------------------------------------
// Folding constructors. These keep derivative trees small; each rewrite is
// evaluation-equivalent wherever the input is defined.

namespace detail {
inline Expr fold_if_finite(const Expr& raw) {
  try {
    const double v = eval(raw, std::span<const double>{});
    return Expr::constant(v);
  } catch (const EvalError&) {
    return raw;
  }
}
}  // namespace detail

inline Expr neg(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.value());
  if (a.op() == Op::Neg) return a.arg();
  return Expr::unary(Op::Neg, a);
}

inline Expr add(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return detail::fold_if_finite(Expr::binary(Op::Add, a, b));
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  if (b.op() == Op::Neg) return Expr::binary(Op::Sub, a, b.arg());
  return Expr::binary(Op::Add, a, b);
}

inline Expr sub(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return detail::fold_if_finite(Expr::binary(Op::Sub, a, b));
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return neg(b);
  if (structurally_equal(a, b)) return Expr::constant(0.0);
  if (b.op() == Op::Neg) return Expr::binary(Op::Add, a, b.arg());
  return Expr::binary(Op::Sub, a, b);
}

inline Expr mul(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return detail::fold_if_finite(Expr::binary(Op::Mul, a, b));
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(-1.0)) return neg(b);
  if (b.is_constant(-1.0)) return neg(a);
  // keep numeric coefficients on the left so that 2*(3*x) folds to 6*x
  if (b.is_constant()) return mul(b, a);
  if (a.is_constant() && b.op() == Op::Mul && b.lhs().is_constant())
    return mul(mul(a, b.lhs()), b.rhs());
  return Expr::binary(Op::Mul, a, b);
}

inline Expr div(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant() && b.value() != 0.0)
    return detail::fold_if_finite(Expr::binary(Op::Div, a, b));
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return Expr::constant(0.0);
  if (b.is_constant(1.0)) return a;
  return Expr::binary(Op::Div, a, b);
}

inline Expr pow(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return detail::fold_if_finite(Expr::binary(Op::Pow, a, b));
  if (b.is_constant(0.0)) return Expr::constant(1.0);
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(1.0)) return Expr::constant(1.0);
  return Expr::binary(Op::Pow, a, b);
}

inline Expr call(Func f, const Expr& a) {
  if (a.is_constant()) return detail::fold_if_finite(Expr::call(f, a));
  return Expr::call(f, a);
}

inline Expr operator+(const Expr& a, const Expr& b) { return add(a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return sub(a, b); }
inline Expr operator*(const Expr& a, const Expr& b) { return mul(a, b); }
inline Expr operator/(const Expr& a, const Expr& b) { return div(a, b); }
inline Expr operator-(const Expr& a) { return neg(a); }
inline Expr operator*(double c, const Expr& b) { return mul(Expr::constant(c), b); }
inline Expr operator+(double c, const Expr& b) { return add(Expr::constant(c), b); }
inline Expr operator+(const Expr& a, double c) { return add(a, Expr::constant(c)); }
inline Expr operator-(const Expr& a, double c) { return sub(a, Expr::constant(c)); }

inline Expr simplify_basic(const Expr& e) {
  switch (e.op()) {
    case Op::Constant:
    case Op::Variable: return e;
    case Op::Neg: return neg(simplify_basic(e.arg()));
    case Op::Call: return call(e.func(), simplify_basic(e.arg()));
    case Op::Add: return add(simplify_basic(e.lhs()), simplify_basic(e.rhs()));
    case Op::Sub: return sub(simplify_basic(e.lhs()), simplify_basic(e.rhs()));
    case Op::Mul: return mul(simplify_basic(e.lhs()), simplify_basic(e.rhs()));
    case Op::Div: return div(simplify_basic(e.lhs()), simplify_basic(e.rhs()));
    case Op::Pow: return pow(simplify_basic(e.lhs()), simplify_basic(e.rhs()));
  }
  return e;
}

/// Replaces every occurrence of the named variable by a constant.
inline Expr substitute(const Expr& e, std::string_view name, double value) {
  switch (e.op()) {
    case Op::Constant: return e;
    case Op::Variable: return e.name() == name ? Expr::constant(value) : e;
    case Op::Neg: return neg(substitute(e.arg(), name, value));
    case Op::Call: return call(e.func(), substitute(e.arg(), name, value));
    default: {
      Expr l = substitute(e.lhs(), name, value);
      Expr r = substitute(e.rhs(), name, value);
      switch (e.op()) {
        case Op::Add: return add(l, r);
        case Op::Sub: return sub(l, r);
        case Op::Mul: return mul(l, r);
        case Op::Div: return div(l, r);
        default: return pow(l, r);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Differentiation

/// Exact partial derivative with respect to the named coordinate.
inline Expr diff(const Expr& e, std::string_view coord) {
  switch (e.op()) {
    case Op::Constant: return Expr::constant(0.0);
    case Op::Variable: return Expr::constant(e.name() == coord ? 1.0 : 0.0);
    case Op::Neg: return neg(diff(e.arg(), coord));
    case Op::Add: return diff(e.lhs(), coord) + diff(e.rhs(), coord);
    case Op::Sub: return diff(e.lhs(), coord) - diff(e.rhs(), coord);
    case Op::Mul:
      return diff(e.lhs(), coord) * e.rhs() + e.lhs() * diff(e.rhs(), coord);
    case Op::Div: {
      const Expr& u = e.lhs();
      const Expr& v = e.rhs();
      Expr du = diff(u, coord);
      Expr dv = diff(v, coord);
      if (dv.is_constant(0.0)) return du / v;
      return (du * v - u * dv) / pow(v, Expr::constant(2.0));
    }
    case Op::Pow: {
      const Expr& u = e.lhs();
      const Expr& w = e.rhs();
      Expr du = diff(u, coord);
      Expr dw = diff(w, coord);
      if (dw.is_constant(0.0)) {
        if (du.is_constant(0.0)) return Expr::constant(0.0);
        return w * pow(u, w - Expr::constant(1.0)) * du;
      }
      // u^w = exp(w log u): the log factor only appears where w varies
      Expr result = e * call(Func::Log, u) * dw;
      if (!du.is_constant(0.0)) result = result + w * pow(u, w - Expr::constant(1.0)) * du;
      return result;
    }
    case Op::Call: {
      const Expr& u = e.arg();
      Expr du = diff(u, coord);
      if (du.is_constant(0.0)) return Expr::constant(0.0);
      switch (e.func()) {
        case Func::Exp: return e * du;
        case Func::Log: return du / u;
        case Func::Sin: return call(Func::Cos, u) * du;
        case Func::Cos: return neg(call(Func::Sin, u) * du);
        case Func::Tan: return du / pow(call(Func::Cos, u), Expr::constant(2.0));
        case Func::Sinh: return call(Func::Cosh, u) * du;
        case Func::Cosh: return call(Func::Sinh, u) * du;
        case Func::Tanh: return (Expr::constant(1.0) - pow(e, Expr::constant(2.0))) * du;
        case Func::Sqrt: return du / (Expr::constant(2.0) * e);
      }
    }
  }
  return Expr::constant(0.0);
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, const Scope& scope) : text_(text), scope_(scope) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ < text_.size()) {
      if (text_[pos_] == ')') throw ParseError(pos_, "unbalanced parentheses: unexpected ')'");
      throw ParseError(pos_, std::string("unexpected character '") + text_[pos_] + "'");
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = Expr::binary(Op::Add, lhs, term());
      else if (accept('-'))
        lhs = Expr::binary(Op::Sub, lhs, term());
      else
        return lhs;
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*'))
        lhs = Expr::binary(Op::Mul, lhs, factor());
      else if (accept('/'))
        lhs = Expr::binary(Op::Div, lhs, factor());
      else
        return lhs;
    }
  }

  Expr factor() {
    if (accept('-')) {
      bool literal = false;
      Expr inner = factor_tracking(literal);
      if (literal) return Expr::constant(-inner.value());
      return Expr::unary(Op::Neg, inner);
    }
    bool literal = false;
    return power(literal);
  }

  // factor() that reports whether the result is a bare number literal
  Expr factor_tracking(bool& literal) {
    if (peek() == '-') {
      literal = false;
      return factor();
    }
    return power(literal);
  }

  Expr power(bool& literal) {
    Expr base = atom(literal);
    if (accept('^')) {
      literal = false;
      return Expr::binary(Op::Pow, base, factor());
    }
    return base;
  }

  Expr atom(bool& literal) {
    skip_ws();
    literal = false;
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      const std::size_t open = pos_++;
      Expr inner = expr();
      if (!accept(')')) {
        skip_ws();
        throw ParseError(pos_ < text_.size() ? pos_ : open,
                         "unbalanced parentheses: expected ')' to close '(' at byte " +
                             std::to_string(open));
      }
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') {
      literal = true;
      return number();
    }
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_') return identifier();
    if (c == ')') throw ParseError(pos_, "unbalanced parentheses: unexpected ')'");
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_, ++n;
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError(start, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        // "2e" is a number followed by the constant e only if nothing else fits;
        // the grammar has no implicit multiplication, so reject it.
        throw ParseError(save, "malformed exponent");
      }
    }
    double v = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto res = std::from_chars(first, last, v);
    if (res.ec == std::errc::result_out_of_range) throw ParseError(start, "number out of range");
    if (res.ec != std::errc() || res.ptr != last) throw ParseError(start, "malformed number");
    return Expr::constant(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')
        ++pos_;
      else
        break;
    }
    const std::string name(text_.substr(start, pos_ - start));
    Func f;
    if (peek() == '(') {
      if (!lookup_func(name, f)) throw ParseError(start, "unknown identifier '" + name + "'");
      const std::size_t open = pos_;
      accept('(');
      std::vector<Expr> args{expr()};
      while (accept(',')) args.push_back(expr());
      if (!accept(')')) {
        skip_ws();
        throw ParseError(pos_ < text_.size() ? pos_ : open,
                         "unbalanced parentheses: expected ')' to close '(' at byte " +
                             std::to_string(open));
      }
      if (args.size() != 1)
        throw ParseError(start, "arity error: '" + name + "' takes 1 argument, got " +
                                    std::to_string(args.size()));
      return Expr::call(f, args.front());
    }
    for (std::size_t i = 0; i < scope_.size(); ++i)
      if (scope_[i] == name) return Expr::variable(i, name);
    if (name == "pi") return Expr::constant(std::numbers::pi);
    if (name == "e") return Expr::constant(std::numbers::e);
    if (lookup_func(name, f)) throw ParseError(start, "arity error: '" + name + "' takes 1 argument, got 0");
    throw ParseError(start, "unknown identifier '" + name + "'");
  }

  std::string_view text_;
  const Scope& scope_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses text into a tree whose variables index into `scope`.
inline Expr parse_expr(std::string_view text, const Scope& scope) {
  for (const auto& name : scope) {
    if (!is_identifier(name)) throw std::invalid_argument("invalid coordinate name '" + name + "'");
    if (is_reserved_name(name)) throw std::invalid_argument("coordinate name '" + name + "' is reserved");
  }
  return detail::Parser(text, scope).parse();
}

inline Expr parse_expr(std::string_view text) { return parse_expr(text, Scope{}); }

}  // namespace acm
