#include <cmath>
#include <numbers>
#include <thread>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace acm;
using fixtures::xyz;

namespace {

double at(const Expr& e, std::vector<double> v) { return eval(e, std::span<const double>(v)); }

}  // namespace

TEST(Parse, FunctionCallBuildsCallNode) {
  const Expr e = parse_expr("exp(2*z)", xyz);
  ASSERT_EQ(e.op(), Op::Call);
  EXPECT_EQ(e.func(), Func::Exp);
  EXPECT_EQ(e.arg().op(), Op::Mul);
  EXPECT_TRUE(e.arg().lhs().is_constant(2.0));
  EXPECT_EQ(e.arg().rhs().name(), "z");
}

TEST(Parse, MultiplicationBindsTighterThanAddition) {
  const Expr e = parse_expr("x + y*z", xyz);
  ASSERT_EQ(e.op(), Op::Add);
  EXPECT_EQ(e.lhs().name(), "x");
  EXPECT_EQ(e.rhs().op(), Op::Mul);
}

TEST(Parse, PowerIsRightAssociative) { EXPECT_DOUBLE_EQ(at(parse_expr("2^3^2"), {}), 512.0); }

TEST(Parse, UnaryMinusBindsLooserThanPower) {
  EXPECT_DOUBLE_EQ(at(parse_expr("-2^2"), {}), -4.0);
  EXPECT_DOUBLE_EQ(at(parse_expr("2^-1"), {}), 0.5);
}

TEST(Parse, ConstantsAndExponents) {
  EXPECT_DOUBLE_EQ(at(parse_expr("pi"), {}), std::numbers::pi);
  EXPECT_DOUBLE_EQ(at(parse_expr("e"), {}), std::numbers::e);
  EXPECT_DOUBLE_EQ(at(parse_expr("1.5e2"), {}), 150.0);
}

TEST(Parse, ErrorsCarryByteOffsets) {
  auto offset_of = [](const char* text) -> std::size_t {
    try {
      parse_expr(text, xyz);
    } catch (const ParseError& e) {
      return e.offset();
    }
    ADD_FAILURE() << "no error for " << text;
    return 0;
  };
  EXPECT_EQ(offset_of("x + w"), 4u);
  EXPECT_EQ(offset_of("sin(x, y)"), 0u);
  EXPECT_EQ(offset_of("x + $"), 4u);
  EXPECT_EQ(offset_of("(x + y"), 0u);  // the unmatched parenthesis
  EXPECT_THROW(parse_expr("foo(x)", xyz), ParseError);
  EXPECT_THROW(parse_expr("x y", xyz), ParseError);
  EXPECT_THROW(parse_expr("", xyz), ParseError);
}

TEST(Parse, UnknownIdentifierIsNamed) {
  try {
    parse_expr("x + h", xyz);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'h'"), std::string::npos);
  }
}

TEST(Eval, HandValues) {
  const Expr e = parse_expr("exp(2*z)", xyz);
  EXPECT_DOUBLE_EQ(at(e, {0, 0, 0}), 1.0);
  EXPECT_NEAR(at(e, {0, 0, 1}), 7.38905609893065, 1e-13);
  EXPECT_DOUBLE_EQ(at(parse_expr("x + y*z", xyz), {1, 2, 3}), 7.0);
}

TEST(Eval, DomainViolationsNameTheSubtree) {
  try {
    at(parse_expr("1 + log(x - 1)", xyz), {1, 0, 0});
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.subtree(), "log(x - 1)");
  }
  EXPECT_THROW(at(parse_expr("1/(x - y)", xyz), {1, 1, 0}), EvalError);
  EXPECT_THROW(at(parse_expr("x^0.5", xyz), {-1, 0, 0}), EvalError);
  EXPECT_THROW(at(parse_expr("sqrt(x)", xyz), {-1, 0, 0}), EvalError);
}

TEST(Eval, PointLookupByName) {
  const Point p(xyz, {1, 2, 3});
  EXPECT_EQ(p.at("y"), 2.0);
  EXPECT_EQ(p.with(2, 5.0)[2], 5.0);
  EXPECT_THROW(Point(xyz, {1, 2}), std::invalid_argument);
}

TEST(Diff, HandDerivatives) {
  const Expr d = diff(parse_expr("exp(2*z)", xyz), "z");
  EXPECT_DOUBLE_EQ(at(d, {0, 0, 0.3}), 2.0 * std::exp(0.6));
  EXPECT_TRUE(diff(parse_expr("x*y", xyz), "z").is_constant(0.0));
  EXPECT_DOUBLE_EQ(at(diff(parse_expr("x^y", xyz), "y"), {2, 3, 0}), 8.0 * std::log(2.0));
}

TEST(Diff, MatchesCentralDifferencesOnRandomTrees) {
  fixtures::ExprGen gen(7);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Expr e = gen();
    const auto x = gen.point();
    const int c = gen.pick(3);
    const double sym = at(diff(e, xyz[c]), x);
    const double fd = fixtures::central_difference(e, x, c);
    EXPECT_LE(std::abs(sym - fd), 1e-6 * (1.0 + std::abs(sym))) << render(e) << " along " << xyz[c];
    ++checked;
  }
  EXPECT_EQ(checked, 1000);
}

TEST(Diff, MixedPartialsCommute) {
  fixtures::ExprGen gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Expr e = gen(3);
    const auto x = gen.point();
    const double a = at(diff(diff(e, "x"), "z"), x);
    const double b = at(diff(diff(e, "z"), "x"), x);
    EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(a))) << render(e);
  }
}

TEST(Simplify, FoldsConstantsAndIdentities) {
  EXPECT_EQ(render(simplify_basic(parse_expr("1*x", xyz))), "x");
  EXPECT_TRUE(simplify_basic(parse_expr("2 + 3")).is_constant(5.0));
  EXPECT_TRUE(simplify_basic(parse_expr("x - x", xyz)).is_constant(0.0));
  EXPECT_TRUE(simplify_basic(parse_expr("0*exp(y)", xyz)).is_constant(0.0));
}

TEST(Simplify, PreservesValues) {
  fixtures::ExprGen gen(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Expr e = gen();
    const auto x = gen.point();
    const double a = at(e, x);
    EXPECT_NEAR(at(simplify_basic(e), x), a, 1e-12 * std::max(1.0, std::abs(a))) << render(e);
  }
}

TEST(Render, RoundTripsStructurally) {
  fixtures::ExprGen gen(5);
  for (int trial = 0; trial < 300; ++trial) {
    const Expr e = gen();
    const Expr back = parse_expr(render(e), xyz);
    EXPECT_TRUE(structurally_equal(back, e)) << render(e) << " vs " << render(back);
  }
}

TEST(Substitute, ReplacesOneCoordinate) {
  const Expr e = substitute(parse_expr("x*z + y", xyz), "z", 2.0);
  EXPECT_FALSE(depends_on(e, "z"));
  EXPECT_TRUE(depends_on(e, "x"));
  EXPECT_DOUBLE_EQ(at(e, {3, 1, 100}), 7.0);
}

TEST(Concurrency, SharedTreeEvaluatesConsistently) {
  fixtures::ExprGen gen(9);
  const Expr e = gen(6);
  const auto x = gen.point();
  const double ref = at(e, x);
  std::vector<double> got(8);
  std::vector<std::thread> ts;
  for (int t = 0; t < 8; ++t)
    ts.emplace_back([&, t] {
      for (int k = 0; k < 200; ++k) got[t] = at(e, x);
    });
  for (auto& t : ts) t.join();
  for (double v : got) EXPECT_EQ(v, ref);
}
