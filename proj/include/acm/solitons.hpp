#pragma once

// Riemann and Ricci soliton residuals, the λ formulas and implied curvature
// statements for deformed Kenmotsu structures, and the curvature-norm
// inequalities for gradient solitons.
//
//   Riemann:  2R + g⊙£_V g = 2λG,  G = ½ g⊙g
//   Ricci:    ½£_V g + Ric = λg

#include <optional>
#include <string>
#include <vector>

#include "acm/deformation.hpp"

namespace acm {

enum class SolitonKind { riemann, ricci };
enum class PotentialKind { vector, gradient, reeb };
enum class Classification { shrinking, steady, expanding };

inline constexpr double kSteadyBand = 1e-10;
inline constexpr double kSolenoidalTolerance = 1e-9;

inline const char* to_string(SolitonKind k) { return k == SolitonKind::riemann ? "riemann" : "ricci"; }
inline const char* to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::vector: return "vector";
    case PotentialKind::gradient: return "gradient";
    case PotentialKind::reeb: return "reeb";
  }
  return "?";
}
inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::shrinking: return "shrinking";
    case Classification::steady: return "steady";
    case Classification::expanding: return "expanding";
  }
  return "?";
}

inline Classification classify(double lambda) {
  if (std::abs(lambda) <= kSteadyBand) return Classification::steady;
  return lambda > 0.0 ? Classification::shrinking : Classification::expanding;
}

/// Absolute residual with the magnitude of the terms that produced it.
struct Residual {
  double abs = 0.0;
  double scale = 1.0;
  double relative() const { return abs / scale; }
};

inline Residual tensor_residual(const Tensor& diff, std::initializer_list<double> magnitudes) {
  return {diff.max_abs(), residual_scale(magnitudes)};
}

// ---------------------------------------------------------------------------
// Soliton equations from pointwise ingredients

/// Everything a soliton equation needs at one point, in one frame.
struct SolitonTerms {
  int n = 1;
  Tensor g;
  Tensor inverse;
  Tensor riemann04;
  Tensor ricci;
  double scalar = 0.0;
  Tensor lie;  // £_V g
  double div = 0.0;
  double lambda = 0.0;
};

/// 2R + g⊙£_V g - λ g⊙g  (the (0,4) Riemann soliton tensor)
inline Tensor riemann_soliton_tensor(const SolitonTerms& t) {
  return 2.0 * t.riemann04 + kulkarni_nomizu(t.g, t.lie) - t.lambda * kulkarni_nomizu(t.g, t.g);
}

inline Residual riemann_soliton_residual(const SolitonTerms& t) {
  const Tensor gg = kulkarni_nomizu(t.g, t.g);
  const Tensor gl = kulkarni_nomizu(t.g, t.lie);
  return tensor_residual(riemann_soliton_tensor(t),
                         {2.0 * t.riemann04.max_abs(), gl.max_abs(), std::abs(t.lambda) * gg.max_abs()});
}

struct TracedResidual {
  Residual tensor;  // ½£_V g + Ric/(2n-1) - ((2nλ - div V)/(2n-1)) g
  Residual scalar;  // scal - 2n[(2n+1)λ - 2 div V]
};

/// ½£_V g + Ric/(2n-1) - ((2nλ - div V)/(2n-1)) g
inline Tensor riemann_traced_tensor(const SolitonTerms& t) {
  const double m = 2.0 * t.n - 1.0;
  return 0.5 * t.lie + (1.0 / m) * t.ricci - ((2.0 * t.n * t.lambda - t.div) / m) * t.g;
}

/// scal - 2n[(2n+1)λ - 2 div V], signed
inline double riemann_scalar_defect(const SolitonTerms& t) {
  return t.scalar - 2.0 * t.n * ((2.0 * t.n + 1.0) * t.lambda - 2.0 * t.div);
}

inline TracedResidual riemann_soliton_traced(const SolitonTerms& t) {
  const double m = 2.0 * t.n - 1.0;
  const double c = (2.0 * t.n * t.lambda - t.div) / m;
  TracedResidual r;
  r.tensor = tensor_residual(riemann_traced_tensor(t),
                             {0.5 * t.lie.max_abs(), t.ricci.max_abs() / m, std::abs(c) * t.g.max_abs()});
  const double rhs = 2.0 * t.n * ((2.0 * t.n + 1.0) * t.lambda - 2.0 * t.div);
  r.scalar = {std::abs(riemann_scalar_defect(t)), residual_scale({t.scalar, rhs})};
  return r;
}

/// ½£_V g + Ric - λg
inline Tensor ricci_soliton_tensor(const SolitonTerms& t) { return 0.5 * t.lie + t.ricci - t.lambda * t.g; }

inline Residual ricci_soliton_residual(const SolitonTerms& t) {
  return tensor_residual(ricci_soliton_tensor(t),
                         {0.5 * t.lie.max_abs(), t.ricci.max_abs(), std::abs(t.lambda) * t.g.max_abs()});
}

/// scal - (2n+1)λ + div V, signed
inline double ricci_scalar_defect(const SolitonTerms& t) {
  return t.scalar - (2.0 * t.n + 1.0) * t.lambda + t.div;
}

inline Residual ricci_soliton_traced(const SolitonTerms& t) {
  const double rhs = (2.0 * t.n + 1.0) * t.lambda - t.div;
  return {std::abs(ricci_scalar_defect(t)), residual_scale({t.scalar, rhs})};
}

// ---------------------------------------------------------------------------
// Candidates

struct SolitonCandidate {
  std::string name;
  SolitonKind kind = SolitonKind::ricci;
  PotentialKind potential = PotentialKind::vector;
  VectorField vector;     // PotentialKind::vector, already in the candidate's frame
  ScalarField potential_function;  // PotentialKind::gradient, V = grad f of the frame metric
  Expr lambda;
  std::optional<double> a;  // deformed frame when set
};

/// ½£_V(η⊗η) from (£_V η)_i = V^k ∂_k η_i + η_k ∂_i V^k.
inline Tensor lie_derivative_eta_eta(const AcmStructure& s, const Tensor& v, const Tensor& dv, const Point& p) {
  const int d = s.dim();
  const Tensor eta = s.eta().value(p);
  const Tensor deta = s.eta().partials(p);
  Tensor le = Tensor::covector(d);
  for (int i = 0; i < d; ++i) {
    double acc = 0.0;
    for (int k = 0; k < d; ++k) acc += v(k) * deta(i, k) + eta(k) * dv(k, i);
    le(i) = acc;
  }
  return tensor_product(le, eta) + tensor_product(eta, le);
}

/// Soliton ingredients of `c` at `p` on the Kenmotsu structure `s`. In the
/// deformed frame the curvature and operators come from the closed forms.
inline SolitonTerms soliton_terms(const AcmStructure& s, const SolitonCandidate& c, const Point& p) {
  SolitonTerms t;
  t.n = s.n();
  t.lambda = eval(c.lambda, p);
  if (!c.a) {
    StructureAtPoint sp(s, p);
    const LocalGeometry& geo = sp.geometry;
    t.g = geo.g();
    t.inverse = geo.inverse();
    t.riemann04 = geo.riemann04();
    t.ricci = geo.ricci();
    t.scalar = geo.scalar_curvature();
    switch (c.potential) {
      case PotentialKind::vector:
        t.lie = geo.lie_derivative_metric(c.vector);
        t.div = geo.divergence(c.vector);
        break;
      case PotentialKind::gradient:
        t.lie = 2.0 * geo.hessian(c.potential_function);
        t.div = geo.laplacian(c.potential_function);
        break;
      case PotentialKind::reeb:
        t.lie = geo.lie_derivative_metric(s.xi());
        t.div = geo.divergence(s.xi());
        break;
    }
    return t;
  }
  const double a = DeformationParams(*c.a).a;
  KenmotsuPoint k(s, p);
  const auto curv = deformed_curvature_closed(k, a);
  t.g = a * k.g() + (a * (a - 1.0)) * k.eta_eta;
  t.inverse = lu_invert(t.g).inverse;
  t.riemann04 = curv.riemann04;
  t.ricci = curv.ricci;
  t.scalar = curv.scalar;
  switch (c.potential) {
    case PotentialKind::vector: {
      // £_V ḡ = a £_V g + a(a-1) £_V(η⊗η);  div̄ V = div V
      const Tensor v = c.vector.value(p);
      const Tensor dv = c.vector.partials(p);
      t.lie = a * k.geometry.lie_derivative_metric(v, dv) + (a * (a - 1.0)) * lie_derivative_eta_eta(s, v, dv, p);
      t.div = k.geometry.divergence(c.vector);
      break;
    }
    case PotentialKind::gradient: {
      const auto ops = deformed_operators_closed(k, a, c.potential_function);
      t.lie = 2.0 * ops.hessian;
      t.div = ops.laplacian;
      break;
    }
    case PotentialKind::reeb:
      t.lie = 2.0 * k.horizontal;
      t.div = 2.0 * k.n / a;
      break;
  }
  return t;
}

struct CandidateResidual {
  Residual equation;
  Residual traced_tensor;  // Riemann only
  Residual traced_scalar;
  double lambda = 0.0;
  Classification classification = Classification::steady;
};

inline CandidateResidual candidate_residual(const SolitonTerms& t, SolitonKind kind) {
  CandidateResidual r;
  r.lambda = t.lambda;
  r.classification = classify(t.lambda);
  if (kind == SolitonKind::riemann) {
    r.equation = riemann_soliton_residual(t);
    const auto tr = riemann_soliton_traced(t);
    r.traced_tensor = tr.tensor;
    r.traced_scalar = tr.scalar;
  } else {
    r.equation = ricci_soliton_residual(t);
    r.traced_scalar = ricci_soliton_traced(t);
  }
  return r;
}

inline CandidateResidual candidate_residual(const AcmStructure& s, const SolitonCandidate& c, const Point& p) {
  return candidate_residual(soliton_terms(s, c, p), c.kind);
}

// ---------------------------------------------------------------------------
// λ̄ formulas

enum class Scenario {
  reeb,                  // potential ξ̄
  solenoidal,            // div V = 0
  gradient,              // V = grad̄ f
  gradient_orthogonal,   // V = grad̄ f, ḡ(V, ξ) = 0
};

class MissingInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TheoremInputs {
  std::optional<double> a;
  std::optional<int> n;
  std::optional<double> xi_eta_v;     // ξ(η(V))
  std::optional<double> laplacian;    // Δf
  std::optional<double> eta_grad_f;   // η(grad f) = ξ(f)
  std::optional<double> hess_xi_xi;   // Hess(f)(ξ,ξ)
};

inline const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::reeb: return "reeb";
    case Scenario::solenoidal: return "solenoidal";
    case Scenario::gradient: return "gradient";
    case Scenario::gradient_orthogonal: return "gradient-orthogonal";
  }
  return "?";
}

namespace detail {
template <class T>
T need(const std::optional<T>& v, const char* what, SolitonKind kind, Scenario s) {
  if (!v)
    throw MissingInputError(std::string("scenario ") + to_string(kind) + "/" + to_string(s) + " requires " + what);
  return *v;
}
}  // namespace detail

inline double theorem_lambda(SolitonKind kind, Scenario scenario, const TheoremInputs& in) {
  using detail::need;
  const double a = DeformationParams(need(in.a, "a", kind, scenario)).a;
  const double n = need(in.n, "n", kind, scenario);
  const double a2 = a * a;
  if (kind == SolitonKind::riemann) {
    switch (scenario) {
      case Scenario::reeb: return (a - 1.0) / a2;
      case Scenario::solenoidal:
        return (2.0 * n - 1.0) / (2.0 * n) * need(in.xi_eta_v, "xi(eta(V))", kind, scenario) - 1.0 / a2;
      case Scenario::gradient: {
        const double lap = need(in.laplacian, "Laplacian(f)", kind, scenario);
        const double xf = need(in.eta_grad_f, "eta(grad f)", kind, scenario);
        const double hxx = need(in.hess_xi_xi, "Hess(f)(xi,xi)", kind, scenario);
        return lap / (2.0 * n * a) - (a - 1.0) / a2 * xf + (2.0 * n - a) / (2.0 * n * a2) * hxx - 1.0 / a2;
      }
      case Scenario::gradient_orthogonal:
        return need(in.laplacian, "Laplacian(f)", kind, scenario) / (2.0 * n * a) - 1.0 / a2;
    }
  } else {
    switch (scenario) {
      case Scenario::reeb: return -2.0 * n / a2;
      case Scenario::solenoidal: return need(in.xi_eta_v, "xi(eta(V))", kind, scenario) - 2.0 * n / a2;
      case Scenario::gradient: return (need(in.hess_xi_xi, "Hess(f)(xi,xi)", kind, scenario) - 2.0 * n) / a2;
      case Scenario::gradient_orthogonal: return -2.0 * n / a2;
    }
  }
  return 0.0;
}

/// ξ(η(V)) as the directional derivative of the function η(V) along ξ.
inline double xi_eta_v(const AcmStructure& s, const VectorField& v, const Point& p) {
  const int d = s.dim();
  const Tensor xi = s.xi().value(p);
  const Tensor eta = s.eta().value(p);
  const Tensor deta = s.eta().partials(p);
  const Tensor vv = v.value(p);
  const Tensor dv = v.partials(p);
  double out = 0.0;
  for (int k = 0; k < d; ++k) {
    double dk = 0.0;  // ∂_k(η_i V^i)
    for (int i = 0; i < d; ++i) dk += deta(i, k) * vv(i) + eta(i) * dv(i, k);
    out += xi(k) * dk;
  }
  return out;
}

/// Inputs of the gradient λ̄ formulas, computed on the base geometry.
inline TheoremInputs gradient_inputs(const KenmotsuPoint& k, double a, const ScalarField& f) {
  TheoremInputs in;
  in.a = a;
  in.n = k.n;
  in.laplacian = k.geometry.laplacian(f);
  in.eta_grad_f = apply(k.eta, k.geometry.gradient(f));
  in.hess_xi_xi = apply(k.geometry.hessian(f), k.xi, k.xi);
  return in;
}

// ---------------------------------------------------------------------------
// Implied curvature

/// R = -g⊙(g - η⊗η), the curvature forced by a ξ̄-Riemann soliton.
inline Tensor implied_riemann04_reeb(const StructureAtPoint& s) { return -1.0 * kulkarni_nomizu(s.g(), s.horizontal); }

/// Ric(Y,Z) = g^{XW} R(X,Y,Z,W)
inline Tensor ricci_from_riemann04(const Tensor& r04, const Tensor& inverse) {
  const int d = r04.dim();
  Tensor ric = Tensor::bilinear(d);
  for (int y = 0; y < d; ++y)
    for (int z = 0; z < d; ++z) {
      double acc = 0.0;
      for (int x = 0; x < d; ++x)
        for (int w = 0; w < d; ++w) acc += inverse(x, w) * r04(x, y, z, w);
      ric(y, z) = acc;
    }
  return ric;
}

/// Ric = α g + β η⊗η
inline Tensor ricci_of_form(const StructureAtPoint& s, double alpha, double beta) {
  return alpha * s.g() + beta * s.eta_eta;
}

struct ImpliedConstants {
  double lambda_bar = 0.0;
  double scalar = 0.0;
  double stated_ricci_norm2 = 0.0;  // the closed form quoted alongside the theorem
  double ricci_g = 0.0;    // coefficient of g in the implied Ricci tensor
  double ricci_eta = 0.0;  // coefficient of η⊗η
};

/// Constants of the ξ̄-soliton theorems.
inline ImpliedConstants reeb_constants(SolitonKind kind, int n, double a) {
  DeformationParams p(a);
  (void)p;
  ImpliedConstants c;
  const double nn = n;
  if (kind == SolitonKind::riemann) {
    c.lambda_bar = (a - 1.0) / (a * a);
    c.ricci_g = -(4.0 * nn - 1.0);
    c.ricci_eta = 2.0 * nn - 1.0;
    c.scalar = -8.0 * nn * nn;
    c.stated_ricci_norm2 = 2.0 * nn * (16.0 * nn * nn - 6.0 * nn + 1.0);
  } else {
    c.lambda_bar = -2.0 * nn / (a * a);
    c.ricci_g = -(2.0 * nn + 1.0);
    c.ricci_eta = 1.0;
    c.scalar = -4.0 * nn * (nn + 1.0);
    c.stated_ricci_norm2 = 2.0 * nn * (4.0 * nn * nn + 6.0 * nn + 3.0);
  }
  return c;
}

/// |αg + βη⊗η|² in closed form: 2n eigenvalues α on D, one α+β along ξ.
inline double ricci_norm2_of_form(int n, double alpha, double beta) {
  return 2.0 * n * alpha * alpha + (alpha + beta) * (alpha + beta);
}

/// The Ricci tensor as a function of λ̄ obtained by equating the deformed
/// soliton equation with the deformed Ricci closed form, before λ̄ is solved for.
/// For the solenoidal and gradient-free cases the V-dependent terms use ∇V.
inline Tensor ricci_in_terms_of_lambda(SolitonKind kind, PotentialKind potential, const StructureAtPoint& s,
                                       double a, double lambda_bar, const Tensor* nabla_v = nullptr,
                                       const Tensor* v = nullptr) {
  const double n = s.n;
  const double c = (a - 1.0) / a;
  const int d = s.dim();
  if (potential == PotentialKind::reeb) {
    if (kind == SolitonKind::riemann)
      return ricci_of_form(s, 2.0 * n * a * lambda_bar - (4.0 * n - 1.0) - 2.0 * n * c,
                           2.0 * n * a * (a - 1.0) * lambda_bar + (4.0 * n - 1.0 - 2.0 * n * a) + 2.0 * n * c);
    return ricci_of_form(s, a * lambda_bar - 1.0 - 2.0 * n * c, a * (a - 1.0) * lambda_bar + 1.0 + 2.0 * n * c);
  }
  if (potential != PotentialKind::vector || !nabla_v || !v)
    throw MissingInputError("Ricci expression in terms of lambda needs V and its covariant derivative");
  // sym(X,Y) = g(∇_X V, Y) + g(∇_Y V, X);  br(X,Y) = η(X)[η(∇_Y V) + g(Y,V)] + η(Y)[...] - 2η(X)η(Y)η(V)
  const Tensor& g = s.g();
  Tensor sym = Tensor::bilinear(d);
  Tensor br = Tensor::bilinear(d);
  Tensor eta_nabla = Tensor::covector(d);  // η(∇_Y V)
  Tensor v_flat = Tensor::covector(d);
  for (int y = 0; y < d; ++y)
    for (int k = 0; k < d; ++k) {
      eta_nabla(y) += s.eta(k) * (*nabla_v)(k, y);
      v_flat(y) += g(y, k) * (*v)(k);
    }
  const double eta_v = apply(s.eta, *v);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      double gx = 0.0;
      double gy = 0.0;
      for (int k = 0; k < d; ++k) {
        gx += g(k, y) * (*nabla_v)(k, x);
        gy += g(k, x) * (*nabla_v)(k, y);
      }
      sym(x, y) = gx + gy;
      br(x, y) = s.eta(x) * (eta_nabla(y) + v_flat(y)) + s.eta(y) * (eta_nabla(x) + v_flat(x)) -
                 2.0 * s.eta(x) * s.eta(y) * eta_v;
    }
  const double m = kind == SolitonKind::riemann ? 2.0 * n - 1.0 : 1.0;
  const double lam = kind == SolitonKind::riemann ? 2.0 * n * lambda_bar : lambda_bar;
  return ricci_of_form(s, a * lam - 2.0 * n * c, a * (a - 1.0) * lam + 2.0 * n * c) -
         (m * a * (a - 1.0) / 2.0) * br - (m * a / 2.0) * sym;
}

/// The scalar curvature as a function of λ̄, companion of ricci_in_terms_of_lambda.
inline double scalar_in_terms_of_lambda(SolitonKind kind, PotentialKind potential, int n_, double a,
                                        double lambda_bar) {
  const double n = n_;
  const double c = (a - 1.0) / a;
  const double q = 2.0 * n * (2.0 * n + 1.0);
  if (kind == SolitonKind::riemann) {
    const double base = q * a * lambda_bar - q * c;
    return potential == PotentialKind::reeb ? base - 8.0 * n * n : base;
  }
  const double base = (2.0 * n + 1.0) * a * lambda_bar - q * c;
  return potential == PotentialKind::reeb ? base - 2.0 * n : base;
}

/// Implied Ricci tensor of the solenoidal theorems with λ̄ eliminated.
inline Tensor implied_ricci_solenoidal(SolitonKind kind, const StructureAtPoint& s, double a, double xev,
                                       const Tensor& nabla_v, const Tensor& v) {
  TheoremInputs in;
  in.a = a;
  in.n = s.n;
  in.xi_eta_v = xev;
  return ricci_in_terms_of_lambda(kind, PotentialKind::vector, s, a, theorem_lambda(kind, Scenario::solenoidal, in),
                                  &nabla_v, &v);
}

/// scal = (2n+1)[(2n-1)a ξ(η(V)) - 2n] (Riemann) or (2n+1)[a ξ(η(V)) - 2n] (Ricci).
inline double implied_scalar_solenoidal(SolitonKind kind, int n, double a, double xev) {
  const double m = kind == SolitonKind::riemann ? 2.0 * n - 1.0 : 1.0;
  return (2.0 * n + 1.0) * (m * a * xev - 2.0 * n);
}

/// scal = -(2n-1)Δf - 2n(2n+1) (Riemann) or -Δf - 2n(2n+1) (Ricci), V ḡ-orthogonal to ξ.
inline double implied_scalar_gradient_orthogonal(SolitonKind kind, int n, double laplacian) {
  const double m = kind == SolitonKind::riemann ? 2.0 * n - 1.0 : 1.0;
  return -m * laplacian - 2.0 * n * (2.0 * n + 1.0);
}

/// Curvature a scenario forces on the base, compared with the base at the point.
struct ImpliedCurvature {
  std::optional<Tensor> ricci;  // absent when only the scalar curvature is fixed
  double scalar = 0.0;
  std::optional<double> ricci_norm2;         // |ricci|² by hs_inner
  std::optional<double> stated_ricci_norm2;  // reeb only
  Residual ricci_residual;
  Residual scalar_residual;
};

/// Solenoidal Ricci needs `v` and `nabla_v`; without them only the scalar is implied.
inline ImpliedCurvature theorem_implied_curvature(SolitonKind kind, Scenario scenario, const TheoremInputs& in,
                                                  const KenmotsuPoint& k, const Tensor* v = nullptr,
                                                  const Tensor* nabla_v = nullptr) {
  using detail::need;
  const double a = DeformationParams(need(in.a, "a", kind, scenario)).a;
  ImpliedCurvature out;
  switch (scenario) {
    case Scenario::reeb: {
      const auto c = reeb_constants(kind, k.n, a);
      out.ricci = ricci_of_form(k, c.ricci_g, c.ricci_eta);
      out.scalar = c.scalar;
      out.stated_ricci_norm2 = c.stated_ricci_norm2;
      break;
    }
    case Scenario::solenoidal: {
      const double xev = need(in.xi_eta_v, "xi(eta(V))", kind, scenario);
      if (v && nabla_v) out.ricci = implied_ricci_solenoidal(kind, k, a, xev, *nabla_v, *v);
      out.scalar = implied_scalar_solenoidal(kind, k.n, a, xev);
      break;
    }
    case Scenario::gradient:
    case Scenario::gradient_orthogonal:
      out.scalar = implied_scalar_gradient_orthogonal(kind, k.n, need(in.laplacian, "Laplacian(f)", kind, scenario));
      break;
  }
  const double scal = k.geometry.scalar_curvature();
  out.scalar_residual = {std::abs(out.scalar - scal), residual_scale({out.scalar, scal})};
  if (out.ricci) {
    const Tensor& gi = k.geometry.inverse();
    out.ricci_norm2 = hs_inner(*out.ricci, *out.ricci, gi);
    out.ricci_residual = tensor_residual(*out.ricci - k.geometry.ricci(), {out.ricci->max_abs()});
  }
  return out;
}

// ---------------------------------------------------------------------------
// ξ compatibility: given the curvature forced by a ξ̄-soliton, the undeformed
// ξ-soliton exists exactly for λ = 0 (Riemann) or λ = -2n (Ricci).

struct XiCompatibility {
  Residual deformed;           // ξ̄-soliton at the theorem's λ̄
  Residual undeformed;         // ξ-soliton at the distinguished λ
  Residual undeformed_offset;  // same, λ shifted by `offset`
  double lambda = 0.0;
  double offset = 0.5;
};

inline XiCompatibility xi_compatibility_check(SolitonKind kind, const KenmotsuPoint& k, double a,
                                              double offset = 0.5) {
  (void)DeformationParams(a);
  const int n = k.n;
  const auto consts = reeb_constants(kind, n, a);
  Tensor r04;
  Tensor ric;
  if (kind == SolitonKind::riemann) {
    r04 = implied_riemann04_reeb(k);
    ric = ricci_from_riemann04(r04, k.geometry.inverse());
  } else {
    r04 = k.geometry.riemann04();
    ric = ricci_of_form(k, consts.ricci_g, consts.ricci_eta);
  }
  const double scal = metric_trace(ric, k.geometry.inverse());

  SolitonTerms bar;
  bar.n = n;
  bar.g = a * k.g() + (a * (a - 1.0)) * k.eta_eta;
  bar.inverse = lu_invert(bar.g).inverse;
  bar.riemann04 = deformed_riemann04_closed(k, r04, a);
  bar.ricci = deformed_ricci_closed(k, ric, a);
  bar.scalar = deformed_scalar_closed(scal, n, a);
  bar.lie = 2.0 * k.horizontal;
  bar.div = 2.0 * n / a;
  bar.lambda = consts.lambda_bar;

  SolitonTerms base;
  base.n = n;
  base.g = k.g();
  base.inverse = k.geometry.inverse();
  base.riemann04 = r04;
  base.ricci = ric;
  base.scalar = scal;
  base.lie = 2.0 * k.horizontal;
  base.div = 2.0 * n;

  XiCompatibility out;
  out.offset = offset;
  out.lambda = kind == SolitonKind::riemann ? 0.0 : -2.0 * n;
  auto residual = [&](const SolitonTerms& t) {
    return kind == SolitonKind::riemann ? riemann_soliton_residual(t) : ricci_soliton_residual(t);
  };
  out.deformed = residual(bar);
  base.lambda = out.lambda;
  out.undeformed = residual(base);
  base.lambda = out.lambda + offset;
  out.undeformed_offset = residual(base);
  return out;
}

// ---------------------------------------------------------------------------
// Curvature-norm inequalities for deformed gradient solitons

struct Inequality {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool applicable = true;
  std::string hypothesis;  // empty when unconditional
  bool satisfied(double tol = 1e-9) const { return lhs >= rhs - tol * residual_scale({lhs, rhs}); }
};

struct Reconstruction {
  std::string name;
  double direct = 0.0;
  double reconstructed = 0.0;
  double relative() const { return std::abs(direct - reconstructed) / residual_scale({direct, reconstructed}); }
};

struct InequalityBattery {
  std::vector<Inequality> inequalities;
  Reconstruction hessian_norm;
  double lambda_bar = 0.0;
};

/// `lambda_bar` defaults to the gradient λ̄ formula of the matching theorem.
inline InequalityBattery inequality_battery(SolitonKind kind, const KenmotsuPoint& k, double a, const ScalarField& f,
                                            std::optional<double> lambda_bar = std::nullopt, double tol = 1e-9) {
  (void)DeformationParams(a);
  const double n = k.n;
  const double m2 = (2.0 * n - 1.0) * (2.0 * n - 1.0);
  const double q = 2.0 * n + 1.0;
  const double c = (a - 1.0) / a;
  const double a2 = a * a;

  const auto curv = deformed_curvature_closed(k, a);
  const auto ops = deformed_operators_closed(k, a, f);
  const Tensor gbar = a * k.g() + (a * (a - 1.0)) * k.eta_eta;
  const Tensor gbar_inv = lu_invert(gbar).inverse;
  const double ric_bar2 = hs_inner(curv.ricci, curv.ricci, gbar_inv);
  const double hess_bar2 = hs_inner(ops.hessian, ops.hessian, gbar_inv);
  const double lap_bar = ops.laplacian;

  const Tensor& gi = k.geometry.inverse();
  const Tensor& ric = k.geometry.ricci();
  const Tensor hess = k.geometry.hessian(f);
  const double ric2 = hs_inner(ric, ric, gi);
  const double hess2 = hs_inner(hess, hess, gi);
  const double scal = k.geometry.scalar_curvature();
  const double lap = k.geometry.laplacian(f);
  const double xf = k.xi_f(f);
  const double xxf = k.xi_xi_f(f);

  const double scale_f = residual_scale({hess.max_abs(), xf});
  const bool solenoidal = std::abs(lap_bar) <= tol * scale_f;
  const bool orthogonal = std::abs(xf) <= tol * scale_f;  // ḡ(grad̄ f, ξ) = ξ(f)
  const bool harmonic = std::abs(lap) <= tol * scale_f;

  InequalityBattery out;
  out.lambda_bar = lambda_bar ? *lambda_bar
                              : theorem_lambda(kind, Scenario::gradient, gradient_inputs(k, a, f));
  const double lb = out.lambda_bar;
  auto add = [&](std::string name, double lhs, double rhs, bool applicable = true, std::string hyp = {}) {
    out.inequalities.push_back({std::move(name), lhs, rhs, applicable, std::move(hyp)});
  };

  if (kind == SolitonKind::riemann) {
    add("|Ric_bar|^2 >= (2n-1)^2 [|Hess_bar(f)|^2 - Laplacian_bar(f)^2/(2n+1)]", ric_bar2,
        m2 * (hess_bar2 - lap_bar * lap_bar / q));
    add("|Ric_bar|^2 >= (2n-1)^2 |Hess_bar(f)|^2", ric_bar2, m2 * hess_bar2, solenoidal, "solenoidal");
    const double long_rhs = m2 * hess2 - 4.0 * n * c * scal - 4.0 * n * n * q * c * c - m2 / q * lap * lap -
                            2.0 * m2 / q * c * (xf - xxf) * lap + 2.0 * n * m2 / q * c * c * xf * xf -
                            2.0 * m2 * (n + n * a + a) * (a - 1.0) / (q * a2) * xxf * xxf +
                            2.0 * m2 * (2.0 * n + a) * (a - 1.0) / (q * a2) * xf * xxf;
    add("|Ric|^2 >= (2n-1)^2 |Hess(f)|^2 - 4n((a-1)/a) scal - ...", ric2, long_rhs);
    add("|Ric|^2 >= (2n-1)^2 |Hess(f)|^2 - (2n-1)^2 Laplacian(f)^2/(2n+1) + 4n(2n-1)((a-1)/a) Laplacian(f) + "
        "4n^2(2n+1)(a^2-1)/a^2",
        ric2, m2 * hess2 - m2 / q * lap * lap + 4.0 * n * (2.0 * n - 1.0) * c * lap + 4.0 * n * n * q * (a2 - 1.0) / a2,
        orthogonal, "V g_bar-orthogonal to xi");
    add("|Ric|^2 >= (2n-1)^2 |Hess(f)|^2 + 4n^2(2n+1)(a^2-1)/a^2", ric2,
        m2 * hess2 + 4.0 * n * n * q * (a2 - 1.0) / a2, orthogonal && harmonic,
        "V g_bar-orthogonal to xi, f harmonic");
    add("|Ric|^2 >= (2n-1)^2 |Hess(f)|^2 + ((a^2-1)/a^2)[4n^2 - (2n-1)^2 xi(xi(f))^2]", ric2,
        m2 * hess2 + (a2 - 1.0) / a2 * (4.0 * n * n - m2 * xxf * xxf), solenoidal, "solenoidal");
    out.hessian_norm = {"|Hess_bar(f)|^2 = [|Ric_bar|^2 - 4n^2(2n+1)lambda^2 + 16n^2 Laplacian_bar(f) lambda - "
                        "(6n-1)Laplacian_bar(f)^2]/(2n-1)^2",
                        hess_bar2,
                        (ric_bar2 - 4.0 * n * n * q * lb * lb + 16.0 * n * n * lap_bar * lb -
                         (6.0 * n - 1.0) * lap_bar * lap_bar) /
                            m2};
  } else {
    add("|Ric_bar|^2 >= |Hess_bar(f)|^2 - Laplacian_bar(f)^2/(2n+1)", ric_bar2, hess_bar2 - lap_bar * lap_bar / q);
    add("|Ric_bar|^2 >= |Hess_bar(f)|^2", ric_bar2, hess_bar2, solenoidal, "solenoidal");
    const double long_rhs = hess2 - 4.0 * n * c * scal - 4.0 * n * n * q * c * c - lap * lap / q -
                            2.0 / q * c * (xf - xxf) * lap + 2.0 * (2.0 * n + a) * (a - 1.0) / (q * a2) * xf * xxf +
                            2.0 * n / q * c * c * xf * xf - 2.0 * (n + n * a + a) * (a - 1.0) / (q * a2) * xxf * xxf;
    add("|Ric|^2 >= |Hess(f)|^2 - 4n((a-1)/a) scal - ...", ric2, long_rhs);
    add("|Ric|^2 >= |Hess(f)|^2 - Laplacian(f)^2/(2n+1) + 4n((a-1)/a) Laplacian(f) + 4n^2(2n+1)(a^2-1)/a^2", ric2,
        hess2 - lap * lap / q + 4.0 * n * c * lap + 4.0 * n * n * q * (a2 - 1.0) / a2, orthogonal,
        "V g_bar-orthogonal to xi");
    add("|Ric|^2 >= |Hess(f)|^2 + 4n^2(2n+1)(a^2-1)/a^2", ric2, hess2 + 4.0 * n * n * q * (a2 - 1.0) / a2,
        orthogonal && harmonic, "V g_bar-orthogonal to xi, f harmonic");
    add("|Ric|^2 >= |Hess(f)|^2 + ((a^2-1)/a^2)[4n^2 - xi(xi(f))^2]", ric2,
        hess2 + (a2 - 1.0) / a2 * (4.0 * n * n - xxf * xxf), solenoidal, "solenoidal");
    out.hessian_norm = {"|Hess_bar(f)|^2 = |Ric_bar|^2 - (2n+1)lambda^2 + 2 Laplacian_bar(f) lambda", hess_bar2,
                        ric_bar2 - q * lb * lb + 2.0 * lap_bar * lb};
  }
  return out;
}

}  // namespace acm
