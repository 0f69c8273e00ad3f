#pragma once

// D-homothetic deformation of an almost contact metric structure,
//   φ̄ = φ,  ξ̄ = ξ/a,  η̄ = aη,  ḡ = a g + a(a-1) η⊗η   (a > 0),
// together with the closed forms that express the deformed Levi-Civita data
// through undeformed quantities on a Kenmotsu base. Every closed form has a
// "direct" twin that recomputes the same object from ḡ itself.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "acm/structure.hpp"

namespace acm {

class DeformationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DeformationParams {
  explicit DeformationParams(double value) : a(value) {
    if (!(value > 0.0) || !std::isfinite(value))
      throw DeformationError("deformation parameter must be positive (got " + format_number(value) + ")");
  }
  double a;
};

struct DeformedStructure {
  AcmStructure base;
  double a;
  AcmStructure structure;  // (φ̄, ξ̄, η̄, ḡ)
};

inline DeformedStructure deform(const AcmStructure& s, DeformationParams params) {
  const double a = params.a;
  const ChartManifold& m = s.manifold();
  const int d = m.dim();
  const auto& eta = s.eta().components();
  const Expr ca = Expr::constant(a);
  const Expr cc = Expr::constant(a * (a - 1.0));
  std::vector<std::vector<Expr>> gbar(d, std::vector<Expr>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gbar[i][j] = ca * m.metric(i, j) + cc * (eta[i] * eta[j]);
  auto mbar = std::make_shared<const ChartManifold>(m.name() + "[a=" + format_number(a) + "]", m.coordinates(),
                                                    std::move(gbar), m.domain());
  std::vector<Expr> xibar;
  for (const auto& c : s.xi().components()) xibar.push_back(Expr::constant(1.0 / a) * c);
  std::vector<Expr> etabar;
  for (const auto& c : eta) etabar.push_back(ca * c);
  AcmStructure sbar(std::move(mbar), s.phi().components(), std::move(xibar), std::move(etabar));
  return DeformedStructure{s, a, std::move(sbar)};
}

inline DeformedStructure deform(const AcmStructure& s, double a) { return deform(s, DeformationParams(a)); }

// ---------------------------------------------------------------------------
// Curvature

struct DeformedCurvature {
  Tensor riemann13;
  Tensor riemann04;
  Tensor ricci;
  double scalar = 0.0;
};

/// R̄(X,Y,Z,W) = aR(X,Y,Z,W) + (a-1){η(Z)[η(X)g(Y,W) - η(Y)g(X,W)]
///               - g(X,Z)[g(Y,W) - η(Y)η(W)] + g(Y,Z)[g(X,W) - η(X)η(W)]}
/// for any curvature-like `r04` given on the base.
inline Tensor deformed_riemann04_closed(const StructureAtPoint& s, const Tensor& r04, double a) {
  const int d = s.dim();
  const Tensor& g = s.g();
  const Tensor& eta = s.eta;
  Tensor out = a * r04;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int w = 0; w < d; ++w) {
          const double brace = eta(z) * (eta(x) * g(y, w) - eta(y) * g(x, w)) -
                               g(x, z) * (g(y, w) - eta(y) * eta(w)) + g(y, z) * (g(x, w) - eta(x) * eta(w));
          out(x, y, z, w) += (a - 1.0) * brace;
        }
  return out;
}

/// Ric̄ = Ric + (2n(a-1)/a)(g - η⊗η)
inline Tensor deformed_ricci_closed(const StructureAtPoint& s, const Tensor& ric, double a) {
  return ric + (2.0 * s.n * (a - 1.0) / a) * s.horizontal;
}

/// scal̄ = scal/a + 2n(2n+1)(a-1)/a²
inline double deformed_scalar_closed(double scal, int n, double a) {
  return scal / a + 2.0 * n * (2.0 * n + 1.0) * (a - 1.0) / (a * a);
}

/// R̄, Ric̄ and scal̄ through R, Ric, scal of the Kenmotsu base.
inline DeformedCurvature deformed_curvature_closed(const KenmotsuPoint& k, double a) {
  (void)DeformationParams(a);
  const int d = k.dim();
  const double c = (a - 1.0) / a;
  DeformedCurvature out;

  // R̄(X,Y)Z = R(X,Y)Z + ((a-1)/a)[g(φY,φZ)X - g(φX,φZ)Y]
  out.riemann13 = k.geometry.riemann13();
  for (int l = 0; l < d; ++l)
    for (int kk = 0; kk < d; ++kk)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          out.riemann13(l, kk, i, j) +=
              c * (k.phi_metric(j, kk) * (l == i ? 1.0 : 0.0) - k.phi_metric(i, kk) * (l == j ? 1.0 : 0.0));

  out.riemann04 = deformed_riemann04_closed(k, k.geometry.riemann04(), a);
  out.ricci = deformed_ricci_closed(k, k.geometry.ricci(), a);
  out.scalar = deformed_scalar_closed(k.geometry.scalar_curvature(), k.n, a);
  return out;
}

inline DeformedCurvature deformed_curvature_closed(const AcmStructure& s, double a, const Point& p) {
  return deformed_curvature_closed(KenmotsuPoint(s, p), a);
}

inline DeformedCurvature deformed_curvature_direct(const DeformedStructure& d, const Point& p) {
  LocalGeometry geo(d.structure.manifold(), p);
  return {geo.riemann13(), geo.riemann04(), geo.ricci(), geo.scalar_curvature()};
}

// ---------------------------------------------------------------------------
// Connection and differential operators

struct DeformedOperators {
  Tensor connection;     // Γ̄^l_ij
  Tensor nabla_phi;      // (k,j,i) = ((∇̄_i φ̄) ∂_j)^k
  Tensor nabla_xi;       // (k,i) = ∇̄_i ξ̄^k
  Tensor lie_xi_metric;  // £_ξ̄ ḡ
  double div_xi = 0.0;   // div̄ ξ̄
  Tensor hessian;        // Hess̄(f)
  Tensor gradient;       // grad̄(f)
  double laplacian = 0.0;
};

inline DeformedOperators deformed_operators_closed(const KenmotsuPoint& k, double a, const ScalarField& f) {
  (void)DeformationParams(a);
  const int d = k.dim();
  const int n = k.n;
  const double c = (a - 1.0) / a;
  DeformedOperators out;

  // ∇̄ = ∇ + ((a-1)/a)(g - η⊗η)⊗ξ
  out.connection = k.geometry.christoffel();
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out.connection(l, i, j) += c * k.horizontal(i, j) * k.xi(l);

  // (∇̄_X φ̄)Y = (1/a) g(φX,Y)ξ - η(Y)φX
  out.nabla_phi = Tensor(d, 1, 2);
  for (int kk = 0; kk < d; ++kk)
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i)
        out.nabla_phi(kk, j, i) = k.g_phi(i, j) * k.xi(kk) / a - k.eta(j) * k.phi(kk, i);

  // ∇̄ξ̄ = (1/a)(I - η⊗ξ)
  out.nabla_xi = Tensor(d, 1, 1);
  for (int kk = 0; kk < d; ++kk)
    for (int i = 0; i < d; ++i) out.nabla_xi(kk, i) = ((kk == i ? 1.0 : 0.0) - k.eta(i) * k.xi(kk)) / a;

  out.lie_xi_metric = 2.0 * k.horizontal;
  out.div_xi = 2.0 * n / a;

  const double xf = k.xi_f(f);
  const double xxf = k.xi_xi_f(f);
  // Hess̄(f) = Hess(f) - ((a-1)/a) ξ(f) (♭_g∘∇ξ); on a Kenmotsu base ♭_g∘∇ξ = g - η⊗η
  out.hessian = k.geometry.hessian(f) - (c * xf) * k.horizontal;
  out.gradient = (1.0 / a) * k.geometry.gradient(f) - ((a - 1.0) / (a * a) * xf) * k.xi;
  out.laplacian = k.geometry.laplacian(f) / a - 2.0 * n * (a - 1.0) / (a * a) * xf - (a - 1.0) / (a * a) * xxf;
  return out;
}

inline DeformedOperators deformed_operators_closed(const AcmStructure& s, double a, const ScalarField& f,
                                                   const Point& p) {
  return deformed_operators_closed(KenmotsuPoint(s, p), a, f);
}

inline DeformedOperators deformed_operators_direct(const DeformedStructure& d, const ScalarField& f,
                                                   const Point& p) {
  LocalGeometry geo(d.structure.manifold(), p);
  DeformedOperators out;
  out.connection = geo.christoffel();
  out.nabla_phi = geo.covariant_derivative(d.structure.phi());
  out.nabla_xi = geo.covariant_derivative(d.structure.xi());
  out.lie_xi_metric = geo.lie_derivative_metric(d.structure.xi());
  out.div_xi = geo.divergence(d.structure.xi());
  out.hessian = geo.hessian(f);
  out.gradient = geo.gradient(f);
  out.laplacian = geo.laplacian(f);
  return out;
}

/// div̄ V = div V
inline double deformed_divergence_closed(const KenmotsuPoint& k, double a, const VectorField& v) {
  (void)DeformationParams(a);
  return k.geometry.divergence(v);
}

inline double deformed_divergence_direct(const DeformedStructure& d, const VectorField& v, const Point& p) {
  return LocalGeometry(d.structure.manifold(), p).divergence(v);
}

// ---------------------------------------------------------------------------
// Hilbert-Schmidt inner products under ḡ

/// <T1,T2>_ḡ = (1/a²)<T1,T2>_g - ((a²-1)/a⁴) T1(ξ,ξ) T2(ξ,ξ).
/// Exact when one of the tensors has no mixed components T(X,ξ), X ⊥ ξ.
inline double deformed_inner_closed(double a, double inner_g, double t1_xi_xi, double t2_xi_xi) {
  return inner_g / (a * a) - (a * a - 1.0) / (a * a * a * a) * t1_xi_xi * t2_xi_xi;
}

/// Largest |T(X,ξ)| over unit X ⊥ ξ, measured as the g-norm of T(·,ξ) - T(ξ,ξ)η.
inline double mixed_component_norm(const StructureAtPoint& s, const Tensor& t) {
  const int d = s.dim();
  Tensor w = Tensor::covector(d);
  const double txx = apply(t, s.xi, s.xi);
  for (int i = 0; i < d; ++i) {
    double v = 0.0;
    for (int j = 0; j < d; ++j) v += t(i, j) * s.xi(j);
    w(i) = v - txx * s.eta(i);
  }
  double n2 = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) n2 += s.geometry.inverse()(i, j) * w(i) * w(j);
  return std::sqrt(std::max(n2, 0.0));
}

struct NormIdentity {
  std::string name;
  double lhs = 0.0;  // computed directly with ḡ^{-1}
  double rhs = 0.0;  // closed form in g-quantities
  bool applicable = true;
  double residual() const { return std::abs(lhs - rhs); }
  double scale() const { return residual_scale({lhs, rhs}); }
  double relative() const { return residual() / scale(); }
};

/// The ten identities relating ḡ-inner products of g, Ric, Hess(f), η⊗η to
/// g-quantities. The |Hess(f)|² identity is flagged inapplicable when Hess(f)
/// has mixed components, since the cross terms then do not cancel.
inline std::vector<NormIdentity> deformed_inner_products(const KenmotsuPoint& k, double a, const ScalarField& f,
                                                         double mixed_tol = 1e-9) {
  (void)DeformationParams(a);
  const int n = k.n;
  const Tensor& g = k.g();
  const Tensor& ric = k.geometry.ricci();
  const Tensor hess = k.geometry.hessian(f);
  const Tensor& ee = k.eta_eta;
  const Tensor& gi = k.geometry.inverse();

  // ḡ^{-1} from ḡ = a g + a(a-1)η⊗η, inverted numerically
  const Tensor gbar = a * g + (a * (a - 1.0)) * ee;
  const Tensor gbar_inv = lu_invert(gbar).inverse;

  const double a2 = a * a;
  const double a4 = a2 * a2;
  const double scal = k.geometry.scalar_curvature();
  const double lap = k.geometry.laplacian(f);
  const double xxf = k.xi_xi_f(f);
  const double ric_hess = hs_inner(ric, hess, gi);
  const double ric2 = hs_inner(ric, ric, gi);
  const double hess2 = hs_inner(hess, hess, gi);
  const double mixed = mixed_component_norm(k, hess);

  std::vector<NormIdentity> out;
  auto add = [&](std::string name, const Tensor& t1, const Tensor& t2, double rhs, bool ok = true) {
    out.push_back({std::move(name), hs_inner(t1, t2, gbar_inv), rhs, ok});
  };
  add("<g,Ric>", g, ric, scal / a2 + 2.0 * n * (a2 - 1.0) / a4);
  add("<g,Hess(f)>", g, hess, lap / a2 - (a2 - 1.0) / a4 * xxf);
  add("<g,eta(x)eta>", g, ee, 1.0 / a4);
  add("<Ric,Hess(f)>", ric, hess, ric_hess / a2 + 2.0 * n * (a2 - 1.0) / a4 * xxf);
  add("<Ric,eta(x)eta>", ric, ee, -2.0 * n / a4);
  add("<Hess(f),eta(x)eta>", hess, ee, xxf / a4);
  add("|g|^2", g, g, (2.0 * n * a2 + 1.0) / a4);
  add("|Ric|^2", ric, ric, ric2 / a2 - 4.0 * n * n * (a2 - 1.0) / a4);
  add("|Hess(f)|^2", hess, hess, hess2 / a2 - (a2 - 1.0) / a4 * xxf * xxf,
      mixed <= mixed_tol * residual_scale({hess.max_abs()}));
  add("|eta(x)eta|^2", ee, ee, 1.0 / a4);
  return out;
}

inline std::vector<NormIdentity> deformed_inner_products(const AcmStructure& s, double a, const ScalarField& f,
                                                         const Point& p) {
  return deformed_inner_products(KenmotsuPoint(s, p), a, f);
}

/// The g-inner products the ḡ identities are built from.
inline std::vector<NormIdentity> base_inner_products(const KenmotsuPoint& k, const ScalarField& f) {
  const int n = k.n;
  const Tensor& g = k.g();
  const Tensor& gi = k.geometry.inverse();
  const Tensor& ric = k.geometry.ricci();
  const Tensor hess = k.geometry.hessian(f);
  const Tensor& ee = k.eta_eta;
  std::vector<NormIdentity> out;
  out.push_back({"<g,g> = 2n+1", hs_inner(g, g, gi), 2.0 * n + 1.0});
  out.push_back({"<g,Ric> = scal", hs_inner(g, ric, gi), k.geometry.scalar_curvature()});
  out.push_back({"<g,Hess(f)> = Laplacian(f)", hs_inner(g, hess, gi), k.geometry.laplacian(f)});
  out.push_back({"<g,eta(x)eta> = 1", hs_inner(g, ee, gi), 1.0});
  out.push_back({"<Ric,eta(x)eta> = -2n", hs_inner(ric, ee, gi), -2.0 * n});
  out.push_back({"<Hess(f),eta(x)eta> = xi(xi(f))", hs_inner(hess, ee, gi), k.xi_xi_f(f)});
  out.push_back({"<eta(x)eta,eta(x)eta> = 1", hs_inner(ee, ee, gi), 1.0});
  return out;
}

// ---------------------------------------------------------------------------
// Harmonic functions and admissible deformation parameters

struct HarmonicEquivalence {
  double laplacian = 0.0;           // Δf
  double deformed_laplacian = 0.0;  // Δ̄f
  double condition = 0.0;           // Hess(f)(ξ,ξ) + 2n η(grad f)
  bool applicable = false;          // f is Δ-harmonic
  bool deformed_harmonic = false;
  bool condition_holds = false;
  /// Vacuously true when f is not Δ-harmonic.
  bool equivalence_holds() const { return !applicable || deformed_harmonic == condition_holds; }
};

/// For a Δ-harmonic f: Δ̄f = 0 ⇔ Hess(f)(ξ,ξ) = -2n η(grad f). Needs a ≠ 1 to be informative.
inline HarmonicEquivalence harmonic_equivalence(const KenmotsuPoint& k, double a, const ScalarField& f,
                                                double tol = 1e-9) {
  const auto ops = deformed_operators_closed(k, a, f);
  HarmonicEquivalence r;
  const Tensor hess = k.geometry.hessian(f);
  const Tensor gradf = k.geometry.gradient(f);
  r.laplacian = k.geometry.laplacian(f);
  r.deformed_laplacian = ops.laplacian;
  r.condition = apply(hess, k.xi, k.xi) + 2.0 * k.n * apply(k.eta, gradf);
  const double scale = residual_scale({hess.max_abs(), gradf.max_abs()});
  r.applicable = std::abs(r.laplacian) <= tol * scale;
  r.deformed_harmonic = std::abs(r.deformed_laplacian) <= tol * scale;
  r.condition_holds = std::abs(r.condition) <= tol * scale;
  return r;
}

inline HarmonicEquivalence harmonic_equivalence(const AcmStructure& s, double a, const ScalarField& f,
                                                const Point& p) {
  return harmonic_equivalence(KenmotsuPoint(s, p), a, f);
}

struct RicciNormBound {
  double lhs = 0.0;  // |Ric|²_g
  double rhs = 0.0;  // 4n²(a²-1)/a²
  bool satisfied = false;
  /// Present only when |Ric|²_g < 4n²; then a is confined to (0, stated_a_sup).
  std::optional<double> stated_a_sup;
  /// Supremum implied by |Ric|²_g ≥ 4n²(a²-1)/a² itself: 2n / sqrt(4n² - |Ric|²_g).
  std::optional<double> sharp_a_sup;
};

inline RicciNormBound ricci_norm_bound(double ric_norm2, int n, double a) {
  (void)DeformationParams(a);
  RicciNormBound b;
  const double n2 = 4.0 * n * n;
  b.lhs = ric_norm2;
  b.rhs = n2 * (a * a - 1.0) / (a * a);
  b.satisfied = b.lhs >= b.rhs - 1e-12 * residual_scale({b.lhs, b.rhs});
  if (ric_norm2 < n2) {
    b.stated_a_sup = n2 / (n2 - ric_norm2);
    b.sharp_a_sup = std::sqrt(n2) / std::sqrt(n2 - ric_norm2);
  }
  return b;
}

inline RicciNormBound remark_2_3_bound(const AcmStructure& s, double a, const Point& p) {
  KenmotsuPoint k(s, p);
  const Tensor& ric = k.geometry.ricci();
  return ricci_norm_bound(hs_inner(ric, ric, k.geometry.inverse()), k.n, a);
}

}  // namespace acm
