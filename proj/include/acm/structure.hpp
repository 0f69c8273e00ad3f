#pragma once

// Almost contact metric structures (φ, ξ, η, g) on a chart manifold, their
// defining axioms, and the Kenmotsu condition
//   (∇_X φ)Y = g(φX, Y) ξ - η(Y) φX.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "acm/geometry.hpp"

namespace acm {

class AcmViolation : public std::runtime_error {
 public:
  AcmViolation(std::string axiom, const std::string& what)
      : std::runtime_error(what), axiom_(std::move(axiom)) {}
  const std::string& axiom() const noexcept { return axiom_; }

 private:
  std::string axiom_;
};

class NotKenmotsuError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative Kenmotsu residual below which closed forms are accepted.
inline constexpr double kKenmotsuTolerance = 1e-8;

class AcmStructure {
 public:
  /// `phi` is row-major φ^i_j. When `eta` is omitted it is defined as i_ξ g.
  AcmStructure(std::shared_ptr<const ChartManifold> manifold, std::vector<Expr> phi, std::vector<Expr> xi,
               std::optional<std::vector<Expr>> eta = std::nullopt)
      : manifold_(std::move(manifold)) {
    const int dim = manifold_->dim();
    if (dim % 2 == 0)
      throw GeometryError("almost contact structure needs an odd dimension, '" + manifold_->name() + "' has " +
                          std::to_string(dim));
    if (dim < 3) throw GeometryError("almost contact structure needs dimension 2n+1 with n >= 1");
    if (static_cast<int>(xi.size()) != dim) throw GeometryError("xi has the wrong number of components");
    eta_given_ = eta.has_value();
    std::vector<Expr> eta_exprs;
    if (eta) {
      eta_exprs = std::move(*eta);
    } else {
      eta_exprs.resize(dim);
      for (int i = 0; i < dim; ++i) {
        Expr s = Expr::constant(0.0);
        for (int j = 0; j < dim; ++j) s = s + manifold_->metric(i, j) * xi[j];
        eta_exprs[i] = s;
      }
    }
    const Scope& c = manifold_->coordinates();
    phi_ = EndomorphismField(std::move(phi), c);
    xi_ = VectorField(std::move(xi), c);
    eta_ = CovectorField(std::move(eta_exprs), c);
  }

  const ChartManifold& manifold() const { return *manifold_; }
  const std::shared_ptr<const ChartManifold>& shared_manifold() const { return manifold_; }
  int dim() const { return manifold_->dim(); }
  int n() const { return (manifold_->dim() - 1) / 2; }
  const EndomorphismField& phi() const { return phi_; }
  const VectorField& xi() const { return xi_; }
  const CovectorField& eta() const { return eta_; }
  bool eta_given() const { return eta_given_; }

 private:
  std::shared_ptr<const ChartManifold> manifold_;
  EndomorphismField phi_;
  VectorField xi_;
  CovectorField eta_;
  bool eta_given_ = false;
};

/// Pointwise values of φ, ξ, η together with the Levi-Civita data of g.
struct StructureAtPoint {
  StructureAtPoint(const AcmStructure& s, const Point& p)
      : geometry(s.manifold(), p), phi(s.phi().value(p)), xi(s.xi().value(p)), eta(s.eta().value(p)), n(s.n()) {
    const int d = s.dim();
    eta_eta = tensor_product(eta, eta);
    horizontal = geometry.g() - eta_eta;
    phi_metric = Tensor::bilinear(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double acc = 0.0;
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) acc += geometry.g()(a, b) * phi(a, i) * phi(b, j);
        phi_metric(i, j) = acc;
      }
  }

  int dim() const { return geometry.dim(); }
  const Tensor& g() const { return geometry.g(); }

  /// g(φ∂_i, ∂_j)
  double g_phi(int i, int j) const {
    double s = 0.0;
    for (int m = 0; m < dim(); ++m) s += g()(m, j) * phi(m, i);
    return s;
  }

  LocalGeometry geometry;
  Tensor phi;
  Tensor xi;
  Tensor eta;
  int n;
  Tensor eta_eta;     // η⊗η
  Tensor horizontal;  // g - η⊗η
  Tensor phi_metric;  // g(φ·, φ·)
};

struct AcmAxiomResiduals {
  double eta_xi = 0.0;             // |η(ξ) - 1|
  double eta_dual = 0.0;           // η - i_ξ g, relative to |g|
  double phi_squared = 0.0;        // φ² + I - η⊗ξ
  double compatible_metric = 0.0;  // g(φ·,φ·) - g + η⊗η, relative to |g|
  double phi_xi = 0.0;             // φξ
  double eta_phi = 0.0;            // η∘φ
  double phi_skew = 0.0;           // g(φ·,·) + g(·,φ·), relative to |g|

  double max() const {
    return std::max({eta_xi, eta_dual, phi_squared, compatible_metric, phi_xi, eta_phi, phi_skew});
  }
};

inline AcmAxiomResiduals acm_axiom_residuals(const StructureAtPoint& s) {
  const int d = s.dim();
  const Tensor& g = s.g();
  const double scale = residual_scale({g.max_abs()});
  AcmAxiomResiduals r;
  r.eta_xi = std::abs(apply(s.eta, s.xi) - 1.0);
  for (int i = 0; i < d; ++i) {
    double ixi = 0.0;
    for (int j = 0; j < d; ++j) ixi += g(i, j) * s.xi(j);
    r.eta_dual = std::max(r.eta_dual, std::abs(s.eta(i) - ixi) / scale);
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double sq = 0.0;
      for (int m = 0; m < d; ++m) sq += s.phi(i, m) * s.phi(m, j);
      const double expected = (i == j ? -1.0 : 0.0) + s.xi(i) * s.eta(j);
      r.phi_squared = std::max(r.phi_squared, std::abs(sq - expected));
      r.compatible_metric =
          std::max(r.compatible_metric, std::abs(s.phi_metric(i, j) - s.horizontal(i, j)) / scale);
      r.phi_skew = std::max(r.phi_skew, std::abs(s.g_phi(i, j) + s.g_phi(j, i)) / scale);
    }
  for (int i = 0; i < d; ++i) {
    double px = 0.0;
    double ep = 0.0;
    for (int m = 0; m < d; ++m) {
      px += s.phi(i, m) * s.xi(m);
      ep += s.eta(m) * s.phi(m, i);
    }
    r.phi_xi = std::max(r.phi_xi, std::abs(px));
    r.eta_phi = std::max(r.eta_phi, std::abs(ep));
  }
  return r;
}

inline AcmAxiomResiduals acm_axiom_residuals(const AcmStructure& s, const Point& p) {
  return acm_axiom_residuals(StructureAtPoint(s, p));
}

/// Throws AcmViolation naming the first axiom that fails at any of `points`.
inline void validate_acm(const AcmStructure& s, const std::vector<Point>& points, double tol = 1e-10) {
  for (const auto& p : points) {
    const auto r = acm_axiom_residuals(s, p);
    const std::pair<const char*, double> checks[] = {
        {"eta(xi) = 1", r.eta_xi},
        {"eta = i_xi g", r.eta_dual},
        {"phi^2 = -I + eta (x) xi", r.phi_squared},
        {"g(phi X, phi Y) = g(X,Y) - eta(X)eta(Y)", r.compatible_metric},
        {"phi xi = 0", r.phi_xi},
        {"eta o phi = 0", r.eta_phi},
        {"g(phi X, Y) = -g(X, phi Y)", r.phi_skew},
    };
    for (const auto& [name, value] : checks)
      if (!(value <= tol))
        throw AcmViolation(name, std::string("almost contact axiom '") + name + "' fails at " + p.describe() +
                                     " (residual " + format_number(value) + ")");
  }
}

// ---------------------------------------------------------------------------
// Kenmotsu condition

struct KenmotsuResidual {
  double nabla_phi = 0.0;  // (∇_X φ)Y - g(φX,Y)ξ + η(Y)φX
  double nabla_xi = 0.0;   // ∇ξ - I + η⊗ξ
  double scale = 1.0;

  /// Relative residual of both conditions.
  double value() const { return std::max(nabla_phi, nabla_xi) / scale; }
};

inline KenmotsuResidual kenmotsu_residual(const StructureAtPoint& s, const AcmStructure& structure) {
  const int d = s.dim();
  const Tensor nphi = s.geometry.covariant_derivative(structure.phi());
  const Tensor nxi = s.geometry.covariant_derivative(structure.xi());
  KenmotsuResidual r;
  double mag = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const double rhs = s.g_phi(i, j) * s.xi(k) - s.eta(j) * s.phi(k, i);
        r.nabla_phi = std::max(r.nabla_phi, std::abs(nphi(k, j, i) - rhs));
        mag = std::max({mag, std::abs(nphi(k, j, i)), std::abs(rhs)});
      }
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i) {
      const double rhs = (i == k ? 1.0 : 0.0) - s.eta(i) * s.xi(k);
      r.nabla_xi = std::max(r.nabla_xi, std::abs(nxi(k, i) - rhs));
      mag = std::max({mag, std::abs(nxi(k, i))});
    }
  r.scale = residual_scale({mag});
  return r;
}

inline KenmotsuResidual kenmotsu_residual(const AcmStructure& s, const Point& p) {
  return kenmotsu_residual(StructureAtPoint(s, p), s);
}

/// Consequences of the Kenmotsu condition, each as an absolute residual with
/// its own magnitude scale.
struct KenmotsuIdentities {
  struct Item {
    double residual = 0.0;
    double scale = 1.0;
    double relative() const { return residual / scale; }
  };
  Item lie_xi_metric;  // £_ξ g = 2(g - η⊗η)
  Item div_xi;         // div ξ = 2n
  Item curvature_xi;   // R(X,Y)ξ = η(X)Y - η(Y)X
  Item ricci_xi_xi;    // Ric(ξ,ξ) = -2n
  Item curvature_symmetries;
};

inline KenmotsuIdentities kenmotsu_identities(const StructureAtPoint& s, const AcmStructure& structure) {
  const int d = s.dim();
  const int n = s.n;
  KenmotsuIdentities out;

  const Tensor lie = s.geometry.lie_derivative_metric(structure.xi());
  const Tensor expected = 2.0 * s.horizontal;
  out.lie_xi_metric = {max_abs_diff(lie, expected), residual_scale({lie.max_abs(), expected.max_abs()})};

  const double div = s.geometry.divergence(structure.xi());
  out.div_xi = {std::abs(div - 2.0 * n), residual_scale({2.0 * n})};

  const Tensor& r13 = s.geometry.riemann13();
  double res = 0.0;
  double mag = 0.0;
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double v = 0.0;
        for (int k = 0; k < d; ++k) v += r13(l, k, i, j) * s.xi(k);
        const double rhs = s.eta(i) * (l == j ? 1.0 : 0.0) - s.eta(j) * (l == i ? 1.0 : 0.0);
        res = std::max(res, std::abs(v - rhs));
        mag = std::max({mag, std::abs(v), std::abs(rhs)});
      }
  out.curvature_xi = {res, residual_scale({mag})};

  const double rxx = apply(s.geometry.ricci(), s.xi, s.xi);
  out.ricci_xi_xi = {std::abs(rxx + 2.0 * n), residual_scale({2.0 * n})};

  const Tensor& r04 = s.geometry.riemann04();
  out.curvature_symmetries = {curvature_symmetry_defect(r04), residual_scale({r04.max_abs()})};
  return out;
}

/// Pointwise context on a Kenmotsu manifold; refuses non-Kenmotsu points.
class KenmotsuPoint : public StructureAtPoint {
 public:
  KenmotsuPoint(const AcmStructure& s, const Point& p, double tol = kKenmotsuTolerance)
      : StructureAtPoint(s, p), structure_(&s) {
    const auto r = kenmotsu_residual(static_cast<const StructureAtPoint&>(*this), s);
    if (!(r.value() <= tol))
      throw NotKenmotsuError("structure on '" + s.manifold().name() + "' is not Kenmotsu at " + p.describe() +
                             " (residual " + format_number(r.value()) + ")");
  }

  const AcmStructure& structure() const { return *structure_; }
  const Point& point() const { return geometry.point(); }

  /// ξ(f)
  double xi_f(const ScalarField& f) const { return apply(f.differential(point()), xi); }

  /// ξ(ξ(f)) as an iterated directional derivative.
  double xi_xi_f(const ScalarField& f) const {
    const Tensor df = f.differential(point());
    const Tensor ddf = f.second_partials(point());
    const Tensor dxi = structure_->xi().partials(point());
    double s = 0.0;
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) s += xi(i) * (dxi(j, i) * df(j) + xi(j) * ddf(i, j));
    return s;
  }

 private:
  const AcmStructure* structure_;
};

}  // namespace acm
