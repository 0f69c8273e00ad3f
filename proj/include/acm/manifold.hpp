#pragma once

// Single-chart Riemannian manifolds given by symbolic metric components,
// symbolic fields on them, and deterministic sample sets.

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "acm/expr.hpp"
#include "acm/tensor.hpp"

namespace acm {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Metric data at one point. `dg(k,i,j)` = ∂_k g_ij and `ddg(l,k,i,j)` =
/// ∂_l ∂_k g_ij are coordinate partials stored densely, not tensors.
struct MetricAtPoint {
  Tensor g;
  Tensor inverse;
  double det = 0.0;
  Tensor dg;
  Tensor ddg;
};

class ChartManifold {
 public:
  /// `metric` is the full component matrix; it must be structurally symmetric.
  /// `domain` lists expressions that are required to be > 0.
  ChartManifold(std::string name, Scope coordinates, std::vector<std::vector<Expr>> metric,
                std::vector<Expr> domain = {})
      : name_(std::move(name)),
        coords_(std::make_shared<const Scope>(std::move(coordinates))),
        domain_(std::move(domain)) {
    const int n = dim();
    if (n < 1) throw GeometryError("manifold '" + name_ + "' has no coordinates");
    for (const auto& c : *coords_) {
      if (!is_identifier(c)) throw GeometryError("invalid coordinate name '" + c + "'");
      if (is_reserved_name(c)) throw GeometryError("coordinate name '" + c + "' is reserved");
    }
    if (static_cast<int>(metric.size()) != n) throw GeometryError("metric matrix has wrong size");
    for (const auto& row : metric)
      if (static_cast<int>(row.size()) != n) throw GeometryError("metric matrix has wrong size");
    g_.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Expr a = simplify_basic(metric[i][j]);
        if (j > i && !structurally_equal(a, simplify_basic(metric[j][i])))
          throw GeometryError("metric of '" + name_ + "' is not symmetric: g_" + (*coords_)[i] +
                              (*coords_)[j] + " != g_" + (*coords_)[j] + (*coords_)[i]);
        g_[i * n + j] = std::move(a);
      }
    dg_.resize(static_cast<std::size_t>(n) * n * n);
    ddg_.resize(static_cast<std::size_t>(n) * n * n * n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Expr d = diff(g_[i * n + j], (*coords_)[k]);
          dg_[(k * n + i) * n + j] = d;
          dg_[(k * n + j) * n + i] = d;
          for (int l = 0; l < n; ++l) {
            Expr dd = diff(d, (*coords_)[l]);
            ddg_[((l * n + k) * n + i) * n + j] = dd;
            ddg_[((l * n + k) * n + j) * n + i] = dd;
          }
        }
  }

  /// Builds the full matrix from upper-triangle entries keyed by (i, j), i <= j.
  static std::vector<std::vector<Expr>> symmetric_from_upper(
      int n, const std::vector<std::pair<std::pair<int, int>, Expr>>& upper) {
    std::vector<std::vector<Expr>> m(n, std::vector<Expr>(n, Expr::constant(0.0)));
    for (const auto& [ij, e] : upper) {
      m[ij.first][ij.second] = e;
      m[ij.second][ij.first] = e;
    }
    return m;
  }

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(coords_->size()); }
  const Scope& coordinates() const { return *coords_; }
  const std::shared_ptr<const Scope>& shared_coordinates() const { return coords_; }
  const Expr& metric(int i, int j) const { return g_[i * dim() + j]; }
  const std::vector<Expr>& domain() const { return domain_; }

  Point point(std::vector<double> values) const { return Point(coords_, std::move(values)); }

  bool in_domain(const Point& p) const {
    for (const auto& c : domain_) {
      try {
        if (!(eval(c, p) > 0.0)) return false;
      } catch (const EvalError&) {
        return false;
      }
    }
    return true;
  }

  void require_in_domain(const Point& p) const {
    if (p.size() != coords_->size()) throw GeometryError("point has wrong number of coordinates");
    if (!in_domain(p)) throw GeometryError("point " + p.describe() + " lies outside the domain of '" + name_ + "'");
  }

  MetricAtPoint metric_at(const Point& p) const {
    require_in_domain(p);
    const int n = dim();
    MetricAtPoint m;
    m.g = Tensor(n, 0, 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.g(i, j) = eval(g_[i * n + j], p);
    if (!is_positive_definite(m.g))
      throw GeometryError("metric of '" + name_ + "' is not positive definite at " + p.describe());
    try {
      auto lu = lu_invert(m.g);
      m.inverse = std::move(lu.inverse);
      m.det = lu.determinant;
    } catch (const std::domain_error&) {
      throw GeometryError("metric of '" + name_ + "' is singular at " + p.describe());
    }
    double defect = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += m.g(i, k) * m.inverse(k, j);
        defect = std::max(defect, std::abs(s - (i == j ? 1.0 : 0.0)));
      }
    if (defect > 1e-10)
      throw GeometryError("metric of '" + name_ + "' is ill-conditioned at " + p.describe());
    m.dg = Tensor(n, 0, 3);
    m.ddg = Tensor(n, 0, 4);
    auto dg = m.dg.data();
    auto ddg = m.ddg.data();
    for (std::size_t i = 0; i < dg_.size(); ++i) dg[i] = eval(dg_[i], p);
    for (std::size_t i = 0; i < ddg_.size(); ++i) ddg[i] = eval(ddg_[i], p);
    return m;
  }

 private:
  std::string name_;
  std::shared_ptr<const Scope> coords_;
  std::vector<Expr> domain_;
  std::vector<Expr> g_;
  std::vector<Expr> dg_;
  std::vector<Expr> ddg_;
};

inline MetricAtPoint metric_at(const ChartManifold& m, const Point& p) { return m.metric_at(p); }

// ---------------------------------------------------------------------------
// Fields

/// Symbolic smooth function with cached first and second partials.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(Expr f, const Scope& coords) : f_(std::move(f)) {
    const int n = static_cast<int>(coords.size());
    d1_.resize(n);
    d2_.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) d1_[i] = diff(f_, coords[i]);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Expr d = diff(d1_[i], coords[j]);
        d2_[i * n + j] = d;
        d2_[j * n + i] = d;
      }
  }

  const Expr& expr() const { return f_; }
  int dim() const { return static_cast<int>(d1_.size()); }
  double value(const Point& p) const { return eval(f_, p); }

  /// Coordinate differential ∂_i f.
  Tensor differential(const Point& p) const {
    Tensor t = Tensor::covector(dim());
    for (int i = 0; i < dim(); ++i) t(i) = eval(d1_[i], p);
    return t;
  }

  /// ∂_i ∂_j f
  Tensor second_partials(const Point& p) const {
    const int n = dim();
    Tensor t = Tensor::bilinear(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(i, j) = eval(d2_[i * n + j], p);
    return t;
  }

 private:
  Expr f_;
  std::vector<Expr> d1_;
  std::vector<Expr> d2_;
};

/// Symbolic tensor field of valence (upper, lower) with cached first partials.
/// `partials` appends the differentiation index as a trailing lower slot.
class TensorField {
 public:
  TensorField() = default;
  TensorField(int upper, int lower, std::vector<Expr> components, const Scope& coords)
      : dim_(static_cast<int>(coords.size())), upper_(upper), lower_(lower), comps_(std::move(components)) {
    std::size_t expected = 1;
    for (int r = 0; r < upper + lower; ++r) expected *= static_cast<std::size_t>(dim_);
    if (comps_.size() != expected)
      throw GeometryError("field has " + std::to_string(comps_.size()) + " components, expected " +
                          std::to_string(expected));
    partials_.resize(comps_.size() * dim_);
    for (std::size_t c = 0; c < comps_.size(); ++c)
      for (int k = 0; k < dim_; ++k) partials_[c * dim_ + k] = diff(comps_[c], coords[k]);
  }

  int dim() const { return dim_; }
  int upper() const { return upper_; }
  int lower() const { return lower_; }
  const std::vector<Expr>& components() const { return comps_; }

  Tensor value(const Point& p) const {
    Tensor t(dim_, upper_, lower_);
    auto d = t.data();
    for (std::size_t c = 0; c < comps_.size(); ++c) d[c] = eval(comps_[c], p);
    return t;
  }

  Tensor partials(const Point& p) const {
    Tensor t(dim_, upper_, lower_ + 1);
    auto d = t.data();
    for (std::size_t c = 0; c < partials_.size(); ++c) d[c] = eval(partials_[c], p);
    return t;
  }

 private:
  int dim_ = 0;
  int upper_ = 0;
  int lower_ = 0;
  std::vector<Expr> comps_;
  std::vector<Expr> partials_;
};

class VectorField : public TensorField {
 public:
  VectorField() = default;
  VectorField(std::vector<Expr> components, const Scope& coords)
      : TensorField(1, 0, std::move(components), coords) {}
};

class CovectorField : public TensorField {
 public:
  CovectorField() = default;
  CovectorField(std::vector<Expr> components, const Scope& coords)
      : TensorField(0, 1, std::move(components), coords) {}
};

/// (1,1) field; `components` are row-major φ^i_j.
class EndomorphismField : public TensorField {
 public:
  EndomorphismField() = default;
  EndomorphismField(std::vector<Expr> components, const Scope& coords)
      : TensorField(1, 1, std::move(components), coords) {}
};

// ---------------------------------------------------------------------------
// Sampling

struct Box {
  std::vector<std::pair<double, double>> ranges;
};

/// Uniform points in `box` restricted to the domain, by rejection. The same
/// (manifold, box, count, seed) always yields the same points.
inline std::vector<Point> sample_points(const ChartManifold& m, const Box& box, int count, std::uint64_t seed) {
  if (static_cast<int>(box.ranges.size()) != m.dim())
    throw GeometryError("sampling box has " + std::to_string(box.ranges.size()) + " ranges for a " +
                        std::to_string(m.dim()) + "-dimensional chart");
  for (const auto& [lo, hi] : box.ranges)
    if (!(lo <= hi)) throw GeometryError("sampling box has an empty range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(count);
  const long max_attempts = 1000L * std::max(count, 1);
  long attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > max_attempts)
      throw GeometryError("sampling box does not intersect the domain of '" + m.name() + "'");
    std::vector<double> v(m.dim());
    for (int i = 0; i < m.dim(); ++i) {
      const auto [lo, hi] = box.ranges[i];
      v[i] = lo + (hi - lo) * unit(rng);
    }
    Point p = m.point(std::move(v));
    if (m.in_domain(p)) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace acm
