#pragma once

// Levi-Civita geometry evaluated pointwise from exact metric partials.
//
// Conventions (fixed repo-wide):
//   christoffel(l,i,j)   = Γ^l_ij
//   riemann13(l,k,i,j)   = R^l_kij  with  R(∂_i,∂_j)∂_k = R^l_kij ∂_l,
//                          R(X,Y) = ∇_X∇_Y - ∇_Y∇_X - ∇_[X,Y]
//   riemann04(i,j,k,w)   = R(∂_i,∂_j,∂_k,∂_w) = g(R(∂_i,∂_j)∂_k, ∂_w)
//   ricci(j,k)           = Ric(∂_j,∂_k) = trace(X ↦ R(X,∂_j)∂_k)
// With these, a space of constant curvature c has R(X,Y)Z = c[g(Y,Z)X - g(X,Z)Y]
// and Ric = c(dim-1)g.

#include <initializer_list>

#include "acm/manifold.hpp"

namespace acm {

class LocalGeometry {
 public:
  LocalGeometry(const ChartManifold& m, const Point& p) : point_(p), metric_(m.metric_at(p)) {
    const int n = m.dim();
    const Tensor& gi = metric_.inverse;
    const Tensor& dg = metric_.dg;
    const Tensor& ddg = metric_.ddg;

    // first-kind symbols A_mij = ∂_i g_jm + ∂_j g_im - ∂_m g_ij
    Tensor first(n, 0, 3);
    for (int mm = 0; mm < n; ++mm)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) first(mm, i, j) = dg(i, j, mm) + dg(j, i, mm) - dg(mm, i, j);

    gamma_ = Tensor(n, 1, 2);
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int mm = 0; mm < n; ++mm) s += gi(l, mm) * first(mm, i, j);
          gamma_(l, i, j) = 0.5 * s;
        }

    // ∂_k g^{lm} = -g^{la} ∂_k g_ab g^{bm}
    Tensor dgi(n, 2, 1);
    for (int l = 0; l < n; ++l)
      for (int mm = 0; mm < n; ++mm)
        for (int k = 0; k < n; ++k) {
          double s = 0.0;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) s += gi(l, a) * dg(k, a, b) * gi(b, mm);
          dgi(l, mm, k) = -s;
        }

    dgamma_ = Tensor(n, 1, 3);
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            double s = 0.0;
            for (int mm = 0; mm < n; ++mm) {
              const double dfirst = ddg(k, i, j, mm) + ddg(k, j, i, mm) - ddg(k, mm, i, j);
              s += dgi(l, mm, k) * first(mm, i, j) + gi(l, mm) * dfirst;
            }
            dgamma_(l, i, j, k) = 0.5 * s;
          }

    r13_ = Tensor(n, 1, 3);
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double s = dgamma_(l, j, k, i) - dgamma_(l, i, k, j);
            for (int mm = 0; mm < n; ++mm)
              s += gamma_(l, i, mm) * gamma_(mm, j, k) - gamma_(l, j, mm) * gamma_(mm, i, k);
            r13_(l, k, i, j) = s;
          }

    r04_ = Tensor(n, 0, 4);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int w = 0; w < n; ++w) {
            double s = 0.0;
            for (int l = 0; l < n; ++l) s += metric_.g(l, w) * r13_(l, k, i, j);
            r04_(i, j, k, w) = s;
          }

    ricci_ = Tensor::bilinear(n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += r13_(i, k, i, j);
        ricci_(j, k) = s;
      }
    scalar_ = metric_trace(ricci_, gi);
  }

  int dim() const { return metric_.g.dim(); }
  const Point& point() const { return point_; }
  const MetricAtPoint& metric() const { return metric_; }
  const Tensor& g() const { return metric_.g; }
  const Tensor& inverse() const { return metric_.inverse; }
  const Tensor& christoffel() const { return gamma_; }
  /// dchristoffel(l,i,j,k) = ∂_k Γ^l_ij
  const Tensor& christoffel_partials() const { return dgamma_; }
  const Tensor& riemann13() const { return r13_; }
  const Tensor& riemann04() const { return r04_; }
  const Tensor& ricci() const { return ricci_; }
  double scalar_curvature() const { return scalar_; }

  Tensor lower(const Tensor& v) const {
    Tensor w = Tensor::covector(dim());
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) w(i) += g()(i, j) * v(j);
    return w;
  }

  Tensor raise(const Tensor& w) const {
    Tensor v = Tensor::vector(dim());
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) v(i) += inverse()(i, j) * w(j);
    return v;
  }

  /// Vector R(X,Y)Z.
  Tensor curvature_apply(const Tensor& x, const Tensor& y, const Tensor& z) const {
    const int n = dim();
    Tensor out = Tensor::vector(n);
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) s += r13_(l, k, i, j) * x(i) * y(j) * z(k);
      out(l) = s;
    }
    return out;
  }

  // -- operators on fields ------------------------------------------------

  Tensor gradient(const ScalarField& f) const { return raise(f.differential(point_)); }

  /// Hess(f)_ij = ∂_i∂_j f - Γ^k_ij ∂_k f
  Tensor hessian(const ScalarField& f) const {
    const int n = dim();
    Tensor h = f.second_partials(point_);
    const Tensor df = f.differential(point_);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) h(i, j) -= gamma_(k, i, j) * df(k);
    return h;
  }

  double laplacian(const ScalarField& f) const { return metric_trace(hessian(f), inverse()); }

  /// (k,i) = ∂_i (grad f)^k, from ∂_i g^{kj} = -g^{ka} ∂_i g_ab g^{bj}.
  Tensor gradient_partials(const ScalarField& f) const {
    const int n = dim();
    const Tensor df = f.differential(point_);
    const Tensor ddf = f.second_partials(point_);
    const Tensor& gi = inverse();
    Tensor out(n, 1, 1);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
          s += gi(k, j) * ddf(j, i);
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) s -= gi(k, a) * metric_.dg(i, a, b) * gi(b, j) * df(j);
        }
        out(k, i) = s;
      }
    return out;
  }

  /// £_{grad f} g, evaluated from the gradient field itself rather than the Hessian.
  Tensor lie_derivative_gradient(const ScalarField& f) const {
    return lie_derivative_metric(gradient(f), gradient_partials(f));
  }

  /// (k,i) = ∇_i V^k
  Tensor covariant_derivative(const VectorField& v) const {
    return covariant_derivative_vector(v.value(point_), v.partials(point_));
  }

  Tensor covariant_derivative_vector(const Tensor& value, const Tensor& partials) const {
    const int n = dim();
    Tensor out = partials;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int mm = 0; mm < n; ++mm) out(k, i) += gamma_(k, i, mm) * value(mm);
    return out;
  }

  /// (j,i) = (∇_i ω)_j
  Tensor covariant_derivative(const CovectorField& w) const {
    const int n = dim();
    const Tensor value = w.value(point_);
    Tensor out = w.partials(point_);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int mm = 0; mm < n; ++mm) out(j, i) -= gamma_(mm, i, j) * value(mm);
    return out;
  }

  /// (k,j,i) = (∇_i φ)^k_j
  Tensor covariant_derivative(const EndomorphismField& phi) const {
    const int n = dim();
    const Tensor value = phi.value(point_);
    Tensor out = phi.partials(point_);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          double s = 0.0;
          for (int mm = 0; mm < n; ++mm) s += gamma_(k, i, mm) * value(mm, j) - gamma_(mm, i, j) * value(k, mm);
          out(k, j, i) += s;
        }
    return out;
  }

  double divergence(const VectorField& v) const {
    const Tensor nabla = covariant_derivative(v);
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) s += nabla(i, i);
    return s;
  }

  /// (£_V g)_ij = V^k ∂_k g_ij + g_kj ∂_i V^k + g_ik ∂_j V^k
  Tensor lie_derivative_metric(const VectorField& v) const {
    return lie_derivative_metric(v.value(point_), v.partials(point_));
  }

  Tensor lie_derivative_metric(const Tensor& value, const Tensor& partials) const {
    const int n = dim();
    Tensor out = Tensor::bilinear(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k)
          s += value(k) * metric_.dg(k, i, j) + g()(k, j) * partials(k, i) + g()(i, k) * partials(k, j);
        out(i, j) = s;
      }
    return out;
  }

 private:
  Point point_;
  MetricAtPoint metric_;
  Tensor gamma_;
  Tensor dgamma_;
  Tensor r13_;
  Tensor r04_;
  Tensor ricci_;
  double scalar_ = 0.0;
};

struct Curvature {
  Tensor riemann13;
  Tensor riemann04;
};

inline Tensor christoffel(const ChartManifold& m, const Point& p) { return LocalGeometry(m, p).christoffel(); }

inline Curvature riemann(const ChartManifold& m, const Point& p) {
  LocalGeometry geo(m, p);
  return {geo.riemann13(), geo.riemann04()};
}

inline Tensor ricci(const ChartManifold& m, const Point& p) { return LocalGeometry(m, p).ricci(); }
inline double scalar_curv(const ChartManifold& m, const Point& p) { return LocalGeometry(m, p).scalar_curvature(); }

inline Tensor lie_derivative_metric(const ChartManifold& m, const VectorField& v, const Point& p) {
  return LocalGeometry(m, p).lie_derivative_metric(v);
}
inline Tensor grad(const ChartManifold& m, const ScalarField& f, const Point& p) {
  return LocalGeometry(m, p).gradient(f);
}
inline Tensor hessian(const ChartManifold& m, const ScalarField& f, const Point& p) {
  return LocalGeometry(m, p).hessian(f);
}
inline double divergence(const ChartManifold& m, const VectorField& v, const Point& p) {
  return LocalGeometry(m, p).divergence(v);
}
inline double laplacian(const ChartManifold& m, const ScalarField& f, const Point& p) {
  return LocalGeometry(m, p).laplacian(f);
}

/// Scale used to turn absolute residuals into relative ones.
inline double residual_scale(std::initializer_list<double> magnitudes) {
  double s = 1.0;
  for (double m : magnitudes) s = std::max(s, std::abs(m));
  return s;
}

}  // namespace acm
