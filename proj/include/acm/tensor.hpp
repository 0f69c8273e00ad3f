#pragma once

// Point-evaluated tensors with dense storage. Components are laid out
// row-major over (upper indices..., lower indices...).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace acm {

class TensorShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, int upper, int lower) : dim_(dim), upper_(upper), lower_(lower) {
    if (dim <= 0 || upper < 0 || lower < 0) throw TensorShapeError("Tensor: invalid shape");
    std::size_t n = 1;
    for (int r = 0; r < upper + lower; ++r) n *= static_cast<std::size_t>(dim);
    data_.assign(n, 0.0);
  }

  static Tensor vector(int dim) { return Tensor(dim, 1, 0); }
  static Tensor covector(int dim) { return Tensor(dim, 0, 1); }
  static Tensor bilinear(int dim) { return Tensor(dim, 0, 2); }
  static Tensor identity(int dim) {
    Tensor t(dim, 1, 1);
    for (int i = 0; i < dim; ++i) t(i, i) = 1.0;
    return t;
  }

  int dim() const { return dim_; }
  int upper() const { return upper_; }
  int lower() const { return lower_; }
  int rank() const { return upper_ + lower_; }
  std::size_t size() const { return data_.size(); }

  template <class... I>
  double& operator()(I... idx) {
    return data_[offset(idx...)];
  }
  template <class... I>
  double operator()(I... idx) const {
    return data_[offset(idx...)];
  }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  bool same_shape(const Tensor& o) const {
    return dim_ == o.dim_ && upper_ == o.upper_ && lower_ == o.lower_;
  }

  Tensor& operator+=(const Tensor& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Tensor& operator*=(double c) {
    for (double& v : data_) v *= c;
    return *this;
  }

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(double c, Tensor a) { return a *= c; }
  friend Tensor operator*(Tensor a, double c) { return a *= c; }

  void require_same_shape(const Tensor& o) const {
    if (!same_shape(o))
      throw TensorShapeError("tensor shape mismatch: (" + std::to_string(upper_) + "," +
                             std::to_string(lower_) + ") dim " + std::to_string(dim_) + " vs (" +
                             std::to_string(o.upper_) + "," + std::to_string(o.lower_) + ") dim " +
                             std::to_string(o.dim_));
  }

 private:
  template <class... I>
  std::size_t offset(I... idx) const {
    static_assert(sizeof...(I) > 0);
    if (static_cast<int>(sizeof...(I)) != rank()) throw TensorShapeError("Tensor: wrong index count");
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return off;
  }

  int dim_ = 0;
  int upper_ = 0;
  int lower_ = 0;
  std::vector<double> data_;
};

inline double max_abs_diff(const Tensor& a, const Tensor& b) {
  a.require_same_shape(b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

/// Largest |T_ij - T_ji| for a (0,2) or (2,0) tensor.
inline double symmetry_defect(const Tensor& t) {
  if (t.rank() != 2 || t.upper() == 1) throw TensorShapeError("symmetry_defect: expects (0,2) or (2,0)");
  double m = 0.0;
  for (int i = 0; i < t.dim(); ++i)
    for (int j = i + 1; j < t.dim(); ++j) m = std::max(m, std::abs(t(i, j) - t(j, i)));
  return m;
}

inline Tensor symmetrized(const Tensor& t) {
  Tensor s = t;
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j) s(i, j) = 0.5 * (t(i, j) + t(j, i));
  return s;
}

/// Outer product. Upper indices of both factors come first in the result,
/// so only factors with no upper indices after lower ones are accepted.
inline Tensor tensor_product(const Tensor& a, const Tensor& b) {
  if (a.dim() != b.dim()) throw TensorShapeError("tensor_product: dimension mismatch");
  if (a.lower() > 0 && b.upper() > 0)
    throw TensorShapeError("tensor_product: would interleave upper and lower indices");
  Tensor r(a.dim(), a.upper() + b.upper(), a.lower() + b.lower());
  auto out = r.data();
  std::size_t k = 0;
  for (double x : a.data())
    for (double y : b.data()) out[k++] = x * y;
  return r;
}

/// Contracts upper slot `u` against lower slot `l` (slots counted within
/// their own group).
inline Tensor contract(const Tensor& t, int u, int l) {
  if (u < 0 || u >= t.upper() || l < 0 || l >= t.lower())
    throw TensorShapeError("contract: slot out of range");
  const int n = t.dim();
  const int rank = t.rank();
  Tensor r(n, t.upper() - 1, t.lower() - 1);
  if (r.rank() == 0) {
    // scalar result stored as a 0-rank tensor is not supported; callers use trace()
    throw TensorShapeError("contract: full contraction, use trace()");
  }
  const int su = u;
  const int sl = t.upper() + l;
  std::vector<int> idx(rank, 0);
  auto src = t.data();
  auto dst = r.data();
  for (std::size_t flat = 0; flat < r.size(); ++flat) {
    // decode flat index of r into idx with the two contracted slots skipped
    std::size_t rem = flat;
    for (int s = rank - 1; s >= 0; --s) {
      if (s == su || s == sl) continue;
      idx[s] = static_cast<int>(rem % n);
      rem /= n;
    }
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      idx[su] = k;
      idx[sl] = k;
      std::size_t off = 0;
      for (int s = 0; s < rank; ++s) off = off * n + idx[s];
      acc += src[off];
    }
    dst[flat] = acc;
  }
  return r;
}

inline double trace(const Tensor& t) {
  if (t.upper() != 1 || t.lower() != 1) throw TensorShapeError("trace: expects a (1,1) tensor");
  double s = 0.0;
  for (int i = 0; i < t.dim(); ++i) s += t(i, i);
  return s;
}

/// (T1 ⊙ T2)(X,Y,Z,W) = T1(X,W)T2(Y,Z) + T1(Y,Z)T2(X,W) - T1(X,Z)T2(Y,W) - T1(Y,W)T2(X,Z)
inline Tensor kulkarni_nomizu(const Tensor& t1, const Tensor& t2) {
  if (t1.upper() != 0 || t1.lower() != 2 || t2.upper() != 0 || t2.lower() != 2)
    throw TensorShapeError("kulkarni_nomizu: expects two (0,2) tensors");
  if (t1.dim() != t2.dim()) throw TensorShapeError("kulkarni_nomizu: dimension mismatch");
  const int n = t1.dim();
  Tensor r(n, 0, 4);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w)
          r(x, y, z, w) = t1(x, w) * t2(y, z) + t1(y, z) * t2(x, w) - t1(x, z) * t2(y, w) -
                          t1(y, w) * t2(x, z);
  return r;
}

/// <T1,T2> = h^{ik} h^{jl} T1_ij T2_kl for (0,2) tensors and an inverse metric h.
inline double hs_inner(const Tensor& t1, const Tensor& t2, const Tensor& inverse_metric) {
  if (t1.lower() != 2 || t1.upper() != 0 || t2.lower() != 2 || t2.upper() != 0)
    throw TensorShapeError("hs_inner: expects (0,2) tensors");
  if (inverse_metric.upper() != 2 || inverse_metric.lower() != 0)
    throw TensorShapeError("hs_inner: expects a (2,0) inverse metric");
  t1.require_same_shape(t2);
  if (t1.dim() != inverse_metric.dim()) throw TensorShapeError("hs_inner: dimension mismatch");
  const int n = t1.dim();
  // raise both indices of t1, then pair with t2
  Tensor raised(n, 2, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) acc += inverse_metric(i, k) * inverse_metric(j, l) * t1(k, l);
      raised(i, j) = acc;
    }
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += raised(i, j) * t2(i, j);
  return s;
}

/// g^{ij} T_ij
inline double metric_trace(const Tensor& t, const Tensor& inverse_metric) {
  double s = 0.0;
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j) s += inverse_metric(i, j) * t(i, j);
  return s;
}

/// T(X,Y) for a (0,2) tensor and two vectors.
inline double apply(const Tensor& t, const Tensor& x, const Tensor& y) {
  double s = 0.0;
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j) s += t(i, j) * x(i) * y(j);
  return s;
}

/// ω(X) for a covector and a vector.
inline double apply(const Tensor& w, const Tensor& x) {
  double s = 0.0;
  for (int i = 0; i < w.dim(); ++i) s += w(i) * x(i);
  return s;
}

/// Algebraic curvature defects of a (0,4) tensor: antisymmetry in each pair,
/// pair symmetry and the first Bianchi identity.
inline double curvature_symmetry_defect(const Tensor& r) {
  if (r.upper() != 0 || r.lower() != 4) throw TensorShapeError("curvature_symmetry_defect: expects (0,4)");
  const int n = r.dim();
  double m = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const double v = r(a, b, c, d);
          m = std::max(m, std::abs(v + r(b, a, c, d)));
          m = std::max(m, std::abs(v + r(a, b, d, c)));
          m = std::max(m, std::abs(v - r(c, d, a, b)));
          m = std::max(m, std::abs(v + r(b, c, a, d) + r(c, a, b, d)));
        }
  return m;
}

// ---------------------------------------------------------------------------
// Small dense linear algebra

struct LuResult {
  Tensor inverse;  // (2,0) when the input is (0,2)
  double determinant = 0.0;
};

/// Inverse and determinant of a (0,2) component matrix via LU with partial pivoting.
inline LuResult lu_invert(const Tensor& m) {
  if (m.rank() != 2) throw TensorShapeError("lu_invert: expects a rank-2 tensor");
  const int n = m.dim();
  std::vector<double> a(m.data().begin(), m.data().end());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  double det = 1.0;
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
    if (std::abs(a[piv * n + k]) <= 1e-300 || std::abs(a[piv * n + k]) <= scale * 1e-14)
      throw std::domain_error("lu_invert: singular matrix");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      std::swap(perm[k], perm[piv]);
      det = -det;
    }
    det *= a[k * n + k];
    for (int i = k + 1; i < n; ++i) {
      a[i * n + k] /= a[k * n + k];
      for (int j = k + 1; j < n; ++j) a[i * n + j] -= a[i * n + k] * a[k * n + j];
    }
  }
  Tensor inv(n, m.lower(), m.upper());
  std::vector<double> col(n);
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < n; ++i) col[i] = perm[i] == c ? 1.0 : 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) col[i] -= a[i * n + j] * col[j];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) col[i] -= a[i * n + j] * col[j];
      col[i] /= a[i * n + i];
    }
    for (int i = 0; i < n; ++i) inv(i, c) = col[i];
  }
  return {std::move(inv), det};
}

/// True when the symmetric matrix admits a Cholesky factorisation.
inline bool is_positive_definite(const Tensor& m) {
  const int n = m.dim();
  std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    double d = m(j, j);
    for (int k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
    if (!(d > 0.0)) return false;
    l[j * n + j] = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = s / l[j * n + j];
    }
  }
  return true;
}

}  // namespace acm
