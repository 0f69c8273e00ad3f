#pragma once

// Hand-built fixtures and independent finite-difference oracles shared by the tests.

#include <cmath>
#include <memory>
#include <vector>

#include "acm/structure.hpp"

namespace fixtures {

using acm::Expr;
using acm::Scope;

inline Expr parse(const char* text, const Scope& s) { return acm::parse_expr(text, s); }

inline std::shared_ptr<const acm::ChartManifold> diagonal(const char* name, const Scope& coords,
                                                           const std::vector<const char*>& diag,
                                                           const char* domain = nullptr) {
  const int n = static_cast<int>(coords.size());
  std::vector<std::vector<Expr>> g(n, std::vector<Expr>(n, Expr::constant(0.0)));
  for (int i = 0; i < n; ++i) g[i][i] = parse(diag[i], coords);
  std::vector<Expr> dom;
  if (domain) dom.push_back(parse(domain, coords));
  return std::make_shared<const acm::ChartManifold>(name, coords, std::move(g), std::move(dom));
}

inline const Scope xyz{"x", "y", "z"};

inline std::shared_ptr<const acm::ChartManifold> kenmotsu3_manifold() {
  return diagonal("kenmotsu3", xyz, {"exp(2*z)", "exp(2*z)", "1"}, "z - 1");
}

inline std::shared_ptr<const acm::ChartManifold> euclidean3_manifold() {
  return diagonal("euclidean3", xyz, {"1", "1", "1"}, "z - 1");
}

inline std::shared_ptr<const acm::ChartManifold> sphere2_manifold() {
  return diagonal("sphere2", {"theta", "ph"}, {"1", "sin(theta)^2"}, "sin(theta)");
}

inline std::shared_ptr<const acm::ChartManifold> polar_manifold() {
  return diagonal("polar", {"r", "t"}, {"1", "r^2"}, "r");
}

/// φ = dx⊗∂y − dy⊗∂x, ξ = ∂z on coordinates (x, y, z), row-major φ^i_j.
inline acm::AcmStructure standard_structure(std::shared_ptr<const acm::ChartManifold> m, bool with_eta = true) {
  const auto c = [](double v) { return Expr::constant(v); };
  std::vector<Expr> phi{c(0), c(-1), c(0), c(1), c(0), c(0), c(0), c(0), c(0)};
  std::vector<Expr> xi{c(0), c(0), c(1)};
  if (!with_eta) return acm::AcmStructure(std::move(m), phi, xi);
  return acm::AcmStructure(std::move(m), phi, xi, std::vector<Expr>{c(0), c(0), c(1)});
}

inline acm::AcmStructure kenmotsu3() { return standard_structure(kenmotsu3_manifold()); }

inline acm::Point at(const acm::ChartManifold& m, std::vector<double> v) { return m.point(std::move(v)); }

// ---------------------------------------------------------------------------
// Finite-difference oracle: the metric is evaluated numerically and every
// derivative is taken by central differences, sharing no code with the
// symbolic pipeline beyond Expr evaluation of g itself.

struct FdGeometry {
  int n = 0;
  std::vector<double> gamma;  // [l][i][j]
  std::vector<double> riem;   // R^l_{kij} = [l][k][i][j]
  std::vector<double> ricci;  // [k][j]
  double scalar = 0.0;

  double G(int l, int i, int j) const { return gamma[(l * n + i) * n + j]; }
  double R(int l, int k, int i, int j) const { return riem[((l * n + k) * n + i) * n + j]; }
};

inline std::vector<double> metric_values(const acm::ChartManifold& m, const std::vector<double>& x) {
  const int n = m.dim();
  std::vector<double> g(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i * n + j] = acm::eval(m.metric(i, j), std::span<const double>(x));
  return g;
}

inline std::vector<double> invert(std::vector<double> a, int n) {
  std::vector<double> inv(n * n, 0.0);
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    for (int k = 0; k < n; ++k) {
      std::swap(a[c * n + k], a[piv * n + k]);
      std::swap(inv[c * n + k], inv[piv * n + k]);
    }
    const double d = a[c * n + c];
    for (int k = 0; k < n; ++k) {
      a[c * n + k] /= d;
      inv[c * n + k] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r * n + c];
      for (int k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[c * n + k];
        inv[r * n + k] -= f * inv[c * n + k];
      }
    }
  }
  return inv;
}

inline std::vector<double> fd_christoffel(const acm::ChartManifold& m, const std::vector<double>& x, double h) {
  const int n = m.dim();
  std::vector<double> dg(n * n * n);  // [k][i][j] = ∂_k g_ij
  for (int k = 0; k < n; ++k) {
    auto xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const auto gp = metric_values(m, xp), gm = metric_values(m, xm);
    for (int ij = 0; ij < n * n; ++ij) dg[k * n * n + ij] = (gp[ij] - gm[ij]) / (2 * h);
  }
  const auto gi = invert(metric_values(m, x), n);
  std::vector<double> gamma(n * n * n, 0.0);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k)
          s += gi[l * n + k] * (dg[(i * n + j) * n + k] + dg[(j * n + i) * n + k] - dg[(k * n + i) * n + j]);
        gamma[(l * n + i) * n + j] = 0.5 * s;
      }
  return gamma;
}

/// R^l_{kij} = ∂_i Γ^l_{jk} − ∂_j Γ^l_{ik} + Γ^l_{im} Γ^m_{jk} − Γ^l_{jm} Γ^m_{ik}, so that
/// R(∂_i, ∂_j)∂_k = R^l_{kij} ∂_l; Ric_{kj} = R^l_{klj}.
inline FdGeometry fd_geometry(const acm::ChartManifold& m, const std::vector<double>& x, double h = 1e-4) {
  FdGeometry r;
  const int n = m.dim();
  r.n = n;
  r.gamma = fd_christoffel(m, x, h * 1e-1);
  std::vector<double> dgam(n * n * n * n);  // [i][l][a][b] = ∂_i Γ^l_ab
  for (int i = 0; i < n; ++i) {
    auto xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    const auto gp = fd_christoffel(m, xp, h * 1e-1), gm = fd_christoffel(m, xm, h * 1e-1);
    for (int q = 0; q < n * n * n; ++q) dgam[i * n * n * n + q] = (gp[q] - gm[q]) / (2 * h);
  }
  auto dG = [&](int i, int l, int a, int b) { return dgam[((i * n + l) * n + a) * n + b]; };
  r.riem.assign(n * n * n * n, 0.0);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = dG(i, l, j, k) - dG(j, l, i, k);
          for (int q = 0; q < n; ++q) s += r.G(l, i, q) * r.G(q, j, k) - r.G(l, j, q) * r.G(q, i, k);
          r.riem[((l * n + k) * n + i) * n + j] = s;
        }
  r.ricci.assign(n * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) r.ricci[k * n + j] += r.R(l, k, l, j);
  const auto gi = invert(metric_values(m, x), n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) r.scalar += gi[k * n + j] * r.ricci[k * n + j];
  return r;
}

}  // namespace fixtures

#include <random>

namespace fixtures {

/// Random smooth expressions over (x, y, z) whose values and derivatives stay
/// moderate on the box [-2, 2]^2 x [1, 3].
class ExprGen {
 public:
  explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

  Expr operator()(int depth = 4) {
    if (depth == 0 || pick(4) == 0) return leaf();
    switch (pick(9)) {
      case 0: return (*this)(depth - 1) + (*this)(depth - 1);
      case 1: return (*this)(depth - 1) - (*this)(depth - 1);
      case 2: return (*this)(depth - 1) * (*this)(depth - 1);
      case 3: return (*this)(depth - 1) / (Expr::constant(2.0) + acm::call(acm::Func::Cos, (*this)(depth - 1)));
      case 4: {
        // powers of leaves or bounded subtrees only, so trig arguments stay slowly varying
        const Expr base = pick(2) ? leaf() : acm::call(acm::Func::Sin, (*this)(depth - 1));
        return acm::pow(base, Expr::constant(static_cast<double>(pick(2) + 2)));
      }
      case 5: return acm::call(acm::Func::Exp, acm::call(acm::Func::Sin, (*this)(depth - 1)));
      case 6: return acm::call(acm::Func::Log, Expr::constant(1.0) + acm::pow((*this)(depth - 1), Expr::constant(2.0)));
      case 7: return acm::call(acm::Func::Sqrt, Expr::constant(1.0) + acm::pow((*this)(depth - 1), Expr::constant(2.0)));
      default: {
        static constexpr acm::Func f[] = {acm::Func::Sin, acm::Func::Cos, acm::Func::Tanh};
        return acm::call(f[pick(3)], (*this)(depth - 1));
      }
    }
  }

  std::vector<double> point() {
    std::uniform_real_distribution<double> xy(-2.0, 2.0), z(1.0, 3.0);
    return {xy(rng_), xy(rng_), z(rng_)};
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

 private:
  Expr leaf() {
    if (pick(3) == 0) return Expr::constant(std::uniform_real_distribution<double>(-1.5, 1.5)(rng_));
    const int i = pick(3);
    return Expr::variable(i, xyz[i]);
  }

  std::mt19937_64 rng_;
};

/// Central difference along coordinate c with step 1e-5 max(1, |x_c|).
inline double central_difference(const Expr& e, std::vector<double> x, int c) {
  const double h = 1e-5 * std::max(1.0, std::abs(x[c]));
  const double x0 = x[c];
  x[c] = x0 + h;
  const double fp = acm::eval(e, std::span<const double>(x));
  x[c] = x0 - h;
  const double fm = acm::eval(e, std::span<const double>(x));
  return (fp - fm) / (2 * h);
}

}  // namespace fixtures
