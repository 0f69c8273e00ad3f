#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace acm;
using fixtures::xyz;

namespace {

double rel(double a, double b, double scale) { return std::abs(a - b) / std::max(1.0, scale); }

/// Maximum relative deviation of the symbolic pipeline from the finite-difference oracle.
struct OracleGap {
  double christoffel = 0.0;
  double riemann = 0.0;
  double ricci = 0.0;
  double scalar = 0.0;
};

OracleGap oracle_gap(const ChartManifold& m, const Point& p) {
  const LocalGeometry geo(m, p);
  const std::vector<double> x(p.values().begin(), p.values().end());
  const auto fd = fixtures::fd_geometry(m, x);
  const int n = m.dim();
  OracleGap gap;
  const double gs = geo.christoffel().max_abs(), rs = geo.riemann13().max_abs(), cs = geo.ricci().max_abs();
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        gap.christoffel = std::max(gap.christoffel, rel(geo.christoffel()(l, i, j), fd.G(l, i, j), gs));
        for (int k = 0; k < n; ++k)
          gap.riemann = std::max(gap.riemann, rel(geo.riemann13()(l, k, i, j), fd.R(l, k, i, j), rs));
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gap.ricci = std::max(gap.ricci, rel(geo.ricci()(i, j), fd.ricci[i * n + j], cs));
  gap.scalar = rel(geo.scalar_curvature(), fd.scalar, std::abs(fd.scalar));
  return gap;
}

void expect_matches_oracle(const ChartManifold& m, const Box& box) {
  for (const auto& p : sample_points(m, box, 16, 42)) {
    const auto gap = oracle_gap(m, p);
    EXPECT_LE(gap.christoffel, 1e-5) << p.describe();
    EXPECT_LE(gap.riemann, 1e-5) << p.describe();
    EXPECT_LE(gap.ricci, 1e-5) << p.describe();
    EXPECT_LE(gap.scalar, 1e-5) << p.describe();
  }
}

const Box kenmotsu_box{{{-2, 2}, {-2, 2}, {1, 3}}};

}  // namespace

TEST(Christoffel, EuclideanVanishes) {
  const auto m = fixtures::euclidean3_manifold();
  const LocalGeometry geo(*m, fixtures::at(*m, {0.1, 0.2, 1.5}));
  EXPECT_EQ(geo.christoffel().max_abs(), 0.0);
  EXPECT_EQ(geo.riemann04().max_abs(), 0.0);
  EXPECT_EQ(geo.ricci().max_abs(), 0.0);
  EXPECT_EQ(geo.scalar_curvature(), 0.0);
}

TEST(Christoffel, KenmotsuExampleComponents) {
  const auto m = fixtures::kenmotsu3_manifold();
  const double z = 1.3;
  const LocalGeometry geo(*m, fixtures::at(*m, {0.5, -0.4, z}));
  const auto fd = fixtures::fd_geometry(*m, {0.5, -0.4, z});
  // x=0, y=1, z=2
  const int X = 0, Y = 1, Z = 2;
  EXPECT_NEAR(fd.G(X, X, Z), 1.0, 1e-6);
  EXPECT_NEAR(fd.G(Z, X, X), -std::exp(2 * z), 1e-6 * std::exp(2 * z));
  EXPECT_NEAR(geo.christoffel()(X, X, Z), 1.0, 1e-14);
  EXPECT_NEAR(geo.christoffel()(X, Z, X), 1.0, 1e-14);
  EXPECT_NEAR(geo.christoffel()(Y, Y, Z), 1.0, 1e-14);
  EXPECT_NEAR(geo.christoffel()(Z, X, X), -std::exp(2 * z), 1e-12);
  EXPECT_NEAR(geo.christoffel()(Z, Y, Y), -std::exp(2 * z), 1e-12);
  int nonzero = 0;
  for (double v : geo.christoffel().data()) nonzero += v != 0.0;
  EXPECT_EQ(nonzero, 6);
}

TEST(Christoffel, PolarComponents) {
  const auto m = fixtures::polar_manifold();
  const LocalGeometry geo(*m, fixtures::at(*m, {2.0, 0.3}));
  EXPECT_NEAR(geo.christoffel()(0, 1, 1), -2.0, 1e-14);
  EXPECT_NEAR(geo.christoffel()(1, 0, 1), 0.5, 1e-14);
  EXPECT_NEAR(geo.scalar_curvature(), 0.0, 1e-14);
}

TEST(FiniteDifferenceOracle, Kenmotsu3) { expect_matches_oracle(*fixtures::kenmotsu3_manifold(), kenmotsu_box); }

TEST(FiniteDifferenceOracle, Sphere2) {
  expect_matches_oracle(*fixtures::sphere2_manifold(), Box{{{0.2, 2.9}, {-3, 3}}});
}

TEST(FiniteDifferenceOracle, Polar) { expect_matches_oracle(*fixtures::polar_manifold(), Box{{{0.5, 3}, {-3, 3}}}); }

TEST(FiniteDifferenceOracle, WarpedKenmotsu) {
  const auto m = fixtures::diagonal("warped", xyz,
                                    {"exp(2*z + 0.1*(x^2 + y^2))", "exp(2*z + 0.1*(x^2 + y^2))", "1"}, "z - 1");
  expect_matches_oracle(*m, Box{{{-1, 1}, {-1, 1}, {1, 2}}});
}

TEST(Curvature, KenmotsuExampleHasConstantCurvatureMinusOne) {
  // R(X,Y)Z = -[g(Y,Z)X - g(X,Z)Y], so R^l_{kij} = -(g_jk δ^l_i - g_ik δ^l_j)
  const auto m = fixtures::kenmotsu3_manifold();
  for (const auto& p : sample_points(*m, kenmotsu_box, 16, 42)) {
    const LocalGeometry geo(*m, p);
    const Tensor& g = geo.g();
    double worst = 0.0;
    for (int l = 0; l < 3; ++l)
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            const double expect = -(g(j, k) * (l == i) - g(i, k) * (l == j));
            worst = std::max(worst, std::abs(geo.riemann13()(l, k, i, j) - expect));
          }
    EXPECT_LE(worst, 1e-10 * std::max(1.0, g.max_abs()));
    EXPECT_LE(max_abs_diff(geo.ricci(), -2.0 * g), 1e-10 * g.max_abs());
    EXPECT_NEAR(geo.scalar_curvature(), -6.0, 1e-12);
    EXPECT_LE(curvature_symmetry_defect(geo.riemann04()), 1e-10 * geo.riemann04().max_abs());
  }
}

TEST(Curvature, UnitSphereHasScalarTwo) {
  const auto m = fixtures::sphere2_manifold();
  for (const auto& p : sample_points(*m, Box{{{0.2, 2.9}, {-3, 3}}}, 16, 42)) {
    const LocalGeometry geo(*m, p);
    EXPECT_NEAR(geo.scalar_curvature(), 2.0, 1e-12);
    EXPECT_LE(max_abs_diff(geo.ricci(), geo.g()), 1e-12);
  }
}

TEST(Curvature, SignConventionOnTheReebField) {
  // R(X,Y)ξ = η(X)Y - η(Y)X with X = ∂z, Y = ∂x, ξ = ∂z gives R(∂z,∂x)∂z = ∂x
  const auto m = fixtures::kenmotsu3_manifold();
  const LocalGeometry geo(*m, fixtures::at(*m, {0.2, 0.1, 1.4}));
  Tensor X = Tensor::vector(3), Z = Tensor::vector(3);
  X(0) = 1.0;
  Z(2) = 1.0;
  const Tensor r = geo.curvature_apply(Z, X, Z);
  EXPECT_NEAR(r(0), 1.0, 1e-12);
  EXPECT_NEAR(r(1), 0.0, 1e-12);
  EXPECT_NEAR(r(2), 0.0, 1e-12);
  // and Ric(ξ,ξ) = -2n with n = 1
  EXPECT_NEAR(geo.ricci()(2, 2), -2.0, 1e-12);
}

TEST(LieDerivative, ZeroKillingAndReebFields) {
  const auto m = fixtures::kenmotsu3_manifold();
  const LocalGeometry geo(*m, fixtures::at(*m, {0.3, 0.7, 1.2}));
  const auto c = [](double v) { return Expr::constant(v); };
  EXPECT_EQ(geo.lie_derivative_metric(VectorField({c(0), c(0), c(0)}, xyz)).max_abs(), 0.0);
  EXPECT_EQ(geo.lie_derivative_metric(VectorField({c(1), c(0), c(0)}, xyz)).max_abs(), 0.0);
  const Tensor l = geo.lie_derivative_metric(VectorField({c(0), c(0), c(1)}, xyz));
  EXPECT_NEAR(l(0, 0), 2.0 * std::exp(2.4), 1e-12);
  EXPECT_NEAR(l(1, 1), 2.0 * std::exp(2.4), 1e-12);
  EXPECT_EQ(l(2, 2), 0.0);
}

TEST(Operators, ConstantFunction) {
  const auto m = fixtures::kenmotsu3_manifold();
  const LocalGeometry geo(*m, fixtures::at(*m, {0.3, 0.7, 1.2}));
  const ScalarField f(Expr::constant(4.0), xyz);
  EXPECT_EQ(geo.gradient(f).max_abs(), 0.0);
  EXPECT_EQ(geo.hessian(f).max_abs(), 0.0);
  EXPECT_EQ(geo.laplacian(f), 0.0);
}

TEST(Operators, ExponentialPotentialOnTheExample) {
  // f = e^z: grad f = e^z ξ, Hess f = e^z g, Δf = 3e^z
  const auto m = fixtures::kenmotsu3_manifold();
  const ScalarField f(parse_expr("exp(z)", xyz), xyz);
  for (const auto& p : sample_points(*m, kenmotsu_box, 16, 42)) {
    const LocalGeometry geo(*m, p);
    const double ez = std::exp(p[2]);
    const Tensor grad = geo.gradient(f);
    EXPECT_NEAR(grad(2), ez, 1e-12 * ez);
    EXPECT_EQ(grad(0), 0.0);
    EXPECT_LE(max_abs_diff(geo.hessian(f), ez * geo.g()), 1e-12 * ez * geo.g().max_abs());
    EXPECT_NEAR(geo.laplacian(f), 3.0 * ez, 1e-12 * ez);
  }
}

TEST(Operators, DivergenceOfReebIsTwoN) {
  const auto m = fixtures::kenmotsu3_manifold();
  const auto c = [](double v) { return Expr::constant(v); };
  const VectorField xi({c(0), c(0), c(1)}, xyz);
  for (const auto& p : sample_points(*m, kenmotsu_box, 16, 42)) EXPECT_NEAR(LocalGeometry(*m, p).divergence(xi), 2.0, 1e-12);
}

TEST(Operators, HessianAgreesWithHalfLieDerivativeOfGradient) {
  const auto m = fixtures::diagonal("warped", xyz,
                                    {"exp(2*z + 0.1*(x^2 + y^2))", "exp(2*z + 0.1*(x^2 + y^2))", "1"}, "z - 1");
  fixtures::ExprGen gen(21);
  for (int trial = 0; trial < 30; ++trial) {
    const ScalarField f(gen(3), xyz);
    for (const auto& p : sample_points(*m, Box{{{-1, 1}, {-1, 1}, {1, 2}}}, 4, trial)) {
      const LocalGeometry geo(*m, p);
      const Tensor h = geo.hessian(f);
      const Tensor l = 0.5 * geo.lie_derivative_gradient(f);
      EXPECT_LE(max_abs_diff(h, l), 1e-9 * std::max({1.0, h.max_abs(), l.max_abs()})) << render(f.expr());
      EXPECT_LE(symmetry_defect(h), 1e-12 * std::max(1.0, h.max_abs()));
    }
  }
}

TEST(Sampling, DeterministicAndInsideTheDomain) {
  const auto m = fixtures::kenmotsu3_manifold();
  const Box wide{{{-2, 2}, {-2, 2}, {0, 3}}};
  const auto a = sample_points(*m, wide, 64, 42), b = sample_points(*m, wide, 64, 42);
  ASSERT_EQ(a.size(), 64u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_GT(a[i][2], 1.0);
    for (int c = 0; c < 3; ++c) EXPECT_EQ(a[i][c], b[i][c]);
  }
  EXPECT_NE(sample_points(*m, wide, 4, 43)[0][0], a[0][0]);
  EXPECT_THROW(sample_points(*m, Box{{{-1, 1}, {-1, 1}, {-2, 0}}}, 4, 1), GeometryError);
}

TEST(Manifold, RejectsAsymmetricMetricsAndReservedNames) {
  const auto c = [](double v) { return Expr::constant(v); };
  const Expr x = Expr::variable(0, "x");
  std::vector<std::vector<Expr>> g{{c(1), x, c(0)}, {c(0), c(1), c(0)}, {c(0), c(0), c(1)}};
  EXPECT_THROW(ChartManifold("bad", xyz, g), GeometryError);
  std::vector<std::vector<Expr>> id{{c(1), c(0), c(0)}, {c(0), c(1), c(0)}, {c(0), c(0), c(1)}};
  EXPECT_THROW(ChartManifold("bad", Scope{"x", "e", "z"}, id), GeometryError);
}
