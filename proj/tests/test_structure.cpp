#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace acm;
using fixtures::xyz;

namespace {

const Box kenmotsu_box{{{-2, 2}, {-2, 2}, {1, 3}}};

Expr c(double v) { return Expr::constant(v); }

std::vector<Expr> standard_phi() { return {c(0), c(-1), c(0), c(1), c(0), c(0), c(0), c(0), c(0)}; }

}  // namespace

TEST(AcmStructure, ExampleSatisfiesEveryAxiom) {
  const auto s = fixtures::kenmotsu3();
  const auto pts = sample_points(s.manifold(), kenmotsu_box, 64, 42);
  EXPECT_NO_THROW(validate_acm(s, pts));
  for (const auto& p : pts) EXPECT_LE(acm_axiom_residuals(s, p).max(), 1e-12);
}

TEST(AcmStructure, EtaDefaultsToTheMetricDualOfXi) {
  const auto s = fixtures::standard_structure(fixtures::kenmotsu3_manifold(), false);
  EXPECT_FALSE(s.eta_given());
  const Point p = fixtures::at(s.manifold(), {0.1, 0.2, 1.5});
  const Tensor eta = s.eta().value(p);
  EXPECT_EQ(eta(0), 0.0);
  EXPECT_EQ(eta(1), 0.0);
  EXPECT_EQ(eta(2), 1.0);
}

TEST(AcmStructure, DoubledReebFieldFailsEtaOfXi) {
  const AcmStructure s(fixtures::kenmotsu3_manifold(), standard_phi(), {c(0), c(0), c(2)},
                       std::vector<Expr>{c(0), c(0), c(1)});
  try {
    validate_acm(s, sample_points(s.manifold(), kenmotsu_box, 4, 42));
    FAIL();
  } catch (const AcmViolation& e) {
    EXPECT_EQ(e.axiom(), "eta(xi) = 1");
  }
}

TEST(AcmStructure, NonCompatibleMetricIsDetected) {
  // g = diag(e^{2z}, 2e^{2z}, 1) is not φ-compatible
  const auto m = fixtures::diagonal("skewed", xyz, {"exp(2*z)", "2*exp(2*z)", "1"}, "z - 1");
  const AcmStructure s(m, standard_phi(), {c(0), c(0), c(1)});
  const auto r = acm_axiom_residuals(s, fixtures::at(*m, {0, 0, 1.2}));
  EXPECT_GT(r.compatible_metric, 0.1);
  EXPECT_LE(r.phi_squared, 1e-15);
}

TEST(AcmStructure, RequiresOddDimensionAtLeastThree) {
  const auto c2 = [](double v) { return Expr::constant(v); };
  EXPECT_THROW(AcmStructure(fixtures::sphere2_manifold(), {c2(0), c2(-1), c2(1), c2(0)}, {c2(1), c2(0)}),
               GeometryError);
}

TEST(Kenmotsu, ExampleResidualVanishes) {
  const auto s = fixtures::kenmotsu3();
  for (const auto& p : sample_points(s.manifold(), kenmotsu_box, 64, 42)) {
    const auto r = kenmotsu_residual(s, p);
    EXPECT_LE(r.nabla_phi, 1e-10);
    EXPECT_LE(r.nabla_xi, 1e-10);
  }
}

TEST(Kenmotsu, ExampleIdentities) {
  const auto s = fixtures::kenmotsu3();
  for (const auto& p : sample_points(s.manifold(), kenmotsu_box, 64, 42)) {
    const StructureAtPoint sp(s, p);
    const auto id = kenmotsu_identities(sp, s);
    EXPECT_LE(id.lie_xi_metric.relative(), 1e-10);
    EXPECT_LE(id.div_xi.residual, 1e-10);
    EXPECT_LE(id.curvature_xi.residual, 1e-9);
    EXPECT_LE(id.ricci_xi_xi.residual, 1e-9);
    EXPECT_LE(id.curvature_symmetries.relative(), 1e-10);
  }
}

TEST(Kenmotsu, FlatMetricIsNotKenmotsu) {
  const auto s = fixtures::standard_structure(fixtures::euclidean3_manifold());
  const Point p = fixtures::at(s.manifold(), {0, 0, 1.0 + 1e-9});
  EXPECT_NO_THROW(validate_acm(s, {p}));
  EXPECT_GT(kenmotsu_residual(s, p).nabla_xi, 0.1);
  EXPECT_GT(kenmotsu_residual(s, p).nabla_phi, 0.1);
  EXPECT_THROW(KenmotsuPoint(s, p), NotKenmotsuError);
}

TEST(Kenmotsu, FiveDimensionalAnalogue) {
  const Scope q{"x1", "y1", "x2", "y2", "z"};
  const auto m = fixtures::diagonal("kenmotsu5", q, {"exp(2*z)", "exp(2*z)", "exp(2*z)", "exp(2*z)", "1"}, "z - 1");
  std::vector<Expr> phi(25, c(0));
  phi[0 * 5 + 1] = c(-1);
  phi[1 * 5 + 0] = c(1);
  phi[2 * 5 + 3] = c(-1);
  phi[3 * 5 + 2] = c(1);
  const AcmStructure s(m, phi, {c(0), c(0), c(0), c(0), c(1)});
  EXPECT_EQ(s.n(), 2);
  for (const auto& p : sample_points(*m, Box{{{-1, 1}, {-1, 1}, {-1, 1}, {-1, 1}, {1, 2}}}, 8, 42)) {
    const StructureAtPoint sp(s, p);
    EXPECT_LE(kenmotsu_residual(sp, s).value(), 1e-12);
    const auto id = kenmotsu_identities(sp, s);
    EXPECT_NEAR(sp.geometry.divergence(s.xi()), 4.0, 1e-12);
    EXPECT_LE(id.ricci_xi_xi.residual, 1e-9);
    EXPECT_LE(id.curvature_xi.residual, 1e-9);
  }
}

TEST(KenmotsuPoint, DirectionalDerivativesOfTheExamplePotential) {
  const auto s = fixtures::kenmotsu3();
  const ScalarField f(parse_expr("exp(z)", xyz), xyz);
  const KenmotsuPoint k(s, fixtures::at(s.manifold(), {0.4, -1.0, 1.7}));
  EXPECT_NEAR(k.xi_f(f), std::exp(1.7), 1e-13);
  EXPECT_NEAR(k.xi_xi_f(f), std::exp(1.7), 1e-13);
  EXPECT_NEAR(apply(k.geometry.hessian(f), k.xi, k.xi), std::exp(1.7), 1e-13);
}
