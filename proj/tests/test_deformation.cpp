#include <cmath>

#include <gtest/gtest.h>

#include "acm/config.hpp"
#include "acm/deformation.hpp"
#include "fixtures.hpp"

using namespace acm;
using fixtures::xyz;

namespace {

const Box kenmotsu_box{{{-2, 2}, {-2, 2}, {1, 3}}};
const std::vector<double> a_grid{0.25, 0.5, 1.0, 2.0, 3.7, 10.0};

double rel(const Tensor& x, const Tensor& y) {
  return max_abs_diff(x, y) / residual_scale({x.max_abs(), y.max_abs()});
}

double rel(double x, double y) { return std::abs(x - y) / residual_scale({x, y}); }

double tol_for(double a) { return a == 1.0 ? 1e-12 : 1e-8; }

void expect_closed_matches_direct(const AcmStructure& s, const ScalarField& f, const std::vector<Point>& pts) {
  for (double a : a_grid) {
    const auto d = deform(s, a);
    const double tol = tol_for(a);
    for (const auto& p : pts) {
      const KenmotsuPoint k(s, p);
      const auto cc = deformed_curvature_closed(k, a);
      const auto cd = deformed_curvature_direct(d, p);
      EXPECT_LE(rel(cc.riemann13, cd.riemann13), tol) << "a=" << a;
      EXPECT_LE(rel(cc.riemann04, cd.riemann04), tol) << "a=" << a;
      EXPECT_LE(rel(cc.ricci, cd.ricci), tol) << "a=" << a;
      EXPECT_LE(rel(cc.scalar, cd.scalar), tol) << "a=" << a;

      const auto oc = deformed_operators_closed(k, a, f);
      const auto od = deformed_operators_direct(d, f, p);
      EXPECT_LE(rel(oc.connection, od.connection), tol) << "a=" << a;
      EXPECT_LE(rel(oc.nabla_phi, od.nabla_phi), tol) << "a=" << a;
      EXPECT_LE(rel(oc.nabla_xi, od.nabla_xi), tol) << "a=" << a;
      EXPECT_LE(rel(oc.lie_xi_metric, od.lie_xi_metric), tol) << "a=" << a;
      EXPECT_LE(rel(oc.div_xi, od.div_xi), tol) << "a=" << a;
      EXPECT_LE(rel(oc.hessian, od.hessian), tol) << "a=" << a;
      EXPECT_LE(rel(oc.gradient, od.gradient), tol) << "a=" << a;
      EXPECT_LE(rel(oc.laplacian, od.laplacian), tol) << "a=" << a;
    }
  }
}

}  // namespace

TEST(Deform, MetricAndStructureAtTwo) {
  const auto s = fixtures::kenmotsu3();
  const auto d = deform(s, 2.0);
  const auto p = fixtures::at(s.manifold(), {0.3, -0.7, 1.4});
  const StructureAtPoint sp(d.structure, p);
  const double e2 = std::exp(2.8);
  EXPECT_NEAR(sp.g()(0, 0), 2 * e2, 1e-12 * e2);
  EXPECT_NEAR(sp.g()(1, 1), 2 * e2, 1e-12 * e2);
  EXPECT_NEAR(sp.g()(2, 2), 4.0, 1e-14);
  EXPECT_NEAR(sp.g()(0, 2), 0.0, 1e-14);
  EXPECT_NEAR(apply(sp.g(), sp.xi, sp.xi), 1.0, 1e-14);
  EXPECT_NEAR(sp.xi(2), 0.5, 1e-15);
  EXPECT_NEAR(sp.eta(2), 2.0, 1e-15);
  EXPECT_LE(acm_axiom_residuals(sp).max(), 1e-12);
}

TEST(Deform, DeformedMetricIsKenmotsuOnlyAtOne) {
  const auto s = fixtures::kenmotsu3();
  const auto p = fixtures::at(s.manifold(), {0.1, 0.2, 1.5});
  EXPECT_LE(kenmotsu_residual(deform(s, 1.0).structure, p).value(), 1e-12);
  EXPECT_GT(kenmotsu_residual(deform(s, 2.0).structure, p).value(), 0.1);
}

TEST(Deform, RejectsNonPositiveParameter) {
  const auto s = fixtures::kenmotsu3();
  for (double a : {0.0, -1.0, std::nan("")}) {
    try {
      (void)deform(s, a);
      ADD_FAILURE() << "accepted a=" << a;
    } catch (const DeformationError& e) {
      EXPECT_NE(std::string(e.what()).find("deformation parameter must be positive"), std::string::npos);
    }
  }
  const KenmotsuPoint k(s, fixtures::at(s.manifold(), {0, 0, 1.5}));
  EXPECT_THROW((void)deformed_curvature_closed(k, -1.0), DeformationError);
}

TEST(Deform, CompositionIsMultiplicative) {
  // a g + a(a-1)ηη deformed again by b with η̄ = aη gives ab g + ab(ab-1)ηη
  const auto s = fixtures::kenmotsu3();
  const auto twice = deform(deform(s, 2.0).structure, 1.5);
  const auto once = deform(s, 3.0);
  for (const auto& p : sample_points(s.manifold(), kenmotsu_box, 8, 3)) {
    const StructureAtPoint x(twice.structure, p);
    const StructureAtPoint y(once.structure, p);
    EXPECT_LE(rel(x.g(), y.g()), 1e-14);
    EXPECT_LE(rel(x.xi, y.xi), 1e-15);
    EXPECT_LE(rel(x.eta, y.eta), 1e-15);
  }
}

TEST(Deform, ClosedFormsRefuseNonKenmotsuBase) {
  const auto s = fixtures::standard_structure(fixtures::euclidean3_manifold());
  EXPECT_THROW(KenmotsuPoint(s, fixtures::at(s.manifold(), {0, 0, 1.5})), NotKenmotsuError);
}

TEST(DeformedClosedForms, MatchDirectComputationOnKenmotsu3) {
  const auto s = fixtures::kenmotsu3();
  const auto pts = sample_points(s.manifold(), kenmotsu_box, 6, 11);
  for (const char* f : {"exp(z)", "x*y + sin(z)", "x^2 + z*exp(-2*z)", "cos(x)*exp(y/3)*z^2"})
    expect_closed_matches_direct(s, ScalarField(parse_expr(f, xyz), xyz), pts);
}

TEST(DeformedClosedForms, MatchDirectComputationOnKenmotsu5) {
  const auto cfg = builtin_config("kenmotsu5");
  const auto& q = cfg.coordinates();
  const auto pts = sample_points(*cfg.manifold, cfg.box, 3, 5);
  expect_closed_matches_direct(*cfg.structure, ScalarField(parse_expr("x1*y2 + exp(z) + sin(x2)", q), q), pts);
}

TEST(DeformedClosedForms, CurvatureAgreesWithFiniteDifferences) {
  const auto s = fixtures::kenmotsu3();
  for (double a : {0.5, 2.0}) {
    const auto d = deform(s, a);
    const std::vector<double> x{0.2, -0.4, 1.3};
    const auto fd = fixtures::fd_geometry(d.structure.manifold(), x);
    const auto cc = deformed_curvature_closed(KenmotsuPoint(s, fixtures::at(s.manifold(), x)), a);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(cc.ricci(i, j), fd.ricci[i * 3 + j], 1e-5) << a;
    EXPECT_NEAR(cc.scalar, fd.scalar, 1e-5);
  }
}

TEST(DeformedClosedForms, ExampleValuesAtTwo) {
  const auto s = fixtures::kenmotsu3();
  const ScalarField f(parse_expr("exp(z)", xyz), xyz);
  for (double a : {0.5, 2.0, 3.7}) {
    const auto d = deform(s, a);
    for (const auto& p : sample_points(s.manifold(), kenmotsu_box, 4, 9)) {
      const double z = p[2];
      const auto cd = deformed_curvature_direct(d, p);
      const auto od = deformed_operators_direct(d, f, p);
      // scal = -6 on the base; Ric̄ = -2g + 2(a-1)/a (g - ηη)
      EXPECT_NEAR(cd.scalar, -6.0 / a + 6.0 * (a - 1) / (a * a), 1e-10);
      EXPECT_NEAR(od.div_xi, 2.0 / a, 1e-12);
      EXPECT_NEAR(od.laplacian, 3.0 * std::exp(z) / (a * a), 1e-10 * std::exp(z));
    }
  }
  const auto p = fixtures::at(s.manifold(), {0, 0, 1.2});
  EXPECT_NEAR(deformed_curvature_direct(deform(s, 2.0), p).scalar, -1.5, 1e-12);
  EXPECT_NEAR(deformed_operators_direct(deform(s, 2.0), f, p).div_xi, 1.0, 1e-13);
}

TEST(DeformedInnerProducts, AllIdentitiesHoldWithoutMixedComponents) {
  const auto s = fixtures::kenmotsu3();
  const ScalarField f(parse_expr("exp(z) + z^3", xyz), xyz);
  for (double a : a_grid)
    for (const auto& p : sample_points(s.manifold(), kenmotsu_box, 6, 13)) {
      const auto ids = deformed_inner_products(s, a, f, p);
      ASSERT_EQ(ids.size(), 10u);
      for (const auto& id : ids) {
        EXPECT_TRUE(id.applicable) << id.name;
        EXPECT_LE(id.relative(), 1e-10) << id.name << " a=" << a;
      }
    }
}

TEST(DeformedInnerProducts, ExampleValuesAtTwo) {
  const auto s = fixtures::kenmotsu3();
  const ScalarField f(parse_expr("exp(z)", xyz), xyz);
  const auto ids = deformed_inner_products(s, 2.0, f, fixtures::at(s.manifold(), {0.5, 0.5, 2.0}));
  auto lhs = [&](const std::string& name) {
    for (const auto& id : ids)
      if (id.name == name) return id.lhs;
    ADD_FAILURE() << name;
    return 0.0;
  };
  EXPECT_NEAR(lhs("|g|^2"), 9.0 / 16.0, 1e-13);
  EXPECT_NEAR(lhs("|Ric|^2"), 2.25, 1e-12);
  EXPECT_NEAR(lhs("|eta(x)eta|^2"), 1.0 / 16.0, 1e-14);
  EXPECT_NEAR(lhs("<Ric,eta(x)eta>"), -2.0 / 16.0, 1e-13);
}

TEST(DeformedInnerProducts, HessianNormFlaggedWithMixedComponents) {
  // Hess(x) has a (x,z) component -1 on the example
  const auto s = fixtures::kenmotsu3();
  const ScalarField f(parse_expr("x", xyz), xyz);
  const KenmotsuPoint k(s, fixtures::at(s.manifold(), {0.5, 0.5, 1.5}));
  EXPECT_NEAR(k.geometry.hessian(f)(0, 2), -1.0, 1e-14);
  EXPECT_GT(mixed_component_norm(k, k.geometry.hessian(f)), 0.1);
  for (const auto& id : deformed_inner_products(k, 2.0, f)) {
    if (id.name != "|Hess(f)|^2") {
      EXPECT_TRUE(id.applicable) << id.name;
      EXPECT_LE(id.relative(), 1e-10) << id.name;
      continue;
    }
    EXPECT_FALSE(id.applicable);
    EXPECT_GT(id.residual(), 1e-3);
  }
}

TEST(BaseInnerProducts, HoldOnKenmotsu3) {
  const auto s = fixtures::kenmotsu3();
  const ScalarField f(parse_expr("x*sin(y) + exp(z)", xyz), xyz);
  for (const auto& p : sample_points(s.manifold(), kenmotsu_box, 8, 17))
    for (const auto& id : base_inner_products(KenmotsuPoint(s, p), f)) EXPECT_LE(id.relative(), 1e-11) << id.name;
}

TEST(HarmonicEquivalence, ConditionDecidesDeformedHarmonicity) {
  const auto s = fixtures::kenmotsu3();
  const auto p = fixtures::at(s.manifold(), {0.7, -0.3, 1.6});
  struct Case {
    const char* f;
    bool condition;
  };
  // Δf = e^{-2z}(f_xx + f_yy) + f_zz + 2 f_z
  for (const Case c : {Case{"x", true}, Case{"exp(-2*z)", true}, Case{"x^2 + z*exp(-2*z)", false}}) {
    const ScalarField f(parse_expr(c.f, xyz), xyz);
    for (double a : {0.5, 2.0, 3.7}) {
      const auto h = harmonic_equivalence(s, a, f, p);
      EXPECT_TRUE(h.applicable) << c.f;
      EXPECT_EQ(h.condition_holds, c.condition) << c.f;
      EXPECT_EQ(h.deformed_harmonic, c.condition) << c.f;
      EXPECT_TRUE(h.equivalence_holds());
    }
  }
  const auto h = harmonic_equivalence(s, 2.0, ScalarField(parse_expr("exp(z)", xyz), xyz), p);
  EXPECT_FALSE(h.applicable);
  EXPECT_TRUE(h.equivalence_holds());
}

TEST(RicciNormBound, HypotheticalNormConfinesParameter) {
  const auto b = ricci_norm_bound(2.0, 1, 1.2);
  ASSERT_TRUE(b.stated_a_sup && b.sharp_a_sup);
  EXPECT_NEAR(*b.stated_a_sup, 2.0, 1e-15);
  EXPECT_NEAR(*b.sharp_a_sup, std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(b.satisfied);
  // the inequality itself fails just past the sharp supremum
  EXPECT_FALSE(ricci_norm_bound(2.0, 1, std::sqrt(2.0) * 1.01).satisfied);
  EXPECT_TRUE(ricci_norm_bound(2.0, 1, std::sqrt(2.0) * 0.99).satisfied);
}

TEST(RicciNormBound, ExampleHasNoUpperLimit) {
  const auto s = fixtures::kenmotsu3();
  for (double a : {0.1, 1.0, 50.0}) {
    const auto b = remark_2_3_bound(s, a, fixtures::at(s.manifold(), {0, 0, 1.5}));
    EXPECT_NEAR(b.lhs, 12.0, 1e-11);
    EXPECT_TRUE(b.satisfied);
    EXPECT_FALSE(b.stated_a_sup.has_value());
  }
}
