#pragma once

// Check suites over a verification config and the JSON report they produce.
// Every check aggregates a per-point residual into its maximum over the
// sample set; status is "pass", "fail", or "info" (reported, not asserted).

#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "acm/config.hpp"

namespace acm {

struct CheckRecord {
  std::string id;
  std::string suite;
  std::string anchor;
  int points = 0;
  double max_residual = 0.0;      // relative
  double max_abs_residual = 0.0;
  double tolerance = 0.0;
  std::string status;             // pass | fail | info
  std::string note;
  nlohmann::json details = nlohmann::json::object();
};

struct Report {
  std::string fixture;
  std::string origin;
  std::uint64_t seed = 0;
  int points = 0;
  std::vector<double> a_grid;
  std::vector<std::string> suites;
  std::vector<CheckRecord> checks;
  std::optional<double> wall_time_s;

  int count(const std::string& status) const {
    int c = 0;
    for (const auto& r : checks) c += r.status == status;
    return c;
  }
  bool passed() const { return count("fail") == 0; }

  const CheckRecord* find(const std::string& id) const {
    for (const auto& r : checks)
      if (r.id == id) return &r;
    return nullptr;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["fixture"] = fixture;
    j["origin"] = origin;
    j["seed"] = seed;
    j["points"] = points;
    j["a_grid"] = a_grid;
    j["suites"] = suites;
    j["summary"] = {{"pass", count("pass")}, {"fail", count("fail")}, {"info", count("info")},
                    {"passed", passed()}};
    if (wall_time_s) j["wall_time_s"] = *wall_time_s;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : checks) {
      nlohmann::json c;
      c["id"] = r.id;
      c["suite"] = r.suite;
      c["anchor"] = r.anchor;
      c["points"] = r.points;
      c["max_residual"] = r.max_residual;
      c["max_abs_residual"] = r.max_abs_residual;
      c["tolerance"] = r.tolerance;
      c["status"] = r.status;
      if (!r.note.empty()) c["note"] = r.note;
      if (!r.details.empty()) c["details"] = r.details;
      arr.push_back(std::move(c));
    }
    j["checks"] = std::move(arr);
    return j;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }
};

/// Accumulates one check over the sample set.
class CheckBuilder {
 public:
  CheckBuilder(std::string id, std::string suite, std::string anchor, double tol) {
    rec_.id = std::move(id);
    rec_.suite = std::move(suite);
    rec_.anchor = std::move(anchor);
    rec_.tolerance = tol;
  }

  void observe(double relative, double absolute) {
    if (failed_) return;
    ++rec_.points;
    if (!(relative <= rec_.max_residual)) rec_.max_residual = relative;  // NaN sticks
    if (!(absolute <= rec_.max_abs_residual)) rec_.max_abs_residual = absolute;
  }
  void observe(const Residual& r) { observe(r.relative(), r.abs); }

  void error(const std::string& msg) {
    if (failed_) return;
    failed_ = true;
    rec_.note = msg;
  }
  bool errored() const { return failed_; }

  void make_info(const std::string& note) {
    info_ = true;
    if (rec_.note.empty()) rec_.note = note;
  }
  void set_anchor(std::string anchor) { rec_.anchor = std::move(anchor); }
  nlohmann::json& details() { return rec_.details; }
  const CheckRecord& record() const { return rec_; }

  CheckRecord finish() {
    if (failed_) rec_.status = "fail";
    else if (info_) rec_.status = "info";
    else rec_.status = rec_.max_residual <= rec_.tolerance ? "pass" : "fail";
    return rec_;
  }

 private:
  CheckRecord rec_;
  bool failed_ = false;
  bool info_ = false;
};

inline std::pair<double, double> relative_diff(const Tensor& a, const Tensor& b) {
  const double d = max_abs_diff(a, b);
  return {d / residual_scale({a.max_abs(), b.max_abs()}), d};
}

inline std::pair<double, double> relative_diff(double a, double b) {
  const double d = std::abs(a - b);
  return {d / residual_scale({a, b}), d};
}

namespace detail {

inline std::string tag(double a) { return "[a=" + format_number(a) + "]"; }
inline std::string tag(double a, const std::string& field) { return "[a=" + format_number(a) + "," + field + "]"; }

class Runner {
 public:
  explicit Runner(const VerificationConfig& cfg)
      : cfg_(cfg), pts_(sample_points(*cfg.manifold, cfg.box, cfg.points, cfg.seed)) {}

  std::vector<CheckRecord> run() {
    for (const auto& s : cfg_.suites) {
      if (s == "acm-axioms") acm_axioms();
      else if (s == "kenmotsu") kenmotsu();
      else if (s == "section2-identities") section2();
      else if (s == "prop22-norms") prop22();
      else if (s == "remark23") remark23();
      else if (s == "riemann-solitons") solitons(SolitonKind::riemann);
      else if (s == "ricci-solitons") solitons(SolitonKind::ricci);
      else if (s == "inequalities") inequalities();
    }
    std::sort(out_.begin(), out_.end(), [](const CheckRecord& x, const CheckRecord& y) { return x.id < y.id; });
    return out_;
  }

 private:
  using Group = std::vector<CheckBuilder>;

  double tol(const std::string& suite, double fallback) const { return cfg_.tolerance(suite, fallback); }

  void emit(CheckBuilder& b) { out_.push_back(b.finish()); }
  void emit(Group& g) {
    for (auto& b : g) emit(b);
  }

  /// Runs `body` at every sample; an exception marks every check in `g` failed.
  void each_point(Group& g, const std::function<void(const Point&)>& body) {
    for (const auto& p : pts_) {
      try {
        body(p);
      } catch (const std::exception& e) {
        for (auto& b : g) b.error("at " + p.describe() + ": " + e.what());
        return;
      }
    }
  }

  bool require_structure(Group& g) {
    if (cfg_.structure) return true;
    for (auto& b : g) b.error("no almost contact structure: " + cfg_.structure_error);
    emit(g);
    return false;
  }

  const AcmStructure& S() const { return *cfg_.structure; }

  // -- acm-axioms ----------------------------------------------------------

  void acm_axioms() {
    const std::string suite = "acm-axioms";
    const double t = tol(suite, 1e-10);
    {
      Group g;
      g.emplace_back("geometry.curvature-symmetries", suite,
                     "R(X,Y,Z,W) = -R(Y,X,Z,W) = -R(X,Y,W,Z) = R(Z,W,X,Y), first Bianchi identity", t);
      each_point(g, [&](const Point& p) {
        LocalGeometry geo(*cfg_.manifold, p);
        const Tensor& r = geo.riemann04();
        const double d = curvature_symmetry_defect(r);
        g[0].observe(d / residual_scale({r.max_abs()}), d);
      });
      emit(g);
    }
    for (const auto& [name, e] : cfg_.scalars) {
      Group g;
      g.emplace_back("geometry.hessian-lie[" + name + "]", suite, "Hess(f) = 1/2 Lie_{grad f} g", tol(suite, 1e-9));
      const ScalarField f = cfg_.scalar_field(name);
      each_point(g, [&](const Point& p) {
        LocalGeometry geo(*cfg_.manifold, p);
        const auto [rel, abs] = relative_diff(geo.hessian(f), 0.5 * geo.lie_derivative_gradient(f));
        g[0].observe(rel, abs);
      });
      emit(g);
    }
    Group g;
    g.emplace_back("acm.structure", suite, "(phi, xi, eta, g) on a manifold of odd dimension 2n+1", t);
    g.emplace_back("acm.eta-xi", suite, "eta(xi) = 1", t);
    g.emplace_back("acm.eta-dual", suite, "eta = i_xi g", t);
    g.emplace_back("acm.phi-squared", suite, "phi^2 = -I + eta (x) xi", t);
    g.emplace_back("acm.compatible-metric", suite, "g(phi X, phi Y) = g(X,Y) - eta(X)eta(Y)", t);
    g.emplace_back("acm.phi-xi", suite, "phi xi = 0", t);
    g.emplace_back("acm.eta-phi", suite, "eta o phi = 0", t);
    g.emplace_back("acm.phi-skew", suite, "g(phi X, Y) = -g(X, phi Y)", t);
    if (!require_structure(g)) return;
    g[0].details()["n"] = S().n();
    g[0].details()["eta_given"] = S().eta_given();
    each_point(g, [&](const Point& p) {
      const auto r = acm_axiom_residuals(S(), p);
      g[0].observe(0.0, 0.0);
      const double v[] = {r.eta_xi, r.eta_dual, r.phi_squared, r.compatible_metric, r.phi_xi, r.eta_phi, r.phi_skew};
      for (int i = 0; i < 7; ++i) g[i + 1].observe(v[i], v[i]);
    });
    emit(g);
  }

  // -- kenmotsu ------------------------------------------------------------

  void kenmotsu() {
    const std::string suite = "kenmotsu";
    Group g;
    g.emplace_back("kenmotsu.nabla-phi", suite, "(nabla_X phi)Y = g(phi X, Y) xi - eta(Y) phi X", tol(suite, 1e-10));
    g.emplace_back("kenmotsu.nabla-xi", suite, "nabla xi = I - eta (x) xi", tol(suite, 1e-10));
    g.emplace_back("kenmotsu.lie-xi-metric", suite, "Lie_xi g = 2(g - eta (x) eta)", tol(suite, 1e-10));
    g.emplace_back("kenmotsu.div-xi", suite, "div(xi) = 2n", tol(suite, 1e-10));
    g.emplace_back("kenmotsu.curvature-xi", suite, "R(X,Y)xi = eta(X)Y - eta(Y)X", tol(suite, 1e-9));
    g.emplace_back("kenmotsu.ricci-xi-xi", suite, "Ric(xi,xi) = -2n", tol(suite, 1e-9));
    if (!require_structure(g)) return;
    each_point(g, [&](const Point& p) {
      StructureAtPoint sp(S(), p);
      const auto r = kenmotsu_residual(sp, S());
      g[0].observe(r.nabla_phi / r.scale, r.nabla_phi);
      g[1].observe(r.nabla_xi / r.scale, r.nabla_xi);
      const auto id = kenmotsu_identities(sp, S());
      g[2].observe(id.lie_xi_metric.relative(), id.lie_xi_metric.residual);
      g[3].observe(id.div_xi.residual, id.div_xi.residual);
      g[4].observe(id.curvature_xi.relative(), id.curvature_xi.residual);
      g[5].observe(id.ricci_xi_xi.residual, id.ricci_xi_xi.residual);
    });
    emit(g);
  }

  // -- section2-identities -------------------------------------------------

  void section2() {
    const std::string suite = "section2-identities";
    for (double a : cfg_.a_grid) {
      const double t = tol(suite, a == 1.0 ? 1e-12 : 1e-8);
      const std::string at = tag(a);
      Group g;
      g.emplace_back("s2.deformed-acm" + at, suite,
                     "(phi_bar, xi_bar, eta_bar, g_bar) = (phi, xi/a, a eta, a g + a(a-1) eta (x) eta) is almost "
                     "contact metric, g_bar(xi,xi) = a^2",
                     tol(suite, 1e-10));
      g.emplace_back("s2.connection" + at, suite, "nabla_bar_X Y = nabla_X Y + ((a-1)/a) g(phi X, phi Y) xi", t);
      g.emplace_back("s2.curvature-13" + at, suite,
                     "R_bar(X,Y)Z = R(X,Y)Z + ((a-1)/a)[g(phi Y, phi Z)X - g(phi X, phi Z)Y]", t);
      g.emplace_back("s2.curvature-04" + at, suite,
                     "R_bar(X,Y,Z,W) = aR(X,Y,Z,W) + (a-1){eta(Z)[eta(X)g(Y,W) - eta(Y)g(X,W)] - "
                     "g(X,Z)[g(Y,W) - eta(Y)eta(W)] + g(Y,Z)[g(X,W) - eta(X)eta(W)]}",
                     t);
      g.emplace_back("s2.ricci" + at, suite, "Ric_bar = Ric + (2n(a-1)/a)(g - eta (x) eta)", t);
      g.emplace_back("s2.scalar" + at, suite, "scal_bar = scal/a + 2n(2n+1)(a-1)/a^2", t);
      g.emplace_back("s2.nabla-phi" + at, suite, "(nabla_bar_X phi_bar)Y = (1/a) g(phi X, Y) xi - eta(Y) phi X", t);
      g.emplace_back("s2.nabla-xi" + at, suite, "nabla_bar xi_bar = (1/a)(I - eta (x) xi)", t);
      g.emplace_back("s2.lie-xi" + at, suite, "Lie_xi_bar g_bar = 2(g - eta (x) eta)", t);
      g.emplace_back("s2.div-xi" + at, suite, "div_bar(xi_bar) = 2n/a", t);
      if (!require_structure(g)) continue;
      const DeformedStructure D = deform(S(), a);
      each_point(g, [&](const Point& p) {
        const auto ax = acm_axiom_residuals(D.structure, p);
        const StructureAtPoint dp(D.structure, p);
        const double gxx = apply(dp.g(), S().xi().value(p), S().xi().value(p));
        const double dacm = std::max(ax.max(), std::abs(gxx - a * a) / (a * a));
        g[0].observe(dacm, dacm);
        KenmotsuPoint k(S(), p);
        const auto cc = deformed_curvature_closed(k, a);
        const auto cd = deformed_curvature_direct(D, p);
        const ScalarField zero(Expr::constant(0.0), cfg_.coordinates());
        const auto oc = deformed_operators_closed(k, a, zero);
        const auto od = deformed_operators_direct(D, zero, p);
        auto obs = [](CheckBuilder& b, std::pair<double, double> r) { b.observe(r.first, r.second); };
        obs(g[1], relative_diff(oc.connection, od.connection));
        obs(g[2], relative_diff(cc.riemann13, cd.riemann13));
        obs(g[3], relative_diff(cc.riemann04, cd.riemann04));
        obs(g[4], relative_diff(cc.ricci, cd.ricci));
        obs(g[5], relative_diff(cc.scalar, cd.scalar));
        obs(g[6], relative_diff(oc.nabla_phi, od.nabla_phi));
        obs(g[7], relative_diff(oc.nabla_xi, od.nabla_xi));
        obs(g[8], relative_diff(oc.lie_xi_metric, od.lie_xi_metric));
        obs(g[9], relative_diff(oc.div_xi, od.div_xi));
      });
      emit(g);

      for (const auto& [name, e] : cfg_.scalars) {
        const std::string atf = tag(a, name);
        Group h;
        h.emplace_back("s2.hessian" + atf, suite, "Hess_bar(f) = Hess(f) - ((a-1)/a) xi(f) (g - eta (x) eta)", t);
        h.emplace_back("s2.gradient" + atf, suite, "grad_bar(f) = (1/a) grad(f) - ((a-1)/a^2) xi(f) xi", t);
        h.emplace_back("s2.laplacian" + atf, suite,
                       "Laplacian_bar(f) = (1/a) Laplacian(f) - (2n(a-1)/a^2) xi(f) - ((a-1)/a^2) xi(xi(f))", t);
        h.emplace_back("s2.harmonic" + atf, suite,
                       "for Laplacian(f) = 0: Laplacian_bar(f) = 0 iff Hess(f)(xi,xi) = -2n eta(grad f)",
                       tol(suite, 1e-9));
        const ScalarField f = cfg_.scalar_field(name);
        bool any_applicable = false;
        bool all_applicable = true;
        bool informative = a != 1.0;
        each_point(h, [&](const Point& p) {
          KenmotsuPoint k(S(), p);
          const auto oc = deformed_operators_closed(k, a, f);
          const auto od = deformed_operators_direct(D, f, p);
          auto r = relative_diff(oc.hessian, od.hessian);
          h[0].observe(r.first, r.second);
          r = relative_diff(oc.gradient, od.gradient);
          h[1].observe(r.first, r.second);
          r = relative_diff(oc.laplacian, od.laplacian);
          h[2].observe(r.first, r.second);
          const auto he = harmonic_equivalence(k, a, f);
          any_applicable |= he.applicable;
          all_applicable &= he.applicable;
          h[3].observe(he.equivalence_holds() ? 0.0 : 1.0, he.equivalence_holds() ? 0.0 : 1.0);
          if (!h[3].details().contains("condition_holds")) {
            h[3].details()["condition_holds"] = he.condition_holds;
            h[3].details()["deformed_harmonic"] = he.deformed_harmonic;
          }
        });
        h[3].details()["harmonic_at_all_samples"] = all_applicable;
        if (!any_applicable) h[3].make_info("f is not harmonic at the samples; the equivalence holds vacuously");
        else if (!informative) h[3].make_info("a = 1 leaves the Laplacian unchanged");
        emit(h);
      }
      for (const auto& [name, comps] : cfg_.vectors) {
        Group h;
        h.emplace_back("s2.divergence" + tag(a, name), suite, "div_bar(V) = div(V)", t);
        const VectorField v = cfg_.vector_field(name, a);
        each_point(h, [&](const Point& p) {
          KenmotsuPoint k(S(), p);
          const auto r = relative_diff(deformed_divergence_closed(k, a, v), deformed_divergence_direct(D, v, p));
          h[0].observe(r.first, r.second);
        });
        emit(h);
      }
    }
  }

  // -- prop22-norms --------------------------------------------------------

  void prop22() {
    const std::string suite = "prop22-norms";
    static const char* base_ids[] = {"g-g", "g-ric", "g-hess", "g-etaeta", "ric-etaeta", "hess-etaeta", "etaeta-etaeta"};
    static const bool base_uses_f[] = {false, false, true, false, false, true, false};
    static const char* bar_ids[] = {"g-ric",  "g-hess",   "g-etaeta", "ric-hess", "ric-etaeta",
                                    "hess-etaeta", "norm-g", "norm-ric", "norm-hess", "norm-etaeta"};
    static const bool bar_uses_f[] = {false, true, false, true, false, true, false, false, true, false};
    const char* bar_anchor[] = {
        "<g,Ric>_g_bar = scal/a^2 + 2n(a^2-1)/a^4",
        "<g,Hess(f)>_g_bar = Laplacian(f)/a^2 - ((a^2-1)/a^4) xi(xi(f))",
        "<g,eta (x) eta>_g_bar = 1/a^4",
        "<Ric,Hess(f)>_g_bar = <Ric,Hess(f)>_g/a^2 + (2n(a^2-1)/a^4) xi(xi(f))",
        "<Ric,eta (x) eta>_g_bar = -2n/a^4",
        "<Hess(f),eta (x) eta>_g_bar = xi(xi(f))/a^4",
        "|g|^2_g_bar = (2na^2+1)/a^4",
        "|Ric|^2_g_bar = |Ric|^2_g/a^2 - 4n^2(a^2-1)/a^4",
        "|Hess(f)|^2_g_bar = |Hess(f)|^2_g/a^2 - ((a^2-1)/a^4) xi(xi(f))^2",
        "|eta (x) eta|^2_g_bar = 1/a^4",
    };
    const double t = tol(suite, 1e-8);
    if (!cfg_.structure) {
      Group g;
      g.emplace_back("p22.structure", suite, "deformed Kenmotsu structure", t);
      require_structure(g);
      return;
    }
    const std::vector<std::string> fnames = scalar_names_or_zero();
    // g-inner products
    for (std::size_t fi = 0; fi < fnames.size(); ++fi) {
      const ScalarField f = scalar_or_zero(fnames[fi]);
      Group g;
      std::vector<int> idx;
      for (int i = 0; i < 7; ++i) {
        if (!base_uses_f[i] && fi > 0) continue;
        const std::string id = std::string("p22.base.") + base_ids[i] + (base_uses_f[i] ? "[" + fnames[fi] + "]" : "");
        g.emplace_back(id, suite, "inner products under g", t);
        idx.push_back(i);
      }
      each_point(g, [&](const Point& p) {
        const auto v = base_inner_products(KenmotsuPoint(S(), p), f);
        for (std::size_t j = 0; j < idx.size(); ++j) g[j].observe(v[idx[j]].relative(), v[idx[j]].residual());
      });
      for (std::size_t j = 0; j < idx.size(); ++j) g[j] = renamed_anchor(g[j], base_inner_name(idx[j]));
      emit(g);
    }
    for (double a : cfg_.a_grid) {
      for (std::size_t fi = 0; fi < fnames.size(); ++fi) {
        const ScalarField f = scalar_or_zero(fnames[fi]);
        Group g;
        std::vector<int> idx;
        for (int i = 0; i < 10; ++i) {
          if (!bar_uses_f[i] && fi > 0) continue;
          const std::string id =
              std::string("p22.") + bar_ids[i] + (bar_uses_f[i] ? tag(a, fnames[fi]) : tag(a));
          g.emplace_back(id, suite, bar_anchor[i], tol(suite, a == 1.0 ? 1e-12 : 1e-8));
          idx.push_back(i);
        }
        double worst_mixed = 0.0;
        bool applicable = true;
        each_point(g, [&](const Point& p) {
          KenmotsuPoint k(S(), p);
          const auto v = deformed_inner_products(k, a, f);
          for (std::size_t j = 0; j < idx.size(); ++j) g[j].observe(v[idx[j]].relative(), v[idx[j]].residual());
          applicable &= v[8].applicable;
          worst_mixed = std::max(worst_mixed, mixed_component_norm(k, k.geometry.hessian(f)));
        });
        for (std::size_t j = 0; j < idx.size(); ++j)
          if (idx[j] == 8) {
            g[j].details()["max_mixed_component"] = worst_mixed;
            if (!applicable)
              g[j].make_info("Hess(f) has components Hess(f)(X,xi) with X orthogonal to xi; the identity assumes "
                             "they vanish");
          }
        emit(g);
      }
    }
  }

  static std::string base_inner_name(int i) {
    static const char* n[] = {"<g,g>_g = 2n+1",
                              "<g,Ric>_g = scal",
                              "<g,Hess(f)>_g = Laplacian(f)",
                              "<g,eta (x) eta>_g = 1",
                              "<Ric,eta (x) eta>_g = -2n",
                              "<Hess(f),eta (x) eta>_g = xi(xi(f))",
                              "<eta (x) eta,eta (x) eta>_g = 1"};
    return n[i];
  }

  static CheckBuilder renamed_anchor(const CheckBuilder& b, const std::string& anchor) {
    CheckBuilder c = b;
    c.set_anchor(anchor);
    return c;
  }

  std::vector<std::string> scalar_names_or_zero() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : cfg_.scalars) out.push_back(k);
    if (out.empty()) out.push_back("0");
    return out;
  }

  ScalarField scalar_or_zero(const std::string& name) const {
    if (cfg_.scalars.count(name)) return cfg_.scalar_field(name);
    return ScalarField(Expr::constant(0.0), cfg_.coordinates());
  }

  // -- remark23 ------------------------------------------------------------

  void remark23() {
    const std::string suite = "remark23";
    for (double a : cfg_.a_grid) {
      Group g;
      g.emplace_back("remark23.ricci-bound" + tag(a), suite, "|Ric|^2_g >= 4n^2(a^2-1)/a^2", tol(suite, 1e-12));
      if (!require_structure(g)) continue;
      double min_lhs = std::numeric_limits<double>::infinity();
      double rhs = 0.0;
      std::optional<double> stated;
      std::optional<double> sharp;
      each_point(g, [&](const Point& p) {
        const auto b = remark_2_3_bound(S(), a, p);
        rhs = b.rhs;
        min_lhs = std::min(min_lhs, b.lhs);
        const double gap = std::max(0.0, b.rhs - b.lhs);
        g[0].observe(gap / residual_scale({b.lhs, b.rhs}), gap);
        if (b.stated_a_sup) stated = std::min(stated.value_or(*b.stated_a_sup), *b.stated_a_sup);
        if (b.sharp_a_sup) sharp = std::min(sharp.value_or(*b.sharp_a_sup), *b.sharp_a_sup);
      });
      auto& d = g[0].details();
      d["min_ricci_norm2"] = min_lhs;
      d["rhs"] = rhs;
      if (stated) {
        d["admissible_a_sup_stated"] = *stated;
        d["admissible_a_sup_sharp"] = *sharp;
      } else {
        d["admissible_a_sup_stated"] = "inf";
      }
      emit(g);
    }
  }

  // -- solitons ------------------------------------------------------------

  struct CandidateRun {
    bool hypothesis = false;
  };

  void solitons(SolitonKind kind) {
    const std::string suite = kind == SolitonKind::riemann ? "riemann-solitons" : "ricci-solitons";
    const std::string pre = kind == SolitonKind::riemann ? "riemann." : "ricci.";
    const bool riem = kind == SolitonKind::riemann;
    const double t = tol(suite, 1e-8);
    const std::string eq_anchor = riem ? "2R + g (KN) Lie_V g = 2 lambda G, G = 1/2 g (KN) g"
                                       : "1/2 Lie_V g + Ric = lambda g";
    if (!cfg_.structure) {
      Group g;
      g.emplace_back(pre + "structure", suite, "Kenmotsu structure", t);
      require_structure(g);
      return;
    }
    for (const auto& spec : cfg_.candidates) {
      if (spec.kind != kind) continue;
      const std::string cp = pre + spec.name + ".";
      // undeformed frame
      {
        Group g;
        g.emplace_back(cp + "equation", suite, eq_anchor, t);
        if (riem) {
          g.emplace_back(cp + "traced", suite,
                         "1/2 Lie_V g + Ric/(2n-1) = ((2n lambda - div V)/(2n-1)) g", t);
          g.emplace_back(cp + "scalar", suite, "scal = 2n[(2n+1)lambda - 2 div(V)]", t);
        } else {
          g.emplace_back(cp + "scalar", suite, "scal = (2n+1)lambda - div(V)", t);
        }
        const SolitonCandidate c = cfg_.candidate(spec);
        std::map<std::string, int> classes;
        double lmin = std::numeric_limits<double>::infinity();
        double lmax = -lmin;
        each_point(g, [&](const Point& p) {
          const auto r = candidate_residual(S(), c, p);
          g[0].observe(r.equation);
          if (riem) {
            g[1].observe(r.traced_tensor);
            g[2].observe(r.traced_scalar);
          } else {
            g[1].observe(r.traced_scalar);
          }
          ++classes[to_string(r.classification)];
          lmin = std::min(lmin, r.lambda);
          lmax = std::max(lmax, r.lambda);
        });
        classification_details(g[0].details(), classes, lmin, lmax, c.potential);
        emit(g);
      }
      if (spec.lambda_root) sign_change(spec, cp, suite);

      if (!spec.deformed_lambda) continue;
      for (double a : cfg_.a_grid) {
        const std::string at = tag(a);
        const SolitonCandidate c = cfg_.candidate(spec, a);
        Group g;
        g.emplace_back(cp + "deformed" + at, suite, eq_anchor + " for (g_bar, V_bar, lambda_bar)", t);
        g.emplace_back(cp + "deformed-scalar" + at, suite,
                       riem ? "scal_bar = 2n[(2n+1)lambda_bar - 2 div_bar(V_bar)]"
                            : "scal_bar = (2n+1)lambda_bar - div_bar(V_bar)",
                       t);
        std::map<std::string, int> classes;
        double lmin = std::numeric_limits<double>::infinity();
        double lmax = -lmin;
        bool solenoidal = true;
        bool orthogonal = true;
        each_point(g, [&](const Point& p) {
          const auto terms = soliton_terms(S(), c, p);
          const auto r = candidate_residual(terms, kind);
          g[0].observe(r.equation);
          g[1].observe(r.traced_scalar);
          ++classes[to_string(r.classification)];
          lmin = std::min(lmin, r.lambda);
          lmax = std::max(lmax, r.lambda);
          solenoidal &= std::abs(terms.div) <= kSolenoidalTolerance;
          if (c.potential == PotentialKind::gradient)
            orthogonal &= std::abs(KenmotsuPoint(S(), p).xi_f(c.potential_function)) <= kSolenoidalTolerance;
        });
        classification_details(g[0].details(), classes, lmin, lmax, c.potential);
        g[0].details()["solenoidal"] = solenoidal;
        const bool hypothesis = !g[0].errored() && g[0].record().max_residual <= t;
        emit(g);
        theorem_checks(kind, c, a, cp, suite, hypothesis, solenoidal, orthogonal);
      }
    }
    reeb_ricci_norm_check(kind, pre, suite);
    for (double a : cfg_.a_grid) {
      reeb_constants_check(kind, a, pre, suite);
      xi_compatibility(kind, a, pre, suite);
      reduction_reeb(kind, a, pre, suite);
      for (const auto& [name, comps] : cfg_.vectors) reduction_solenoidal(kind, a, name, pre, suite);
    }
  }

  static void classification_details(nlohmann::json& d, const std::map<std::string, int>& classes, double lmin,
                                     double lmax, PotentialKind potential) {
    d["classification"] = classes;
    d["lambda_min"] = lmin;
    d["lambda_max"] = lmax;
    const bool constant = lmax - lmin <= 1e-9;
    d["type"] = std::string(constant ? "" : "almost ") + (potential == PotentialKind::gradient ? "gradient " : "") +
                "soliton";
    d["potential"] = to_string(potential);
  }

  /// λ evaluated on samples moved along one coordinate to straddle its claimed zero.
  void sign_change(const CandidateSpec& spec, const std::string& cp, const std::string& suite) {
    const auto& [coord, root_expr] = *spec.lambda_root;
    Group g;
    g.emplace_back(cp + "sign-change", suite, "lambda changes sign at " + coord + " = " + render(root_expr),
                   tol(suite, 1e-10));
    const auto& coords = cfg_.coordinates();
    const std::size_t ci = static_cast<std::size_t>(std::find(coords.begin(), coords.end(), coord) - coords.begin());
    const double root = eval(root_expr, std::span<const double>{});
    std::map<std::string, int> below;
    std::map<std::string, int> above;
    const int n = static_cast<int>(pts_.size());
    int i = 0;
    each_point(g, [&](const Point& p) {
      const double offset = -0.5 + (i + 0.5) / n;
      ++i;
      const double at_root = eval(spec.lambda, p.with(ci, root));
      const double lam = eval(spec.lambda, p.with(ci, root + offset));
      ++(offset < 0 ? below : above)[to_string(classify(lam))];
      g[0].observe(std::abs(at_root), std::abs(at_root));
    });
    const bool ok = below.size() == 1 && above.size() == 1 && below.begin()->first != above.begin()->first &&
                    below.count("steady") == 0 && above.count("steady") == 0;
    auto& d = g[0].details();
    d["coordinate"] = coord;
    d["root"] = root;
    d["below"] = below;
    d["above"] = above;
    d["root_in_domain"] = cfg_.manifold->in_domain(pts_.front().with(ci, root));
    if (!ok) g[0].error("lambda does not change sign across the claimed root");
    emit(g);
  }

  void theorem_checks(SolitonKind kind, const SolitonCandidate& c, double a, const std::string& cp,
                      const std::string& suite, bool hypothesis, bool solenoidal, bool orthogonal) {
    const bool riem = kind == SolitonKind::riemann;
    const std::string at = tag(a);
    const double t = tol(suite, 1e-9);
    Group g;
    std::function<void(const KenmotsuPoint&, double)> body;
    std::string unmet;
    switch (c.potential) {
      case PotentialKind::gradient:
        g.emplace_back(cp + "theorem-lambda" + at, suite,
                       riem ? "lambda_bar = Laplacian(f)/(2na) - ((a-1)/a^2) eta(grad f) + ((2n-a)/(2na^2)) "
                              "Hess(f)(xi,xi) - 1/a^2"
                            : "lambda_bar = Hess(f)(xi,xi)/a^2 - 2n/a^2",
                       t);
        g.emplace_back(cp + "orthogonal-lambda" + at, suite,
                       riem ? "V orthogonal to xi: lambda_bar = Laplacian(f)/(2na) - 1/a^2"
                            : "V orthogonal to xi: lambda_bar = -2n/a^2",
                       t);
        g.emplace_back(cp + "orthogonal-scalar" + at, suite,
                       riem ? "V orthogonal to xi: scal = -(2n-1)Laplacian(f) - 2n(2n+1)"
                            : "V orthogonal to xi: scal = -Laplacian(f) - 2n(2n+1)",
                       t);
        body = [&](const KenmotsuPoint& k, double lam) {
          const auto in = gradient_inputs(k, a, c.potential_function);
          auto r = relative_diff(theorem_lambda(kind, Scenario::gradient, in), lam);
          g[0].observe(r.first, r.second);
          r = relative_diff(theorem_lambda(kind, Scenario::gradient_orthogonal, in), lam);
          g[1].observe(r.first, r.second);
          r = relative_diff(implied_scalar_gradient_orthogonal(kind, k.n, *in.laplacian),
                            k.geometry.scalar_curvature());
          g[2].observe(r.first, r.second);
        };
        if (!orthogonal) {
          g[1].make_info("grad_bar(f) is not g_bar-orthogonal to xi at every sample");
          g[2].make_info("grad_bar(f) is not g_bar-orthogonal to xi at every sample");
        }
        break;
      case PotentialKind::vector:
        g.emplace_back(cp + "solenoidal-lambda" + at, suite,
                       riem ? "div V = 0: lambda_bar = ((2n-1)/2n) xi(eta(V)) - 1/a^2"
                            : "div V = 0: lambda_bar = xi(eta(V)) - 2n/a^2",
                       t);
        g.emplace_back(cp + "solenoidal-ricci" + at, suite,
                       riem ? "div V = 0: Ric = [(2n-1)a xi(eta(V)) - 2n]g + ... - ((2n-1)a/2)[g(nabla_X V,Y) + "
                              "g(nabla_Y V,X)] - ..."
                            : "div V = 0: Ric = [a xi(eta(V)) - 2n]g + ... - (a/2)[g(nabla_X V,Y) + g(nabla_Y V,X)] "
                              "- ...",
                       tol(suite, 1e-8));
        g.emplace_back(cp + "solenoidal-scalar" + at, suite,
                       riem ? "div V = 0: scal = (2n+1)[(2n-1)a xi(eta(V)) - 2n]"
                            : "div V = 0: scal = (2n+1)[a xi(eta(V)) - 2n]",
                       tol(suite, 1e-8));
        body = [&](const KenmotsuPoint& k, double lam) {
          TheoremInputs in;
          in.a = a;
          in.n = k.n;
          in.xi_eta_v = xi_eta_v(S(), c.vector, k.point());
          auto r = relative_diff(theorem_lambda(kind, Scenario::solenoidal, in), lam);
          g[0].observe(r.first, r.second);
          const Tensor nv = k.geometry.covariant_derivative(c.vector);
          const Tensor v = c.vector.value(k.point());
          r = relative_diff(implied_ricci_solenoidal(kind, k, a, *in.xi_eta_v, nv, v), k.geometry.ricci());
          g[1].observe(r.first, r.second);
          r = relative_diff(implied_scalar_solenoidal(kind, k.n, a, *in.xi_eta_v), k.geometry.scalar_curvature());
          g[2].observe(r.first, r.second);
        };
        if (!solenoidal) unmet = "V is not solenoidal at every sample";
        break;
      case PotentialKind::reeb:
        g.emplace_back(cp + "reeb-lambda" + at, suite, riem ? "lambda_bar = (a-1)/a^2" : "lambda_bar = -2n/a^2", t);
        g.emplace_back(cp + "reeb-ricci" + at, suite,
                       riem ? "Ric = -(4n-1)g + (2n-1) eta (x) eta" : "Ric = -(2n+1)g + eta (x) eta",
                       tol(suite, 1e-8));
        g.emplace_back(cp + "reeb-scalar" + at, suite, riem ? "scal = -8n^2" : "scal = -4n(n+1)", tol(suite, 1e-8));
        body = [&](const KenmotsuPoint& k, double lam) {
          const auto consts = reeb_constants(kind, k.n, a);
          auto r = relative_diff(consts.lambda_bar, lam);
          g[0].observe(r.first, r.second);
          r = relative_diff(ricci_of_form(k, consts.ricci_g, consts.ricci_eta), k.geometry.ricci());
          g[1].observe(r.first, r.second);
          r = relative_diff(consts.scalar, k.geometry.scalar_curvature());
          g[2].observe(r.first, r.second);
        };
        break;
    }
    each_point(g, [&](const Point& p) { body(KenmotsuPoint(S(), p), eval(c.lambda, p)); });
    for (auto& b : g) {
      if (!unmet.empty()) b.make_info(unmet);
      if (!hypothesis) b.make_info("the candidate does not satisfy the deformed soliton equation");
    }
    emit(g);
  }

  void reeb_constants_check(SolitonKind kind, double a, const std::string& pre, const std::string& suite) {
    const bool riem = kind == SolitonKind::riemann;
    Group g;
    g.emplace_back(pre + "reeb-theorem.constants" + tag(a), suite,
                   riem ? "xi_bar soliton: lambda_bar = (a-1)/a^2, Ric = -(4n-1)g + (2n-1) eta (x) eta, scal = -8n^2"
                        : "xi_bar soliton: lambda_bar = -2n/a^2, Ric = -(2n+1)g + eta (x) eta, scal = -4n(n+1)",
                   tol(suite, 1e-12));
    each_point(g, [&](const Point& p) {
      const StructureAtPoint s(S(), p);
      const auto c = reeb_constants(kind, s.n, a);
      TheoremInputs in;
      in.a = a;
      in.n = s.n;
      const double lb = theorem_lambda(kind, Scenario::reeb, in);
      const Tensor ric = ricci_of_form(s, c.ricci_g, c.ricci_eta);
      const Tensor& gi = s.geometry.inverse();
      double worst = 0.0;
      auto take = [&](std::pair<double, double> r) { worst = std::max(worst, r.first); };
      take(relative_diff(lb, c.lambda_bar));
      take(relative_diff(metric_trace(ric, gi), c.scalar));
      take(relative_diff(ricci_in_terms_of_lambda(kind, PotentialKind::reeb, s, a, lb), ric));
      take(relative_diff(scalar_in_terms_of_lambda(kind, PotentialKind::reeb, s.n, a, lb), c.scalar));
      if (riem) take(relative_diff(ricci_from_riemann04(implied_riemann04_reeb(s), gi), ric));
      g[0].observe(worst, worst);
      if (!g[0].details().contains("lambda_bar")) {
        g[0].details()["lambda_bar"] = c.lambda_bar;
        g[0].details()["scalar"] = c.scalar;
      }
    });
    emit(g);
  }

  /// The quoted |Ric|^2 against the norm of the implied Ricci tensor.
  void reeb_ricci_norm_check(SolitonKind kind, const std::string& pre, const std::string& suite) {
    const bool riem = kind == SolitonKind::riemann;
    Group g;
    g.emplace_back(pre + "reeb-theorem.ricci-norm", suite,
                   riem ? "xi_bar soliton: |Ric|^2 = 2n(16n^2-6n+1)" : "xi_bar soliton: |Ric|^2 = 2n(4n^2+6n+3)",
                   tol(suite, 1e-12));
    double stated = 0.0;
    double actual = 0.0;
    each_point(g, [&](const Point& p) {
      const StructureAtPoint s(S(), p);
      const auto c = reeb_constants(kind, s.n, 1.0);
      const Tensor ric = ricci_of_form(s, c.ricci_g, c.ricci_eta);
      stated = c.stated_ricci_norm2;
      actual = hs_inner(ric, ric, s.geometry.inverse());
      const auto r = relative_diff(stated, actual);
      g[0].observe(r.first, r.second);
    });
    g[0].details()["stated"] = stated;
    g[0].details()["norm_of_implied_ricci"] = actual;
    emit(g);
  }

  void xi_compatibility(SolitonKind kind, double a, const std::string& pre, const std::string& suite) {
    const bool riem = kind == SolitonKind::riemann;
    Group g;
    g.emplace_back(pre + "xi-compatibility" + tag(a), suite,
                   riem ? "given the xi_bar soliton, (xi, lambda) is a Riemann soliton iff lambda = 0"
                        : "given the xi_bar soliton, (xi, lambda) is a Ricci soliton iff lambda = -2n",
                   tol(suite, 1e-8));
    double min_ratio = std::numeric_limits<double>::infinity();
    each_point(g, [&](const Point& p) {
      const KenmotsuPoint k(S(), p);
      const auto x = xi_compatibility_check(kind, k, a);
      const double worst = std::max(x.deformed.relative(), x.undeformed.relative());
      g[0].observe(worst, std::max(x.deformed.abs, x.undeformed.abs));
      // a shifted λ leaves exactly -offset·g (Ricci) or -offset·g⊙g (Riemann)
      const double expected = x.offset * (riem ? kulkarni_nomizu(k.g(), k.g()).max_abs() : k.g().max_abs());
      min_ratio = std::min(min_ratio, x.undeformed_offset.abs / expected);
    });
    g[0].details()["offset"] = 0.5;
    g[0].details()["min_offset_residual_ratio"] = min_ratio;
    if (!(min_ratio >= 0.5)) g[0].error("the undeformed residual does not respond to a shift of lambda");
    emit(g);
  }

  /// The Ricci and scalar expressions in terms of λ̄ before λ̄ is eliminated,
  /// checked as identities against the traced deformed soliton tensors.
  void reduction_reeb(SolitonKind kind, double a, const std::string& pre, const std::string& suite) {
    const bool riem = kind == SolitonKind::riemann;
    Group g;
    g.emplace_back(pre + "reeb-theorem.reduction" + tag(a), suite,
                   riem ? "Ric = [2na lambda_bar - (4n-1) - 2n(a-1)/a]g + [2na(a-1)lambda_bar + (4n-1-2na) + "
                          "2n(a-1)/a] eta (x) eta, scal = 2n(2n+1)a lambda_bar - 8n^2 - 2n(2n+1)(a-1)/a"
                        : "Ric = (a lambda_bar - 1 - 2n(a-1)/a)g + [a(a-1)lambda_bar + 1 + 2n(a-1)/a] eta (x) eta, "
                          "scal = (2n+1)a lambda_bar - 2n - 2n(2n+1)(a-1)/a",
                   tol(suite, 1e-8));
    SolitonCandidate c;
    c.kind = kind;
    c.potential = PotentialKind::reeb;
    c.a = a;
    each_point(g, [&](const Point& p) {
      const KenmotsuPoint k(S(), p);
      for (double lb : {-0.75, 0.3, 1.4}) {
        c.lambda = Expr::constant(lb);
        const auto t = soliton_terms(S(), c, p);
        reduction_observe(g[0], kind, k, t, ricci_in_terms_of_lambda(kind, PotentialKind::reeb, k, a, lb),
                          scalar_in_terms_of_lambda(kind, PotentialKind::reeb, k.n, a, lb), a);
      }
    });
    g[0].details()["lambda_bar_values"] = {-0.75, 0.3, 1.4};
    emit(g);
  }

  void reduction_observe(CheckBuilder& b, SolitonKind kind, const KenmotsuPoint& k, const SolitonTerms& t,
                         const Tensor& ric_formula, double scal_formula, double a) {
    const bool riem = kind == SolitonKind::riemann;
    const Tensor e = riem ? (2.0 * k.n - 1.0) * riemann_traced_tensor(t) : ricci_soliton_tensor(t);
    const Tensor lhs = k.geometry.ricci() - ric_formula;
    const auto r1 = relative_diff(lhs, e);
    const double es = a * (riem ? riemann_scalar_defect(t) : ricci_scalar_defect(t));
    const auto r2 = relative_diff(k.geometry.scalar_curvature() - scal_formula, es);
    const double scale = residual_scale({k.geometry.ricci().max_abs(), ric_formula.max_abs(), e.max_abs()});
    b.observe(std::max(r1.second / scale, r2.first), std::max(r1.second, r2.second));
  }

  void reduction_solenoidal(SolitonKind kind, double a, const std::string& vname, const std::string& pre,
                            const std::string& suite) {
    const bool riem = kind == SolitonKind::riemann;
    Group g;
    g.emplace_back(pre + "solenoidal-theorem.reduction" + tag(a, vname), suite,
                   riem ? "div V = 0: Ric(X,Y) = (2na lambda_bar - 2n(a-1)/a)g + ... - (2n-1)(a/2)[g(nabla_X V,Y) + "
                          "g(nabla_Y V,X)], scal = 2n(2n+1)a lambda_bar - 2n(2n+1)(a-1)/a, trace of Ric matches scal"
                        : "div V = 0: Ric(X,Y) = (a lambda_bar - 2n(a-1)/a)g + ... - (a/2)[g(nabla_X V,Y) + "
                          "g(nabla_Y V,X)], scal = (2n+1)a lambda_bar - 2n(2n+1)(a-1)/a, trace of Ric matches scal",
                   tol(suite, 1e-8));
    SolitonCandidate c;
    c.kind = kind;
    c.potential = PotentialKind::vector;
    c.vector = cfg_.vector_field(vname, a);
    c.a = a;
    bool solenoidal = true;
    each_point(g, [&](const Point& p) {
      const KenmotsuPoint k(S(), p);
      const Tensor nv = k.geometry.covariant_derivative(c.vector);
      const Tensor v = c.vector.value(p);
      solenoidal &= std::abs(k.geometry.divergence(c.vector)) <= kSolenoidalTolerance;
      for (double lb : {-0.75, 0.3, 1.4}) {
        c.lambda = Expr::constant(lb);
        const auto t = soliton_terms(S(), c, p);
        reduction_observe(g[0], kind, k, t, ricci_in_terms_of_lambda(kind, PotentialKind::vector, k, a, lb, &nv, &v),
                          scalar_in_terms_of_lambda(kind, PotentialKind::vector, k.n, a, lb), a);
      }
      // with λ̄ eliminated, the trace of the Ricci expression is the scalar expression
      const double xev = xi_eta_v(S(), c.vector, p);
      const auto r = relative_diff(metric_trace(implied_ricci_solenoidal(kind, k, a, xev, nv, v), k.geometry.inverse()),
                                   implied_scalar_solenoidal(kind, k.n, a, xev));
      g[0].observe(r.first, r.second);
    });
    g[0].details()["solenoidal"] = solenoidal;
    if (!solenoidal) g[0].make_info("V is not solenoidal at every sample");
    emit(g);
  }

  // -- inequalities --------------------------------------------------------

  void inequalities() {
    const std::string suite = "inequalities";
    static const char* slugs[] = {"main", "solenoidal", "undeformed", "orthogonal", "orthogonal-harmonic",
                                  "solenoidal-gradient"};
    if (!cfg_.structure) {
      Group g;
      g.emplace_back("inequalities.structure", suite, "Kenmotsu structure", tol(suite, 1e-9));
      require_structure(g);
      return;
    }
    for (const auto& spec : cfg_.candidates) {
      if (!spec.deformed_lambda || !spec.deformed_potential ||
          spec.deformed_potential->kind != PotentialKind::gradient)
        continue;
      const std::string cp = "inequalities." + spec.name + ".";
      for (double a : cfg_.a_grid) {
        const std::string at = tag(a);
        const SolitonCandidate c = cfg_.candidate(spec, a);
        Group g;
        std::vector<bool> applicable(6, true);
        // hypothesis: the deformed gradient soliton equation
        g.emplace_back(cp + "hypothesis" + at, suite, "(grad_bar(f), lambda_bar) is a soliton for g_bar",
                       tol("riemann-solitons", 1e-8));
        each_point(g, [&](const Point& p) {
          const auto battery = inequality_battery(spec.kind, KenmotsuPoint(S(), p), a, c.potential_function,
                                                  eval(c.lambda, p));
          if (g.size() == 1) {
            for (std::size_t i = 0; i < battery.inequalities.size(); ++i)
              g.emplace_back(cp + slugs[i] + at, suite, battery.inequalities[i].name, tol(suite, 1e-9));
            g.emplace_back(cp + "hessian-reconstruction" + at, suite, battery.hessian_norm.name, tol(suite, 1e-8));
          }
          g[0].observe(candidate_residual(S(), c, p).equation);
          for (std::size_t i = 0; i < battery.inequalities.size(); ++i) {
            const auto& q = battery.inequalities[i];
            const double gap = std::max(0.0, q.rhs - q.lhs);
            g[i + 1].observe(gap / residual_scale({q.lhs, q.rhs}), gap);
            applicable[i] = applicable[i] && q.applicable;
            auto& d = g[i + 1].details();
            if (!d.contains("lhs_first")) {
              d["lhs_first"] = q.lhs;
              d["rhs_first"] = q.rhs;
              if (!q.hypothesis.empty()) d["hypothesis"] = q.hypothesis;
            }
          }
          g.back().observe(battery.hessian_norm.relative(),
                           std::abs(battery.hessian_norm.direct - battery.hessian_norm.reconstructed));
        });
        const bool hyp = !g[0].errored() && g[0].record().max_residual <= g[0].record().tolerance;
        for (std::size_t i = 1; i < g.size(); ++i) {
          if (i <= 6 && !applicable[i - 1]) g[i].make_info("hypothesis '" + g[i].details().value("hypothesis", std::string()) +
                                                           "' is not met at every sample");
          if (!hyp) g[i].make_info("the candidate does not satisfy the deformed soliton equation");
        }
        g[0].make_info("hypothesis of the inequalities");
        if (!hyp) g[0].error("the candidate does not satisfy the deformed soliton equation");
        emit(g);
      }
    }
  }

  const VerificationConfig& cfg_;
  std::vector<Point> pts_;
  std::vector<CheckRecord> out_;
};

}  // namespace detail

struct RunOptions {
  bool timing = false;
};

inline Report run_suites(const VerificationConfig& cfg, RunOptions opts = {}) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.fixture = cfg.name;
  r.origin = cfg.origin;
  r.seed = cfg.seed;
  r.points = cfg.points;
  r.a_grid = cfg.a_grid;
  r.suites = cfg.suites;
  r.checks = detail::Runner(cfg).run();
  if (opts.timing)
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace acm
