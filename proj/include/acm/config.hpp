#pragma once

// Verification configs: a sectioned key-value text format describing a chart,
// an almost contact structure, named fields, soliton candidates and run
// settings. Built-in fixtures are stored as text in the same format.
//
//   [manifold]   name, coordinates, domain (repeatable, "expr" means expr > 0),
//                box.<c> = lo, hi, g.<ci>.<cj> (upper triangle, missing = 0)
//   [structure]  phi.<ci>.<cj> (= φ^ci_cj), xi.<c>, eta.<c> (optional)
//   [scalars]    <name> = expr
//   [vectors]    <name>.<c> = expr      (may use the deformation parameter a)
//   [candidates] <name>.kind, .potential, .lambda, .deformed_potential,
//                .deformed_lambda (may use a), .lambda_root.<c>
//   [run]        suites, a, points, seed, tol.<suite>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "acm/solitons.hpp"

namespace acm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s = {"acm-axioms",     "kenmotsu",         "section2-identities",
                                             "prop22-norms",   "remark23",         "riemann-solitons",
                                             "ricci-solitons", "inequalities"};
  return s;
}

/// A potential as written in a config: a named vector, grad(<scalar>) or xi.
struct PotentialRef {
  PotentialKind kind = PotentialKind::vector;
  std::string field;  // vector or scalar name
};

struct CandidateSpec {
  std::string name;
  SolitonKind kind = SolitonKind::ricci;
  PotentialRef potential;
  Expr lambda;
  std::optional<PotentialRef> deformed_potential;
  std::optional<Expr> deformed_lambda;  // over coordinates and a
  std::optional<std::pair<std::string, Expr>> lambda_root;  // coordinate, claimed zero of λ
};

struct VerificationConfig {
  std::string name;
  std::string origin;
  std::shared_ptr<const ChartManifold> manifold;
  std::optional<AcmStructure> structure;
  std::string structure_error;  // why `structure` is absent
  std::map<std::string, Expr> scalars;
  std::map<std::string, std::vector<Expr>> vectors;  // may depend on a
  std::vector<CandidateSpec> candidates;
  Box box;
  std::vector<double> a_grid = {0.5, 1.0, 2.0, 3.7};
  int points = 64;
  std::uint64_t seed = 42;
  std::map<std::string, double> tolerance_overrides;
  std::vector<std::string> suites = all_suites();

  const Scope& coordinates() const { return manifold->coordinates(); }

  /// Vector `name` with a substituted (a = 1 for undeformed use).
  VectorField vector_field(const std::string& name, std::optional<double> a = std::nullopt) const {
    const auto it = vectors.find(name);
    if (it == vectors.end()) throw ConfigError("undefined vector field '" + name + "'");
    std::vector<Expr> comps;
    for (const auto& e : it->second) {
      if (!a && depends_on(e, "a"))
        throw ConfigError("vector field '" + name + "' depends on the deformation parameter a");
      comps.push_back(a ? simplify_basic(substitute(e, "a", *a)) : e);
    }
    return VectorField(std::move(comps), coordinates());
  }

  ScalarField scalar_field(const std::string& name) const {
    const auto it = scalars.find(name);
    if (it == scalars.end()) throw ConfigError("undefined scalar field '" + name + "'");
    return ScalarField(it->second, coordinates());
  }

  SolitonCandidate candidate(const CandidateSpec& spec, std::optional<double> a = std::nullopt) const {
    SolitonCandidate c;
    c.name = spec.name;
    c.kind = spec.kind;
    c.a = a;
    const PotentialRef& ref = a && spec.deformed_potential ? *spec.deformed_potential : spec.potential;
    c.potential = ref.kind;
    if (ref.kind == PotentialKind::vector) c.vector = vector_field(ref.field, a);
    if (ref.kind == PotentialKind::gradient) c.potential_function = scalar_field(ref.field);
    if (a) {
      if (!spec.deformed_lambda) throw ConfigError("candidate '" + spec.name + "' has no deformed_lambda");
      c.lambda = simplify_basic(substitute(*spec.deformed_lambda, "a", *a));
    } else {
      c.lambda = spec.lambda;
    }
    return c;
  }

  double tolerance(const std::string& suite, double fallback) const {
    const auto it = tolerance_overrides.find(suite);
    return it == tolerance_overrides.end() ? fallback : it->second;
  }

  void validate() const {
    for (double a : a_grid) (void)DeformationParams(a);
    if (a_grid.empty()) throw ConfigError("deformation grid is empty");
    if (points < 1) throw ConfigError("points must be at least 1");
    for (const auto& s : suites)
      if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
        throw ConfigError("unknown suite '" + s + "'");
    for (const auto& [suite, tol] : tolerance_overrides) {
      if (std::find(all_suites().begin(), all_suites().end(), suite) == all_suites().end())
        throw ConfigError("tolerance override for unknown suite '" + suite + "'");
      if (!(tol > 0.0)) throw ConfigError("tolerance for suite '" + suite + "' must be positive");
    }
    try {
      (void)sample_points(*manifold, box, 1, seed);
    } catch (const GeometryError& e) {
      throw ConfigError(e.what());
    }
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

inline bool is_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  return true;
}

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

class ConfigReader {
 public:
  explicit ConfigReader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ConfigError(origin_ + ":" + std::to_string(line) + ": " + msg);
  }

  std::map<std::string, std::vector<Entry>> read(const std::string& text) {
    static const std::set<std::string> known = {"manifold", "structure", "scalars", "vectors", "candidates", "run"};
    std::map<std::string, std::vector<Entry>> sections;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      const auto hash = raw.find('#');
      const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']') fail(line, "malformed section header");
        section = trim(s.substr(1, s.size() - 2));
        if (!known.count(section)) fail(line, "unknown section [" + section + "]");
        sections[section];
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string::npos) fail(line, "expected 'key = value'");
      if (section.empty()) fail(line, "entry outside of any section");
      Entry e{trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line};
      if (e.key.empty()) fail(line, "empty key");
      if (e.value.empty()) fail(line, "empty value for '" + e.key + "'");
      sections[section].push_back(std::move(e));
    }
    return sections;
  }

  Expr expr(const Entry& e, const Scope& scope) const {
    try {
      return parse_expr(e.value, scope);
    } catch (const ParseError& err) {
      fail(e.line, "in '" + e.key + "': " + err.what());
    }
  }

  double number(const Entry& e, const std::string& text) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      try {
        return eval(parse_expr(text, Scope{}), std::span<const double>{});
      } catch (const std::exception&) {
        fail(e.line, "'" + e.key + "' expects a number, got '" + text + "'");
      }
    }
  }

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
};

inline int coordinate_index(const Scope& c, const std::string& name) {
  const auto it = std::find(c.begin(), c.end(), name);
  return it == c.end() ? -1 : static_cast<int>(it - c.begin());
}

inline std::optional<PotentialRef> parse_potential(const std::string& v) {
  if (v == "xi") return PotentialRef{PotentialKind::reeb, {}};
  if (v.rfind("grad(", 0) == 0 && v.back() == ')') {
    const std::string inner = trim(v.substr(5, v.size() - 6));
    if (!is_identifier(inner)) return std::nullopt;
    return PotentialRef{PotentialKind::gradient, inner};
  }
  if (is_identifier(v)) return PotentialRef{PotentialKind::vector, v};
  return std::nullopt;
}

}  // namespace detail

inline VerificationConfig load_config_text(const std::string& text, const std::string& origin = "<config>") {
  using detail::Entry;
  detail::ConfigReader rd(origin);
  auto sections = rd.read(text);
  VerificationConfig cfg;
  cfg.origin = origin;

  // -- manifold
  if (!sections.count("manifold")) throw ConfigError(origin + ": missing [manifold] section");
  const auto& man = sections["manifold"];
  Scope coords;
  int coords_line = 0;
  for (const auto& e : man)
    if (e.key == "coordinates") {
      coords = detail::split(e.value, ',');
      coords_line = e.line;
    }
  if (coords.empty()) throw ConfigError(origin + ": [manifold] needs 'coordinates'");
  for (const auto& c : coords) {
    if (!is_identifier(c)) rd.fail(coords_line, "invalid coordinate name '" + c + "'");
    if (is_reserved_name(c) || c == "a") rd.fail(coords_line, "coordinate name '" + c + "' is reserved");
  }
  const int dim = static_cast<int>(coords.size());
  std::vector<std::vector<Expr>> metric(dim, std::vector<Expr>(dim, Expr::constant(0.0)));
  std::vector<Expr> domain;
  cfg.box.ranges.assign(dim, {0.0, 0.0});
  std::vector<bool> have_box(dim, false);
  for (const auto& e : man) {
    if (e.key == "coordinates") continue;
    if (e.key == "name") {
      cfg.name = e.value;
    } else if (e.key == "domain") {
      domain.push_back(rd.expr(e, coords));
    } else if (e.key.rfind("box.", 0) == 0) {
      const int i = detail::coordinate_index(coords, e.key.substr(4));
      if (i < 0) rd.fail(e.line, "box for unknown coordinate '" + e.key.substr(4) + "'");
      const auto parts = detail::split(e.value, ',');
      if (parts.size() != 2) rd.fail(e.line, "box expects 'lo, hi'");
      cfg.box.ranges[i] = {rd.number(e, parts[0]), rd.number(e, parts[1])};
      if (!(cfg.box.ranges[i].first <= cfg.box.ranges[i].second)) rd.fail(e.line, "box range is empty");
      have_box[i] = true;
    } else if (e.key.rfind("g.", 0) == 0) {
      const auto parts = detail::split(e.key.substr(2), '.');
      if (parts.size() != 2) rd.fail(e.line, "metric keys look like g.<coord>.<coord>");
      const int i = detail::coordinate_index(coords, parts[0]);
      const int j = detail::coordinate_index(coords, parts[1]);
      if (i < 0 || j < 0) rd.fail(e.line, "metric entry '" + e.key + "' names an unknown coordinate");
      const Expr v = rd.expr(e, coords);
      metric[i][j] = v;
      metric[j][i] = v;
    } else {
      rd.fail(e.line, "unknown key '" + e.key + "' in [manifold]");
    }
  }
  for (int i = 0; i < dim; ++i)
    if (!have_box[i]) throw ConfigError(origin + ": sampling box missing for coordinate '" + coords[i] + "'");
  if (cfg.name.empty()) cfg.name = origin;
  try {
    cfg.manifold = std::make_shared<const ChartManifold>(cfg.name, coords, std::move(metric), std::move(domain));
  } catch (const GeometryError& e) {
    throw ConfigError(origin + ": " + e.what());
  }

  // -- structure
  if (sections.count("structure")) {
    std::vector<Expr> phi(static_cast<std::size_t>(dim) * dim, Expr::constant(0.0));
    std::vector<Expr> xi(dim, Expr::constant(0.0));
    std::vector<Expr> eta(dim, Expr::constant(0.0));
    bool have_eta = false;
    for (const auto& e : sections["structure"]) {
      const auto parts = detail::split(e.key, '.');
      auto idx = [&](const std::string& c) {
        const int i = detail::coordinate_index(coords, c);
        if (i < 0) rd.fail(e.line, "'" + e.key + "' names an unknown coordinate");
        return i;
      };
      if (parts[0] == "phi" && parts.size() == 3) {
        phi[idx(parts[1]) * dim + idx(parts[2])] = rd.expr(e, coords);
      } else if (parts[0] == "xi" && parts.size() == 2) {
        xi[idx(parts[1])] = rd.expr(e, coords);
      } else if (parts[0] == "eta" && parts.size() == 2) {
        eta[idx(parts[1])] = rd.expr(e, coords);
        have_eta = true;
      } else {
        rd.fail(e.line, "unknown key '" + e.key + "' in [structure]");
      }
    }
    try {
      cfg.structure.emplace(cfg.manifold, std::move(phi), std::move(xi),
                            have_eta ? std::optional<std::vector<Expr>>(std::move(eta)) : std::nullopt);
    } catch (const GeometryError& e) {
      cfg.structure_error = e.what();
    }
  } else {
    cfg.structure_error = "no [structure] section";
  }

  // -- fields
  Scope with_a = coords;
  with_a.push_back("a");
  for (const auto& e : sections["scalars"]) {
    if (!is_identifier(e.key) || is_reserved_name(e.key)) rd.fail(e.line, "invalid scalar name '" + e.key + "'");
    if (cfg.scalars.count(e.key)) rd.fail(e.line, "scalar '" + e.key + "' defined twice");
    cfg.scalars.emplace(e.key, rd.expr(e, coords));
  }
  for (const auto& e : sections["vectors"]) {
    const auto parts = detail::split(e.key, '.');
    if (parts.size() != 2 || !is_identifier(parts[0])) rd.fail(e.line, "vector keys look like <name>.<coord>");
    const int i = detail::coordinate_index(coords, parts[1]);
    if (i < 0) rd.fail(e.line, "'" + e.key + "' names an unknown coordinate");
    auto& comps = cfg.vectors[parts[0]];
    if (comps.empty()) comps.assign(dim, Expr::constant(0.0));
    comps[i] = rd.expr(e, with_a);
  }

  // -- candidates
  std::map<std::string, CandidateSpec> cands;
  std::map<std::string, int> first_line;
  std::map<std::string, bool> have_kind, have_potential, have_lambda;
  for (const auto& e : sections["candidates"]) {
    const auto dot = e.key.find('.');
    if (dot == std::string::npos) rd.fail(e.line, "candidate keys look like <name>.<property>");
    const std::string name = e.key.substr(0, dot);
    const std::string prop = e.key.substr(dot + 1);
    if (!detail::is_name(name)) rd.fail(e.line, "invalid candidate name '" + name + "'");
    auto& c = cands[name];
    c.name = name;
    first_line.emplace(name, e.line);
    auto potential = [&]() {
      auto p = detail::parse_potential(e.value);
      if (!p) rd.fail(e.line, "potential must be a vector name, grad(<scalar>) or xi");
      const bool defined = p->kind == PotentialKind::reeb ||
                           (p->kind == PotentialKind::vector ? cfg.vectors.count(p->field) > 0
                                                             : cfg.scalars.count(p->field) > 0);
      if (!defined)
        rd.fail(e.line, "candidate '" + name + "' references undefined field '" + p->field + "'");
      return *p;
    };
    if (prop == "kind") {
      if (e.value == "riemann") c.kind = SolitonKind::riemann;
      else if (e.value == "ricci") c.kind = SolitonKind::ricci;
      else rd.fail(e.line, "kind must be 'riemann' or 'ricci'");
      have_kind[name] = true;
    } else if (prop == "potential") {
      c.potential = potential();
      if (c.potential.kind == PotentialKind::vector) {
        for (const auto& comp : cfg.vectors[c.potential.field])
          if (depends_on(comp, "a"))
            rd.fail(e.line, "undeformed potential '" + c.potential.field + "' may not depend on a");
      }
      have_potential[name] = true;
    } else if (prop == "lambda") {
      c.lambda = rd.expr(e, coords);
      have_lambda[name] = true;
    } else if (prop == "deformed_potential") {
      c.deformed_potential = potential();
    } else if (prop == "deformed_lambda") {
      c.deformed_lambda = rd.expr(e, with_a);
    } else if (prop.rfind("lambda_root.", 0) == 0) {
      const std::string coord = prop.substr(12);
      if (detail::coordinate_index(coords, coord) < 0) rd.fail(e.line, "'" + e.key + "' names an unknown coordinate");
      c.lambda_root = std::make_pair(coord, rd.expr(e, Scope{}));
    } else {
      rd.fail(e.line, "unknown candidate property '" + prop + "'");
    }
  }
  for (auto& [name, c] : cands) {
    if (!have_kind[name] || !have_potential[name] || !have_lambda[name])
      rd.fail(first_line[name], "candidate '" + name + "' needs kind, potential and lambda");
    if (c.deformed_potential && !c.deformed_lambda)
      rd.fail(first_line[name], "candidate '" + name + "' has deformed_potential but no deformed_lambda");
    if (c.deformed_lambda && !c.deformed_potential) c.deformed_potential = c.potential;
    cfg.candidates.push_back(std::move(c));
  }

  // -- run
  for (const auto& e : sections["run"]) {
    if (e.key == "suites") {
      if (e.value == "all") {
        cfg.suites = all_suites();
      } else {
        cfg.suites = detail::split(e.value, ',');
      }
    } else if (e.key == "a") {
      cfg.a_grid.clear();
      for (const auto& part : detail::split(e.value, ',')) cfg.a_grid.push_back(rd.number(e, part));
    } else if (e.key == "points") {
      cfg.points = static_cast<int>(rd.number(e, e.value));
    } else if (e.key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(rd.number(e, e.value));
    } else if (e.key.rfind("tol.", 0) == 0) {
      cfg.tolerance_overrides[e.key.substr(4)] = rd.number(e, e.value);
    } else {
      rd.fail(e.line, "unknown key '" + e.key + "' in [run]");
    }
  }
  cfg.validate();
  return cfg;
}

inline VerificationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_config_text(ss.str(), path);
}

// ---------------------------------------------------------------------------
// Built-in fixtures

inline const std::map<std::string, std::string>& builtin_texts() {
  static const std::map<std::string, std::string> texts = {
      {"kenmotsu3", R"([manifold]
name = kenmotsu3
coordinates = x, y, z
domain = z - 1
box.x = -2, 2
box.y = -2, 2
box.z = 1, 3
g.x.x = exp(2*z)
g.y.y = exp(2*z)
g.z.z = 1

[structure]
phi.y.x = 1
phi.x.y = -1
xi.z = 1
eta.z = 1

[scalars]
f = exp(z)

[vectors]
V.z = exp(z)
Vbar.z = exp(z)/a^2
W.x = 1
W.z = exp(-2*z)

[candidates]
riemann-example.kind = riemann
riemann-example.potential = V
riemann-example.lambda = 2*exp(z) - 1
riemann-example.deformed_potential = Vbar
riemann-example.deformed_lambda = (2*exp(z) - 1)/a^2

riemann-gradient.kind = riemann
riemann-gradient.potential = grad(f)
riemann-gradient.lambda = 2*exp(z) - 1
riemann-gradient.deformed_potential = grad(f)
riemann-gradient.deformed_lambda = (2*exp(z) - 1)/a^2

ricci-example.kind = ricci
ricci-example.potential = V
ricci-example.lambda = exp(z) - 2
ricci-example.deformed_potential = Vbar
ricci-example.deformed_lambda = (exp(z) - 2)/a^2
ricci-example.lambda_root.z = log(2)

ricci-gradient.kind = ricci
ricci-gradient.potential = grad(f)
ricci-gradient.lambda = exp(z) - 2
ricci-gradient.deformed_potential = grad(f)
ricci-gradient.deformed_lambda = (exp(z) - 2)/a^2

[run]
a = 0.5, 1, 2, 3.7
points = 64
seed = 42
)"},
      {"kenmotsu3-warped", R"([manifold]
name = kenmotsu3-warped
coordinates = x, y, z
domain = z - 1
box.x = -1, 1
box.y = -1, 1
box.z = 1, 2
g.x.x = exp(2*z + 0.1*(x^2 + y^2))
g.y.y = exp(2*z + 0.1*(x^2 + y^2))
g.z.z = 1

[structure]
phi.y.x = 1
phi.x.y = -1
xi.z = 1

[scalars]
f = exp(z)
h = x + y^2*z

[vectors]
W.y = exp(-0.1*(x^2+y^2))
W.z = exp(-2*z)

[run]
suites = acm-axioms, kenmotsu, section2-identities, prop22-norms, remark23
)"},
      {"kenmotsu5", R"([manifold]
name = kenmotsu5
coordinates = x1, y1, x2, y2, z
domain = z - 1
box.x1 = -1, 1
box.y1 = -1, 1
box.x2 = -1, 1
box.y2 = -1, 1
box.z = 1, 2
g.x1.x1 = exp(2*z)
g.y1.y1 = exp(2*z)
g.x2.x2 = exp(2*z)
g.y2.y2 = exp(2*z)
g.z.z = 1

[structure]
phi.y1.x1 = 1
phi.x1.y1 = -1
phi.y2.x2 = 1
phi.x2.y2 = -1
xi.z = 1

[scalars]
f = exp(z)

[vectors]
V.z = exp(z)
Vbar.z = exp(z)/a^2

[candidates]
ricci-gradient.kind = ricci
ricci-gradient.potential = grad(f)
ricci-gradient.lambda = exp(z) - 4
ricci-gradient.deformed_potential = grad(f)
ricci-gradient.deformed_lambda = (exp(z) - 4)/a^2

[run]
points = 16
)"},
      {"euclidean3", R"([manifold]
name = euclidean3
coordinates = x, y, z
domain = z - 1
box.x = -2, 2
box.y = -2, 2
box.z = 1, 3
g.x.x = 1
g.y.y = 1
g.z.z = 1

[structure]
phi.y.x = 1
phi.x.y = -1
xi.z = 1

[scalars]
f = exp(z)

[run]
suites = acm-axioms, kenmotsu
)"},
      {"sphere2", R"([manifold]
name = sphere2
coordinates = theta, ph
box.theta = 0.2, 2.9
box.ph = -3, 3
domain = sin(theta)
g.theta.theta = 1
g.ph.ph = sin(theta)^2

[scalars]
f = cos(theta)

[run]
suites = acm-axioms
)"},
  };
  return texts;
}

inline std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : builtin_texts()) out.push_back(k);
  return out;
}

inline VerificationConfig builtin_config(const std::string& name) {
  const auto& texts = builtin_texts();
  const auto it = texts.find(name);
  if (it == texts.end()) {
    std::string known;
    for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown builtin fixture '" + name + "' (known: " + known + ")");
  }
  return load_config_text(it->second, "builtin:" + name);
}

}  // namespace acm
