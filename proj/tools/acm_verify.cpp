#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "acm/verify.hpp"

namespace {

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : acm::detail::split(text, ',')) {
    const std::string t = acm::detail::trim(part);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size()) throw acm::ConfigError("--a: not a number: '" + t + "'");
    out.push_back(v);
  }
  return out;
}

void print_summary(const acm::Report& r, std::ostream& os) {
  for (const auto& c : r.checks) {
    if (c.status == "pass") continue;
    os << c.status << "  " << c.id << "  max_residual=" << c.max_residual;
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << "\n";
  }
  os << r.fixture << ": " << r.count("pass") << " pass, " << r.count("fail") << " fail, " << r.count("info")
     << " info\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for almost contact metric and Kenmotsu structures"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List the built-in fixtures and suites");

  auto* show = app.add_subcommand("show", "Print the definition file of a built-in fixture");
  std::string show_name;
  show->add_option("name", show_name, "Fixture name")->required();

  auto* verify = app.add_subcommand("verify", "Run check suites and write a JSON report");
  std::string builtin;
  std::string config_path;
  std::vector<std::string> suites;
  std::string a_grid;
  std::optional<int> points;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
  std::string report_path;
  bool quiet = false;
  bool timing = false;
  auto* src_builtin = verify->add_option("--builtin", builtin, "Built-in fixture name");
  auto* src_config = verify->add_option("--config", config_path, "Definition file")->check(CLI::ExistingFile);
  src_builtin->excludes(src_config);
  verify->add_option("--suites", suites, "Suites to run (default: from the config)")->delimiter(',');
  verify->add_option("--a", a_grid, "Comma-separated deformation parameters");
  verify->add_option("--points", points, "Sample points")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "Sampling seed");
  verify->add_option("--tol", overrides, "Tolerance override suite=value (repeatable)");
  verify->add_option("--report", report_path, "Write the JSON report here ('-' for stdout)");
  verify->add_flag("--quiet", quiet, "Suppress the text summary");
  verify->add_flag("--timing", timing, "Include wall time in the report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      std::cout << "fixtures:";
      for (const auto& n : acm::builtin_names()) std::cout << " " << n;
      std::cout << "\nsuites:";
      for (const auto& s : acm::all_suites()) std::cout << " " << s;
      std::cout << "\n";
      return 0;
    }
    if (show->parsed()) {
      const auto& texts = acm::builtin_texts();
      const auto it = texts.find(show_name);
      if (it == texts.end()) throw acm::ConfigError("unknown built-in fixture '" + show_name + "'");
      std::cout << it->second;
      return 0;
    }

    if (builtin.empty() && config_path.empty()) builtin = "kenmotsu3";
    acm::VerificationConfig cfg = builtin.empty() ? acm::load_config(config_path) : acm::builtin_config(builtin);
    if (!suites.empty()) {
      if (suites.size() == 1 && suites[0] == "all") cfg.suites = acm::all_suites();
      else cfg.suites = suites;
    }
    if (!a_grid.empty()) cfg.a_grid = parse_grid(a_grid);
    if (points) cfg.points = *points;
    if (seed) cfg.seed = *seed;
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) throw acm::ConfigError("--tol expects suite=value, got '" + o + "'");
      cfg.tolerance_overrides[acm::detail::trim(o.substr(0, eq))] = parse_grid(o.substr(eq + 1)).at(0);
    }
    cfg.validate();

    const acm::Report report = acm::run_suites(cfg, {.timing = timing});
    if (report_path == "-") {
      std::cout << report.dump();
    } else if (!report_path.empty()) {
      std::ofstream out(report_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + report_path);
      out << report.dump();
    }
    if (!quiet) print_summary(report, report_path == "-" ? std::cerr : std::cout);
    return report.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
