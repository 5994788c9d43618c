#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "creep/conditioned.hpp"
#include "creep/scenario.hpp"

#ifndef CREEP_GOLDEN_DIR
#define CREEP_GOLDEN_DIR "golden"
#endif

namespace {

using namespace creep;

enum Exit : int {
  kExitUnknownScenario = 3,
  kExitInvalidConfig = 4,
  kExitQuadrature = 5,
};

struct Flags {
  std::string target;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> paths;
  std::optional<double> eps;
  std::string out_dir;
  std::string format = "json";
  int workers = 1;
  std::string golden_dir = CREEP_GOLDEN_DIR;
};

struct UnknownScenario : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void apply_overrides(ScenarioConfig& cfg, const Flags& f) {
  if (f.seed) cfg.seed = *f.seed;
  if (f.paths) cfg.n_paths = *f.paths;
  if (f.eps) apply_eps(cfg, *f.eps);
  const auto v = validate_config(cfg);
  if (!v.empty()) throw ConfigError(cfg.name + ": " + v.front());
}

ScenarioConfig resolve(const Flags& f) {
  ScenarioConfig cfg;
  if (std::filesystem::is_regular_file(f.target)) {
    cfg = load_config(f.target);
  } else {
    const auto catalog = load_catalog(f.golden_dir);
    const auto* found = find_scenario(catalog, f.target);
    if (!found) throw UnknownScenario("unknown scenario '" + f.target + "'");
    cfg = *found;
  }
  apply_overrides(cfg, f);
  return cfg;
}

void print_report(const ScenarioReport& r, const std::string& format) {
  if (format == "csv") {
    std::cout << "scenario,verdict,p_hat,ci_low,ci_high,analytic,abs_error\n";
    std::cout.precision(17);
    std::cout << r.config.name << ',' << to_string(r.verdict) << ',';
    if (r.mc) std::cout << r.mc->p_hat << ',' << r.mc->ci_low << ',' << r.mc->ci_high;
    else std::cout << ",,";
    std::cout << ',';
    if (r.analytic) std::cout << r.analytic->value << ',' << r.analytic->abs_error;
    else std::cout << ',';
    std::cout << '\n';
    return;
  }
  std::cout << r.to_json().dump(2) << '\n';
}

void write_files(const ScenarioReport& r, const std::string& out_dir) {
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  const auto base = std::filesystem::path(out_dir) / r.config.name;
  std::ofstream(base.string() + ".summary.json") << r.to_json().dump(2) << '\n';
  if (!r.outcomes.empty()) {
    std::ofstream csv(base.string() + ".outcomes.csv");
    write_outcomes_csv(csv, r.outcomes);
  }
}

void write_transformed_events(const ScenarioConfig& cfg, const std::string& out_dir) {
  if (out_dir.empty()) return;
  const auto& spec = std::get<BvProcessSpec>(cfg.process);
  std::ofstream os((std::filesystem::path(out_dir) / (cfg.name + ".w_events.csv")).string());
  write_events_csv_header(os);
  for (std::uint64_t k = 0; k < cfg.n_paths; ++k) {
    const auto path = sample_bv_path(spec, cfg.horizon, SeedPolicy{cfg.seed}, k);
    write_events_csv(os, k, to_jump_path(tanaka_transform(path).w));
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_one(const Flags& f, const std::string& mode) {
  ScenarioConfig cfg = resolve(f);
  RunOptions opt;
  opt.workers = f.workers;
  if (mode == "simulate") opt.analytic = false;
  if (mode == "quadrature") opt.monte_carlo = false;
  if (mode == "ou" && cfg.kind != ScenarioKind::Ou) throw ConfigError(cfg.name + ": not an OU scenario");
  if (mode == "tanaka-check" && cfg.kind != ScenarioKind::Tanaka)
    throw ConfigError(cfg.name + ": not a Tanaka scenario");
  if (mode == "quadrature" && cfg.formula == "none")
    throw ConfigError(cfg.name + ": scenario has no analytic formula");

  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioReport r = run_scenario(cfg, opt);
  std::fprintf(stderr, "%s: %s in %.1f s\n", cfg.name.c_str(), to_string(r.verdict).c_str(), seconds_since(t0));
  print_report(r, f.format);
  write_files(r, f.out_dir);
  if (mode == "tanaka-check") write_transformed_events(cfg, f.out_dir);
  if (mode == "simulate" || mode == "quadrature") return r.checks_pass() ? 0 : 1;
  return exit_code(r.verdict);
}

int run_suite(const Flags& f) {
  auto catalog = load_catalog(f.golden_dir);
  nlohmann::ordered_json suite;
  suite["schema"] = "creep.suite/1";
  suite["scenarios"] = nlohmann::ordered_json::array();
  bool all_agree = true;
  const auto t_all = std::chrono::steady_clock::now();
  for (auto& cfg : catalog) {
    apply_overrides(cfg, f);
    const auto t0 = std::chrono::steady_clock::now();
    RunOptions opt;
    opt.workers = f.workers;
    const ScenarioReport r = run_scenario(cfg, opt);
    std::fprintf(stderr, "%-28s %-12s %.1f s\n", cfg.name.c_str(), to_string(r.verdict).c_str(),
                 seconds_since(t0));
    all_agree = all_agree && r.verdict == Verdict::Agree;
    suite["scenarios"].push_back(r.to_json());
    write_files(r, f.out_dir);
  }
  suite["all_agree"] = all_agree;
  std::fprintf(stderr, "suite finished in %.1f s\n", seconds_since(t_all));
  if (!f.out_dir.empty()) {
    std::filesystem::create_directories(f.out_dir);
    std::ofstream((std::filesystem::path(f.out_dir) / "suite.json").string()) << suite.dump(2) << '\n';
  }
  if (f.format == "csv") {
    std::cout << "scenario,verdict\n";
    for (const auto& s : suite["scenarios"]) std::cout << s["scenario"].get<std::string>() << ',' << s["verdict"].get<std::string>() << '\n';
  } else {
    std::cout << suite.dump(2) << '\n';
  }
  return all_agree ? 0 : 1;
}

int run_list(const Flags& f) {
  const auto catalog = load_catalog(f.golden_dir);
  for (const auto& c : catalog) {
    std::cout << c.name << "  [" << to_string(c.kind) << "]\n    " << c.anchor << "\n    expected: ";
    if (c.expected) std::cout << *c.expected;
    else std::cout << "n/a";
    std::cout << '\n';
  }
  std::cout << catalog.size() << " scenarios\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Creeping probabilities of Levy processes: Monte Carlo, quadrature and cross-checks"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App* sub, bool needs_target) {
    if (needs_target)
      sub->add_option("scenario", f.target, "Config file or golden scenario name")->required();
    sub->add_option("--seed", f.seed, "Master seed override");
    sub->add_option("--paths", f.paths, "Number of paths override");
    sub->add_option("--eps", f.eps, "Jump truncation override");
    sub->add_option("--out-dir", f.out_dir, "Directory for summary JSON and outcome CSV");
    sub->add_option("--format", f.format, "Stdout format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--workers", f.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--golden-dir", f.golden_dir, "Directory of golden configs");
  };

  std::string mode;
  for (const char* name : {"simulate", "quadrature", "compare", "ou", "tanaka-check"}) {
    auto* sub = app.add_subcommand(name);
    add_common(sub, true);
    sub->callback([&mode, name] { mode = name; });
  }
  auto* suite = app.add_subcommand("suite", "Run every golden scenario");
  add_common(suite, false);
  suite->callback([&mode] { mode = "suite"; });
  auto* list = app.add_subcommand("list", "Print the golden catalog");
  list->add_option("--golden-dir", f.golden_dir, "Directory of golden configs");
  list->callback([&mode] { mode = "list"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (mode == "suite") return run_suite(f);
    if (mode == "list") return run_list(f);
    return run_one(f, mode);
  } catch (const UnknownScenario& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUnknownScenario;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const QuadratureError& e) {
    std::cerr << "quadrature error: " << e.what() << '\n';
    return kExitQuadrature;
  } catch (const FormulaInapplicable& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
}
