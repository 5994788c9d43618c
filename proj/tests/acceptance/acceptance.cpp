#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "creep/analytic.hpp"
#include "creep/quadrature.hpp"
#include "creep/scenario.hpp"

namespace fs = std::filesystem;
using namespace creep;
using nlohmann::json;

namespace {

struct Line {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED(" << what << ")";
    }
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SuiteRun {
  int code = -1;
  fs::path dir;
  json suite;
  std::map<std::string, double> seconds;
};

SuiteRun run_suite(const std::string& exe, const std::string& golden, const fs::path& dir, int workers) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cmd = "\"" + exe + "\" suite --workers " + std::to_string(workers) + " --golden-dir \"" + golden +
                          "\" --out-dir \"" + (dir / "out").string() + "\" > \"" + (dir / "stdout.json").string() +
                          "\" 2> \"" + (dir / "stderr.log").string() + "\"";
  std::fprintf(stderr, "running suite with %d worker(s) ...\n", workers);
  const int status = std::system(cmd.c_str());
  SuiteRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.dir = dir;
  const auto path = dir / "out" / "suite.json";
  if (fs::exists(path)) r.suite = json::parse(slurp(path));
  std::istringstream log(slurp(dir / "stderr.log"));
  std::string name, verdict, unit;
  double secs = 0;
  std::string line;
  while (std::getline(log, line)) {
    std::istringstream ls(line);
    if (ls >> name >> verdict >> secs >> unit && unit == "s") r.seconds[name] = secs;
  }
  return r;
}

const json& scenario(const SuiteRun& run, const std::string& name) {
  static const json missing = json::object();
  if (!run.suite.contains("scenarios")) return missing;
  for (const auto& s : run.suite["scenarios"])
    if (s["scenario"] == name) return s;
  return missing;
}

double num(const json& j, const std::vector<std::string>& keys, double fallback = NAN) {
  const json* cur = &j;
  for (const auto& k : keys) {
    if (!cur->is_object() || !cur->contains(k)) return fallback;
    cur = &(*cur)[k];
  }
  return cur->is_number() ? cur->get<double>() : fallback;
}

std::uint64_t outcome(const json& mc, const std::string& kind) {
  return mc.contains("counts") ? mc["counts"][kind].get<std::uint64_t>() : ~std::uint64_t{0};
}

bool all_compound_poisson(const ScenarioConfig& cfg) {
  if (const auto* bv = std::get_if<BvProcessSpec>(&cfg.process))
    return std::holds_alternative<CompoundPoisson>(bv->jumps);
  const auto& spec = std::get<BivariateSubordinatorSpec>(cfg.process);
  return is_compound_poisson(spec) && !is_pure_drift(spec);
}

void report(int id, const std::string& title, const Line& l, int& failures) {
  std::cout << "criterion " << id << ": " << (l.pass ? "PASS" : "FAIL") << "  " << title << " |" << l.detail.str()
            << '\n';
  std::cout.flush();
  if (!l.pass) ++failures;
}

// Criterion 1: stable-1/2 through 1/t^2.
Line stable_example(const SuiteRun& run, const std::vector<ScenarioConfig>& catalog) {
  Line l;
  const json& r = scenario(run, "stable_half");
  const double a = num(r, {"analytic", "value"});
  const double p = num(r, {"mc", "p_hat"});
  const double n = num(r, {"mc", "n_paths"});
  const double secs = run.seconds.count("stable_half") ? run.seconds.at("stable_half") : NAN;
  double ks = NAN;
  for (const auto& c : r.value("checks", json::array()))
    if (c["name"] == "ks_creep_time") ks = c["value"].get<double>();
  double eps = NAN;
  if (const auto* cfg = find_scenario(catalog, "stable_half"))
    eps = truncation(std::get<TimeAndProcess>(std::get<BivariateSubordinatorSpec>(cfg->process).coupling).z.jumps);
  l.detail << " quadrature=" << a << " p_hat=" << p << " N=" << n << " eps=" << eps << " runtime=" << secs
           << "s KS=" << ks;
  l.require(std::abs(a - 0.5) <= 1e-6, "|quadrature-0.5|<=1e-6");
  l.require(n >= 1e5, "N>=1e5");
  l.require(eps == 1e-4, "eps=1e-4");
  l.require(p >= 0.485 && p <= 0.515, "fraction in [0.485,0.515]");
  l.require(secs <= 60.0, "runtime<=60s");
  l.require(ks < 0.02, "KS<0.02");
  return l;
}

// Criterion 2: Brownian motion at its supremum through 1/t.
Line bm_example(const SuiteRun& run) {
  Line l;
  const json& ladder = scenario(run, "bm_ladder");
  const json& grid = scenario(run, "bm_grid");
  const double a = num(ladder, {"analytic", "value"});
  const double p = num(ladder, {"mc", "p_hat"});
  const double n = num(ladder, {"mc", "n_paths"});
  const double target = num(grid, {"analytic", "value"});
  const double fine = num(grid, {"mc", "p_hat"});
  const double coarse = num(grid, {"mc_alt", "p_hat"});
  double secs = 0;
  for (const char* s : {"bm_ladder", "bm_grid"}) secs += run.seconds.count(s) ? run.seconds.at(s) : NAN;
  l.detail << " quadrature=" << a << " p_hat=" << p << " N=" << n << " grid_target=" << target
           << " fine(dt=2.5e-4)=" << fine << " coarse(dt=1e-3)=" << coarse << " runtime=" << secs << "s";
  l.require(std::abs(a - 1.0 / 3.0) <= 1e-6, "|quadrature-1/3|<=1e-6");
  l.require(n >= 1e5, "N>=1e5");
  l.require(p >= 0.323 && p <= 0.343, "fraction in [0.323,0.343]");
  l.require(std::abs(fine - target) < std::abs(coarse - target), "finer grid strictly closer");
  l.require(secs <= 300.0, "runtime<=5min");
  return l;
}

// Criterion 3: compound Poisson paths never jump onto or from the graph.
Line no_jump_onto_graph(const SuiteRun& run, const std::vector<ScenarioConfig>& catalog) {
  Line l;
  double paths = 0;
  std::uint64_t anomalies = 0;
  int scenarios = 0;
  for (const auto& cfg : catalog) {
    if (cfg.kind == ScenarioKind::Ou || cfg.kind == ScenarioKind::GridSupremum || !all_compound_poisson(cfg)) continue;
    const json& r = scenario(run, cfg.name);
    ++scenarios;
    paths += num(r, {"mc", "n_paths"}, 0.0);
    for (const char* route : {"mc", "mc_alt"}) {
      if (!r.contains(route)) continue;
      anomalies += outcome(r[route], "jump_onto_graph") + outcome(r[route], "jump_from_graph");
    }
  }
  l.detail << " scenarios=" << scenarios << " paths=" << paths << " anomalies=" << anomalies;
  l.require(anomalies == 0, "zero anomalies");
  l.require(paths >= 5e5, "paths>=5e5");
  return l;
}

// Criterion 4: the never-creep scenarios.
Line never_creep(const SuiteRun& run) {
  Line l;
  for (const char* name : {"cp_nondecreasing", "cp_constant", "ou_outside", "ou_zero"}) {
    const json& r = scenario(run, name);
    for (const char* route : {"mc", "mc_alt"}) {
      if (!r.contains(route)) continue;
      const double n = num(r, {route, "n_paths"});
      const std::uint64_t creeps = outcome(r[route], "creep");
      const double bound = num(r, {route, "rule_of_three"});
      l.detail << ' ' << name << '.' << route << ": creeps=" << creeps << " N=" << n << " 3/N=" << bound;
      l.require(creeps == 0, std::string(name) + " zero creeps");
      l.require(n >= 1e5, std::string(name) + " N>=1e5");
      l.require(bound == 3.0 / n, std::string(name) + " quotes 3/N");
    }
    if (!r.contains("mc")) l.require(false, std::string(name) + " missing");
  }
  return l;
}

// The compare rule recomputed from the report fields.
bool agrees(const json& r, std::ostringstream& detail) {
  const double v = num(r, {"analytic", "value"});
  const double qerr = num(r, {"analytic", "abs_error"});
  const double p = num(r, {"mc", "p_hat"});
  const double hw = 0.5 * (num(r, {"mc", "ci_high"}) - num(r, {"mc", "ci_low"}));
  const double bias = num(r, {"mc", "bias_bound"});
  const double tol = 3.0 * (hw + qerr + bias);
  detail << ' ' << r.value("scenario", "?") << ": p_hat=" << p << " analytic=" << v << " |diff|=" << std::abs(p - v)
         << " tol=" << tol << " verdict=" << r.value("comparison", json::object()).value("verdict", "?");
  return hw <= 0.05 && std::abs(p - v) <= tol && r["comparison"]["verdict"] == "agree" &&
         num(r, {"mc", "n_paths"}) >= 1e5;
}

// Criterion 5: gamma with drift, level creeping.
Line gamma_level(const SuiteRun& run) {
  Line l;
  l.require(agrees(scenario(run, "gamma_level"), l.detail), "gamma_level agree");
  return l;
}

// Criterion 6: circle and shifted drift.
Line circle_and_shift(const SuiteRun& run) {
  Line l;
  l.require(agrees(scenario(run, "gamma_circle"), l.detail), "gamma_circle agree");
  l.require(agrees(scenario(run, "shifted_drift"), l.detail), "shifted_drift agree");
  return l;
}

// Criterion 7: the two OU routes.
Line ou_routes(const SuiteRun& run) {
  Line l;
  const json& r = scenario(run, "ou_inside");
  const double n1 = num(r, {"mc", "n_paths"});
  const double n2 = num(r, {"mc_alt", "n_paths"});
  const double s1 = num(r, {"mc", "successes"});
  const double s2 = num(r, {"mc_alt", "successes"});
  const double pooled = (s1 + s2) / (n1 + n2);
  const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
  const double p1 = s1 / n1;
  const double p2 = s2 / n2;
  l.detail << " direct=" << p1 << " via_curve=" << p2 << " |diff|=" << std::abs(p1 - p2) << " 3*pooled_se=" << 3 * se
           << " N=" << n1 << "," << n2;
  l.require(n1 >= 1e5 && n2 >= 1e5, "N>=1e5 each");
  l.require(std::abs(p1 - p2) <= 3.0 * se, "routes within 3 pooled SE");
  l.require(p1 >= 0.05 && p2 >= 0.05, "fraction>=0.05");
  return l;
}

// Criterion 8: Tanaka identities.
Line tanaka(const SuiteRun& run) {
  Line l;
  const json& r = scenario(run, "tanaka");
  const double n = num(r, {"run", "n_paths"});
  l.detail << " N=" << n;
  for (const char* c : {"contact_set_mismatches", "future_infimum_mismatches", "involution_mismatches",
                        "indeterminate_paths", "indicator_mismatches", "creep_time_mismatches"}) {
    double v = NAN;
    for (const auto& chk : r.value("checks", json::array()))
      if (chk["name"] == c) v = chk["value"].get<double>();
    l.detail << ' ' << c << '=' << v;
    l.require(v == 0.0, c);
  }
  l.require(n >= 1e4, "N>=1e4");
  l.require(num(r, {"mc", "p_hat"}) == num(r, {"mc_alt", "p_hat"}), "equal fractions");
  return l;
}

// Criterion 9: analytic self-tests computed here.
Line analytic_self_tests() {
  Line l;
  const CharExponent psi = [](double xi) { return stable_half_char_exponent(xi); };
  double worst = 0;
  for (int i = 1; i <= 20; ++i) {
    const double x = 0.15 * i;
    worst = std::max(worst, std::abs(fourier_invert_density(psi, 1.0, x).value - stable_half_density(1.0, x)));
  }
  l.detail << " fourier_max_err=" << worst;
  l.require(worst <= 1e-6, "Fourier vs closed form <=1e-6");

  const std::vector<SubordinatorSpec> laws{
      {0.0, StableSubordinator{0.5, kStableHalfScaleSqrt2Lambda, 1e-4}},
      {0.7, StableSubordinator{0.5, kStableHalfScaleSqrt2Lambda, 1e-4}},
      {0.0, GammaSubordinator{1.0, 1.0, 1e-4}},
      {0.3, GammaSubordinator{2.0, 0.5, 1e-4}},
      {0.5, CompoundPoisson{1.0, ExponentialJumps{0.5}}},
  };
  double mass_err = 0;
  for (const auto& law : laws) {
    const DensityFn p = marginal_density(law);
    for (double t : {0.5, 1.0, 2.0}) {
      const double lo = p.lower_support_slope * t;
      const QuadOptions q{1e-10, 0.0, 4000};
      double m = integrate([&](double x) { return p.eval(t, x); }, lo, lo + 1.0, q).value;
      m += integrate([&](double x) { return p.eval(t, x); }, lo + 1.0, kInf, q).value;
      if (p.atom_rate) m += std::exp(-*p.atom_rate * t);
      mass_err = std::max(mass_err, std::abs(m - 1.0));
    }
  }
  l.detail << " density_mass_max_err=" << mass_err;
  l.require(mass_err <= 1e-6, "densities integrate to 1");

  const SubordinatorSpec g{0.3, GammaSubordinator{1.0, 1.0, 1e-5}};
  const RenewalDensity v = renewal_density({Independent{g, g}});
  const Curve f = Curve::power(1.0, 1.0, 1.0);
  const double base = creep_formula_bivariate(v, f, 0.3, 0.3).value;
  double scale_err = 0;
  for (double c : {0.5, 2.0, 3.0})
    scale_err = std::max(scale_err, std::abs(creep_formula_bivariate(v, f, 0.3 * c, 0.3 * c).value - c * base));
  l.detail << " drift_scaling_max_err=" << scale_err;
  l.require(scale_err <= 1e-8, "drift scaling <=1e-8");

  const BivariateSubordinatorSpec stable{TimeAndProcess{{0.0, StableSubordinator{0.5, kStableHalfScaleSqrt2Lambda, 1e-4}}}};
  const Curve h = Curve::power(1.0, 2.0);
  const double total = creep_probability(stable, h).value;
  const std::vector<double> cuts{0.0, 0.4, 1.0, 2.5, kInf};
  double sum = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += creep_probability(stable, h, cuts[i], cuts[i + 1]).value;
  l.detail << " window_additivity_err=" << std::abs(sum - total);
  l.require(std::abs(sum - total) <= 1e-8, "window additivity <=1e-8");
  return l;
}

// Criterion 10: byte-identical suite output under different worker counts.
Line reproducibility(const SuiteRun& a, const SuiteRun& b) {
  Line l;
  std::size_t files = 0;
  std::size_t differing = 0;
  for (const auto& e : fs::directory_iterator(a.dir / "out")) {
    ++files;
    const auto other = b.dir / "out" / e.path().filename();
    if (!fs::exists(other) || slurp(e.path()) != slurp(other)) ++differing;
  }
  std::size_t files_b = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(b.dir / "out")) ++files_b;
  const bool stdout_same = slurp(a.dir / "stdout.json") == slurp(b.dir / "stdout.json");
  l.detail << " files=" << files << " differing=" << differing << " stdout_identical=" << stdout_same;
  l.require(fs::exists(a.dir / "out" / "suite.json"), "suite.json written");
  l.require(files == files_b && differing == 0, "outputs byte-identical");
  l.require(stdout_same, "stdout byte-identical");
  return l;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance run over the golden suite"};
  std::string work_dir = "acceptance_run";
  std::string exe = CREEPSIM_PATH;
  std::string golden = CREEP_GOLDEN_DIR;
  int workers = 4;
  app.add_option("--work-dir", work_dir, "Scratch directory for suite outputs");
  app.add_option("--creepsim", exe, "Path to the creepsim binary");
  app.add_option("--golden-dir", golden, "Directory of golden configs");
  app.add_option("--workers", workers, "Worker count of the second suite run")->check(CLI::Range(2, 256));
  CLI11_PARSE(app, argc, argv);

  std::cout.precision(10);
  const auto catalog = load_catalog(golden);
  const SuiteRun first = run_suite(exe, golden, fs::path(work_dir) / "workers_1", 1);
  const SuiteRun second = run_suite(exe, golden, fs::path(work_dir) / ("workers_" + std::to_string(workers)), workers);
  std::cout << "suite exit codes: " << first.code << ", " << second.code << '\n';

  int failures = 0;
  report(1, "stable-1/2 through 1/t^2", stable_example(first, catalog), failures);
  report(2, "Brownian motion at its supremum through 1/t", bm_example(first), failures);
  report(3, "no jump onto or from the graph (compound Poisson)", no_jump_onto_graph(first, catalog), failures);
  report(4, "never-creep scenarios", never_creep(first), failures);
  report(5, "gamma with drift level creeping", gamma_level(first), failures);
  report(6, "circle curve and shifted drift", circle_and_shift(first), failures);
  report(7, "OU two-route consistency", ou_routes(first), failures);
  report(8, "Tanaka identities", tanaka(first), failures);
  report(9, "analytic self-tests", analytic_self_tests(), failures);
  report(10, "reproducibility across worker counts", reproducibility(first, second), failures);
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
