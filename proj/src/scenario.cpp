#include "creep/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "creep/conditioned.hpp"
#include "creep/creep_detect.hpp"
#include "creep/path_engine.hpp"

namespace creep {

namespace {

const BivariateSubordinatorSpec& bivariate_or_throw(const ProcessConfig& p) {
  const auto* spec = std::get_if<BivariateSubordinatorSpec>(&p);
  if (!spec) throw FormulaInapplicable("formula-inapplicable: the analytic side needs a bivariate subordinator");
  return *spec;
}

double small_jump_mass_of(const ProcessConfig& p) {
  if (const auto* bv = std::get_if<BvProcessSpec>(&p)) return small_jump_mass(bv->jumps);
  return small_jump_mass(std::get<BivariateSubordinatorSpec>(p));
}

/// E[S ^ T] * (discarded small-jump mass per unit time).
double bias_bound(const std::vector<CrossingOutcome>& outcomes, double mass) {
  if (mass == 0.0 || outcomes.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& o : outcomes) sum += std::isfinite(o.time) ? o.time : 0.0;
  return sum / static_cast<double>(outcomes.size()) * mass;
}

Check at_most(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, value <= threshold};
}

Check at_least(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, value >= threshold};
}

void add_fraction_checks(ScenarioReport& r, const McSummary& s, const std::string& prefix = "") {
  const auto& a = r.config.acceptance;
  if (a.fraction_lo) r.checks.push_back(at_least(prefix + "fraction_lo", s.p_hat, *a.fraction_lo));
  if (a.fraction_hi) r.checks.push_back(at_most(prefix + "fraction_hi", s.p_hat, *a.fraction_hi));
  if (a.min_fraction) r.checks.push_back(at_least(prefix + "min_fraction", s.p_hat, *a.min_fraction));
  if (r.config.expected && *r.config.expected == 0.0)
    r.checks.push_back(at_most(prefix + "zero_creep_events", static_cast<double>(s.successes), 0.0));
}

bool finite_activity(const ProcessConfig& p) {
  if (const auto* bv = std::get_if<BvProcessSpec>(&p)) return !is_infinite_activity(bv->jumps);
  return is_compound_poisson(std::get<BivariateSubordinatorSpec>(p));
}

/// Exactly zero for compound Poisson laws; at most 1e-4 N under truncation.
void add_anomaly_check(ScenarioReport& r, const McSummary& s) {
  const double anomalies =
      static_cast<double>(s.counts[OutcomeKind::JumpOntoGraph] + s.counts[OutcomeKind::JumpFromGraph]);
  const double allowed = finite_activity(r.config.process) ? 0.0 : 1e-4 * static_cast<double>(s.n_paths);
  r.checks.push_back(at_most("jump_onto_or_from_graph", anomalies, allowed));
}

void add_horizon_check(ScenarioReport& r, const McSummary& s, const std::string& prefix = "") {
  const double undecided = static_cast<double>(s.counts[OutcomeKind::Horizon]) / static_cast<double>(s.n_paths);
  r.checks.push_back(at_most(prefix + "horizon_fraction", undecided, 1e-4));
}

// ---------------------------------------------------------------------------

void run_curve(ScenarioReport& r, const RunOptions& opt) {
  const ScenarioConfig& c = r.config;
  const Curve curve = Curve::from_shape(c.curve);
  const SeedPolicy seed{c.seed};
  if (const auto* bv = std::get_if<BvProcessSpec>(&c.process)) {
    r.outcomes = run_paths<CrossingOutcome>(c.n_paths, opt.workers, [&](std::uint64_t k) {
      BvStream stream(*bv, c.horizon, seed, k);
      return first_passage_curve(stream, bv->drift, curve);
    });
  } else {
    const auto& spec = std::get<BivariateSubordinatorSpec>(c.process);
    r.outcomes = run_paths<CrossingOutcome>(c.n_paths, opt.workers, [&](std::uint64_t k) {
      BivariateStream stream(spec, c.horizon, seed, k);
      return first_passage_curve(stream, curve);
    });
  }
  OutcomeCounts counts;
  std::uint64_t successes = 0;
  const Windows& w = c.windows;
  for (const auto& o : r.outcomes) {
    counts.add(o.kind);
    if (o.kind == OutcomeKind::Creep && o.y >= w.u0 && o.y <= w.u1 && o.time >= w.t0 && o.time <= w.t1) {
      ++successes;
      r.creep_times.push_back(o.y);
    }
  }
  r.mc = estimate(counts, successes, c.seed, bias_bound(r.outcomes, small_jump_mass_of(c.process)));
  add_fraction_checks(r, *r.mc);
  add_anomaly_check(r, *r.mc);
  add_horizon_check(r, *r.mc);

  if (!c.creep_time_law.empty() && c.acceptance.ks_threshold) {
    const auto cdf = c.creep_time_law == "stable_example" ? creep_time_cdf_stable_example : creep_time_cdf_bm_example;
    if (r.creep_times.empty()) {
      r.checks.push_back({"ks_creep_time", 1.0, *c.acceptance.ks_threshold, false});
    } else {
      const auto ks = ks_distance(r.creep_times, cdf, *c.acceptance.ks_threshold);
      r.checks.push_back({"ks_creep_time", ks.statistic, ks.threshold, ks.pass});
    }
  }
}

struct GridPair {
  CrossingOutcome fine;
  CrossingOutcome coarse;
};

void run_grid(ScenarioReport& r, const RunOptions& opt) {
  const ScenarioConfig& c = r.config;
  const Curve curve = Curve::from_shape(c.curve);
  const GridConfig& g = c.grid;
  const auto ratio = static_cast<std::uint64_t>(std::llround(g.dt_coarse / g.dt_fine));
  const auto steps = static_cast<std::uint64_t>(std::ceil(c.horizon / g.dt_fine));
  const double delta_fine = g.delta_factor * std::sqrt(g.dt_fine);
  const double delta_coarse = g.delta_factor * std::sqrt(g.dt_coarse);

  const auto pairs = run_paths<GridPair>(c.n_paths, opt.workers, [&](std::uint64_t k) {
    // the coarse path is the fine path sampled every `ratio` steps
    BmGridStream stream(g.mu, g.dt_fine, SeedPolicy{c.seed}, k);
    GridSupremumDetector fine(curve, g.dt_fine, delta_fine);
    GridSupremumDetector coarse(curve, g.dt_coarse, delta_coarse);
    GridPair out;
    bool fine_done = false, coarse_done = false;
    double x = 0.0;
    for (std::uint64_t i = 1; i <= steps && !(fine_done && coarse_done); ++i) {
      x += stream.next_increment();
      if (!fine_done) {
        if (auto o = fine.push(x)) {
          out.fine = *o;
          fine_done = true;
        }
      }
      if (!coarse_done && i % ratio == 0) {
        if (auto o = coarse.push(x)) {
          out.coarse = *o;
          coarse_done = true;
        }
      }
    }
    if (!fine_done) out.fine.time = static_cast<double>(steps) * g.dt_fine;
    if (!coarse_done) out.coarse.time = static_cast<double>(steps) * g.dt_fine;
    return out;
  });

  OutcomeCounts cf, cc;
  std::uint64_t sf = 0, sc = 0;
  r.outcomes.reserve(pairs.size());
  for (const auto& p : pairs) {
    cf.add(p.fine.kind);
    cc.add(p.coarse.kind);
    sf += p.fine.kind == OutcomeKind::Creep && p.fine.at_extremum;
    sc += p.coarse.kind == OutcomeKind::Creep && p.coarse.at_extremum;
    r.outcomes.push_back(p.fine);
  }
  r.mc = estimate(cf, sf, c.seed);
  r.mc_alt = estimate(cc, sc, c.seed);
  // undecided paths are expected here; the target is windowed to the horizon
  const std::optional<double> target = r.analytic ? std::optional<double>(r.analytic->value) : c.expected;
  if (target) {
    const double fine_gap = std::abs(r.mc->p_hat - *target);
    const double coarse_gap = std::abs(r.mc_alt->p_hat - *target);
    r.checks.push_back({"finer_grid_closer", fine_gap, coarse_gap, fine_gap < coarse_gap});
  }
}

void run_ou(ScenarioReport& r, const RunOptions& opt) {
  const ScenarioConfig& c = r.config;
  const SeedPolicy seed{c.seed};
  const double x = c.ou_target.x;
  r.outcomes = run_paths<CrossingOutcome>(c.n_paths, opt.workers, [&](std::uint64_t k) {
    return ou_first_passage(c.ou, x, c.horizon, seed, k, kStreamZ);
  });
  const auto via_curve = run_paths<CrossingOutcome>(c.n_paths, opt.workers, [&](std::uint64_t k) {
    return ou_first_passage_via_curve(c.ou, x, c.horizon, seed, k, kStreamRouteB);
  });
  const double mass = small_jump_mass(JumpLaw{c.ou.noise});
  r.mc = estimate(r.outcomes, c.seed, bias_bound(r.outcomes, mass));
  r.mc_alt = estimate(via_curve, c.seed, bias_bound(via_curve, mass));
  for (const auto& o : r.outcomes)
    if (o.kind == OutcomeKind::Creep) r.creep_times.push_back(o.time);

  const double pa = r.mc->p_hat, pb = r.mc_alt->p_hat;
  const double na = static_cast<double>(r.mc->n_paths), nb = static_cast<double>(r.mc_alt->n_paths);
  const double pooled_se = std::sqrt(pa * (1 - pa) / na + pb * (1 - pb) / nb);
  r.checks.push_back(at_most("route_agreement", std::abs(pa - pb), 3.0 * pooled_se));
  add_fraction_checks(r, *r.mc, "direct_");
  add_fraction_checks(r, *r.mc_alt, "curve_");
  add_horizon_check(r, *r.mc, "direct_");
  add_horizon_check(r, *r.mc_alt, "curve_");
}

struct TanakaRow {
  CrossingOutcome forward;
  CrossingOutcome backward;
  bool contact = false, infimum = false, involution = false, determinate = false, indicator = false,
       time = false;
};

void run_tanaka(ScenarioReport& r, const RunOptions& opt) {
  const ScenarioConfig& c = r.config;
  const auto& spec = std::get<BvProcessSpec>(c.process);
  const Curve curve = Curve::from_shape(c.curve);
  const auto rows = run_paths<TanakaRow>(c.n_paths, opt.workers, [&](std::uint64_t k) {
    const JumpPath path = sample_bv_path(spec, c.horizon, SeedPolicy{c.seed}, k);
    const TanakaCheck t = check_tanaka_identities(path, curve);
    return TanakaRow{t.forward,     t.backward,        t.contact_identity, t.infimum_identity,
                     t.involution,  t.determinate,     t.indicator_match,  t.time_match};
  });
  OutcomeCounts cf, cb;
  std::uint64_t sf = 0, sb = 0;
  double bad_contact = 0, bad_infimum = 0, bad_involution = 0, indeterminate = 0, bad_indicator = 0, bad_time = 0;
  for (const auto& row : rows) {
    cf.add(row.forward.kind);
    cb.add(row.backward.kind);
    sf += row.forward.kind == OutcomeKind::Creep && row.forward.at_extremum;
    sb += row.backward.kind == OutcomeKind::Creep && row.backward.at_extremum;
    bad_contact += !row.contact;
    bad_infimum += !row.infimum;
    bad_involution += !row.involution;
    indeterminate += !row.determinate;
    bad_indicator += row.determinate && !row.indicator;
    bad_time += row.determinate && !row.time;
    r.outcomes.push_back(row.forward);
  }
  r.mc = estimate(cf, sf, c.seed);
  r.mc_alt = estimate(cb, sb, c.seed);
  r.checks.push_back(at_most("contact_set_mismatches", bad_contact, 0));
  r.checks.push_back(at_most("future_infimum_mismatches", bad_infimum, 0));
  r.checks.push_back(at_most("involution_mismatches", bad_involution, 0));
  r.checks.push_back(at_most("indeterminate_paths", indeterminate, 0));
  r.checks.push_back(at_most("indicator_mismatches", bad_indicator, 0));
  r.checks.push_back(at_most("creep_time_mismatches", bad_time, 0));
  r.checks.push_back(at_most("fraction_difference", std::abs(r.mc->p_hat - r.mc_alt->p_hat), 0));
}

nlohmann::ordered_json formula_json(const FormulaResult& f) {
  return {{"value", f.value},
          {"abs_error", f.abs_error},
          {"panels", f.panels},
          {"formula_id", f.formula_id},
          {"construction", f.anchor}};
}

}  // namespace

FormulaResult scenario_formula(const ScenarioConfig& cfg) {
  const auto& spec = bivariate_or_throw(cfg.analytic_process ? *cfg.analytic_process : cfg.process);
  const CurveShape shape = cfg.analytic_curve ? *cfg.analytic_curve : cfg.curve;
  const Curve curve = Curve::from_shape(shape);
  const Windows& w = cfg.windows;
  const FormulaOptions q{cfg.quadrature.abs_tol, cfg.quadrature.max_panels};
  const bool time_window = w.t0 > 0.0 || w.t1 < kInf;
  if (cfg.formula == "curve") {
    if (time_window) return creep_formula_time_windowed(spec, curve, w.u0, w.u1, w.t0, w.t1, q);
    return creep_probability(spec, curve, w.u0, w.u1, q);
  }
  if (cfg.formula == "inverted") {
    const auto v = renewal_density(spec, w.t0, w.t1);
    const auto d = drifts(spec);
    return creep_formula_inverted(v, curve, d.y, d.z, w.u0, w.u1, q);
  }
  if (cfg.formula == "norm") {
    const auto* circle = std::get_if<CircleCurve>(&shape);
    if (!circle) throw FormulaInapplicable("formula-inapplicable: the norm formula needs a circle curve");
    return creep_formula_norm(spec, circle->a, q);
  }
  if (cfg.formula == "upper_bound") return creep_upper_bound_nondecreasing(spec, curve, q);
  throw FormulaInapplicable("formula-inapplicable: scenario '" + cfg.name + "' has no analytic formula");
}

bool ScenarioReport::checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

ScenarioReport run_scenario(const ScenarioConfig& cfg, const RunOptions& opt) {
  ScenarioReport r;
  r.config = cfg;
  const bool has_formula =
      (cfg.kind == ScenarioKind::Curve || cfg.kind == ScenarioKind::GridSupremum) && cfg.formula != "none";
  if (opt.analytic && has_formula) {
    r.analytic = scenario_formula(cfg);
    if (cfg.expected && cfg.acceptance.analytic_tol)
      r.checks.push_back(at_most("analytic_vs_expected", std::abs(r.analytic->value - *cfg.expected),
                                 *cfg.acceptance.analytic_tol));
  }
  if (opt.monte_carlo) {
    switch (cfg.kind) {
      case ScenarioKind::Curve: run_curve(r, opt); break;
      case ScenarioKind::GridSupremum: run_grid(r, opt); break;
      case ScenarioKind::Ou: run_ou(r, opt); break;
      case ScenarioKind::Tanaka: run_tanaka(r, opt); break;
    }
  }
  Verdict base = Verdict::Agree;
  if (r.analytic && r.mc && cfg.kind == ScenarioKind::Curve) {
    // an upper bound only has to dominate the estimate
    AnalyticValue a{r.analytic->value, r.analytic->abs_error};
    r.comparison = compare(a, *r.mc);
    if (cfg.formula == "upper_bound" && r.mc->p_hat <= a.value + r.comparison->tolerance &&
        r.comparison->verdict == Verdict::Disagree)
      r.comparison->verdict = Verdict::Agree;
    base = r.comparison->verdict;
  }
  r.verdict = !r.checks_pass() ? Verdict::Disagree : base;
  return r;
}

nlohmann::ordered_json ScenarioReport::to_json() const {
  const ScenarioConfig& c = config;
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["scenario"] = c.name;
  j["kind"] = to_string(c.kind);
  j["anchor"] = c.anchor;
  j["formula"] = c.formula;
  j["expected"] = c.expected ? nlohmann::ordered_json(*c.expected) : nlohmann::ordered_json(nullptr);
  j["run"] = {{"n_paths", c.n_paths}, {"eps", c.eps}, {"horizon", c.horizon}, {"seed", c.seed}};
  if (analytic) j["analytic"] = formula_json(*analytic);
  if (mc) j["mc"] = creep::to_json(*mc);
  if (mc_alt) j["mc_alt"] = creep::to_json(*mc_alt);
  if (comparison) {
    j["comparison"] = {{"z_score", comparison->z_score},
                       {"tolerance", comparison->tolerance},
                       {"verdict", to_string(comparison->verdict)}};
  }
  auto checks_json = nlohmann::ordered_json::array();
  for (const auto& ch : checks)
    checks_json.push_back({{"name", ch.name}, {"value", ch.value}, {"threshold", ch.threshold}, {"pass", ch.pass}});
  j["checks"] = checks_json;
  j["verdict"] = to_string(verdict);
  return j;
}

std::vector<ScenarioConfig> load_catalog(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".yaml") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<ScenarioConfig> out;
  for (const auto& f : files) {
    try {
      out.push_back(load_config(f.string()));
    } catch (const ConfigError& ex) {
      throw ConfigError(f.filename().string() + ": " + ex.what());
    }
  }
  return out;
}

const ScenarioConfig* find_scenario(const std::vector<ScenarioConfig>& catalog, const std::string& name) {
  for (const auto& c : catalog)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace creep
