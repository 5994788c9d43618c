#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "creep/analytic.hpp"
#include "creep/config.hpp"
#include "creep/mc_estimator.hpp"

namespace creep {

struct RunOptions {
  int workers = 1;
  bool monte_carlo = true;
  bool analytic = true;
};

/// A named pass/fail check with the measured value and its threshold.
struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct ScenarioReport {
  ScenarioConfig config;
  std::optional<FormulaResult> analytic;
  std::optional<McSummary> mc;
  std::optional<McSummary> mc_alt;  // second route or coarse grid
  std::optional<ComparisonVerdict> comparison;
  std::vector<Check> checks;
  std::vector<CrossingOutcome> outcomes;
  std::vector<double> creep_times;  // conditional sample used by the KS check
  Verdict verdict = Verdict::Inconclusive;

  bool checks_pass() const;
  nlohmann::ordered_json to_json() const;
};

/// Analytic value for the config's formula. Throws QuadratureError when the
/// tolerance is not met and FormulaInapplicable for unusable models.
FormulaResult scenario_formula(const ScenarioConfig& cfg);

/// Runs whatever the options and the scenario kind call for; verdicts follow
/// the comparison rule plus every configured acceptance check.
ScenarioReport run_scenario(const ScenarioConfig& cfg, const RunOptions& opt = {});

/// Golden configs in a directory, sorted by file name.
std::vector<ScenarioConfig> load_catalog(const std::string& dir);
const ScenarioConfig* find_scenario(const std::vector<ScenarioConfig>& catalog, const std::string& name);

/// Schema tag of every report.
inline constexpr const char* kReportSchema = "creep.report/1";

}  // namespace creep
