#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "creep/process_model.hpp"

namespace creep {

/// Raised for configs that do not parse or fail validation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScenarioKind { Curve, GridSupremum, Ou, Tanaka };

std::string to_string(ScenarioKind k);

/// Either a bivariate subordinator or a real bounded-variation process
/// encoded as (t, X_t).
using ProcessConfig = std::variant<BivariateSubordinatorSpec, BvProcessSpec>;

struct Windows {
  double u0 = 0.0;
  double u1 = kInf;
  double t0 = 0.0;
  double t1 = kInf;

  bool trivial() const { return u0 == 0.0 && u1 == kInf && t0 == 0.0 && t1 == kInf; }
};

/// Pass criteria beyond the comparison rule; unset entries are not checked.
struct Acceptance {
  std::optional<double> fraction_lo;
  std::optional<double> fraction_hi;
  std::optional<double> analytic_tol;  // |analytic - expected|
  std::optional<double> ks_threshold;  // creep times vs the conditional law
  std::optional<double> min_fraction;  // regression floor
};

struct OuConfig {
  double x = 0.5;
};

struct GridConfig {
  double mu = 0.0;
  double dt_coarse = 1e-3;
  double dt_fine = 2.5e-4;
  double delta_factor = 3.0;  // delta = factor * sqrt(dt)
};

struct QuadratureConfig {
  double abs_tol = 1e-8;
  int max_panels = 4000;
};

struct ScenarioConfig {
  std::string name;
  ScenarioKind kind = ScenarioKind::Curve;
  std::string anchor;   // what the scenario reproduces, in words
  std::string formula;  // analytic route: curve, inverted, norm, upper_bound, none
  std::optional<double> expected;
  std::string creep_time_law;  // "", "stable_example", "bm_example"

  ProcessConfig process;
  std::optional<ProcessConfig> analytic_process;  // quadrature side, when it differs
  CurveShape curve = ConstantCurve{};
  std::optional<CurveShape> analytic_curve;
  Windows windows;

  OuSpec ou;
  OuConfig ou_target;
  GridConfig grid;

  std::uint64_t n_paths = 100000;
  double eps = 0.0;  // 0 keeps the truncation written in the process
  double horizon = 50.0;
  std::uint64_t seed = 1;
  Acceptance acceptance;
  QuadratureConfig quadrature;
};

ScenarioConfig parse_config(const std::string& yaml_text);
ScenarioConfig load_config(const std::string& path);
std::string serialize_config(const ScenarioConfig& cfg);

/// Replaces the truncation level of every infinite-activity law.
void apply_eps(ScenarioConfig& cfg, double eps);

/// Empty when the config is usable.
Violations validate_config(const ScenarioConfig& cfg);

}  // namespace creep
