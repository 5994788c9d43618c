#include <string>

#include "doctest.h"

#include "creep/config.hpp"
#include "creep/scenario.hpp"

using namespace creep;

namespace {

const char* kMinimal = R"(
name: tiny
kind: curve
anchor: "level creeping of a compound Poisson process with drift"
formula: curve
expected: 0.5
process:
  type: time_and_process
  z:
    drift: 0.5
    jumps: {type: compound_poisson, rate: 1, sizes: {type: exponential, mean: 0.5}}
curve: {type: constant, x: 1}
mc: {paths: 1000, horizon: 100, seed: 3}
)";

}  // namespace

TEST_CASE("every golden config parses, validates and round-trips") {
  const auto catalog = load_catalog(CREEP_GOLDEN_DIR);
  CHECK(catalog.size() >= 10);
  for (const auto& cfg : catalog) {
    CAPTURE(cfg.name);
    CHECK_FALSE(cfg.anchor.empty());
    CHECK(validate_config(cfg).empty());
    const std::string once = serialize_config(cfg);
    CHECK(serialize_config(parse_config(once)) == once);
  }
  CHECK(find_scenario(catalog, "stable_half") != nullptr);
  CHECK(find_scenario(catalog, "no_such_thing") == nullptr);
}

TEST_CASE("minimal config") {
  const ScenarioConfig cfg = parse_config(kMinimal);
  CHECK(cfg.name == "tiny");
  CHECK(cfg.kind == ScenarioKind::Curve);
  CHECK(cfg.n_paths == 1000);
  CHECK(cfg.seed == 3);
  CHECK(cfg.expected == 0.5);
  const auto& spec = std::get<BivariateSubordinatorSpec>(cfg.process);
  CHECK(drifts(spec).z == 0.5);
  CHECK(std::holds_alternative<ConstantCurve>(cfg.curve));
}

TEST_CASE("strict parsing") {
  std::string typo = kMinimal;
  typo.replace(typo.find("horizon"), 7, "horizn");
  CHECK_THROWS_AS(parse_config(typo), ConfigError);
  std::string bad_type = kMinimal;
  bad_type.replace(bad_type.find("compound_poisson"), 16, "levy_flight");
  CHECK_THROWS_AS(parse_config(bad_type), ConfigError);
  CHECK_THROWS_AS(parse_config("name: [unclosed"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.yaml"), ConfigError);
}

TEST_CASE("validation and overrides") {
  ScenarioConfig cfg = parse_config(kMinimal);
  cfg.n_paths = 0;
  const auto v = validate_config(cfg);
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().find("paths") != std::string::npos);

  ScenarioConfig stable = *find_scenario(load_catalog(CREEP_GOLDEN_DIR), "stable_half");
  apply_eps(stable, 1e-3);
  const auto& spec = std::get<BivariateSubordinatorSpec>(stable.process);
  CHECK(truncation(std::get<TimeAndProcess>(spec.coupling).z.jumps) == 1e-3);
}

TEST_CASE("quadrature settings") {
  const ScenarioConfig plain = parse_config(kMinimal);
  CHECK(plain.quadrature.abs_tol == 1e-8);
  CHECK(plain.quadrature.max_panels == 4000);
  CHECK(serialize_config(plain).find("quadrature") == std::string::npos);

  const ScenarioConfig tuned = parse_config(std::string(kMinimal) + "quadrature: {abs_tol: 1.0e-10, max_panels: 50}\n");
  CHECK(tuned.quadrature.abs_tol == 1e-10);
  CHECK(tuned.quadrature.max_panels == 50);
  const ScenarioConfig again = parse_config(serialize_config(tuned));
  CHECK(again.quadrature.abs_tol == 1e-10);
  CHECK(again.quadrature.max_panels == 50);

  CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "quadrature: {max_panels: 0}\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "quadrature: {rel_tol: 1}\n"), ConfigError);
}
