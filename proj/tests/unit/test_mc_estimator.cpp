#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "creep/analytic.hpp"
#include "creep/mc_estimator.hpp"
#include "creep/rng.hpp"
#include "oracles.hpp"

using namespace creep;

namespace {

std::vector<CrossingOutcome> batch(int creeps, int jumps) {
  std::vector<CrossingOutcome> out;
  for (int i = 0; i < creeps; ++i) out.push_back({OutcomeKind::Creep, 1.0});
  for (int i = 0; i < jumps; ++i) out.push_back({OutcomeKind::JumpOver, 2.0});
  return out;
}

McSummary summary(double p, double half_width, double bias = 0.0) {
  McSummary s;
  s.n_paths = 100000;
  s.p_hat = p;
  s.ci_low = p - half_width;
  s.ci_high = p + half_width;
  s.bias_bound = bias;
  return s;
}

}  // namespace

TEST_CASE("Wilson intervals") {
  const WilsonInterval a = wilson_interval(50, 100);
  CHECK(a.lo == doctest::Approx(oracle::kWilson50of100Lo).epsilon(1e-12));
  CHECK(a.hi == doctest::Approx(oracle::kWilson50of100Hi).epsilon(1e-12));
  const WilsonInterval b = wilson_interval(3, 1000);
  CHECK(b.lo == doctest::Approx(oracle::kWilson3of1000Lo).epsilon(1e-12));
  CHECK(b.hi == doctest::Approx(oracle::kWilson3of1000Hi).epsilon(1e-12));
  const WilsonInterval zero = wilson_interval(0, 1000);
  CHECK(zero.lo == 0.0);
  CHECK(zero.hi > 0.0);
  CHECK(wilson_interval(100, 100).hi == 1.0);
}

TEST_CASE("estimate from a batch") {
  const McSummary all = estimate(batch(100, 0), 7);
  CHECK(all.p_hat == 1.0);
  CHECK(all.ci_high == 1.0);
  CHECK(all.master_seed == 7);

  const McSummary half = estimate(batch(50, 50), 7, 1e-3);
  CHECK(half.p_hat == 0.5);
  CHECK(half.ci_low <= half.p_hat);
  CHECK(half.ci_high >= half.p_hat);
  CHECK(half.counts.total() == half.n_paths);
  CHECK(half.bias_bound == 1e-3);
  const auto missing = half.unobserved_kinds();
  CHECK(std::find(missing.begin(), missing.end(), "killed") != missing.end());
  CHECK(std::find(missing.begin(), missing.end(), "creep") == missing.end());
  CHECK(half.counts[OutcomeKind::Killed] == 0);

  const McSummary none = estimate(batch(0, 1000), 1);
  CHECK(none.p_hat == 0.0);
  CHECK(none.rule_of_three() == doctest::Approx(3e-3));

  CHECK_THROWS_AS(estimate(OutcomeCounts{}, 0, 1), std::invalid_argument);
}

TEST_CASE("counter merging is associative") {
  OutcomeCounts a, b, c;
  a.add(OutcomeKind::Creep);
  b.add(OutcomeKind::JumpOver);
  b.add(OutcomeKind::Creep);
  c.add(OutcomeKind::Horizon);
  OutcomeCounts left = a;
  left += b;
  left += c;
  OutcomeCounts bc = b;
  bc += c;
  OutcomeCounts right = a;
  right += bc;
  CHECK(left.by_kind == right.by_kind);
  CHECK(left.total() == 4);
}

TEST_CASE("Wilson coverage for a Bernoulli(0.3) generator") {
  int covered = 0;
  for (std::uint64_t rep = 0; rep < 1000; ++rep) {
    Stream s(2024, rep, kStreamAux);
    std::uint64_t hits = 0;
    const std::uint64_t n = 1000;
    for (std::uint64_t i = 0; i < n; ++i) hits += s.uniform() < 0.3;
    const WilsonInterval w = wilson_interval(hits, n);
    covered += w.lo <= 0.3 && 0.3 <= w.hi;
  }
  CHECK(covered >= 985);
}

TEST_CASE("comparison rule") {
  const auto agree = compare({1.0 / 3.0, 1e-9}, summary(0.331, 0.004, 0.001));
  CHECK(agree.verdict == Verdict::Agree);
  CHECK(agree.tolerance == doctest::Approx(3.0 * (0.004 + 1e-9 + 0.001)));

  CHECK(compare({0.5, 1e-9}, summary(0.40, 0.004)).verdict == Verdict::Disagree);

  const McSummary small = estimate(batch(6, 4), 1);
  CHECK(compare({0.5, 1e-9}, small).verdict == Verdict::Inconclusive);

  CHECK(exit_code(Verdict::Agree) == 0);
  CHECK(exit_code(Verdict::Disagree) == 1);
  CHECK(exit_code(Verdict::Inconclusive) == 2);
}

TEST_CASE("KS distance") {
  const auto cdf = [](double t) { return creep_time_cdf_stable_example(t); };
  // inverse transform of erf(t^2 / sqrt 2)
  std::vector<double> sample;
  Stream s(3, 0, kStreamAux);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform();
    double lo = 0.0, hi = 10.0;
    for (int j = 0; j < 200; ++j) {
      const double mid = 0.5 * (lo + hi);
      (cdf(mid) < u ? lo : hi) = mid;
    }
    sample.push_back(0.5 * (lo + hi));
  }
  const KsResult good = ks_distance(sample, cdf);
  CHECK(good.pass);
  CHECK(good.statistic < 0.02);
  CHECK(good.n == 10000);

  std::vector<double> shifted = sample;
  for (double& t : shifted) t *= 1.2;
  CHECK_FALSE(ks_distance(shifted, cdf).pass);

  CHECK(ks_distance({0.5}, [](double t) { return t; }).statistic == doctest::Approx(0.5));
  CHECK_THROWS_AS(ks_distance({}, cdf), std::invalid_argument);
  CHECK_THROWS_AS(ks_distance(sample, [](double t) { return std::sin(t); }), std::invalid_argument);
}

TEST_CASE("worker pool keeps results in path order and rethrows") {
  const auto squares = run_paths<std::uint64_t>(10000, 3, [](std::uint64_t k) { return k * k; });
  bool ordered = true;
  for (std::uint64_t k = 0; k < squares.size(); ++k) ordered = ordered && squares[k] == k * k;
  CHECK(ordered);
  CHECK_THROWS_AS(run_paths<int>(1000, 2,
                                 [](std::uint64_t k) {
                                   if (k == 777) throw std::runtime_error("boom");
                                   return 0;
                                 }),
                  std::runtime_error);
}

TEST_CASE("summary serialisation is deterministic") {
  const McSummary a = estimate(batch(30, 70), 5, 1e-4);
  const McSummary b = estimate(batch(30, 70), 5, 1e-4);
  CHECK(to_json(a).dump() == to_json(b).dump());
  const auto j = to_json(a);
  CHECK(j["n_paths"] == 100);
  CHECK(j["successes"] == 30);

  std::ostringstream csv;
  write_outcomes_csv(csv, batch(1, 0));
  CHECK(csv.str().rfind("path_id,kind,time,y,z,residual,at_extremum\n", 0) == 0);
}
