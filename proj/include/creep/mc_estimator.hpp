#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <iosfwd>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "creep/creep_detect.hpp"

namespace creep {

/// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.5758293035489008;

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n, double z = kZ99);

/// Per-kind counters. Merging is a plain element-wise sum.
struct OutcomeCounts {
  std::array<std::uint64_t, kOutcomeKinds> by_kind{};

  void add(OutcomeKind k) { ++by_kind[static_cast<int>(k)]; }
  std::uint64_t operator[](OutcomeKind k) const { return by_kind[static_cast<int>(k)]; }
  std::uint64_t total() const;
  OutcomeCounts& operator+=(const OutcomeCounts& o);
};

struct McSummary {
  std::uint64_t n_paths = 0;
  OutcomeCounts counts;
  std::uint64_t successes = 0;  // creep events counted towards p_hat
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  double bias_bound = 0.0;
  std::uint64_t master_seed = 0;

  double half_width() const { return 0.5 * (ci_high - ci_low); }
  /// 3/N upper bound quoted when no creep event was observed.
  double rule_of_three() const { return n_paths ? 3.0 / static_cast<double>(n_paths) : 1.0; }
  std::vector<std::string> unobserved_kinds() const;
};

/// Summary with p_hat the fraction of Creep outcomes.
McSummary estimate(const std::vector<CrossingOutcome>& outcomes, std::uint64_t master_seed,
                   double bias_bound = 0.0);
/// Summary with p_hat = successes / n, e.g. when only creeps inside a window count.
McSummary estimate(const OutcomeCounts& counts, std::uint64_t successes, std::uint64_t master_seed,
                   double bias_bound = 0.0);

struct KsResult {
  double statistic = 0.0;
  double threshold = 0.02;
  std::size_t n = 0;
  bool pass = false;
};

/// sup_t |F_n(t) - F(t)|. Throws std::invalid_argument for an empty sample
/// or when F is not a nondecreasing function into [0, 1] on the sample.
KsResult ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf,
                     double threshold = 0.02);

struct AnalyticValue {
  double value = 0.0;
  double abs_error = 0.0;
};

enum class Verdict { Agree, Disagree, Inconclusive };

std::string to_string(Verdict v);
/// 0 agree, 1 disagree, 2 inconclusive.
int exit_code(Verdict v);

/// MC half-widths above this make a comparison inconclusive.
inline constexpr double kInconclusiveHalfWidth = 0.05;

struct ComparisonVerdict {
  AnalyticValue analytic;
  McSummary mc;
  double z_score = 0.0;    // (p_hat - value) / binomial standard error
  double tolerance = 0.0;  // 3 (half width + quadrature error + bias bound)
  Verdict verdict = Verdict::Inconclusive;
};

ComparisonVerdict compare(const AnalyticValue& analytic, const McSummary& mc);

/// Runs fn(k) for k in [0, n) on `workers` threads. Results are stored by path
/// index, so the output does not depend on the worker count.
template <class T, class Fn>
std::vector<T> run_paths(std::uint64_t n, int workers, Fn&& fn) {
  std::vector<T> out(n);
  constexpr std::uint64_t kChunk = 256;
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto work = [&] {
    try {
      while (!failed.load()) {
        const std::uint64_t begin = next.fetch_add(kChunk);
        if (begin >= n) return;
        const std::uint64_t end = std::min(n, begin + kChunk);
        for (std::uint64_t k = begin; k < end; ++k) out[k] = fn(k);
      }
    } catch (...) {
      if (!failed.exchange(true)) error = std::current_exception();
    }
  };
  const int w = std::max(1, workers);
  if (w == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (int i = 0; i < w; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

nlohmann::ordered_json to_json(const McSummary& s);
nlohmann::ordered_json to_json(const ComparisonVerdict& v);

/// path_id,kind,time,y,z,residual,at_extremum
void write_outcomes_csv(std::ostream& os, const std::vector<CrossingOutcome>& outcomes);

}  // namespace creep
