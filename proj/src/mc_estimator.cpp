#include "creep/mc_estimator.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace creep {

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  WilsonInterval w{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  // the closed interval always contains p; rounding must not break that
  w.lo = std::min(w.lo, p);
  w.hi = std::max(w.hi, p);
  return w;
}

std::uint64_t OutcomeCounts::total() const {
  std::uint64_t s = 0;
  for (auto c : by_kind) s += c;
  return s;
}

OutcomeCounts& OutcomeCounts::operator+=(const OutcomeCounts& o) {
  for (int i = 0; i < kOutcomeKinds; ++i) by_kind[i] += o.by_kind[i];
  return *this;
}

std::vector<std::string> McSummary::unobserved_kinds() const {
  std::vector<std::string> out;
  for (int i = 0; i < kOutcomeKinds; ++i)
    if (counts.by_kind[i] == 0) out.push_back(to_string(static_cast<OutcomeKind>(i)));
  return out;
}

McSummary estimate(const OutcomeCounts& counts, std::uint64_t successes, std::uint64_t master_seed,
                   double bias_bound) {
  McSummary s;
  s.n_paths = counts.total();
  if (s.n_paths == 0) throw std::invalid_argument("estimate: empty batch");
  if (successes > s.n_paths) throw std::invalid_argument("estimate: more successes than paths");
  s.counts = counts;
  s.successes = successes;
  s.p_hat = static_cast<double>(successes) / static_cast<double>(s.n_paths);
  const auto w = wilson_interval(successes, s.n_paths);
  s.ci_low = w.lo;
  s.ci_high = w.hi;
  s.bias_bound = bias_bound;
  s.master_seed = master_seed;
  return s;
}

McSummary estimate(const std::vector<CrossingOutcome>& outcomes, std::uint64_t master_seed, double bias_bound) {
  OutcomeCounts c;
  for (const auto& o : outcomes) c.add(o.kind);
  return estimate(c, c[OutcomeKind::Creep], master_seed, bias_bound);
}

KsResult ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf, double threshold) {
  if (sample.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double prev_f = 0.0;
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("ks_distance: cdf value outside [0, 1]");
    if (f < prev_f - 1e-12) throw std::invalid_argument("ks_distance: cdf is not monotone");
    prev_f = std::max(prev_f, f);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, threshold, sample.size(), d < threshold};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Agree: return "agree";
    case Verdict::Disagree: return "disagree";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Agree: return 0;
    case Verdict::Disagree: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 2;
}

ComparisonVerdict compare(const AnalyticValue& analytic, const McSummary& mc) {
  ComparisonVerdict v;
  v.analytic = analytic;
  v.mc = mc;
  const double hw = mc.half_width();
  v.tolerance = 3.0 * (hw + analytic.abs_error + mc.bias_bound);
  const double se = hw / kZ99;
  const double diff = mc.p_hat - analytic.value;
  v.z_score = se > 0 ? diff / se : 0.0;
  if (hw > kInconclusiveHalfWidth)
    v.verdict = Verdict::Inconclusive;
  else
    v.verdict = std::abs(diff) <= v.tolerance ? Verdict::Agree : Verdict::Disagree;
  return v;
}

nlohmann::ordered_json to_json(const McSummary& s) {
  nlohmann::ordered_json j;
  j["n_paths"] = s.n_paths;
  nlohmann::ordered_json counts;
  for (int i = 0; i < kOutcomeKinds; ++i) counts[to_string(static_cast<OutcomeKind>(i))] = s.counts.by_kind[i];
  j["counts"] = counts;
  j["unobserved_kinds"] = s.unobserved_kinds();
  j["successes"] = s.successes;
  j["p_hat"] = s.p_hat;
  j["ci_low"] = s.ci_low;
  j["ci_high"] = s.ci_high;
  j["confidence"] = 0.99;
  j["bias_bound"] = s.bias_bound;
  j["rule_of_three"] = s.rule_of_three();
  j["master_seed"] = s.master_seed;
  return j;
}

nlohmann::ordered_json to_json(const ComparisonVerdict& v) {
  nlohmann::ordered_json j;
  j["analytic"] = {{"value", v.analytic.value}, {"abs_error", v.analytic.abs_error}};
  j["mc"] = to_json(v.mc);
  j["z_score"] = v.z_score;
  j["tolerance"] = v.tolerance;
  j["verdict"] = to_string(v.verdict);
  return j;
}

void write_outcomes_csv(std::ostream& os, const std::vector<CrossingOutcome>& outcomes) {
  os << "path_id,kind,time,y,z,residual,at_extremum\n";
  const auto old = os.precision(17);
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const auto& o = outcomes[k];
    os << k << ',' << to_string(o.kind) << ',' << o.time << ',' << o.y << ',' << o.z << ',' << o.residual << ','
       << (o.at_extremum ? 1 : 0) << '\n';
  }
  os.precision(old);
}

}  // namespace creep
