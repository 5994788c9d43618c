#include "creep/path_engine.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <boost/math/special_functions/expint.hpp>

namespace creep {

namespace {

std::string join(const Violations& v) {
  std::string s;
  for (const auto& m : v) s += (s.empty() ? "" : "; ") + m;
  return s;
}

}  // namespace

double JumpPath::y_at(double t) const {
  double s = 0.0;
  for (const auto& e : events) {
    if (e.t > t) break;
    s += e.dy;
  }
  return drift_y * t + s;
}

double JumpPath::z_at(double t) const {
  double s = 0.0;
  for (const auto& e : events) {
    if (e.t > t) break;
    s += e.dz;
  }
  return drift_z * t + s;
}

// ---------------------------------------------------------------------------

JumpSampler::JumpSampler(const JumpLaw& law) : law_(law) {
  if (!has_jumps(law)) return;
  rate_ = truncated_rate(law);
  if (const auto* g = std::get_if<GammaSubordinator>(&law)) {
    gamma_split_ = std::max(g->eps, 1.0 / g->rate);
    const double upper = g->shape * boost::math::expint(1, g->rate * gamma_split_);
    gamma_lower_weight_ = rate_ > 0 ? std::max(0.0, 1.0 - upper / rate_) : 0.0;
  } else if (const auto* s = std::get_if<TwoSidedStable>(&law)) {
    p_pos_ = s->scale_pos / (s->scale_pos + s->scale_neg);
  }
}

double JumpSampler::sample(Stream& s) const {
  if (const auto* st = std::get_if<StableSubordinator>(&law_))
    return st->eps * std::pow(s.uniform(), -1.0 / st->alpha);
  if (const auto* cp = std::get_if<CompoundPoisson>(&law_)) {
    if (const auto* e = std::get_if<ExponentialJumps>(&cp->sizes)) return e->mean * s.exponential();
    const auto& u = std::get<UniformJumps>(cp->sizes);
    return u.lo + (u.hi - u.lo) * s.uniform();
  }
  if (const auto* g = std::get_if<GammaSubordinator>(&law_)) {
    // density proportional to x^-1 e^{-beta x} on (eps, inf), split at m
    const double beta = g->rate;
    const double m = gamma_split_;
    if (s.uniform() < gamma_lower_weight_) {
      // log-uniform proposal on (eps, m), accept with e^{-beta (x - eps)}
      const double log_ratio = std::log(m / g->eps);
      for (;;) {
        const double x = g->eps * std::exp(log_ratio * s.uniform());
        if (s.uniform() <= std::exp(-beta * (x - g->eps))) return x;
      }
    }
    // shifted exponential proposal on (m, inf), accept with m / x
    for (;;) {
      const double x = m + s.exponential() / beta;
      if (s.uniform() <= m / x) return x;
    }
  }
  if (const auto* ts = std::get_if<TwoSidedStable>(&law_)) {
    const double sign = s.uniform() < p_pos_ ? 1.0 : -1.0;
    return sign * ts->eps * std::pow(s.uniform(), -1.0 / ts->alpha);
  }
  throw std::logic_error("JumpSampler: no jumps to sample");
}

// ---------------------------------------------------------------------------

JumpSource::JumpSource(const JumpLaw& law, Stream stream, double tilt)
    : sampler_(law), stream_(stream), tilt_(tilt), active_(has_jumps(law) && sampler_.rate() > 0) {
  next_t_ = 0.0;
  if (active_)
    advance();
  else
    next_t_ = kInf;
}

void JumpSource::advance() {
  for (;;) {
    next_t_ += stream_.exponential() / sampler_.rate();
    next_size_ = sampler_.sample(stream_);
    if (tilt_ == 0.0 || stream_.uniform() <= std::exp(-tilt_ * next_size_)) return;
  }
}

// ---------------------------------------------------------------------------

BivariateStream::BivariateStream(const BivariateSubordinatorSpec& spec, double horizon,
                                 SeedPolicy seed, std::uint64_t k)
    : drifts_(creep::drifts(spec)), horizon_(horizon) {
  if (!(horizon > 0)) throw std::invalid_argument("horizon must be > 0");
  const auto violations = validate_spec(spec);
  if (!violations.empty()) throw std::invalid_argument("invalid process spec: " + join(violations));

  const std::uint64_t s = seed.master_seed;
  if (const auto* ind = std::get_if<Independent>(&spec.coupling)) {
    if (has_jumps(ind->y.jumps)) y_.emplace(ind->y.jumps, Stream(s, k, kStreamY));
    if (has_jumps(ind->z.jumps)) z_.emplace(ind->z.jumps, Stream(s, k, kStreamZ));
  } else if (const auto* tp = std::get_if<TimeAndProcess>(&spec.coupling)) {
    if (has_jumps(tp->z.jumps)) z_.emplace(tp->z.jumps, Stream(s, k, kStreamZ));
  } else if (const auto* bl = std::get_if<BmLadder>(&spec.coupling)) {
    y_.emplace(JumpLaw{StableSubordinator{0.5, kStableHalfScaleSqrtLambda, bl->eps}},
               Stream(s, k, kStreamY), 0.5 * bl->mu * bl->mu);
  } else if (const auto* cj = std::get_if<CustomJoint>(&spec.coupling)) {
    custom_ = cj;
    if (cj->rate > 0) {
      joint_.emplace(s, k, kStreamY);
      joint_next_ = joint_->exponential() / cj->rate;
    }
  }

  const double q = total_kill_rate(spec);
  if (q > 0) {
    Stream kill(s, k, kStreamKill);
    lifetime_ = kill.exponential() / q;
  }
}

bool BivariateStream::next(JumpEvent& e) {
  const double end = std::min(lifetime_, horizon_);
  const double ty = y_ ? y_->next_time() : kInf;
  const double tz = z_ ? z_->next_time() : kInf;
  const double tj = joint_next_;
  const double t = std::min({ty, tz, tj});
  if (!(t <= end)) return false;
  if (t == ty) {
    e = {t, y_->next_size(), 0.0};
    y_->advance();
  } else if (t == tz) {
    e = {t, 0.0, z_->next_size()};
    z_->advance();
  } else {
    const double u1 = joint_->uniform(), u2 = joint_->uniform(), u3 = joint_->uniform();
    const auto [dy, dz] = custom_->sampler(u1, u2, u3);
    e = {t, dy, dz};
    joint_next_ += joint_->exponential() / custom_->rate;
  }
  return true;
}

JumpPath sample_bivariate_path(const BivariateSubordinatorSpec& spec, double horizon, SeedPolicy seed,
                               std::uint64_t k) {
  BivariateStream stream(spec, horizon, seed, k);
  JumpPath path;
  path.drift_y = stream.drifts().y;
  path.drift_z = stream.drifts().z;
  path.lifetime = stream.lifetime();
  path.horizon = horizon;
  JumpEvent e;
  while (stream.next(e)) path.events.push_back(e);
  return path;
}

// ---------------------------------------------------------------------------

BvStream::BvStream(const BvProcessSpec& spec, double horizon, SeedPolicy seed, std::uint64_t k,
                   std::uint32_t substream)
    : src_(spec.jumps, Stream(seed.master_seed, k, substream)),
      sign_(std::holds_alternative<TwoSidedStable>(spec.jumps) || spec.sign == JumpSign::Up ? 1.0
                                                                                            : -1.0),
      horizon_(horizon) {
  const auto violations = validate_spec(spec);
  if (!violations.empty()) throw std::invalid_argument("invalid process spec: " + join(violations));
  if (!(horizon > 0)) throw std::invalid_argument("horizon must be > 0");
}

bool BvStream::next(JumpEvent& e) {
  if (!src_.active() || !(src_.next_time() <= horizon_)) return false;
  e = {src_.next_time(), 0.0, sign_ * src_.next_size()};
  src_.advance();
  return true;
}

JumpPath sample_bv_path(const BvProcessSpec& spec, double horizon, SeedPolicy seed, std::uint64_t k) {
  BvStream stream(spec, horizon, seed, k);
  JumpPath path;
  path.drift_y = 1.0;
  path.drift_z = spec.drift;
  path.horizon = horizon;
  JumpEvent e;
  while (stream.next(e)) path.events.push_back(e);
  return path;
}

// ---------------------------------------------------------------------------

BmGridStream::BmGridStream(double mu, double dt, SeedPolicy seed, std::uint64_t k)
    : stream_(seed.master_seed, k, kStreamGrid), mu_dt_(mu * dt), sd_(std::sqrt(dt)), dt_(dt) {
  if (!(dt > 0)) throw std::invalid_argument("grid step must be > 0");
}

double BmGridStream::next_increment() { return mu_dt_ + sd_ * stream_.normal(); }

GridPath sample_bm_grid(double mu, double dt, double horizon, SeedPolicy seed, std::uint64_t k) {
  BmGridStream stream(mu, dt, seed, k);
  const auto n = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
  GridPath g;
  g.dt = dt;
  g.values.reserve(n + 1);
  g.running_max.reserve(n + 1);
  g.values.push_back(0.0);
  g.running_max.push_back(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g.values.back() + stream.next_increment();
    g.values.push_back(x);
    g.running_max.push_back(std::max(g.running_max.back(), x));
  }
  return g;
}

// ---------------------------------------------------------------------------

double OuSkeleton::state_at(double t) const {
  double t0 = 0.0, z = z0;
  for (const auto& j : jumps) {
    if (j.t > t) break;
    t0 = j.t;
    z = j.after;
  }
  return z * std::exp(-gamma * (t - t0));
}

OuStream::OuStream(const OuSpec& spec, double horizon, SeedPolicy seed, std::uint64_t k,
                   std::uint32_t substream)
    : src_(JumpLaw{spec.noise}, Stream(seed.master_seed, k, substream)), horizon_(horizon) {
  const auto violations = validate_spec(spec);
  if (!violations.empty()) throw std::invalid_argument("invalid OU spec: " + join(violations));
}

bool OuStream::next(double& t, double& noise) {
  if (!src_.active() || !(src_.next_time() <= horizon_)) return false;
  t = src_.next_time();
  noise = src_.next_size();
  src_.advance();
  return true;
}

OuSkeleton sample_ou_skeleton(const OuSpec& spec, double horizon, SeedPolicy seed, std::uint64_t k,
                              std::uint32_t substream) {
  OuStream stream(spec, horizon, seed, k, substream);
  OuSkeleton sk;
  sk.gamma = spec.gamma;
  sk.z0 = spec.z;
  sk.horizon = horizon;
  double t0 = 0.0, z = spec.z, t, w;
  while (stream.next(t, w)) {
    const double before = z * std::exp(-spec.gamma * (t - t0));
    sk.jumps.push_back({t, before, before + w, w});
    t0 = t;
    z = before + w;
  }
  return sk;
}

// ---------------------------------------------------------------------------

void write_events_csv_header(std::ostream& os) { os << "path_id,t,dy,dz\n"; }

void write_events_csv(std::ostream& os, std::uint64_t path_id, const JumpPath& path) {
  const auto old = os.precision(17);
  for (const auto& e : path.events) os << path_id << ',' << e.t << ',' << e.dy << ',' << e.dz << '\n';
  os.precision(old);
}

}  // namespace creep
