#include "creep/creep_detect.hpp"

#include <cmath>
#include <stdexcept>

namespace creep {

std::string to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Creep: return "creep";
    case OutcomeKind::JumpOver: return "jump_over";
    case OutcomeKind::JumpOntoGraph: return "jump_onto_graph";
    case OutcomeKind::JumpFromGraph: return "jump_from_graph";
    case OutcomeKind::Killed: return "killed";
    case OutcomeKind::Horizon: return "horizon";
  }
  return "horizon";
}

namespace {

constexpr int kScanPoints = 64;

bool affine_with_monotone_gap(const Curve& c, Drifts d) {
  const auto* a = std::get_if<AffineCurve>(&c.shape());
  return a && d.y >= 0 && d.z + a->b * d.y >= 0;
}

}  // namespace

CurveCrossingDetector::CurveCrossingDetector(const Curve& curve, Drifts drifts, DetectTolerances tol)
    : curve_(curve), dy_(drifts.y), dz_(drifts.z), tol_(tol) {
  monotone_segments_ = (curve.direction() == Direction::NonIncreasing && dy_ >= 0 && dz_ >= 0) ||
                       affine_with_monotone_gap(curve, drifts);
  const double f0 = curve(0.0);
  if (!(f0 > 0)) throw std::invalid_argument("curve must be positive at the start of the path");
}

double CurveCrossingDetector::g_at(double t) const {
  return (dz_ * t + sum_z_) - curve_(dy_ * t + sum_y_);
}

CrossingOutcome CurveCrossingDetector::creep_at(double t, double g) const {
  CrossingOutcome o;
  o.kind = OutcomeKind::Creep;
  o.time = t;
  o.y = dy_ * t + sum_y_;
  o.z = dz_ * t + sum_z_;
  o.y_pre = o.y;
  o.z_pre = o.z;
  o.residual = g;
  return o;
}

std::optional<CrossingOutcome> CurveCrossingDetector::advance_to(double t1) {
  if (!(t1 > t_)) return std::nullopt;
  const double t0 = t_;
  if (std::isinf(t1)) {
    // unbounded final segment: bracket the crossing by doubling
    double hi = t0 + 1.0;
    while (g_at(hi) < 0 && hi < 1e300) hi = t0 + 2.0 * (hi - t0);
    if (!(g_at(hi) >= 0)) {
      t_ = t1;
      return std::nullopt;
    }
    t1 = hi;
  }

  auto bisect = [&](double lo, double hi) -> CrossingOutcome {
    for (int i = 0; i < 400; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      const double gm = g_at(mid);
      if (std::abs(gm) <= tol_.root) return creep_at(mid, gm);
      (gm < 0 ? lo : hi) = mid;
    }
    return creep_at(hi, g_at(hi));
  };

  if (monotone_segments_) {
    const double g1 = g_at(t1);
    if (g1 >= 0) {
      t_ = t1;
      if (dy_ == 0.0 && dz_ > 0.0) {
        // f(Y) is frozen on the segment: the crossing is linear in t
        const double f = curve_(sum_y_);
        const double ts = (f - sum_z_) / dz_;
        if (ts >= t0 && ts <= t1) return creep_at(ts, g_at(ts));
      }
      return bisect(t0, t1);
    }
    t_ = t1;
    return std::nullopt;
  }

  // Non-monotone gap: the search is skipped only when g cannot increase.
  const bool g_nonincreasing = curve_.direction() == Direction::NonDecreasing && dz_ <= 0 && dy_ >= 0;
  if (!g_nonincreasing) {
    double prev = t0;
    for (int j = 1; j <= kScanPoints; ++j) {
      const double tj = j == kScanPoints ? t1 : t0 + (t1 - t0) * j / kScanPoints;
      if (g_at(tj) >= 0) {
        t_ = t1;
        return bisect(prev, tj);
      }
      prev = tj;
    }
  }
  t_ = t1;
  return std::nullopt;
}

std::optional<CrossingOutcome> CurveCrossingDetector::jump(double jy, double jz) {
  const double y0 = y(), z0 = z();
  const double g_pre = z0 - curve_(y0);
  sum_y_ += jy;
  sum_z_ += jz;
  const double y1 = y(), z1 = z();
  const double g_post = z1 - curve_(y1);
  if (g_post < -tol_.graph) return std::nullopt;
  CrossingOutcome o;
  o.time = t_;
  o.y = y1;
  o.z = z1;
  o.y_pre = y0;
  o.z_pre = z0;
  if (g_post <= tol_.graph)
    o.kind = OutcomeKind::JumpOntoGraph;
  else if (g_pre >= -tol_.graph)
    o.kind = OutcomeKind::JumpFromGraph;
  else
    o.kind = OutcomeKind::JumpOver;
  return o;
}

CrossingOutcome CurveCrossingDetector::stop(double t, bool killed) const {
  CrossingOutcome o;
  o.kind = killed ? OutcomeKind::Killed : OutcomeKind::Horizon;
  o.time = t;
  o.y = dy_ * t + sum_y_;
  o.z = dz_ * t + sum_z_;
  o.y_pre = o.y;
  o.z_pre = o.z;
  return o;
}

namespace {

CrossingOutcome run_path(const JumpPath& path, const Curve& curve, DetectTolerances tol) {
  CurveCrossingDetector det(curve, {path.drift_y, path.drift_z}, tol);
  for (const auto& e : path.events) {
    if (auto r = det.advance_to(e.t)) return *r;
    if (auto r = det.jump(e.dy, e.dz)) return *r;
  }
  const double end = path.end_time();
  if (auto r = det.advance_to(end)) return *r;
  return det.stop(end, path.lifetime <= path.horizon);
}

}  // namespace

CrossingOutcome first_passage_curve(const JumpPath& path, const Curve& curve, DetectTolerances tol) {
  if (curve.direction() != Direction::NonIncreasing)
    throw std::invalid_argument("first_passage_curve needs a nonincreasing curve");
  return run_path(path, curve, tol);
}

CrossingOutcome nondecreasing_curve_passage(const JumpPath& path, const Curve& curve, DetectTolerances tol) {
  if (curve.direction() != Direction::NonDecreasing)
    throw std::invalid_argument("nondecreasing_curve_passage needs a nondecreasing curve");
  return run_path(path, curve, tol);
}

CrossingOutcome first_passage_curve(BivariateStream& stream, const Curve& curve, DetectTolerances tol) {
  CurveCrossingDetector det(curve, stream.drifts(), tol);
  JumpEvent e;
  while (stream.next(e)) {
    if (auto r = det.advance_to(e.t)) return *r;
    if (auto r = det.jump(e.dy, e.dz)) return *r;
  }
  const double end = std::min(stream.lifetime(), stream.horizon());
  if (auto r = det.advance_to(end)) return *r;
  return det.stop(end, stream.lifetime() <= stream.horizon());
}

CrossingOutcome first_passage_curve(BvStream& stream, double drift, const Curve& curve, DetectTolerances tol) {
  CurveCrossingDetector det(curve, {1.0, drift}, tol);
  JumpEvent e;
  while (stream.next(e)) {
    if (auto r = det.advance_to(e.t)) return *r;
    if (auto r = det.jump(e.dy, e.dz)) return *r;
  }
  if (auto r = det.advance_to(stream.horizon())) return *r;
  return det.stop(stream.horizon(), false);
}

// ---------------------------------------------------------------------------

namespace {

class LevelDetector {
 public:
  LevelDetector(Drifts d, Coordinate c, double level, DetectTolerances tol)
      : d_(c == Coordinate::Y ? d.y : d.z), other_d_(c == Coordinate::Y ? d.z : d.y), c_(c),
        level_(level), tol_(tol) {
    if (!(level > 0)) throw std::invalid_argument("level must be > 0");
  }

  std::optional<CrossingOutcome> advance_to(double t1) {
    if (!(t1 > t_)) return std::nullopt;
    const double t0 = t_;
    t_ = t1;
    if (d_ > 0 && d_ * t1 + sum_ >= level_) {
      const double ts = t0 + (level_ - (d_ * t0 + sum_)) / d_;
      CrossingOutcome o;
      o.kind = OutcomeKind::Creep;
      o.time = ts;
      o.y = other_d_ * ts + other_sum_;
      o.z = level_;
      o.y_pre = o.y;
      o.z_pre = o.z;
      o.residual = (d_ * ts + sum_) - level_;
      return o;
    }
    return std::nullopt;
  }

  std::optional<CrossingOutcome> jump(double dy, double dz) {
    const double mine = c_ == Coordinate::Y ? dy : dz, other = c_ == Coordinate::Y ? dz : dy;
    const double pre = d_ * t_ + sum_, other_pre = other_d_ * t_ + other_sum_;
    sum_ += mine;
    other_sum_ += other;
    const double post = d_ * t_ + sum_;
    if (post < level_ - tol_.graph) return std::nullopt;
    CrossingOutcome o;
    o.time = t_;
    o.y = other_d_ * t_ + other_sum_;
    o.z = post;
    o.y_pre = other_pre;
    o.z_pre = pre;
    if (post <= level_ + tol_.graph)
      o.kind = OutcomeKind::JumpOntoGraph;
    else if (pre >= level_ - tol_.graph)
      o.kind = OutcomeKind::JumpFromGraph;
    else
      o.kind = OutcomeKind::JumpOver;
    return o;
  }

  CrossingOutcome stop(double t, bool killed) const {
    CrossingOutcome o;
    o.kind = killed ? OutcomeKind::Killed : OutcomeKind::Horizon;
    o.time = t;
    o.y = other_d_ * t + other_sum_;
    o.z = d_ * t + sum_;
    return o;
  }

 private:
  double d_, other_d_;
  Coordinate c_;
  double level_;
  DetectTolerances tol_;
  double t_ = 0.0, sum_ = 0.0, other_sum_ = 0.0;
};

}  // namespace

CrossingOutcome first_passage_level(const JumpPath& path, Coordinate c, double level, DetectTolerances tol) {
  LevelDetector det({path.drift_y, path.drift_z}, c, level, tol);
  for (const auto& e : path.events) {
    if (auto r = det.advance_to(e.t)) return *r;
    if (auto r = det.jump(e.dy, e.dz)) return *r;
  }
  const double end = path.end_time();
  if (auto r = det.advance_to(end)) return *r;
  return det.stop(end, path.lifetime <= path.horizon);
}

CrossingOutcome first_passage_level(BivariateStream& stream, Coordinate c, double level, DetectTolerances tol) {
  LevelDetector det(stream.drifts(), c, level, tol);
  JumpEvent e;
  while (stream.next(e)) {
    if (auto r = det.advance_to(e.t)) return *r;
    if (auto r = det.jump(e.dy, e.dz)) return *r;
  }
  const double end = std::min(stream.lifetime(), stream.horizon());
  if (auto r = det.advance_to(end)) return *r;
  return det.stop(end, stream.lifetime() <= stream.horizon());
}

// ---------------------------------------------------------------------------

GridSupremumDetector::GridSupremumDetector(const Curve& curve, double dt, double delta)
    : curve_(curve), dt_(dt), delta_(delta) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be > 0");
  if (!(dt > 0)) throw std::invalid_argument("grid step must be > 0");
}

std::optional<CrossingOutcome> GridSupremumDetector::push(double x) {
  ++k_;
  const double t = static_cast<double>(k_) * dt_;
  const double prev_max = max_;
  if (x > max_) max_ = x;
  if (!(x > curve_(t))) return std::nullopt;
  CrossingOutcome o;
  o.kind = OutcomeKind::Creep;
  o.time = t;
  o.y = t;
  o.z = x;
  o.z_pre = prev_max;  // running maximum before this step
  o.at_extremum = max_ - x <= delta_;
  return o;
}

CrossingOutcome supremum_creep_bm_grid(const GridPath& path, const Curve& curve, double delta) {
  GridSupremumDetector det(curve, path.dt, delta);
  for (std::size_t i = 1; i < path.values.size(); ++i)
    if (auto r = det.push(path.values[i])) return *r;
  CrossingOutcome o;
  o.kind = OutcomeKind::Horizon;
  o.time = static_cast<double>(path.values.size() - 1) * path.dt;
  return o;
}

// ---------------------------------------------------------------------------

namespace {

// Upward passage of x by the flow z e^{-gamma t} interrupted by jumps;
// the caller negates everything for downward passages.
class OuUpDetector {
 public:
  OuUpDetector(double gamma, double z0, double x, DetectTolerances tol)
      : gamma_(gamma), zc_(z0), x_(x), tol_(tol) {}

  std::optional<CrossingOutcome> advance_to(double t1) {
    std::optional<CrossingOutcome> out;
    // the flow moves toward 0, so it reaches x only from below when x < 0
    if (x_ < 0 && zc_ < x_) {
      const double ts = t0_ + std::log(zc_ / x_) / gamma_;
      if (ts <= t1) {
        CrossingOutcome o;
        o.kind = OutcomeKind::Creep;
        o.time = ts;
        o.z = zc_ * std::exp(-gamma_ * (ts - t0_));
        o.y = ts;
        o.z_pre = o.z;
        o.y_pre = ts;
        o.residual = o.z - x_;
        out = o;
      }
    }
    return out;
  }

  std::optional<CrossingOutcome> jump(double t, double w) {
    const double before = zc_ * std::exp(-gamma_ * (t - t0_));
    const double after = before + w;
    t0_ = t;
    zc_ = after;
    if (after < x_ - tol_.graph) return std::nullopt;
    CrossingOutcome o;
    o.time = t;
    o.y = t;
    o.z = after;
    o.y_pre = t;
    o.z_pre = before;
    if (after <= x_ + tol_.graph)
      o.kind = OutcomeKind::JumpOntoGraph;
    else if (before >= x_ - tol_.graph)
      o.kind = OutcomeKind::JumpFromGraph;
    else
      o.kind = OutcomeKind::JumpOver;
    return o;
  }

  CrossingOutcome stop(double t) const {
    CrossingOutcome o;
    o.kind = OutcomeKind::Horizon;
    o.time = t;
    o.y = t;
    o.z = zc_ * std::exp(-gamma_ * (t - t0_));
    return o;
  }

 private:
  double gamma_, zc_, x_;
  DetectTolerances tol_;
  double t0_ = 0.0;
};

void check_ou_target(double x, double z) {
  if (x == 0.0) throw std::invalid_argument("OU target x = 0 is rejected: the flow reaches 0 only asymptotically");
  if (x == z) throw std::invalid_argument("OU target must differ from the starting point");
}

CrossingOutcome flip(CrossingOutcome o, double s) {
  o.z *= s;
  o.z_pre *= s;
  o.residual *= s;
  return o;
}

}  // namespace

CrossingOutcome ou_first_passage(const OuSkeleton& sk, double x, OuDirection dir, DetectTolerances tol) {
  check_ou_target(x, sk.z0);
  const double s = dir == OuDirection::Up ? 1.0 : -1.0;
  if (s * sk.z0 >= s * x) throw std::invalid_argument("OU start already beyond the target in this direction");
  OuUpDetector det(sk.gamma, s * sk.z0, s * x, tol);
  for (const auto& j : sk.jumps) {
    if (auto r = det.advance_to(j.t)) return flip(*r, s);
    if (auto r = det.jump(j.t, s * j.noise)) return flip(*r, s);
  }
  if (auto r = det.advance_to(sk.horizon)) return flip(*r, s);
  return flip(det.stop(sk.horizon), s);
}

CrossingOutcome ou_first_passage(const OuSpec& spec, double x, double horizon, SeedPolicy seed, std::uint64_t k,
                                 std::uint32_t substream, DetectTolerances tol) {
  check_ou_target(x, spec.z);
  const double s = x > spec.z ? 1.0 : -1.0;
  OuStream stream(spec, horizon, seed, k, substream);
  OuUpDetector det(spec.gamma, s * spec.z, s * x, tol);
  double t, w;
  while (stream.next(t, w)) {
    if (auto r = det.advance_to(t)) return flip(*r, s);
    if (auto r = det.jump(t, s * w)) return flip(*r, s);
  }
  if (auto r = det.advance_to(horizon)) return flip(*r, s);
  return flip(det.stop(horizon), s);
}

CrossingOutcome ou_first_passage_via_curve(const OuSpec& spec, double x, double horizon, SeedPolicy seed,
                                           std::uint64_t k, std::uint32_t substream, DetectTolerances tol) {
  check_ou_target(x, spec.z);
  const double s = x > spec.z ? 1.0 : -1.0;
  const double alpha = spec.noise.alpha, gamma = spec.gamma, ag = alpha * gamma;
  // X_s > x' (ag s + 1)^{1/alpha} - z' with the sign-normalised target
  const Curve curve = Curve::ou(s * x, alpha, gamma, s * spec.z);
  CurveCrossingDetector det(curve, {1.0, 0.0}, tol);
  auto s_of_t = [ag](double t) { return std::expm1(ag * t) / ag; };
  auto t_of_s = [ag](double u) { return std::log1p(ag * u) / ag; };
  auto to_ou = [&](CrossingOutcome o) {
    // Z_t = e^{-gamma t} (z + X_s)
    const double tt = t_of_s(o.time), decay = std::exp(-gamma * tt);
    o.time = tt;
    o.y = tt;
    o.y_pre = tt;
    o.z = decay * (s * spec.z + o.z);
    o.z_pre = decay * (s * spec.z + o.z_pre);
    o.residual *= decay;
    return flip(o, s);
  };
  OuStream stream(spec, horizon, seed, k, substream);
  double t, w;
  while (stream.next(t, w)) {
    if (auto r = det.advance_to(s_of_t(t))) return to_ou(*r);
    if (auto r = det.jump(0.0, s * w * std::exp(gamma * t))) return to_ou(*r);
  }
  if (auto r = det.advance_to(s_of_t(horizon))) return to_ou(*r);
  return to_ou(det.stop(s_of_t(horizon), false));
}

}  // namespace creep
