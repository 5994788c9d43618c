#pragma once

#include <vector>

#include "creep/creep_detect.hpp"
#include "creep/path_engine.hpp"

namespace creep {

/// Value just before (pre) and at (post) time t.
struct Knot {
  double t = 0.0;
  double pre = 0.0;
  double post = 0.0;
};

/// Piecewise-linear cadlag path with a common slope between knots. The first
/// knot sits at t = 0 and the last at the end of the path.
struct KnotPath {
  double slope = 0.0;
  std::vector<Knot> knots;

  double end_time() const { return knots.back().t; }
  double value_at(double t) const;
};

struct ClosedInterval {
  double a = 0.0;
  double b = 0.0;
  bool operator==(const ClosedInterval&) const = default;
};

struct Excursion {
  double g = 0.0;      // last contact before the excursion
  double d = 0.0;      // return to the running maximum
  double level = 0.0;  // running maximum during the excursion
};

struct ExcursionDecomposition {
  std::vector<ClosedInterval> contacts;  // {t : X_t = sup_{s<=t} X_s}, closed and merged
  std::vector<Excursion> excursions;
};

struct TanakaResult {
  KnotPath x;  // original path with return knots inserted, cut at `end`
  KnotPath w;  // transformed path
  ExcursionDecomposition decomposition;
  double end = 0.0;
  bool truncated = false;  // an unfinished final excursion was dropped
};

/// Knot form of a bounded-variation path encoded as (t, X_t).
KnotPath knot_path(const JumpPath& path);

/// Event form of a knot path, (t, X_t) with unit time drift, for CSV export.
JumpPath to_jump_path(const KnotPath& x);

/// Reverses every excursion of the reflected path in place. The input must
/// have a positive drift and only downward jumps.
TanakaResult tanaka_transform(const JumpPath& path);

/// Closed intervals where W equals its future infimum.
std::vector<ClosedInterval> future_infimum_contacts(const KnotPath& w);
/// inf_{s >= t} W_s evaluated at time t.
double future_infimum_at(const KnotPath& w, double t);
/// sup_{s <= t} X_s evaluated at time t.
double running_supremum_at(const KnotPath& x, double t);

bool contains(const std::vector<ClosedInterval>& set, double t);

/// Root of v0 + slope (t - t0) = f(t) on [t0, t1]; both passage routines use it.
double segment_root(double t0, double v0, double slope, double t1, const Curve& f, double tol = 1e-12);

/// First time X > f; at_extremum when X is at its running supremum there.
CrossingOutcome first_passage_at_supremum(const TanakaResult& tr, const Curve& f);

/// sigma_f = sup{t : W_t <= f(t)}; at_extremum when W equals its future
/// infimum at sigma_f. Horizon when W after the cut could still dip below f.
CrossingOutcome last_passage_creep(const TanakaResult& tr, const Curve& f);

struct TanakaCheck {
  bool contact_identity = false;
  bool infimum_identity = false;
  bool involution = false;
  bool determinate = false;
  bool indicator_match = false;
  bool time_match = false;
  CrossingOutcome forward;
  CrossingOutcome backward;

  bool all() const {
    return contact_identity && infimum_identity && involution && determinate && indicator_match && time_match;
  }
};

TanakaCheck check_tanaka_identities(const JumpPath& path, const Curve& f);

}  // namespace creep
