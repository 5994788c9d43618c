#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "creep/path_engine.hpp"
#include "creep/process_model.hpp"

namespace creep {

enum class OutcomeKind { Creep, JumpOver, JumpOntoGraph, JumpFromGraph, Killed, Horizon };
inline constexpr int kOutcomeKinds = 6;

std::string to_string(OutcomeKind k);

struct CrossingOutcome {
  OutcomeKind kind = OutcomeKind::Horizon;
  double time = kInf;
  double y = 0.0;  // Y_S (or the other coordinate for level passages)
  double z = 0.0;  // Z_S
  double y_pre = 0.0;
  double z_pre = 0.0;
  double residual = 0.0;  // g at the reported crossing, Creep only
  bool at_extremum = false;  // grid/conditioned variants
};

struct DetectTolerances {
  double root = 1e-12;
  double graph = 1e-9;
};

/// Incremental first passage of (Y, Z) above the graph of a monotone curve.
/// Feed drift segments with advance_to and jumps with jump; each returns an
/// outcome once the passage is decided.
class CurveCrossingDetector {
 public:
  CurveCrossingDetector(const Curve& curve, Drifts drifts, DetectTolerances tol = {});

  std::optional<CrossingOutcome> advance_to(double t);
  std::optional<CrossingOutcome> jump(double dy, double dz);
  /// Outcome when the path stops undecided at its end time.
  CrossingOutcome stop(double t, bool killed) const;

  double y() const { return dy_ * t_ + sum_y_; }
  double z() const { return dz_ * t_ + sum_z_; }

 private:
  double g_at(double t) const;
  CrossingOutcome creep_at(double t, double g) const;

  const Curve& curve_;
  double dy_, dz_;
  DetectTolerances tol_;
  bool monotone_segments_;
  double t_ = 0.0;
  double sum_y_ = 0.0, sum_z_ = 0.0;
};

/// First passage through a nonincreasing curve.
CrossingOutcome first_passage_curve(const JumpPath& path, const Curve& curve, DetectTolerances tol = {});

/// First passage through a nondecreasing curve with f(0+) > 0.
CrossingOutcome nondecreasing_curve_passage(const JumpPath& path, const Curve& curve,
                                            DetectTolerances tol = {});

/// Streaming equivalents: the path is generated only until the passage.
CrossingOutcome first_passage_curve(BivariateStream& stream, const Curve& curve, DetectTolerances tol = {});
CrossingOutcome first_passage_curve(BvStream& stream, double drift, const Curve& curve,
                                    DetectTolerances tol = {});

enum class Coordinate { Y, Z };

/// Passage of one coordinate above a level. The outcome's y field carries the
/// other coordinate at the passage time and z the passed coordinate.
CrossingOutcome first_passage_level(const JumpPath& path, Coordinate c, double level,
                                    DetectTolerances tol = {});
CrossingOutcome first_passage_level(BivariateStream& stream, Coordinate c, double level,
                                    DetectTolerances tol = {});

/// Grid Brownian motion against a nonincreasing curve: first grid time with
/// X > f, flagged at_extremum when the running maximum is within delta.
CrossingOutcome supremum_creep_bm_grid(const GridPath& path, const Curve& curve, double delta);

/// Streaming form of the grid rule; push successive grid values.
class GridSupremumDetector {
 public:
  GridSupremumDetector(const Curve& curve, double dt, double delta);
  std::optional<CrossingOutcome> push(double x);
  std::size_t steps() const { return k_; }

 private:
  const Curve& curve_;
  double dt_, delta_;
  std::size_t k_ = 0;
  double max_ = 0.0;
};

enum class OuDirection { Up, Down };

/// Passage of an OU skeleton through x != 0 starting from the skeleton's z0.
CrossingOutcome ou_first_passage(const OuSkeleton& skeleton, double x, OuDirection dir,
                                 DetectTolerances tol = {});
/// Streaming direct route.
CrossingOutcome ou_first_passage(const OuSpec& spec, double x, double horizon, SeedPolicy seed,
                                 std::uint64_t k, std::uint32_t substream = kStreamZ,
                                 DetectTolerances tol = {});

/// Time-changed route: the driving process in s-time against
/// f(s) = x (alpha gamma s + 1)^{1/alpha} - z. Times in the outcome are
/// mapped back to OU time.
CrossingOutcome ou_first_passage_via_curve(const OuSpec& spec, double x, double horizon, SeedPolicy seed,
                                           std::uint64_t k, std::uint32_t substream = kStreamZ,
                                           DetectTolerances tol = {});

}  // namespace creep
