#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "creep/process_model.hpp"
#include "creep/rng.hpp"

namespace creep {

struct SeedPolicy {
  std::uint64_t master_seed = 0;
};

struct JumpEvent {
  double t = 0.0;
  double dy = 0.0;
  double dz = 0.0;
};

/// Realised path: drift segments separated by jump events. Coordinates are
/// reconstructed as drift * t + (sum of jumps up to t), always summed in
/// event order so every consumer sees the same floating-point values.
struct JumpPath {
  std::vector<JumpEvent> events;
  double drift_y = 0.0;
  double drift_z = 0.0;
  double lifetime = kInf;
  double horizon = kInf;

  double end_time() const { return lifetime < horizon ? lifetime : horizon; }
  double y_at(double t) const;
  double z_at(double t) const;
};

/// Draws jump sizes of a single law. Sizes are signed only for TwoSidedStable.
class JumpSampler {
 public:
  explicit JumpSampler(const JumpLaw& law);
  double rate() const { return rate_; }
  double sample(Stream& s) const;

 private:
  JumpLaw law_;
  double rate_ = 0.0;
  // gamma mixture: split point, and probability of the lower piece
  double gamma_split_ = 0.0;
  double gamma_lower_weight_ = 0.0;
  // two-sided: probability of a positive jump
  double p_pos_ = 1.0;
};

/// Poisson stream of jumps of one law, optionally thinned by an acceptance
/// probability exp(-tilt * size).
class JumpSource {
 public:
  JumpSource(const JumpLaw& law, Stream stream, double tilt = 0.0);
  bool active() const { return active_; }
  double next_time() const { return next_t_; }
  double next_size() const { return next_size_; }
  void advance();

 private:
  JumpSampler sampler_;
  Stream stream_;
  double tilt_;
  bool active_;
  double next_t_ = kInf;
  double next_size_ = 0.0;
};

/// Incremental generator of a bivariate subordinator path. Emits the same
/// events, in the same order, as sample_bivariate_path.
class BivariateStream {
 public:
  BivariateStream(const BivariateSubordinatorSpec& spec, double horizon, SeedPolicy seed,
                  std::uint64_t k);

  /// Next event before min(lifetime, horizon); false when there is none.
  bool next(JumpEvent& e);
  double lifetime() const { return lifetime_; }
  double horizon() const { return horizon_; }
  Drifts drifts() const { return drifts_; }

 private:
  std::optional<JumpSource> y_;
  std::optional<JumpSource> z_;
  std::optional<Stream> joint_;
  const CustomJoint* custom_ = nullptr;
  double joint_next_ = kInf;
  Drifts drifts_;
  double lifetime_ = kInf;
  double horizon_;
};

JumpPath sample_bivariate_path(const BivariateSubordinatorSpec& spec, double horizon, SeedPolicy seed,
                               std::uint64_t k);

/// Path of X_t = drift t + signed jumps, encoded as (Y, Z) = (t, X_t).
class BvStream {
 public:
  BvStream(const BvProcessSpec& spec, double horizon, SeedPolicy seed, std::uint64_t k,
           std::uint32_t substream = kStreamZ);
  bool next(JumpEvent& e);
  double horizon() const { return horizon_; }

 private:
  JumpSource src_;
  double sign_;
  double horizon_;
};

JumpPath sample_bv_path(const BvProcessSpec& spec, double horizon, SeedPolicy seed, std::uint64_t k);

struct GridPath {
  double dt = 0.0;
  std::vector<double> values;       // X_{k dt}, values[0] = 0
  std::vector<double> running_max;  // prefix maxima
};

GridPath sample_bm_grid(double mu, double dt, double horizon, SeedPolicy seed, std::uint64_t k);

/// Incremental Brownian grid generator: increments N(mu dt, dt).
class BmGridStream {
 public:
  BmGridStream(double mu, double dt, SeedPolicy seed, std::uint64_t k);
  double next_increment();
  double dt() const { return dt_; }

 private:
  Stream stream_;
  double mu_dt_;
  double sd_;
  double dt_;
};

struct OuJump {
  double t = 0.0;
  double before = 0.0;  // Z_{t-}
  double after = 0.0;   // Z_t
  double noise = 0.0;   // jump of the driving process, after - before
};

/// Between jumps Z follows Z_{t_i} exp(-gamma (t - t_i)).
struct OuSkeleton {
  double gamma = 1.0;
  double z0 = 0.0;
  double horizon = 0.0;
  std::vector<OuJump> jumps;

  double state_at(double t) const;
};

/// Jump epochs and noise sizes of the OU driver in OU time.
class OuStream {
 public:
  OuStream(const OuSpec& spec, double horizon, SeedPolicy seed, std::uint64_t k,
           std::uint32_t substream = kStreamZ);
  /// Next (t, noise) pair before the horizon.
  bool next(double& t, double& noise);

 private:
  JumpSource src_;
  double horizon_;
};

OuSkeleton sample_ou_skeleton(const OuSpec& spec, double horizon, SeedPolicy seed, std::uint64_t k,
                              std::uint32_t substream = kStreamZ);

/// One CSV row per event: path_id,t,dy,dz
void write_events_csv_header(std::ostream& os);
void write_events_csv(std::ostream& os, std::uint64_t path_id, const JumpPath& path);

}  // namespace creep
