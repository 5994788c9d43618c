#pragma once

// Declarative descriptions of the processes and curves consumed by the
// simulators and the analytic engine. Everything here is an immutable value
// type; curves carry their evaluation functions by value.

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace creep {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Jump laws

struct ExponentialJumps {
  double mean = 1.0;
};

struct UniformJumps {
  double lo = 0.0;
  double hi = 1.0;
};

using JumpDistribution = std::variant<ExponentialJumps, UniformJumps>;

struct NoJumps {};

/// Finite-activity jumps: Poisson(rate) epochs with i.i.d. sizes in (0, inf).
struct CompoundPoisson {
  double rate = 1.0;
  JumpDistribution sizes = ExponentialJumps{};
};

/// Levy density scale * x^(-1-alpha) on x > 0, jumps below eps discarded.
struct StableSubordinator {
  double alpha = 0.5;
  double scale = 1.0;
  double eps = 1e-4;
};

/// Levy density shape * x^(-1) * exp(-rate x), jumps below eps discarded.
struct GammaSubordinator {
  double shape = 1.0;
  double rate = 1.0;
  double eps = 1e-4;
};

/// Levy density scale_pos * x^(-1-alpha) on x > 0 and
/// scale_neg * |x|^(-1-alpha) on x < 0; |jumps| below eps discarded.
struct TwoSidedStable {
  double alpha = 0.5;
  double scale_pos = 1.0;
  double scale_neg = 1.0;
  double eps = 1e-4;
};

using JumpLaw = std::variant<NoJumps, CompoundPoisson, StableSubordinator,
                             GammaSubordinator, TwoSidedStable>;

/// Scale of the stable-1/2 subordinator with Laplace exponent sqrt(2 lambda);
/// its marginal density is t / sqrt(2 pi x^3) exp(-t^2 / 2x).
inline constexpr double kStableHalfScaleSqrt2Lambda = 0.398942280401432677940;  // 1/sqrt(2 pi)
/// Scale of the stable-1/2 subordinator with Laplace exponent sqrt(lambda),
/// the ladder time process of standard Brownian motion under unit-drift local time scaling.
inline constexpr double kStableHalfScaleSqrtLambda = 0.282094791773878143474;  // 1/(2 sqrt(pi))
/// Drift of the ladder height process of Brownian motion in the local time
/// normalisation used throughout (E int e^-t dL_t = 1).
inline constexpr double kBmLadderHeightDrift = 0.707106781186547524401;  // 1/sqrt(2)

bool is_infinite_activity(const JumpLaw& law);
bool has_jumps(const JumpLaw& law);
/// Truncation level carried by the law; 0 for compound Poisson and NoJumps.
double truncation(const JumpLaw& law);

/// nu((eps, inf)) (both signs for TwoSidedStable). Throws std::invalid_argument
/// for NoJumps or for a non-positive truncation on an infinite-activity kind.
double truncated_rate(const JumpLaw& law);

/// Expected absolute mass of the discarded jumps per unit time,
/// int_0^eps |x| nu(dx). Zero for finite-activity laws.
double small_jump_mass(const JumpLaw& law);

/// Laplace exponent phi(lambda) of the untruncated law (subordinator kinds).
double laplace_exponent(const JumpLaw& law, double lambda);

// ---------------------------------------------------------------------------
// Processes

struct SubordinatorSpec {
  double drift = 0.0;
  JumpLaw jumps = NoJumps{};
  double kill_rate = 0.0;
  bool allow_degenerate = false;
};

struct Independent {
  SubordinatorSpec y;
  SubordinatorSpec z;
};

/// (Y, Z) = (t, X_t); Y has unit drift.
struct TimeAndProcess {
  SubordinatorSpec z;
};

/// Ladder process (tau, H) of Brownian motion with drift mu. H has drift
/// 1/sqrt(2); tau is the first-passage subordinator of the level H, i.e. a
/// stable-1/2 law (exponent sqrt(lambda)) exponentially tilted by mu^2/2 and
/// killed at rate sqrt(2)|mu| when mu < 0. Small tau-jumps below eps are dropped.
struct BmLadder {
  double mu = 0.0;
  double eps = 1e-6;
};

/// User supplied joint jump law: Poisson(rate) epochs with sizes drawn from
/// `sampler(u1, u2, u3)` given three independent uniforms on (0,1).
struct CustomJoint {
  std::string name;
  double drift_y = 0.0;
  double drift_z = 0.0;
  double rate = 0.0;
  std::function<std::pair<double, double>(double, double, double)> sampler;
  double small_jump_mass = 0.0;
};

using Coupling = std::variant<Independent, TimeAndProcess, BmLadder, CustomJoint>;

struct BivariateSubordinatorSpec {
  Coupling coupling = TimeAndProcess{};
  double kill_rate = 0.0;
};

struct Drifts {
  double y = 0.0;
  double z = 0.0;
};

Drifts drifts(const BivariateSubordinatorSpec& spec);
/// Total killing rate including the marginal kill rates.
double total_kill_rate(const BivariateSubordinatorSpec& spec);
/// Sum over both coordinates of int_0^eps x nu(dx).
double small_jump_mass(const BivariateSubordinatorSpec& spec);
/// True when neither coordinate has jumps (renewal measure singular).
bool is_pure_drift(const BivariateSubordinatorSpec& spec);
/// True when every jump law involved is compound Poisson (or absent).
bool is_compound_poisson(const BivariateSubordinatorSpec& spec);

enum class JumpSign { Up, Down };

/// Real bounded-variation process X_t = drift * t +/- jumps.
/// `sign` applies to one-sided laws; TwoSidedStable is already signed.
struct BvProcessSpec {
  double drift = 0.0;
  JumpLaw jumps = NoJumps{};
  JumpSign sign = JumpSign::Up;
};

/// Ornstein-Uhlenbeck process Z_t = z + X_t - gamma int_0^t Z_s ds driven by
/// a two-sided stable process with index in (0, 1).
struct OuSpec {
  double gamma = 1.0;
  double z = 0.0;
  TwoSidedStable noise;
};

// ---------------------------------------------------------------------------
// Curves

enum class Direction { NonIncreasing, NonDecreasing };

struct ConstantCurve { double x = 1.0; };
/// a * (t + shift)^(-p)
struct PowerCurve { double a = 1.0; double p = 1.0; double shift = 0.0; };
/// a - b t (not clamped; may become negative)
struct AffineCurve { double a = 1.0; double b = 1.0; };
/// sqrt(a^2 - y^2) on [0, a], continued by -sqrt(y^2 - a^2) beyond a.
struct CircleCurve { double a = 1.0; };
/// x (alpha gamma s + 1)^(1/alpha) - z
struct OuCurve { double x = 0.5; double alpha = 0.5; double gamma = 1.0; double z = 0.0; };
/// Piecewise linear through (t_i, f_i), flat outside the knots.
struct TabulatedCurve { std::vector<double> t; std::vector<double> f; };
struct CustomCurve { std::string name; };

using CurveShape = std::variant<ConstantCurve, PowerCurve, AffineCurve, CircleCurve,
                                OuCurve, TabulatedCurve, CustomCurve>;

/// A continuous monotone function. Construction spot-checks monotonicity in
/// the declared direction and throws std::invalid_argument otherwise.
class Curve {
 public:
  using Fn = std::function<double(double)>;

  Curve(CurveShape shape, Direction direction, Fn eval, std::optional<Fn> derivative,
        std::optional<Fn> inverse, double t_lo = 0.0, double t_hi = kInf);

  static Curve constant(double x);
  static Curve power(double a, double p, double shift = 0.0);
  static Curve affine(double a, double b);
  static Curve circle(double a);
  static Curve ou(double x, double alpha, double gamma, double z);
  static Curve tabulated(std::vector<double> t, std::vector<double> f);
  static Curve from_shape(const CurveShape& shape);

  /// Throws std::domain_error naming t when the evaluation is NaN.
  double operator()(double t) const;
  Direction direction() const { return direction_; }
  bool has_derivative() const { return derivative_.has_value(); }
  bool has_inverse() const { return inverse_.has_value(); }
  double derivative(double t) const;
  double inverse(double value) const;
  double t_lo() const { return t_lo_; }
  double t_hi() const { return t_hi_; }
  double at_start() const;  // f(0+)
  double at_end() const;    // f(inf)
  const CurveShape& shape() const { return shape_; }
  /// Is the evaluation strictly monotone (so the inverse is single valued)?
  bool strictly_monotone() const;

  /// Knot abscissae where the derivative jumps (tabulated curves only).
  std::vector<double> breakpoints() const;

 private:
  CurveShape shape_;
  Direction direction_;
  Fn eval_;
  std::optional<Fn> derivative_;
  std::optional<Fn> inverse_;
  double t_lo_;
  double t_hi_;
};

// ---------------------------------------------------------------------------
// Validation

using Violations = std::vector<std::string>;

Violations validate_spec(const JumpLaw& law);
Violations validate_spec(const SubordinatorSpec& spec);
Violations validate_spec(const BivariateSubordinatorSpec& spec);
Violations validate_spec(const BvProcessSpec& spec);
Violations validate_spec(const OuSpec& spec);
Violations validate_spec(const Curve& curve);

}  // namespace creep
