#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "creep/process_model.hpp"
#include "creep/quadrature.hpp"

namespace creep {

/// Thrown when a formula's hypotheses are not met by the supplied model.
class FormulaInapplicable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Closed-form densities

/// t / sqrt(2 pi x^3) exp(-t^2 / (2x)) for x > 0, else 0.
double stable_half_density(double t, double x);

/// x / sqrt(pi t^3) exp(-(x - mu t)^2 / (2t)) for x > 0, else 0. With the
/// ladder height drift 1/sqrt(2) this is the renewal density of (tau, H) for
/// Brownian motion with drift mu.
double bm_ladder_renewal_density(double t, double x, double mu = 0.0);

/// Gamma(shape * t, rate) density at x.
double gamma_density(double t, double x, double shape, double rate);

enum class Provenance { ClosedForm, FourierInverted, TimeIntegrated };

/// p_t(x) of a univariate subordinator (absolutely continuous part only).
struct DensityFn {
  std::function<double(double t, double x)> eval;
  /// Same density addressed by s = x - slope * t, for callers that know s exactly.
  std::function<double(double t, double s)> shifted;
  /// log p_t at s = x - slope * t given log s; set for laws whose density is
  /// unbounded at the support edge so callers can integrate on a log scale.
  std::function<double(double t, double log_s)> log_shifted;
  std::string name;
  Provenance provenance = Provenance::ClosedForm;
  double lower_support_slope = 0.0;  // p_t vanishes for x <= slope * t
  /// Compound Poisson laws carry an atom exp(-atom_rate t) at x = slope t.
  std::optional<double> atom_rate;
};

/// Closed-form density for drift + {stable-1/2, gamma, exponential compound
/// Poisson} with killing. Other jump laws raise FormulaInapplicable.
DensityFn marginal_density(const SubordinatorSpec& spec);

// ---------------------------------------------------------------------------
// Fourier inversion

using CharExponent = std::function<std::complex<double>(double)>;

struct InversionResult {
  double value = 0.0;
  double abs_error = 0.0;
  int panels = 0;
};

/// (2 pi)^-1 int e^{-i x xi} e^{-t Psi(xi)} d xi, assuming Psi(-xi) = conj(Psi(xi)).
/// Throws std::domain_error("not in L1 at this t") when the tail probe fails.
InversionResult fourier_invert_density(const CharExponent& psi, double t, double x,
                                       double abs_tol = 1e-11);

/// Characteristic exponent sqrt(|xi|) (1 - i sign xi) of the stable-1/2
/// subordinator with Laplace exponent sqrt(2 lambda).
std::complex<double> stable_half_char_exponent(double xi);

// ---------------------------------------------------------------------------
// Renewal densities

/// Renewal density v(y, z) restricted to subordinator times in (t0, t1).
struct RenewalDensity {
  std::function<double(double y, double z)> eval;
  std::string construction;
  /// Singular part exp(-rate t) dt carried by the line (y, z) = (dy t, dz t).
  struct DriftAtom {
    double dy = 0.0, dz = 0.0, rate = 0.0;
  };
  std::optional<DriftAtom> atom;
  double t0 = 0.0;
  double t1 = kInf;
};

/// Builds v for a bivariate spec, restricted to subordinator times (t0, t1).
/// Pure-drift specs raise FormulaInapplicable ("formula-inapplicable").
RenewalDensity renewal_density(const BivariateSubordinatorSpec& spec, double t0 = 0.0,
                               double t1 = kInf);

/// v(y, z) = int_{t0}^{t1} p^Y_t(y) p^Z_t(z) dt for independent coordinates.
RenewalDensity renewal_from_product(const DensityFn& py, const DensityFn& pz, double t0 = 0.0,
                                    double t1 = kInf);

// ---------------------------------------------------------------------------
// Creeping formulas

struct FormulaResult {
  double value = 0.0;
  double abs_error = 0.0;
  int panels = 0;
  std::string formula_id;
  std::string anchor;
};

struct FormulaOptions {
  double abs_tol = 1e-8;
  int max_panels = 4000;
};

/// d_Z int v(u, f(u)) du - d_Y int v(u, f(u)) df(u) over u in (u0, u1).
FormulaResult creep_formula_bivariate(const RenewalDensity& v, const Curve& curve, double d_y,
                                      double d_z, double u0 = 0.0, double u1 = kInf,
                                      const FormulaOptions& opt = {});

/// The same probability in the inverted form over z in (f(u1), f(u0)):
/// d_Y int v(f^-1(z), z) dz - d_Z int v(f^-1(z), z) d f^-1(z).
FormulaResult creep_formula_inverted(const RenewalDensity& v, const Curve& curve, double d_y,
                                     double d_z, double u0 = 0.0, double u1 = kInf,
                                     const FormulaOptions& opt = {});

/// Creeping restricted to u in (u0, u1) and subordinator time in (t0, t1).
FormulaResult creep_formula_time_windowed(const BivariateSubordinatorSpec& spec, const Curve& curve,
                                          double u0, double u1, double t0, double t1,
                                          const FormulaOptions& opt = {});

/// Circle of radius a: d_Z int_0^a v(u, sqrt(a^2-u^2)) du
///                    + d_Y int_0^{pi/2} a sin(th) v(a sin th, a cos th) d th.
FormulaResult creep_formula_norm(const RenewalDensity& v, double a, double d_y, double d_z,
                                 const FormulaOptions& opt = {});
FormulaResult creep_formula_norm(const BivariateSubordinatorSpec& spec, double a,
                                 const FormulaOptions& opt = {});

/// Convenience: creep_formula_bivariate with v and drifts taken from the spec.
FormulaResult creep_probability(const BivariateSubordinatorSpec& spec, const Curve& curve,
                                double u0 = 0.0, double u1 = kInf, const FormulaOptions& opt = {});

/// Upper bound d_Z int v(u, f(u)) du for nondecreasing curves.
FormulaResult creep_upper_bound_nondecreasing(const BivariateSubordinatorSpec& spec,
                                              const Curve& curve, const FormulaOptions& opt = {});

// ---------------------------------------------------------------------------
// Conditional creep-time laws of the worked examples

/// CDF of the creep time given creeping, stable-1/2 with f = 1/t^2: erf(t^2 / sqrt 2).
double creep_time_cdf_stable_example(double t);
/// CDF of the creep time given creeping at the supremum, Brownian motion with
/// f = 1/t: erfc(1 / sqrt(2 t^3)).
double creep_time_cdf_bm_example(double t);

/// CDF built by quadrature of a density on (0, t).
std::function<double(double)> cdf_from_density(std::function<double(double)> density);

// ---------------------------------------------------------------------------
// Vigon's integral test diagnostic

struct LevyMeasureTails {
  std::string name;
  /// pi([x, inf)) for x > 0
  std::function<double(double)> upper;
  /// pi((-inf, -r]) for r > 0
  std::function<double(double)> lower;
};

enum class VigonClass { Converging, Diverging, Inconclusive, OutOfPrecondition };

struct VigonReport {
  VigonClass classification = VigonClass::Inconclusive;
  std::vector<double> deltas;
  std::vector<double> partial_integrals;  // int_delta^1 for each delta
  std::string note;
};

VigonReport vigon_test(const LevyMeasureTails& pi, const std::vector<double>& delta_grid);

std::string to_string(VigonClass c);

}  // namespace creep
