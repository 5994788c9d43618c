#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace creep {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int panels = 0;
  bool converged = false;
};

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_panels = 4000;
};

/// Thrown when an integral does not reach its tolerance; carries the best
/// estimate and its error bound.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const QuadResult& partial() const { return partial_; }

 private:
  QuadResult partial_;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (10/21) on a finite interval.
QuadResult integrate_gk(const Integrand& f, double a, double b, const QuadOptions& opt = {});

/// As integrate_gk; b may be +inf (mapped by t = a + s/(1-s)). Before the
/// mapped integral is trusted the integrand is probed for decay.
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opt = {});

/// Same as integrate, throwing QuadratureError when not converged.
QuadResult integrate_or_throw(const Integrand& f, double a, double b, const QuadOptions& opt,
                              const std::string& label);

/// Double-exponential rule on (a, b) for integrands singular at the ends.
/// The callback receives x together with x - a and b - x evaluated without
/// cancellation.
using EndpointIntegrand = std::function<double(double x, double from_a, double to_b)>;
QuadResult integrate_tanh_sinh(const EndpointIntegrand& f, double a, double b, double tol = 1e-12,
                               int max_level = 9);

}  // namespace creep
