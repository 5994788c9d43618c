#include "creep/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/bessel.hpp>

namespace creep {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// exp(-lambda t - theta s) sqrt(lambda t theta / s) I_1(2 sqrt(lambda t theta s)):
// absolutely continuous part of a compound Poisson sum with Exp(theta) jumps.
double cp_exp_sum_density(double t, double s, double lambda, double theta) {
  if (!(s > 0) || !(t > 0)) return 0.0;
  const double arg = 2.0 * std::sqrt(lambda * t * theta * s);
  const double pre = std::sqrt(lambda * t * theta / s);
  if (arg < 600.0)
    return std::exp(-lambda * t - theta * s) * pre * boost::math::cyl_bessel_i(1, arg);
  // I_1(z) ~ e^z / sqrt(2 pi z)
  return pre * std::exp(arg - lambda * t - theta * s) / std::sqrt(2.0 * kPi * arg);
}

// t* with dz t = f(dy t), or nullopt when the drift line never meets the curve.
std::optional<double> drift_line_meets_curve(const Curve& f, double dy, double dz) {
  auto g = [&](double t) { return dz * t - f(dy * t); };
  double hi = 1.0;
  if (g(0.0) >= 0.0) return 0.0;
  int guard = 0;
  while (!(g(hi) >= 0.0)) {
    hi *= 2.0;
    if (++guard > 1100) return std::nullopt;
  }
  double lo = hi > 1.0 ? hi / 2.0 : 0.0;
  for (int i = 0; i < 200 && hi - lo > 0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    (g(mid) >= 0.0 ? hi : lo) = mid;
  }
  return hi;
}

FormulaResult finish(double value, double err, int panels, std::string id, std::string anchor) {
  FormulaResult r;
  r.value = value;
  r.abs_error = err;
  r.panels = panels;
  r.formula_id = std::move(id);
  r.anchor = std::move(anchor);
  return r;
}

// Integrates g over (u0, u1), split at the curve breakpoints inside.
QuadResult integrate_split(const Integrand& g, double u0, double u1, std::vector<double> cuts,
                           const QuadOptions& opt, const std::string& label) {
  std::vector<double> pts{u0};
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts)
    if (c > u0 && c < u1) pts.push_back(c);
  pts.push_back(u1);
  QuadResult total;
  total.converged = true;
  QuadOptions piece = opt;
  piece.abs_tol = opt.abs_tol / static_cast<double>(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const QuadResult r = integrate_or_throw(g, pts[i], pts[i + 1], piece, label);
    total.value += r.value;
    total.abs_error += r.abs_error;
    total.panels += r.panels;
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------

double stable_half_density(double t, double x) {
  if (!(x > 0)) return 0.0;
  return t / std::sqrt(2.0 * kPi * x * x * x) * std::exp(-t * t / (2.0 * x));
}

double bm_ladder_renewal_density(double t, double x, double mu) {
  if (!(x > 0) || !(t > 0)) return 0.0;
  const double d = x - mu * t;
  return x / std::sqrt(kPi * t * t * t) * std::exp(-d * d / (2.0 * t));
}

double gamma_density(double t, double x, double shape, double rate) {
  if (!(x > 0) || !(t > 0)) return 0.0;
  const double k = shape * t;
  return std::exp(k * std::log(rate) + (k - 1.0) * std::log(x) - rate * x - std::lgamma(k));
}

DensityFn marginal_density(const SubordinatorSpec& spec) {
  const double d = spec.drift, q = spec.kill_rate;
  DensityFn out;
  out.lower_support_slope = d;
  std::function<double(double, double)> base;
  std::visit(overloaded{
                 [&](const NoJumps&) {
                   throw FormulaInapplicable(
                       "formula-inapplicable: pure drift has no density (renewal measure singular)");
                 },
                 [&](const StableSubordinator& s) {
                   if (s.alpha != 0.5)
                     throw FormulaInapplicable("formula-inapplicable: closed-form density needs index 1/2");
                   const double kappa = s.scale * std::sqrt(2.0 * kPi);
                   base = [kappa](double t, double x) { return stable_half_density(kappa * t, x); };
                   out.name = "stable-1/2";
                 },
                 [&](const GammaSubordinator& g) {
                   const double a = g.shape, b = g.rate;
                   base = [a, b](double t, double x) { return gamma_density(t, x, a, b); };
                   out.log_shifted = [a, b, q](double t, double ls) {
                     const double k = a * t;
                     return k * std::log(b) + (k - 1.0) * ls - b * std::exp(ls) - std::lgamma(k) - q * t;
                   };
                   out.name = "gamma";
                 },
                 [&](const CompoundPoisson& c) {
                   const auto* e = std::get_if<ExponentialJumps>(&c.sizes);
                   if (!e)
                     throw FormulaInapplicable(
                         "formula-inapplicable: closed-form density needs exponential jumps");
                   const double lambda = c.rate, theta = 1.0 / e->mean;
                   base = [lambda, theta](double t, double x) {
                     return cp_exp_sum_density(t, x, lambda, theta);
                   };
                   out.atom_rate = lambda + q;
                   out.name = "compound-poisson-exponential";
                 },
                 [&](const TwoSidedStable&) {
                   throw FormulaInapplicable("formula-inapplicable: two-sided law is not a subordinator");
                 },
             },
             spec.jumps);
  if (d > 0) out.name += "+drift";
  out.shifted = [base, q](double t, double s) {
    if (!(s > 0) || !(t > 0)) return 0.0;
    const double v = base(t, s);
    return q > 0 ? v * std::exp(-q * t) : v;
  };
  out.eval = [shifted = out.shifted, d](double t, double x) { return shifted(t, x - d * t); };
  return out;
}

// ---------------------------------------------------------------------------

std::complex<double> stable_half_char_exponent(double xi) {
  const double r = std::sqrt(std::abs(xi));
  return {r, xi >= 0 ? -r : r};
}

InversionResult fourier_invert_density(const CharExponent& psi, double t, double x, double abs_tol) {
  auto modulus = [&](double xi) { return std::exp(-t * psi(xi).real()); };
  // tail probe
  bool integrable = false;
  for (int k = 0; k <= 14; ++k) {
    const double xi = std::pow(10.0, k);
    if (modulus(xi) * xi < 1e-20) {
      integrable = true;
      break;
    }
  }
  if (!integrable) throw std::domain_error("not in L1 at this t");

  double xi_max = 1.0;
  while (modulus(xi_max) * xi_max > 1e-18) xi_max *= 2.0;

  auto integrand = [&](double xi) {
    const std::complex<double> e = std::exp(std::complex<double>(0.0, -x * xi) - t * psi(xi));
    return e.real();
  };
  InversionResult out;
  QuadOptions opt;
  opt.max_panels = 20000;
  double lo = 0.0, hi = 1.0;
  int pieces = 0;
  while (lo < xi_max) ++pieces, lo = hi, hi *= 2.0;
  opt.abs_tol = abs_tol * kPi / pieces;
  lo = 0.0;
  hi = 1.0;
  while (lo < xi_max) {
    const QuadResult r = integrate_gk(integrand, lo, hi, opt);
    out.value += r.value;
    out.abs_error += r.abs_error;
    out.panels += r.panels;
    lo = hi;
    hi *= 2.0;
  }
  out.value /= kPi;
  out.abs_error /= kPi;
  return out;
}

// ---------------------------------------------------------------------------

RenewalDensity renewal_from_product(const DensityFn& py, const DensityFn& pz, double t0, double t1) {
  if (py.atom_rate || pz.atom_rate)
    throw FormulaInapplicable("formula-inapplicable: atoms in independent coordinates are not supported");
  RenewalDensity v;
  v.construction = "time integral of " + py.name + " x " + pz.name;
  v.t0 = t0;
  v.t1 = t1;
  const double sy = py.lower_support_slope, sz = pz.lower_support_slope;
  v.eval = [py, pz, sy, sz, t0, t1](double y, double z) {
    if (!(y > 0) || !(z > 0)) return 0.0;
    const double ty = sy > 0 ? y / sy : kInf;
    const double tz = sz > 0 ? z / sz : kInf;
    const double hi = std::min({t1, ty, tz});
    if (!(hi > t0)) return 0.0;
    if (!std::isfinite(hi)) {
      const QuadResult r = integrate(
          [&](double t) { return py.eval(t, y) * pz.eval(t, z); }, t0, hi, QuadOptions{1e-13, 1e-11, 2000});
      return r.value;
    }
    // the binding support edge is evaluated from the exact distance to hi
    const bool y_binds = hi == ty, z_binds = hi == tz && !y_binds;
    const DensityFn& edge = y_binds ? py : pz;
    if ((y_binds || z_binds) && edge.log_shifted) {
      // t = hi - w e^{-x}: mass piled against the edge lives at large x
      const double w = hi - t0;
      const double lw = std::log(w), ly = std::log(sy * w), lz = std::log(sz * w);
      auto g = [&](double x) {
        const double t = hi - w * std::exp(-x);
        if (!(t > 0)) return 0.0;
        double lf = lw - x;
        if (y_binds) {
          lf += py.log_shifted(t, ly - x);
          const double other = pz.shifted(t, z - sz * t);
          if (!(other > 0)) return 0.0;
          return std::exp(lf) * other;
        }
        lf += pz.log_shifted(t, lz - x);
        const double other = py.shifted(t, y - sy * t);
        if (!(other > 0)) return 0.0;
        return std::exp(lf) * other;
      };
      return integrate(g, 0.0, kInf, QuadOptions{1e-14, 1e-11, 4000}).value;
    }
    const QuadResult r = integrate_tanh_sinh(
        [&](double t, double, double to_b) {
          const double ys = y_binds ? sy * to_b : y - sy * t;
          const double zs = z_binds ? sz * to_b : z - sz * t;
          return py.shifted(t, ys) * pz.shifted(t, zs);
        },
        t0, hi, 1e-12);
    return r.value;
  };
  return v;
}

RenewalDensity renewal_density(const BivariateSubordinatorSpec& spec, double t0, double t1) {
  if (is_pure_drift(spec))
    throw FormulaInapplicable("formula-inapplicable: pure-drift spec, renewal measure not absolutely continuous");
  const double q = spec.kill_rate;
  return std::visit(
      overloaded{
          [&](const Independent& c) {
            SubordinatorSpec y = c.y, z = c.z;
            y.kill_rate += q;
            return renewal_from_product(marginal_density(y), marginal_density(z), t0, t1);
          },
          [&](const TimeAndProcess& c) {
            SubordinatorSpec z = c.z;
            z.kill_rate += q;
            DensityFn pz = marginal_density(z);
            RenewalDensity v;
            v.construction = "time and " + pz.name;
            v.t0 = t0;
            v.t1 = t1;
            v.eval = [pz, t0, t1](double y, double zz) {
              if (!(y > t0 && y < t1)) return 0.0;
              return pz.eval(y, zz);
            };
            if (pz.atom_rate) v.atom = RenewalDensity::DriftAtom{1.0, z.drift, *pz.atom_rate};
            return v;
          },
          [&](const BmLadder& c) {
            RenewalDensity v;
            v.construction = "brownian ladder closed form";
            v.t0 = t0;
            v.t1 = t1;
            const double mu = c.mu;
            v.eval = [mu, q, t0, t1](double tau, double h) {
              const double s = h / kBmLadderHeightDrift;  // local time at which H = h
              if (!(s > t0 && s < t1)) return 0.0;
              const double val = bm_ladder_renewal_density(tau, h, mu);
              return q > 0 ? val * std::exp(-q * s) : val;
            };
            return v;
          },
          [](const CustomJoint&) -> RenewalDensity {
            throw FormulaInapplicable("formula-inapplicable: custom joint law has no renewal density");
          },
      },
      spec.coupling);
}

// ---------------------------------------------------------------------------

FormulaResult creep_formula_bivariate(const RenewalDensity& v, const Curve& curve, double d_y,
                                      double d_z, double u0, double u1, const FormulaOptions& opt) {
  if (curve.direction() != Direction::NonIncreasing)
    throw std::invalid_argument("creep formula needs a nonincreasing curve");
  if (!(u0 >= 0 && u1 > u0)) throw std::invalid_argument("creep formula needs 0 <= u0 < u1");
  QuadOptions q{opt.abs_tol / 2.0, 0.0, opt.max_panels};
  const auto cuts = curve.breakpoints();
  double value = 0.0, err = 0.0;
  int panels = 0;

  if (d_z != 0.0) {
    const QuadResult a = integrate_split(
        [&](double u) {
          const double f = curve(u);
          return std::isfinite(f) ? v.eval(u, f) : 0.0;
        },
        u0, u1, cuts, q, "creep formula (d_Z term)");
    value += d_z * a.value;
    err += std::abs(d_z) * a.abs_error;
    panels += a.panels;
  }
  const bool flat = std::holds_alternative<ConstantCurve>(curve.shape());
  if (d_y != 0.0 && !flat) {
    QuadResult b;
    if (curve.has_derivative()) {
      b = integrate_split(
          [&](double u) {
            const double f = curve(u);
            if (!std::isfinite(f)) return 0.0;
            const double val = v.eval(u, f);
            if (val == 0.0) return 0.0;
            return -val * curve.derivative(u);
          },
          u0, u1, cuts, q, "creep formula (d_Y term)");
    } else if (curve.has_inverse()) {
      // monotone substitution z = f(u)
      const double z_hi = curve(u0), z_lo = std::max(0.0, std::isfinite(u1) ? curve(u1) : curve.at_end());
      b = integrate_split(
          [&](double z) { return v.eval(curve.inverse(z), z); }, z_lo, z_hi, {}, q,
          "creep formula (d_Y term, inverted)");
    } else {
      throw FormulaInapplicable("formula-inapplicable: curve has neither derivative nor inverse");
    }
    value += d_y * b.value;
    err += std::abs(d_y) * b.abs_error;
    panels += b.panels;
  }
  if (v.atom) {
    const auto& at = *v.atom;
    if (const auto ts = drift_line_meets_curve(curve, at.dy, at.dz)) {
      const double u = at.dy * *ts;
      if (*ts > v.t0 && *ts < v.t1 && u >= u0 && u < u1) value += std::exp(-at.rate * *ts);
    }
  }
  return finish(value, err, panels, "bivariate_curve", "creeping through the graph of a nonincreasing curve");
}

FormulaResult creep_formula_inverted(const RenewalDensity& v, const Curve& curve, double d_y,
                                     double d_z, double u0, double u1, const FormulaOptions& opt) {
  if (curve.direction() != Direction::NonIncreasing || !curve.has_inverse() || !curve.has_derivative())
    throw std::invalid_argument("inverted form needs a strictly decreasing curve with inverse and derivative");
  if (v.atom) throw FormulaInapplicable("formula-inapplicable: inverted form does not handle atoms");
  QuadOptions q{opt.abs_tol / 2.0, 0.0, opt.max_panels};
  const double z_hi = curve(u0);
  const double z_lo = std::max(0.0, std::isfinite(u1) ? curve(u1) : curve.at_end());
  double value = 0.0, err = 0.0;
  int panels = 0;
  if (d_y != 0.0) {
    const QuadResult a = integrate_or_throw(
        [&](double z) { return v.eval(curve.inverse(z), z); }, z_lo, z_hi, q, "inverted form (d_Y term)");
    value += d_y * a.value;
    err += std::abs(d_y) * a.abs_error;
    panels += a.panels;
  }
  if (d_z != 0.0) {
    const QuadResult b = integrate_or_throw(
        [&](double z) {
          const double u = curve.inverse(z);
          const double val = v.eval(u, z);
          if (val == 0.0) return 0.0;
          const double fp = curve.derivative(u);
          if (!std::isfinite(fp) || fp == 0.0) return 0.0;
          return -val / fp;
        },
        z_lo, z_hi, q, "inverted form (d_Z term)");
    value += d_z * b.value;
    err += std::abs(d_z) * b.abs_error;
    panels += b.panels;
  }
  return finish(value, err, panels, "bivariate_curve_inverted",
                "creeping through the graph, integrated along the value axis");
}

FormulaResult creep_probability(const BivariateSubordinatorSpec& spec, const Curve& curve, double u0,
                                double u1, const FormulaOptions& opt) {
  const Drifts d = drifts(spec);
  return creep_formula_bivariate(renewal_density(spec), curve, d.y, d.z, u0, u1, opt);
}

FormulaResult creep_formula_time_windowed(const BivariateSubordinatorSpec& spec, const Curve& curve,
                                          double u0, double u1, double t0, double t1,
                                          const FormulaOptions& opt) {
  const Drifts d = drifts(spec);
  FormulaResult r =
      creep_formula_bivariate(renewal_density(spec, t0, t1), curve, d.y, d.z, u0, u1, opt);
  r.formula_id = "bivariate_curve_time_window";
  r.anchor = "creeping through the graph with the subordinator time restricted to a window";
  return r;
}

FormulaResult creep_formula_norm(const RenewalDensity& v, double a, double d_y, double d_z,
                                 const FormulaOptions& opt) {
  if (!(a > 0)) throw std::invalid_argument("norm formula needs a > 0");
  QuadOptions q{opt.abs_tol / 2.0, 0.0, opt.max_panels};
  double value = 0.0, err = 0.0;
  int panels = 0;
  if (d_z != 0.0) {
    const QuadResult r = integrate_or_throw(
        [&](double u) { return v.eval(u, std::sqrt((a - u) * (a + u))); }, 0.0, a, q, "norm formula (d_Z term)");
    value += d_z * r.value;
    err += std::abs(d_z) * r.abs_error;
    panels += r.panels;
  }
  if (d_y != 0.0) {
    const QuadResult r = integrate_or_throw(
        [&](double th) { return a * std::sin(th) * v.eval(a * std::sin(th), a * std::cos(th)); }, 0.0,
        0.5 * kPi, q, "norm formula (d_Y term)");
    value += d_y * r.value;
    err += std::abs(d_y) * r.abs_error;
    panels += r.panels;
  }
  return finish(value, err, panels, "norm_circle", "creeping through a circle of radius a");
}

FormulaResult creep_formula_norm(const BivariateSubordinatorSpec& spec, double a, const FormulaOptions& opt) {
  if (is_pure_drift(spec))
    throw FormulaInapplicable("formula-inapplicable: pure-drift spec, renewal measure not absolutely continuous");
  const Drifts d = drifts(spec);
  if (d.y == 0.0 && d.z == 0.0) return finish(0.0, 0.0, 0, "norm_circle", "creeping through a circle of radius a");
  return creep_formula_norm(renewal_density(spec), a, d.y, d.z, opt);
}

FormulaResult creep_upper_bound_nondecreasing(const BivariateSubordinatorSpec& spec, const Curve& curve,
                                              const FormulaOptions& opt) {
  if (curve.direction() != Direction::NonDecreasing)
    throw std::invalid_argument("upper bound applies to nondecreasing curves");
  const Drifts d = drifts(spec);
  if (d.z == 0.0) return finish(0.0, 0.0, 0, "nondecreasing_bound", "upper bound for nondecreasing curves");
  const RenewalDensity v = renewal_density(spec);
  const QuadResult r = integrate_or_throw(
      [&](double u) {
        const double f = curve(u);
        return std::isfinite(f) ? v.eval(u, f) : 0.0;
      },
      0.0, kInf, QuadOptions{opt.abs_tol, 0.0, opt.max_panels}, "nondecreasing upper bound");
  return finish(d.z * r.value, d.z * r.abs_error, r.panels, "nondecreasing_bound",
                "upper bound for nondecreasing curves");
}

// ---------------------------------------------------------------------------

double creep_time_cdf_stable_example(double t) {
  if (!(t > 0)) return 0.0;
  return std::erf(t * t / std::sqrt(2.0));
}

double creep_time_cdf_bm_example(double t) {
  if (!(t > 0)) return 0.0;
  return std::erfc(1.0 / std::sqrt(2.0 * t * t * t));
}

std::function<double(double)> cdf_from_density(std::function<double(double)> density) {
  return [density](double t) {
    if (!(t > 0)) return 0.0;
    return integrate(density, 0.0, t, QuadOptions{1e-12, 1e-12, 4000}).value;
  };
}

// ---------------------------------------------------------------------------

std::string to_string(VigonClass c) {
  switch (c) {
    case VigonClass::Converging: return "converging";
    case VigonClass::Diverging: return "diverging";
    case VigonClass::Inconclusive: return "inconclusive";
    case VigonClass::OutOfPrecondition: return "out-of-precondition";
  }
  return "inconclusive";
}

namespace {

VigonClass classify_trend(const std::vector<double>& partial) {
  if (partial.size() < 4) return VigonClass::Inconclusive;
  std::vector<double> inc;
  for (std::size_t k = 1; k < partial.size(); ++k) inc.push_back(partial[k] - partial[k - 1]);
  const std::size_t n = inc.size();
  if (inc[n - 1] == 0.0 && inc[n - 2] == 0.0) return VigonClass::Converging;
  double worst_ratio = 0.0;
  for (std::size_t k = n - 3; k + 1 < n; ++k) {
    if (inc[k] <= 0.0) return VigonClass::Inconclusive;
    worst_ratio = std::max(worst_ratio, inc[k + 1] / inc[k]);
  }
  if (worst_ratio < 0.7) return VigonClass::Converging;
  // increments ~ C k^-p
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!(inc[k] > 0)) continue;
    const double lx = std::log(static_cast<double>(k + 1)), ly = std::log(inc[k]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    ++m;
  }
  if (m < 3) return VigonClass::Inconclusive;
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  if (-slope <= 1.1) return VigonClass::Diverging;
  return VigonClass::Inconclusive;
}

// int_delta^1 x pi(dx) on one side, from the tail by parts
double bv_partial(const std::function<double(double)>& tail, double delta) {
  const QuadResult r = integrate([&](double x) { return tail(x); }, delta, 1.0, QuadOptions{1e-12, 1e-10, 4000});
  return delta * tail(delta) - tail(1.0) + r.value;
}

}  // namespace

VigonReport vigon_test(const LevyMeasureTails& pi, const std::vector<double>& delta_grid) {
  VigonReport rep;
  rep.deltas = delta_grid;
  if (delta_grid.size() <= 1) {
    rep.classification = VigonClass::Inconclusive;
    rep.note = "delta grid too short to show a trend";
    if (delta_grid.size() == 1) rep.partial_integrals.push_back(0.0);
  }
  for (std::size_t i = 1; i < delta_grid.size(); ++i)
    if (!(delta_grid[i] < delta_grid[i - 1])) throw std::invalid_argument("vigon_test: delta grid must decrease");

  // bounded-variation probe on each side
  std::vector<double> bp_pos{0.0}, bp_neg{0.0};
  for (double d : delta_grid) {
    bp_pos.push_back(pi.upper ? bv_partial(pi.upper, d) : 0.0);
    bp_neg.push_back(pi.lower ? bv_partial(pi.lower, d) : 0.0);
  }
  auto side_bv = [&](const std::vector<double>& p) {
    if (p.back() == 0.0) return true;
    return classify_trend(p) == VigonClass::Converging;
  };
  if (delta_grid.size() >= 3 && side_bv(bp_pos) && side_bv(bp_neg)) {
    rep.classification = VigonClass::OutOfPrecondition;
    rep.note = "bounded variation probe converges on both sides";
    return rep;
  }
  if (!pi.lower || !pi.upper) {
    rep.classification = VigonClass::OutOfPrecondition;
    rep.note = "both tails are required";
    return rep;
  }

  const auto& n = pi.lower;
  auto denom = [&](double x) {
    const QuadResult a = integrate(
        [&](double w) {
          const double r = x * std::exp(-w);
          return r * n(r) * r;
        },
        0.0, kInf, QuadOptions{1e-14, 1e-11, 4000});
    const QuadResult b = integrate(n, x, 1.0, QuadOptions{1e-14, 1e-11, 4000});
    return a.value + x * b.value;
  };
  auto integrand = [&](double x) {
    const double d = denom(x);
    return d > 0 ? x * pi.upper(x) / d : 0.0;
  };
  double acc = 0.0, prev = 1.0;
  for (double d : delta_grid) {
    if (d < prev) {
      // log substitution x = e^s
      const QuadResult r = integrate(
          [&](double s) {
            const double x = std::exp(s);
            return integrand(x) * x;
          },
          std::log(d), std::log(prev), QuadOptions{1e-10, 1e-9, 2000});
      acc += r.value;
    }
    rep.partial_integrals.push_back(acc);
    prev = d;
  }
  if (delta_grid.size() <= 1) return rep;
  std::vector<double> trend{0.0};
  trend.insert(trend.end(), rep.partial_integrals.begin(), rep.partial_integrals.end());
  rep.classification = classify_trend(trend);
  rep.note = "classification from the trend of partial integrals, not a proof";
  return rep;
}

}  // namespace creep
