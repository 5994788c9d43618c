#include "creep/process_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/expint.hpp>

namespace creep {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double e1(double x) { return boost::math::expint(1, x); }

}  // namespace

bool is_infinite_activity(const JumpLaw& law) {
  return std::holds_alternative<StableSubordinator>(law) ||
         std::holds_alternative<GammaSubordinator>(law) ||
         std::holds_alternative<TwoSidedStable>(law);
}

bool has_jumps(const JumpLaw& law) { return !std::holds_alternative<NoJumps>(law); }

double truncation(const JumpLaw& law) {
  return std::visit(overloaded{
                        [](const NoJumps&) { return 0.0; },
                        [](const CompoundPoisson&) { return 0.0; },
                        [](const StableSubordinator& s) { return s.eps; },
                        [](const GammaSubordinator& g) { return g.eps; },
                        [](const TwoSidedStable& s) { return s.eps; },
                    },
                    law);
}

double truncated_rate(const JumpLaw& law) {
  if (std::holds_alternative<NoJumps>(law))
    throw std::invalid_argument("truncated_rate: jump law is None");
  if (is_infinite_activity(law) && !(truncation(law) > 0.0))
    throw std::invalid_argument("truncated_rate: truncation must be > 0 for an infinite-activity law");
  return std::visit(overloaded{
                        [](const NoJumps&) { return 0.0; },
                        [](const CompoundPoisson& c) { return c.rate; },
                        [](const StableSubordinator& s) {
                          return s.scale * std::pow(s.eps, -s.alpha) / s.alpha;
                        },
                        [](const GammaSubordinator& g) { return g.shape * e1(g.rate * g.eps); },
                        [](const TwoSidedStable& s) {
                          return (s.scale_pos + s.scale_neg) * std::pow(s.eps, -s.alpha) / s.alpha;
                        },
                    },
                    law);
}

double small_jump_mass(const JumpLaw& law) {
  return std::visit(overloaded{
                        [](const NoJumps&) { return 0.0; },
                        [](const CompoundPoisson&) { return 0.0; },
                        [](const StableSubordinator& s) {
                          return s.scale * std::pow(s.eps, 1.0 - s.alpha) / (1.0 - s.alpha);
                        },
                        [](const GammaSubordinator& g) {
                          return g.shape * (-std::expm1(-g.rate * g.eps)) / g.rate;
                        },
                        [](const TwoSidedStable& s) {
                          return (s.scale_pos + s.scale_neg) * std::pow(s.eps, 1.0 - s.alpha) /
                                 (1.0 - s.alpha);
                        },
                    },
                    law);
}

double laplace_exponent(const JumpLaw& law, double lambda) {
  return std::visit(
      overloaded{
          [](const NoJumps&) { return 0.0; },
          [&](const CompoundPoisson& c) {
            const double transform = std::visit(
                overloaded{
                    [&](const ExponentialJumps& e) { return 1.0 / (1.0 + lambda * e.mean); },
                    [&](const UniformJumps& u) {
                      if (lambda == 0.0) return 1.0;
                      return (std::exp(-lambda * u.lo) - std::exp(-lambda * u.hi)) /
                             (lambda * (u.hi - u.lo));
                    },
                },
                c.sizes);
            return c.rate * (1.0 - transform);
          },
          [&](const StableSubordinator& s) {
            return s.scale * std::tgamma(1.0 - s.alpha) / s.alpha * std::pow(lambda, s.alpha);
          },
          [&](const GammaSubordinator& g) { return g.shape * std::log1p(lambda / g.rate); },
          [](const TwoSidedStable&) -> double {
            throw std::invalid_argument("laplace_exponent: two-sided law is not a subordinator");
          },
      },
      law);
}

// ---------------------------------------------------------------------------

Drifts drifts(const BivariateSubordinatorSpec& spec) {
  return std::visit(overloaded{
                        [](const Independent& c) { return Drifts{c.y.drift, c.z.drift}; },
                        [](const TimeAndProcess& c) { return Drifts{1.0, c.z.drift}; },
                        [](const BmLadder&) { return Drifts{0.0, kBmLadderHeightDrift}; },
                        [](const CustomJoint& c) { return Drifts{c.drift_y, c.drift_z}; },
                    },
                    spec.coupling);
}

double total_kill_rate(const BivariateSubordinatorSpec& spec) {
  const double marginal =
      std::visit(overloaded{
                     [](const Independent& c) { return c.y.kill_rate + c.z.kill_rate; },
                     [](const TimeAndProcess& c) { return c.z.kill_rate; },
                     [](const BmLadder& c) { return c.mu < 0.0 ? std::sqrt(2.0) * -c.mu : 0.0; },
                     [](const CustomJoint&) { return 0.0; },
                 },
                 spec.coupling);
  return spec.kill_rate + marginal;
}

double small_jump_mass(const BivariateSubordinatorSpec& spec) {
  return std::visit(overloaded{
                        [](const Independent& c) {
                          return small_jump_mass(c.y.jumps) + small_jump_mass(c.z.jumps);
                        },
                        [](const TimeAndProcess& c) { return small_jump_mass(c.z.jumps); },
                        [](const BmLadder& c) {
                          // the exponential tilt only lowers the small-jump density
                          return small_jump_mass(JumpLaw{StableSubordinator{
                              0.5, kStableHalfScaleSqrtLambda, c.eps}});
                        },
                        [](const CustomJoint& c) { return c.small_jump_mass; },
                    },
                    spec.coupling);
}

bool is_pure_drift(const BivariateSubordinatorSpec& spec) {
  return std::visit(overloaded{
                        [](const Independent& c) {
                          return !has_jumps(c.y.jumps) && !has_jumps(c.z.jumps);
                        },
                        [](const TimeAndProcess& c) { return !has_jumps(c.z.jumps); },
                        [](const BmLadder&) { return false; },
                        [](const CustomJoint& c) { return c.rate <= 0.0; },
                    },
                    spec.coupling);
}

bool is_compound_poisson(const BivariateSubordinatorSpec& spec) {
  auto finite = [](const JumpLaw& l) { return !is_infinite_activity(l); };
  return std::visit(overloaded{
                        [&](const Independent& c) { return finite(c.y.jumps) && finite(c.z.jumps); },
                        [&](const TimeAndProcess& c) { return finite(c.z.jumps); },
                        [](const BmLadder&) { return false; },
                        [](const CustomJoint& c) { return c.small_jump_mass == 0.0; },
                    },
                    spec.coupling);
}

// ---------------------------------------------------------------------------
// Curves

Curve::Curve(CurveShape shape, Direction direction, Fn eval, std::optional<Fn> derivative,
             std::optional<Fn> inverse, double t_lo, double t_hi)
    : shape_(std::move(shape)),
      direction_(direction),
      eval_(std::move(eval)),
      derivative_(std::move(derivative)),
      inverse_(std::move(inverse)),
      t_lo_(t_lo),
      t_hi_(t_hi) {
  if (!eval_) throw std::invalid_argument("curve: missing evaluation function");
  if (!(t_hi_ > t_lo_)) throw std::invalid_argument("curve: empty domain");

  // Spot-check monotonicity on a grid covering the domain.
  constexpr int kGrid = 400;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i <= kGrid; ++i) {
    const double s = static_cast<double>(i) / kGrid;
    double t;
    if (std::isinf(t_hi_))
      t = t_lo_ + (i == kGrid ? 1e12 : s / (1.0 - s)) * std::max(1.0, std::abs(t_lo_));
    else
      t = t_lo_ + s * (t_hi_ - t_lo_);
    const double v = (*this)(t);
    if (i > 0 && std::isfinite(v) && std::isfinite(prev)) {
      const double slack = 1e-12 * std::max({1.0, std::abs(v), std::abs(prev)});
      const bool ok = direction_ == Direction::NonIncreasing ? v <= prev + slack : v >= prev - slack;
      if (!ok) {
        std::ostringstream msg;
        msg << "curve: not monotone in the declared direction near t=" << t;
        throw std::invalid_argument(msg.str());
      }
    }
    if (derivative_ && i > 0 && i < kGrid) {
      const double d = (*derivative_)(t);
      const bool ok = direction_ == Direction::NonIncreasing ? !(d > 0.0) : !(d < 0.0);
      if (!ok) {
        std::ostringstream msg;
        msg << "curve: derivative sign contradicts direction at t=" << t;
        throw std::invalid_argument(msg.str());
      }
    }
    prev = v;
  }
}

double Curve::operator()(double t) const {
  const double v = eval_(t);
  if (std::isnan(v)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "curve evaluation returned NaN at t=" << t;
    throw std::domain_error(msg.str());
  }
  return v;
}

double Curve::derivative(double t) const {
  if (!derivative_) throw std::logic_error("curve has no derivative");
  return (*derivative_)(t);
}

double Curve::inverse(double value) const {
  if (!inverse_) throw std::logic_error("curve has no inverse");
  return (*inverse_)(value);
}

double Curve::at_start() const {
  return std::visit(overloaded{
                        [](const ConstantCurve& c) { return c.x; },
                        [](const PowerCurve& c) { return c.shift > 0 ? c.a * std::pow(c.shift, -c.p) : kInf; },
                        [](const AffineCurve& c) { return c.a; },
                        [](const CircleCurve& c) { return c.a; },
                        [](const OuCurve& c) { return c.x - c.z; },
                        [](const TabulatedCurve& c) { return c.f.front(); },
                        [this](const CustomCurve&) { return (*this)(t_lo_); },
                    },
                    shape_);
}

double Curve::at_end() const {
  return std::visit(overloaded{
                        [](const ConstantCurve& c) { return c.x; },
                        [](const PowerCurve&) { return 0.0; },
                        [](const AffineCurve& c) {
                          return c.b > 0 ? -kInf : (c.b < 0 ? kInf : c.a);
                        },
                        [](const CircleCurve&) { return -kInf; },
                        [](const OuCurve& c) { return c.x < 0 ? -kInf : (c.x > 0 ? kInf : -c.z); },
                        [](const TabulatedCurve& c) { return c.f.back(); },
                        [this](const CustomCurve&) {
                          return (*this)(std::isinf(t_hi_) ? 1e12 : t_hi_);
                        },
                    },
                    shape_);
}

bool Curve::strictly_monotone() const {
  return std::visit(overloaded{
                        [](const ConstantCurve&) { return false; },
                        [](const PowerCurve& c) { return c.p > 0 && c.a != 0; },
                        [](const AffineCurve& c) { return c.b != 0; },
                        [](const CircleCurve&) { return true; },
                        [](const OuCurve& c) { return c.x != 0; },
                        [](const TabulatedCurve& c) {
                          for (std::size_t i = 1; i < c.f.size(); ++i)
                            if (c.f[i] == c.f[i - 1]) return false;
                          return true;
                        },
                        [this](const CustomCurve&) { return inverse_.has_value(); },
                    },
                    shape_);
}

std::vector<double> Curve::breakpoints() const {
  if (const auto* tab = std::get_if<TabulatedCurve>(&shape_)) return tab->t;
  if (const auto* c = std::get_if<CircleCurve>(&shape_)) return {c->a};
  return {};
}

Curve Curve::constant(double x) {
  return Curve(ConstantCurve{x}, Direction::NonIncreasing, [x](double) { return x; },
               Fn([](double) { return 0.0; }), std::nullopt);
}

Curve Curve::power(double a, double p, double shift) {
  if (!(a > 0) || !(p > 0)) throw std::invalid_argument("power curve: need a > 0 and p > 0");
  if (!(shift >= 0)) throw std::invalid_argument("power curve: need shift >= 0");
  return Curve(
      PowerCurve{a, p, shift}, Direction::NonIncreasing,
      [a, p, shift](double t) { return t + shift <= 0 ? kInf : a * std::pow(t + shift, -p); },
      Fn([a, p, shift](double t) { return -p * a * std::pow(t + shift, -p - 1.0); }),
      Fn([a, p, shift](double v) { return v <= 0 ? kInf : std::max(0.0, std::pow(a / v, 1.0 / p) - shift); }));
}

Curve Curve::affine(double a, double b) {
  const Direction dir = b >= 0 ? Direction::NonIncreasing : Direction::NonDecreasing;
  std::optional<Fn> inv;
  if (b != 0) inv = Fn([a, b](double v) { return (a - v) / b; });
  return Curve(AffineCurve{a, b}, dir, [a, b](double t) { return a - b * t; },
               Fn([b](double) { return -b; }), inv);
}

Curve Curve::circle(double a) {
  if (!(a > 0)) throw std::invalid_argument("circle curve: need a > 0");
  return Curve(
      CircleCurve{a}, Direction::NonIncreasing,
      [a](double y) {
        if (y <= a) return std::sqrt((a - y) * (a + y));
        return -std::sqrt((y - a) * (y + a));
      },
      Fn([a](double y) {
        if (y == a) return -kInf;
        if (y < a) return -y / std::sqrt((a - y) * (a + y));
        return -y / std::sqrt((y - a) * (y + a));
      }),
      Fn([a](double v) { return v >= 0 ? std::sqrt((a - v) * (a + v)) : std::sqrt(a * a + v * v); }));
}

Curve Curve::ou(double x, double alpha, double gamma, double z) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("ou curve: alpha out of (0,1)");
  if (!(gamma > 0)) throw std::invalid_argument("ou curve: gamma must be > 0");
  const double ag = alpha * gamma;
  const Direction dir = x <= 0 ? Direction::NonIncreasing : Direction::NonDecreasing;
  std::optional<Fn> inv;
  if (x != 0)
    inv = Fn([x, z, alpha, ag](double v) {
      const double r = (v + z) / x;
      if (r <= 0) return -kInf;
      return std::expm1(alpha * std::log(r)) / ag;
    });
  return Curve(
      OuCurve{x, alpha, gamma, z}, dir,
      [x, z, alpha, ag](double s) { return x * std::pow(ag * s + 1.0, 1.0 / alpha) - z; },
      Fn([x, alpha, gamma, ag](double s) {
        return x * gamma * std::pow(ag * s + 1.0, 1.0 / alpha - 1.0);
      }),
      inv);
}

Curve Curve::tabulated(std::vector<double> t, std::vector<double> f) {
  if (t.size() < 2 || t.size() != f.size())
    throw std::invalid_argument("tabulated curve: need >= 2 knots and matching lengths");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw std::invalid_argument("tabulated curve: knots must increase");
  const bool dec = f.back() <= f.front();
  const Direction dir = dec ? Direction::NonIncreasing : Direction::NonDecreasing;
  auto locate = [](const std::vector<double>& ts, double x) {
    auto it = std::upper_bound(ts.begin(), ts.end(), x);
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - ts.begin() - 1, 0,
                                                                ts.size() - 2));
  };
  Fn eval = [t, f, locate](double x) {
    if (x <= t.front()) return f.front();
    if (x >= t.back()) return f.back();
    const std::size_t i = locate(t, x);
    const double w = (x - t[i]) / (t[i + 1] - t[i]);
    return f[i] + w * (f[i + 1] - f[i]);
  };
  Fn deriv = [t, f, locate](double x) {
    if (x < t.front() || x > t.back()) return 0.0;
    const std::size_t i = locate(t, x);
    return (f[i + 1] - f[i]) / (t[i + 1] - t[i]);
  };
  bool strict = true;
  for (std::size_t i = 1; i < f.size(); ++i) strict = strict && f[i] != f[i - 1];
  std::optional<Fn> inv;
  if (strict) {
    inv = Fn([t, f, dec](double v) {
      // search the monotone value table
      std::size_t lo = 0, hi = f.size() - 1;
      if (dec ? v >= f.front() : v <= f.front()) return t.front();
      if (dec ? v <= f.back() : v >= f.back()) return t.back();
      while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (dec ? f[mid] >= v : f[mid] <= v)
          lo = mid;
        else
          hi = mid;
      }
      const double w = (v - f[lo]) / (f[hi] - f[lo]);
      return t[lo] + w * (t[hi] - t[lo]);
    });
  }
  TabulatedCurve shape{t, f};
  return Curve(std::move(shape), dir, eval, deriv, inv);
}

Curve Curve::from_shape(const CurveShape& shape) {
  return std::visit(overloaded{
                        [](const ConstantCurve& c) { return constant(c.x); },
                        [](const PowerCurve& c) { return power(c.a, c.p, c.shift); },
                        [](const AffineCurve& c) { return affine(c.a, c.b); },
                        [](const CircleCurve& c) { return circle(c.a); },
                        [](const OuCurve& c) { return ou(c.x, c.alpha, c.gamma, c.z); },
                        [](const TabulatedCurve& c) { return tabulated(c.t, c.f); },
                        [](const CustomCurve& c) -> Curve {
                          throw std::invalid_argument("custom curve '" + c.name +
                                                      "' cannot be rebuilt from its shape");
                        },
                    },
                    shape);
}

// ---------------------------------------------------------------------------
// Validation

Violations validate_spec(const JumpLaw& law) {
  Violations out;
  auto index_check = [&](double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) out.emplace_back("index out of (0,1)");
  };
  std::visit(overloaded{
                 [](const NoJumps&) {},
                 [&](const CompoundPoisson& c) {
                   if (!(c.rate > 0.0) || !std::isfinite(c.rate))
                     out.emplace_back("compound Poisson rate must be finite and > 0");
                   std::visit(overloaded{
                                  [&](const ExponentialJumps& e) {
                                    if (!(e.mean > 0.0)) out.emplace_back("exponential mean must be > 0");
                                  },
                                  [&](const UniformJumps& u) {
                                    if (!(u.lo >= 0.0 && u.hi > u.lo))
                                      out.emplace_back("uniform jumps need 0 <= lo < hi");
                                  },
                              },
                              c.sizes);
                 },
                 [&](const StableSubordinator& s) {
                   index_check(s.alpha);
                   if (!(s.scale > 0.0)) out.emplace_back("stable scale must be > 0");
                   if (!(s.eps > 0.0)) out.emplace_back("truncation must be > 0");
                 },
                 [&](const GammaSubordinator& g) {
                   if (!(g.shape > 0.0)) out.emplace_back("gamma shape must be > 0");
                   if (!(g.rate > 0.0)) out.emplace_back("gamma rate must be > 0");
                   if (!(g.eps > 0.0)) out.emplace_back("truncation must be > 0");
                 },
                 [&](const TwoSidedStable& s) {
                   index_check(s.alpha);
                   if (!(s.scale_pos >= 0.0) || !(s.scale_neg >= 0.0))
                     out.emplace_back("two-sided scales must be >= 0");
                   if (!(s.scale_pos + s.scale_neg > 0.0))
                     out.emplace_back("two-sided law needs a positive scale on at least one side");
                   if (!(s.eps > 0.0)) out.emplace_back("truncation must be > 0");
                 },
             },
             law);
  return out;
}

Violations validate_spec(const SubordinatorSpec& spec) {
  Violations out;
  if (!(spec.drift >= 0.0)) out.emplace_back("drift must be >= 0");
  if (!(spec.kill_rate >= 0.0)) out.emplace_back("kill rate must be >= 0");
  if (std::holds_alternative<TwoSidedStable>(spec.jumps))
    out.emplace_back("subordinator jumps must be one-sided");
  if (spec.drift == 0.0 && !has_jumps(spec.jumps) && !spec.allow_degenerate)
    out.emplace_back("degenerate: zero process");
  for (auto& v : validate_spec(spec.jumps)) out.push_back(std::move(v));
  return out;
}

Violations validate_spec(const BivariateSubordinatorSpec& spec) {
  Violations out;
  if (!(spec.kill_rate >= 0.0)) out.emplace_back("kill rate must be >= 0");
  auto append = [&](const std::string& prefix, Violations v) {
    for (auto& s : v) out.push_back(prefix + s);
  };
  std::visit(overloaded{
                 [&](const Independent& c) {
                   SubordinatorSpec y = c.y, z = c.z;
                   // a single zero coordinate is fine as long as the pair moves
                   const bool y_zero = y.drift == 0.0 && !has_jumps(y.jumps);
                   const bool z_zero = z.drift == 0.0 && !has_jumps(z.jumps);
                   if (y_zero && z_zero && !(y.allow_degenerate && z.allow_degenerate))
                     out.emplace_back("degenerate: zero process");
                   y.allow_degenerate = z.allow_degenerate = true;
                   append("y: ", validate_spec(y));
                   append("z: ", validate_spec(z));
                 },
                 [&](const TimeAndProcess& c) {
                   SubordinatorSpec z = c.z;
                   z.allow_degenerate = true;
                   append("z: ", validate_spec(z));
                 },
                 [](const BmLadder&) {},
                 [&](const CustomJoint& c) {
                   if (!(c.drift_y >= 0.0) || !(c.drift_z >= 0.0))
                     out.emplace_back("custom drifts must be >= 0");
                   if (!(c.rate >= 0.0)) out.emplace_back("custom jump rate must be >= 0");
                   if (c.rate > 0.0 && !c.sampler) out.emplace_back("custom jump sampler missing");
                   if (c.rate == 0.0 && c.drift_y == 0.0 && c.drift_z == 0.0)
                     out.emplace_back("degenerate: zero process");
                 },
             },
             spec.coupling);
  return out;
}

Violations validate_spec(const BvProcessSpec& spec) {
  Violations out = validate_spec(spec.jumps);
  if (!std::isfinite(spec.drift)) out.emplace_back("drift must be finite");
  if (spec.drift == 0.0 && !has_jumps(spec.jumps)) out.emplace_back("degenerate: zero process");
  return out;
}

Violations validate_spec(const OuSpec& spec) {
  Violations out;
  if (!(spec.gamma > 0.0)) out.emplace_back("gamma must be > 0");
  if (!std::isfinite(spec.z)) out.emplace_back("starting point must be finite");
  for (auto& v : validate_spec(JumpLaw{spec.noise})) out.push_back(std::move(v));
  return out;
}

Violations validate_spec(const Curve& curve) {
  Violations out;
  std::visit(overloaded{
                 [](const ConstantCurve&) {},
                 [&](const PowerCurve& c) {
                   if (!(c.a > 0) || !(c.p > 0)) out.emplace_back("power curve needs a > 0, p > 0");
                 },
                 [](const AffineCurve&) {},
                 [&](const CircleCurve& c) {
                   if (!(c.a > 0)) out.emplace_back("circle radius must be > 0");
                 },
                 [&](const OuCurve& c) {
                   if (!(c.alpha > 0 && c.alpha < 1)) out.emplace_back("index out of (0,1)");
                   if (!(c.gamma > 0)) out.emplace_back("gamma must be > 0");
                 },
                 [](const TabulatedCurve&) {},
                 [](const CustomCurve&) {},
             },
             curve.shape());
  // re-run the grid spot check through the public surface
  const int n = 200;
  double prev = curve(curve.t_lo());
  for (int i = 1; i <= n; ++i) {
    const double s = static_cast<double>(i) / (n + 1);
    const double t = std::isinf(curve.t_hi()) ? curve.t_lo() + s / (1 - s)
                                              : curve.t_lo() + s * (curve.t_hi() - curve.t_lo());
    const double v = curve(t);
    if (std::isfinite(v) && std::isfinite(prev)) {
      const double slack = 1e-12 * std::max({1.0, std::abs(v), std::abs(prev)});
      const bool ok = curve.direction() == Direction::NonIncreasing ? v <= prev + slack
                                                                     : v >= prev - slack;
      if (!ok) {
        out.emplace_back("not monotone in the declared direction");
        break;
      }
    }
    prev = v;
  }
  return out;
}

}  // namespace creep
