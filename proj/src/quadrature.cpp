#include "creep/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

namespace creep {

namespace {

constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478346, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
constexpr double kWg[5] = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                           0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                           0.295524224714752870173892994651338};

struct Panel {
  double a, b, value, error;
};

Panel gk21(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kWgk[10] * fc;
  double gauss = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  kron *= h;
  gauss *= h;
  double err = std::abs(kron - gauss);  // raw |K - G|, no QUADPACK rescaling
  if (!std::isfinite(kron)) err = std::numeric_limits<double>::infinity();
  return {a, b, kron, err};
}

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

}  // namespace

QuadResult integrate_gk(const Integrand& f, double a, double b, const QuadOptions& opt) {
  QuadResult r;
  if (a == b) {
    r.converged = true;
    return r;
  }
  if (!(std::isfinite(a) && std::isfinite(b))) throw std::invalid_argument("integrate_gk: infinite bound");
  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  heap.push(gk21(f, a, b));
  int panels = 1;
  auto totals = [&](double& v, double& e) {
    // sum in interval order so the result does not depend on heap layout
    std::vector<Panel> all;
    auto copy = heap;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    v = 0;
    e = 0;
    for (const auto& p : all) {
      v += p.value;
      e += p.error;
    }
  };
  double value = heap.top().value, error = heap.top().error;
  double err_running = error;
  while (true) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    if (err_running <= target || panels >= opt.max_panels) break;
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;
    }
    const Panel l = gk21(f, worst.a, mid), rr = gk21(f, mid, worst.b);
    heap.push(l);
    heap.push(rr);
    panels += 1;
    err_running += l.error + rr.error - worst.error;
    value += l.value + rr.value - worst.value;
    if (!std::isfinite(err_running)) {
      totals(value, err_running);
    }
  }
  totals(value, error);
  r.value = value;
  r.abs_error = error;
  r.panels = panels;
  r.converged = std::isfinite(value) && error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
  return r;
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opt) {
  if (std::isfinite(b)) return integrate_gk(f, a, b, opt);
  if (!std::isfinite(a)) throw std::invalid_argument("integrate: lower bound must be finite");
  // decay probe: |f(t)| t must fall off along a geometric sequence
  double prev = 0.0;
  bool decays = true;
  for (int i = 0; i < 6; ++i) {
    const double t = a + std::pow(10.0, 3.0 + i);
    const double v = std::abs(f(t)) * (t - a);
    if (!std::isfinite(v) || (i > 0 && v > prev && v > 1e-14)) decays = false;
    prev = v;
  }
  QuadResult r = integrate_gk(
      [&](double s) {
        if (s >= 1.0) return 0.0;
        const double om = 1.0 - s;
        const double t = a + s / om;
        const double v = f(t) / (om * om);
        return std::isfinite(v) ? v : 0.0;
      },
      0.0, 1.0, opt);
  if (!decays) r.converged = false;
  return r;
}

QuadResult integrate_or_throw(const Integrand& f, double a, double b, const QuadOptions& opt,
                              const std::string& label) {
  QuadResult r = integrate(f, a, b, opt);
  if (!r.converged) {
    std::ostringstream msg;
    msg.precision(6);
    msg << label << ": quadrature tolerance " << opt.abs_tol << " not met (estimate " << r.value
        << ", error bound " << r.abs_error << ", panels " << r.panels << ")";
    throw QuadratureError(msg.str(), r);
  }
  return r;
}

QuadResult integrate_tanh_sinh(const EndpointIntegrand& f, double a, double b, double tol,
                               int max_level) {
  QuadResult r;
  if (a == b) {
    r.converged = true;
    return r;
  }
  const double h = 0.5 * (b - a);
  const double half_pi = 0.5 * std::numbers::pi;
  auto node = [&](double t, double& sum) {
    const double u = half_pi * std::sinh(t);
    const double e2 = std::exp(-2.0 * std::abs(u));
    const double small = 2.0 * h * e2 / (1.0 + e2);  // distance to the near end
    if (!(small > 0.0)) return false;
    const double w = half_pi * std::cosh(t) * 4.0 * e2 / ((1.0 + e2) * (1.0 + e2)) * h;
    double x, da, db;
    if (t >= 0) {
      db = small;
      da = 2.0 * h - small;
      x = b - small;
    } else {
      da = small;
      db = 2.0 * h - small;
      x = a + small;
    }
    const double v = f(x, da, db);
    if (std::isfinite(v)) sum += w * v;
    return true;
  };

  double step = 1.0;
  double sum = 0.0;
  node(0.0, sum);
  for (int k = 1;; ++k) {
    double t = k * step;
    if (t > 6.5) break;
    const bool a1 = node(t, sum), a2 = node(-t, sum);
    if (!a1 && !a2) break;
  }
  double estimate = sum * step;
  double prev_estimate = estimate;
  for (int level = 1; level <= max_level; ++level) {
    step *= 0.5;
    for (int k = 1;; k += 2) {
      const double t = k * step;
      if (t > 6.5) break;
      const bool a1 = node(t, sum), a2 = node(-t, sum);
      if (!a1 && !a2) break;
    }
    estimate = sum * step;
    r.abs_error = std::abs(estimate - prev_estimate);
    r.panels = level;
    if (level >= 3 && r.abs_error <= tol * std::max(1.0, std::abs(estimate))) {
      r.converged = true;
      break;
    }
    prev_estimate = estimate;
  }
  r.value = estimate;
  return r;
}

}  // namespace creep
