#include "creep/conditioned.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace creep {

double KnotPath::value_at(double t) const {
  auto it = std::upper_bound(knots.begin(), knots.end(), t, [](double v, const Knot& k) { return v < k.t; });
  if (it == knots.begin()) return knots.front().post;
  const Knot& k = *(it - 1);
  return k.post + slope * (t - k.t);
}

KnotPath knot_path(const JumpPath& path) {
  KnotPath x;
  x.slope = path.drift_z;
  x.knots.push_back({0.0, 0.0, 0.0});
  double sum = 0.0;
  for (const auto& e : path.events) {
    const double pre = path.drift_z * e.t + sum;
    sum += e.dz;
    x.knots.push_back({e.t, pre, path.drift_z * e.t + sum});
  }
  const double end = path.end_time();
  if (end > x.knots.back().t) {
    const double v = path.drift_z * end + sum;
    x.knots.push_back({end, v, v});
  }
  return x;
}

JumpPath to_jump_path(const KnotPath& x) {
  JumpPath p;
  p.drift_y = 1.0;
  p.drift_z = x.slope;
  for (const auto& k : x.knots)
    if (k.post != k.pre) p.events.push_back({k.t, 0.0, k.post - k.pre});
  p.horizon = x.end_time();
  return p;
}

namespace {

void add_interval(std::vector<ClosedInterval>& set, double a, double b) {
  if (!set.empty() && set.back().b >= a) {
    set.back().b = std::max(set.back().b, b);
    return;
  }
  set.push_back({a, b});
}

}  // namespace

TanakaResult tanaka_transform(const JumpPath& path) {
  if (!(path.drift_z > 0)) throw std::invalid_argument("tanaka_transform: drift must be > 0");
  for (const auto& e : path.events)
    if (!(e.dz < 0)) throw std::invalid_argument("tanaka_transform: jumps must be downward");
  const KnotPath raw = knot_path(path);
  const double slope = raw.slope;

  TanakaResult tr;
  tr.x.slope = slope;
  tr.w.slope = slope;
  tr.x.knots.push_back(raw.knots.front());
  tr.w.knots.push_back(raw.knots.front());

  double contact_start = 0.0;
  double level = 0.0;
  std::size_t i = 1;
  const std::size_t n = raw.knots.size();
  std::vector<ClosedInterval> contacts;
  while (i < n) {
    const Knot& k = raw.knots[i];
    if (!(k.post < k.pre)) {
      // end-of-path knot while at the maximum
      tr.x.knots.push_back(k);
      tr.w.knots.push_back(k);
      level = k.post;
      ++i;
      continue;
    }
    // an excursion below `level` starts at g = k.t
    level = k.pre;
    const double g = k.t;
    std::size_t j = i;
    double d = kInf;
    while (j < n) {
      const Knot& cur = raw.knots[j];
      const double next_t = j + 1 < n ? raw.knots[j + 1].t : kInf;
      const double back = cur.t + (level - cur.post) / slope;
      if (back <= next_t && j + 1 < n) {
        d = back;
        break;
      }
      if (j + 1 >= n) break;
      ++j;
    }
    if (!std::isfinite(d)) {
      // unfinished final excursion: cut at the last contact
      tr.truncated = true;
      tr.x.knots.push_back({g, k.pre, k.pre});
      tr.w.knots.push_back({g, k.pre, k.pre});
      add_interval(contacts, contact_start, g);
      i = n;
      break;
    }
    add_interval(contacts, contact_start, g);
    tr.decomposition.excursions.push_back({g, d, level});

    // contact knot at g is continuous in W
    tr.w.knots.push_back({g, level, level});
    // reversed excursion knots, latest jump first
    for (std::size_t m = j; m > i; --m) {
      const Knot& jm = raw.knots[m];
      tr.w.knots.push_back({d - (jm.t - g), level + (level - jm.post), level + (level - jm.pre)});
    }
    tr.w.knots.push_back({d, level + (level - k.post), level});
    for (std::size_t m = i; m <= j; ++m) tr.x.knots.push_back(raw.knots[m]);
    tr.x.knots.push_back({d, level, level});
    contact_start = d;
    i = j + 1;
  }
  tr.end = tr.x.knots.back().t;
  if (!tr.truncated) add_interval(contacts, contact_start, tr.end);
  tr.decomposition.contacts = std::move(contacts);
  return tr;
}

std::vector<ClosedInterval> future_infimum_contacts(const KnotPath& w) {
  const auto& k = w.knots;
  const std::size_t n = k.size();
  std::vector<double> fut(n);
  fut[n - 1] = k[n - 1].post;
  for (std::size_t i = n - 1; i-- > 0;) fut[i] = std::min(k[i].post, fut[i + 1]);
  std::vector<ClosedInterval> out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double m = fut[i + 1];
    if (k[i + 1].pre <= m) {
      add_interval(out, k[i].t, k[i + 1].t);
    } else if (k[i].post <= m) {
      const double b = k[i].post == m ? k[i].t : k[i].t + (m - k[i].post) / w.slope;
      add_interval(out, k[i].t, std::min(b, k[i + 1].t));
    }
  }
  if (n == 1) out.push_back({k[0].t, k[0].t});
  return out;
}

double future_infimum_at(const KnotPath& w, double t) {
  double m = kInf;
  for (std::size_t i = w.knots.size(); i-- > 0;) {
    const Knot& k = w.knots[i];
    if (k.t <= t) {
      m = std::min(m, k.post + w.slope * (t - k.t));
      break;
    }
    m = std::min(m, k.post);
  }
  return m;
}

double running_supremum_at(const KnotPath& x, double t) {
  double m = -kInf;
  for (const Knot& k : x.knots) {
    if (k.t > t) break;
    m = std::max({m, k.pre, k.post});
  }
  // drift since the last knot before t
  return std::max(m, x.value_at(t));
}

bool contains(const std::vector<ClosedInterval>& set, double t) {
  for (const auto& iv : set)
    if (t >= iv.a && t <= iv.b) return true;
  return false;
}

double segment_root(double t0, double v0, double slope, double t1, const Curve& f, double tol) {
  auto h = [&](double t) { return v0 + slope * (t - t0) - f(t); };
  double lo = t0, hi = t1;
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double hm = h(mid);
    if (std::abs(hm) <= tol) return mid;
    (hm < 0 ? lo : hi) = mid;
  }
  return hi;
}

CrossingOutcome first_passage_at_supremum(const TanakaResult& tr, const Curve& f) {
  const auto& k = tr.x.knots;
  CrossingOutcome o;
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    const double t0 = k[i].t, t1 = k[i + 1].t;
    if (!(t1 > t0)) continue;
    if (k[i + 1].pre - f(t1) > 0) {
      const double ts = segment_root(t0, k[i].post, tr.x.slope, t1, f);
      o.kind = OutcomeKind::Creep;
      o.time = ts;
      o.y = ts;
      o.z = k[i].post + tr.x.slope * (ts - t0);
      o.residual = o.z - f(ts);
      o.at_extremum = contains(tr.decomposition.contacts, ts);
      return o;
    }
  }
  o.kind = OutcomeKind::Horizon;
  o.time = tr.end;
  return o;
}

CrossingOutcome last_passage_creep(const TanakaResult& tr, const Curve& f) {
  const auto& k = tr.w.knots;
  CrossingOutcome o;
  // beyond the cut W stays above its future infimum, which equals the
  // running supremum of X at the cut
  const double sup_end = running_supremum_at(tr.x, tr.end);
  if (!(sup_end > f(tr.end))) {
    o.kind = OutcomeKind::Horizon;
    o.time = tr.end;
    return o;
  }
  for (std::size_t i = k.size() - 1; i-- > 0;) {
    const double t0 = k[i].t, t1 = k[i + 1].t;
    if (!(t1 > t0)) continue;
    if (k[i].post - f(t0) <= 0) {
      const double ts = segment_root(t0, k[i].post, tr.w.slope, t1, f);
      o.kind = OutcomeKind::Creep;
      o.time = ts;
      o.y = ts;
      o.z = k[i].post + tr.w.slope * (ts - t0);
      o.residual = o.z - f(ts);
      o.at_extremum = contains(future_infimum_contacts(tr.w), ts);
      return o;
    }
  }
  o.kind = OutcomeKind::Horizon;
  o.time = tr.end;
  return o;
}

TanakaCheck check_tanaka_identities(const JumpPath& path, const Curve& f) {
  TanakaCheck c;
  const TanakaResult tr = tanaka_transform(path);
  const auto w_contacts = future_infimum_contacts(tr.w);
  c.contact_identity = w_contacts == tr.decomposition.contacts;

  c.infimum_identity = true;
  auto check_at = [&](double t) {
    if (running_supremum_at(tr.x, t) != future_infimum_at(tr.w, t)) c.infimum_identity = false;
  };
  for (const auto& k : tr.x.knots) check_at(k.t);
  for (const auto& k : tr.w.knots) check_at(k.t);

  // reversing W's excursions above its future infimum gives back X's
  c.involution = true;
  for (const auto& ex : tr.decomposition.excursions) {
    std::vector<Knot> from_x, from_w;
    for (const auto& k : tr.x.knots)
      if (k.t > ex.g && k.t < ex.d) from_x.push_back(k);
    for (const auto& k : tr.w.knots)
      if (k.t > ex.g && k.t <= ex.d)
        from_w.push_back({ex.d + ex.g - k.t, 2 * ex.level - k.post, 2 * ex.level - k.pre});
    // the jump at g itself comes back from W's knot at d
    std::sort(from_w.begin(), from_w.end(), [](const Knot& a, const Knot& b) { return a.t < b.t; });
    from_x.insert(from_x.begin(), *std::find_if(tr.x.knots.begin(), tr.x.knots.end(),
                                                [&](const Knot& k) { return k.t == ex.g; }));
    if (from_x.size() != from_w.size()) {
      c.involution = false;
      break;
    }
    const double scale = std::max(1.0, std::abs(ex.level) + ex.d);
    for (std::size_t m = 0; m < from_x.size(); ++m) {
      if (std::abs(from_x[m].t - from_w[m].t) > 1e-12 * scale ||
          std::abs(from_x[m].pre - from_w[m].pre) > 1e-12 * scale ||
          std::abs(from_x[m].post - from_w[m].post) > 1e-12 * scale)
        c.involution = false;
    }
  }

  c.forward = first_passage_at_supremum(tr, f);
  c.backward = last_passage_creep(tr, f);
  c.determinate = c.forward.kind == OutcomeKind::Creep && c.backward.kind == OutcomeKind::Creep;
  c.indicator_match = c.determinate && c.forward.at_extremum == c.backward.at_extremum;
  c.time_match = c.indicator_match && (!c.forward.at_extremum || c.forward.time == c.backward.time);
  return c;
}

}  // namespace creep
