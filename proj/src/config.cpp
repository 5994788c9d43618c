#include "creep/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace creep {

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Curve: return "curve";
    case ScenarioKind::GridSupremum: return "grid_supremum";
    case ScenarioKind::Ou: return "ou";
    case ScenarioKind::Tanaka: return "tanaka";
  }
  return "curve";
}

namespace {

// ---------------------------------------------------------------------------
// Reading

void only_keys(const YAML::Node& n, const std::string& where, std::initializer_list<const char*> keys) {
  if (!n.IsMap()) throw ConfigError(where + ": expected a mapping");
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    bool ok = false;
    for (const char* k : keys) ok = ok || key == k;
    if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
T get(const YAML::Node& n, const char* key, const std::string& where) {
  const auto v = n[key];
  if (!v) throw ConfigError(where + ": missing '" + key + "'");
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(where + ": bad value for '" + key + "'");
  }
}

template <class T>
T get_or(const YAML::Node& n, const char* key, T fallback, const std::string& where) {
  return n[key] ? get<T>(n, key, where) : fallback;
}

template <class T>
std::optional<T> get_opt(const YAML::Node& n, const char* key, const std::string& where) {
  if (!n[key]) return std::nullopt;
  return get<T>(n, key, where);
}

JumpDistribution read_sizes(const YAML::Node& n, const std::string& where) {
  const auto type = get<std::string>(n, "type", where);
  if (type == "exponential") {
    only_keys(n, where, {"type", "mean"});
    return ExponentialJumps{get<double>(n, "mean", where)};
  }
  if (type == "uniform") {
    only_keys(n, where, {"type", "lo", "hi"});
    return UniformJumps{get<double>(n, "lo", where), get<double>(n, "hi", where)};
  }
  throw ConfigError(where + ": unknown size law '" + type + "'");
}

JumpLaw read_jumps(const YAML::Node& n, const std::string& where) {
  if (!n) return NoJumps{};
  const auto type = get<std::string>(n, "type", where);
  if (type == "none") {
    only_keys(n, where, {"type"});
    return NoJumps{};
  }
  if (type == "compound_poisson") {
    only_keys(n, where, {"type", "rate", "sizes"});
    return CompoundPoisson{get<double>(n, "rate", where), read_sizes(n["sizes"], where + ".sizes")};
  }
  if (type == "stable") {
    only_keys(n, where, {"type", "alpha", "scale", "eps"});
    return StableSubordinator{get<double>(n, "alpha", where), get<double>(n, "scale", where),
                              get<double>(n, "eps", where)};
  }
  if (type == "gamma") {
    only_keys(n, where, {"type", "shape", "rate", "eps"});
    return GammaSubordinator{get<double>(n, "shape", where), get<double>(n, "rate", where),
                             get<double>(n, "eps", where)};
  }
  if (type == "two_sided_stable") {
    only_keys(n, where, {"type", "alpha", "scale_pos", "scale_neg", "eps"});
    return TwoSidedStable{get<double>(n, "alpha", where), get<double>(n, "scale_pos", where),
                          get<double>(n, "scale_neg", where), get<double>(n, "eps", where)};
  }
  throw ConfigError(where + ": unknown jump law '" + type + "'");
}

SubordinatorSpec read_subordinator(const YAML::Node& n, const std::string& where) {
  if (!n) throw ConfigError(where + ": missing");
  only_keys(n, where, {"drift", "jumps", "kill_rate"});
  SubordinatorSpec s;
  s.drift = get_or<double>(n, "drift", 0.0, where);
  s.jumps = read_jumps(n["jumps"], where + ".jumps");
  s.kill_rate = get_or<double>(n, "kill_rate", 0.0, where);
  return s;
}

ProcessConfig read_process(const YAML::Node& n, const std::string& where) {
  if (!n) throw ConfigError(where + ": missing");
  const auto type = get<std::string>(n, "type", where);
  if (type == "bv") {
    only_keys(n, where, {"type", "drift", "jumps", "sign"});
    BvProcessSpec p;
    p.drift = get_or<double>(n, "drift", 0.0, where);
    p.jumps = read_jumps(n["jumps"], where + ".jumps");
    const auto sign = get_or<std::string>(n, "sign", "up", where);
    if (sign != "up" && sign != "down") throw ConfigError(where + ": sign must be up or down");
    p.sign = sign == "up" ? JumpSign::Up : JumpSign::Down;
    return p;
  }
  BivariateSubordinatorSpec b;
  if (type == "time_and_process") {
    only_keys(n, where, {"type", "z", "kill_rate"});
    b.coupling = TimeAndProcess{read_subordinator(n["z"], where + ".z")};
  } else if (type == "independent") {
    only_keys(n, where, {"type", "y", "z", "kill_rate"});
    b.coupling = Independent{read_subordinator(n["y"], where + ".y"), read_subordinator(n["z"], where + ".z")};
  } else if (type == "bm_ladder") {
    only_keys(n, where, {"type", "mu", "eps", "kill_rate"});
    b.coupling = BmLadder{get_or<double>(n, "mu", 0.0, where), get_or<double>(n, "eps", 1e-6, where)};
  } else {
    throw ConfigError(where + ": unknown process type '" + type + "'");
  }
  b.kill_rate = get_or<double>(n, "kill_rate", 0.0, where);
  return b;
}

CurveShape read_curve(const YAML::Node& n, const std::string& where) {
  if (!n) throw ConfigError(where + ": missing");
  const auto type = get<std::string>(n, "type", where);
  if (type == "constant") {
    only_keys(n, where, {"type", "x"});
    return ConstantCurve{get<double>(n, "x", where)};
  }
  if (type == "power") {
    only_keys(n, where, {"type", "a", "p", "shift"});
    return PowerCurve{get<double>(n, "a", where), get<double>(n, "p", where), get_or<double>(n, "shift", 0.0, where)};
  }
  if (type == "affine") {
    only_keys(n, where, {"type", "a", "b"});
    return AffineCurve{get<double>(n, "a", where), get<double>(n, "b", where)};
  }
  if (type == "circle") {
    only_keys(n, where, {"type", "a"});
    return CircleCurve{get<double>(n, "a", where)};
  }
  if (type == "ou") {
    only_keys(n, where, {"type", "x", "alpha", "gamma", "z"});
    return OuCurve{get<double>(n, "x", where), get<double>(n, "alpha", where), get<double>(n, "gamma", where),
                   get<double>(n, "z", where)};
  }
  if (type == "tabulated") {
    only_keys(n, where, {"type", "t", "f"});
    return TabulatedCurve{get<std::vector<double>>(n, "t", where), get<std::vector<double>>(n, "f", where)};
  }
  throw ConfigError(where + ": unknown curve type '" + type + "'");
}

ScenarioKind read_kind(const std::string& s) {
  if (s == "curve") return ScenarioKind::Curve;
  if (s == "grid_supremum") return ScenarioKind::GridSupremum;
  if (s == "ou") return ScenarioKind::Ou;
  if (s == "tanaka") return ScenarioKind::Tanaka;
  throw ConfigError("kind: unknown scenario kind '" + s + "'");
}

// ---------------------------------------------------------------------------
// Writing

void write_jumps(YAML::Emitter& e, const JumpLaw& law) {
  e << YAML::BeginMap;
  std::visit(
      [&](const auto& j) {
        using T = std::decay_t<decltype(j)>;
        if constexpr (std::is_same_v<T, NoJumps>) {
          e << YAML::Key << "type" << YAML::Value << "none";
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
          e << YAML::Key << "type" << YAML::Value << "compound_poisson";
          e << YAML::Key << "rate" << YAML::Value << j.rate;
          e << YAML::Key << "sizes" << YAML::Value << YAML::BeginMap;
          if (const auto* x = std::get_if<ExponentialJumps>(&j.sizes)) {
            e << YAML::Key << "type" << YAML::Value << "exponential" << YAML::Key << "mean" << YAML::Value
              << x->mean;
          } else {
            const auto& u = std::get<UniformJumps>(j.sizes);
            e << YAML::Key << "type" << YAML::Value << "uniform" << YAML::Key << "lo" << YAML::Value << u.lo
              << YAML::Key << "hi" << YAML::Value << u.hi;
          }
          e << YAML::EndMap;
        } else if constexpr (std::is_same_v<T, StableSubordinator>) {
          e << YAML::Key << "type" << YAML::Value << "stable" << YAML::Key << "alpha" << YAML::Value << j.alpha
            << YAML::Key << "scale" << YAML::Value << j.scale << YAML::Key << "eps" << YAML::Value << j.eps;
        } else if constexpr (std::is_same_v<T, GammaSubordinator>) {
          e << YAML::Key << "type" << YAML::Value << "gamma" << YAML::Key << "shape" << YAML::Value << j.shape
            << YAML::Key << "rate" << YAML::Value << j.rate << YAML::Key << "eps" << YAML::Value << j.eps;
        } else {
          e << YAML::Key << "type" << YAML::Value << "two_sided_stable" << YAML::Key << "alpha" << YAML::Value
            << j.alpha << YAML::Key << "scale_pos" << YAML::Value << j.scale_pos << YAML::Key << "scale_neg"
            << YAML::Value << j.scale_neg << YAML::Key << "eps" << YAML::Value << j.eps;
        }
      },
      law);
  e << YAML::EndMap;
}

void write_subordinator(YAML::Emitter& e, const SubordinatorSpec& s) {
  e << YAML::BeginMap;
  e << YAML::Key << "drift" << YAML::Value << s.drift;
  e << YAML::Key << "jumps" << YAML::Value;
  write_jumps(e, s.jumps);
  e << YAML::Key << "kill_rate" << YAML::Value << s.kill_rate;
  e << YAML::EndMap;
}

void write_process(YAML::Emitter& e, const ProcessConfig& p) {
  e << YAML::BeginMap;
  if (const auto* bv = std::get_if<BvProcessSpec>(&p)) {
    e << YAML::Key << "type" << YAML::Value << "bv";
    e << YAML::Key << "drift" << YAML::Value << bv->drift;
    e << YAML::Key << "jumps" << YAML::Value;
    write_jumps(e, bv->jumps);
    e << YAML::Key << "sign" << YAML::Value << (bv->sign == JumpSign::Up ? "up" : "down");
    e << YAML::EndMap;
    return;
  }
  const auto& b = std::get<BivariateSubordinatorSpec>(p);
  if (const auto* tp = std::get_if<TimeAndProcess>(&b.coupling)) {
    e << YAML::Key << "type" << YAML::Value << "time_and_process";
    e << YAML::Key << "z" << YAML::Value;
    write_subordinator(e, tp->z);
  } else if (const auto* in = std::get_if<Independent>(&b.coupling)) {
    e << YAML::Key << "type" << YAML::Value << "independent";
    e << YAML::Key << "y" << YAML::Value;
    write_subordinator(e, in->y);
    e << YAML::Key << "z" << YAML::Value;
    write_subordinator(e, in->z);
  } else if (const auto* bm = std::get_if<BmLadder>(&b.coupling)) {
    e << YAML::Key << "type" << YAML::Value << "bm_ladder";
    e << YAML::Key << "mu" << YAML::Value << bm->mu;
    e << YAML::Key << "eps" << YAML::Value << bm->eps;
  } else {
    throw ConfigError("custom joint laws cannot be serialised");
  }
  e << YAML::Key << "kill_rate" << YAML::Value << b.kill_rate;
  e << YAML::EndMap;
}

void write_curve(YAML::Emitter& e, const CurveShape& c) {
  e << YAML::BeginMap;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantCurve>) {
          e << YAML::Key << "type" << YAML::Value << "constant" << YAML::Key << "x" << YAML::Value << s.x;
        } else if constexpr (std::is_same_v<T, PowerCurve>) {
          e << YAML::Key << "type" << YAML::Value << "power" << YAML::Key << "a" << YAML::Value << s.a << YAML::Key
            << "p" << YAML::Value << s.p;
          if (s.shift != 0.0) e << YAML::Key << "shift" << YAML::Value << s.shift;
        } else if constexpr (std::is_same_v<T, AffineCurve>) {
          e << YAML::Key << "type" << YAML::Value << "affine" << YAML::Key << "a" << YAML::Value << s.a << YAML::Key
            << "b" << YAML::Value << s.b;
        } else if constexpr (std::is_same_v<T, CircleCurve>) {
          e << YAML::Key << "type" << YAML::Value << "circle" << YAML::Key << "a" << YAML::Value << s.a;
        } else if constexpr (std::is_same_v<T, OuCurve>) {
          e << YAML::Key << "type" << YAML::Value << "ou" << YAML::Key << "x" << YAML::Value << s.x << YAML::Key
            << "alpha" << YAML::Value << s.alpha << YAML::Key << "gamma" << YAML::Value << s.gamma << YAML::Key
            << "z" << YAML::Value << s.z;
        } else if constexpr (std::is_same_v<T, TabulatedCurve>) {
          e << YAML::Key << "type" << YAML::Value << "tabulated";
          e << YAML::Key << "t" << YAML::Value << YAML::Flow << s.t;
          e << YAML::Key << "f" << YAML::Value << YAML::Flow << s.f;
        } else {
          throw ConfigError("custom curves cannot be serialised");
        }
      },
      c);
  e << YAML::EndMap;
}

template <class T>
void write_opt(YAML::Emitter& e, const char* key, const std::optional<T>& v) {
  if (v) e << YAML::Key << key << YAML::Value << *v;
}

}  // namespace

ScenarioConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& ex) {
    throw ConfigError(std::string("yaml: ") + ex.what());
  }
  const std::string w = "config";
  only_keys(root, w,
            {"name", "kind", "anchor", "formula", "expected", "creep_time_law", "process", "analytic_process",
             "curve", "analytic_curve", "windows", "ou", "grid", "mc", "acceptance", "quadrature"});
  ScenarioConfig c;
  c.name = get<std::string>(root, "name", w);
  c.kind = read_kind(get<std::string>(root, "kind", w));
  c.anchor = get<std::string>(root, "anchor", w);
  c.formula = get_or<std::string>(root, "formula", "none", w);
  c.expected = get_opt<double>(root, "expected", w);
  c.creep_time_law = get_or<std::string>(root, "creep_time_law", "", w);

  if (c.kind == ScenarioKind::Curve || c.kind == ScenarioKind::Tanaka) {
    c.process = read_process(root["process"], "process");
    c.curve = read_curve(root["curve"], "curve");
  } else if (c.kind == ScenarioKind::GridSupremum) {
    c.curve = read_curve(root["curve"], "curve");
  }
  if (root["analytic_process"]) c.analytic_process = read_process(root["analytic_process"], "analytic_process");
  if (root["analytic_curve"]) c.analytic_curve = read_curve(root["analytic_curve"], "analytic_curve");

  if (const auto n = root["windows"]) {
    only_keys(n, "windows", {"u0", "u1", "t0", "t1"});
    c.windows.u0 = get_or<double>(n, "u0", 0.0, "windows");
    c.windows.u1 = get_or<double>(n, "u1", kInf, "windows");
    c.windows.t0 = get_or<double>(n, "t0", 0.0, "windows");
    c.windows.t1 = get_or<double>(n, "t1", kInf, "windows");
  }
  if (const auto n = root["ou"]) {
    only_keys(n, "ou", {"gamma", "z", "x", "noise"});
    c.ou.gamma = get<double>(n, "gamma", "ou");
    c.ou.z = get<double>(n, "z", "ou");
    c.ou_target.x = get<double>(n, "x", "ou");
    const JumpLaw noise = read_jumps(n["noise"], "ou.noise");
    const auto* ts = std::get_if<TwoSidedStable>(&noise);
    if (!ts) throw ConfigError("ou.noise: must be two_sided_stable");
    c.ou.noise = *ts;
  } else if (c.kind == ScenarioKind::Ou) {
    throw ConfigError("config: missing 'ou'");
  }
  if (const auto n = root["grid"]) {
    only_keys(n, "grid", {"mu", "dt_coarse", "dt_fine", "delta_factor"});
    c.grid.mu = get_or<double>(n, "mu", 0.0, "grid");
    c.grid.dt_coarse = get<double>(n, "dt_coarse", "grid");
    c.grid.dt_fine = get<double>(n, "dt_fine", "grid");
    c.grid.delta_factor = get_or<double>(n, "delta_factor", 3.0, "grid");
  }
  if (const auto n = root["mc"]) {
    only_keys(n, "mc", {"paths", "eps", "horizon", "seed"});
    c.n_paths = get_or<std::uint64_t>(n, "paths", c.n_paths, "mc");
    c.eps = get_or<double>(n, "eps", 0.0, "mc");
    c.horizon = get_or<double>(n, "horizon", c.horizon, "mc");
    c.seed = get_or<std::uint64_t>(n, "seed", c.seed, "mc");
  }
  if (const auto n = root["acceptance"]) {
    const std::string a = "acceptance";
    only_keys(n, a, {"fraction_lo", "fraction_hi", "analytic_tol", "ks_threshold", "min_fraction"});
    c.acceptance.fraction_lo = get_opt<double>(n, "fraction_lo", a);
    c.acceptance.fraction_hi = get_opt<double>(n, "fraction_hi", a);
    c.acceptance.analytic_tol = get_opt<double>(n, "analytic_tol", a);
    c.acceptance.ks_threshold = get_opt<double>(n, "ks_threshold", a);
    c.acceptance.min_fraction = get_opt<double>(n, "min_fraction", a);
  }
  if (const auto n = root["quadrature"]) {
    only_keys(n, "quadrature", {"abs_tol", "max_panels"});
    c.quadrature.abs_tol = get_or<double>(n, "abs_tol", c.quadrature.abs_tol, "quadrature");
    c.quadrature.max_panels = get_or<int>(n, "max_panels", c.quadrature.max_panels, "quadrature");
  }
  if (c.eps > 0) apply_eps(c, c.eps);
  const auto v = validate_config(c);
  if (!v.empty()) throw ConfigError(c.name + ": " + v.front());
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  YAML::Emitter e;
  e.SetDoublePrecision(17);
  e << YAML::BeginMap;
  e << YAML::Key << "name" << YAML::Value << c.name;
  e << YAML::Key << "kind" << YAML::Value << to_string(c.kind);
  e << YAML::Key << "anchor" << YAML::Value << YAML::DoubleQuoted << c.anchor;
  e << YAML::Key << "formula" << YAML::Value << c.formula;
  write_opt(e, "expected", c.expected);
  if (!c.creep_time_law.empty()) e << YAML::Key << "creep_time_law" << YAML::Value << c.creep_time_law;
  if (c.kind == ScenarioKind::Curve || c.kind == ScenarioKind::Tanaka) {
    e << YAML::Key << "process" << YAML::Value;
    write_process(e, c.process);
  }
  if (c.analytic_process) {
    e << YAML::Key << "analytic_process" << YAML::Value;
    write_process(e, *c.analytic_process);
  }
  if (c.kind != ScenarioKind::Ou) {
    e << YAML::Key << "curve" << YAML::Value;
    write_curve(e, c.curve);
  }
  if (c.analytic_curve) {
    e << YAML::Key << "analytic_curve" << YAML::Value;
    write_curve(e, *c.analytic_curve);
  }
  if (!c.windows.trivial()) {
    e << YAML::Key << "windows" << YAML::Value << YAML::Flow << YAML::BeginMap;
    e << YAML::Key << "u0" << YAML::Value << c.windows.u0 << YAML::Key << "u1" << YAML::Value << c.windows.u1;
    e << YAML::Key << "t0" << YAML::Value << c.windows.t0 << YAML::Key << "t1" << YAML::Value << c.windows.t1;
    e << YAML::EndMap;
  }
  if (c.kind == ScenarioKind::Ou) {
    e << YAML::Key << "ou" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "gamma" << YAML::Value << c.ou.gamma;
    e << YAML::Key << "z" << YAML::Value << c.ou.z;
    e << YAML::Key << "x" << YAML::Value << c.ou_target.x;
    e << YAML::Key << "noise" << YAML::Value;
    write_jumps(e, c.ou.noise);
    e << YAML::EndMap;
  }
  if (c.kind == ScenarioKind::GridSupremum) {
    e << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "mu" << YAML::Value << c.grid.mu;
    e << YAML::Key << "dt_coarse" << YAML::Value << c.grid.dt_coarse;
    e << YAML::Key << "dt_fine" << YAML::Value << c.grid.dt_fine;
    e << YAML::Key << "delta_factor" << YAML::Value << c.grid.delta_factor;
    e << YAML::EndMap;
  }
  e << YAML::Key << "mc" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "paths" << YAML::Value << c.n_paths;
  if (c.eps > 0) e << YAML::Key << "eps" << YAML::Value << c.eps;
  e << YAML::Key << "horizon" << YAML::Value << c.horizon;
  e << YAML::Key << "seed" << YAML::Value << c.seed;
  e << YAML::EndMap;
  const auto& a = c.acceptance;
  if (a.fraction_lo || a.fraction_hi || a.analytic_tol || a.ks_threshold || a.min_fraction) {
    e << YAML::Key << "acceptance" << YAML::Value << YAML::BeginMap;
    write_opt(e, "fraction_lo", a.fraction_lo);
    write_opt(e, "fraction_hi", a.fraction_hi);
    write_opt(e, "analytic_tol", a.analytic_tol);
    write_opt(e, "ks_threshold", a.ks_threshold);
    write_opt(e, "min_fraction", a.min_fraction);
    e << YAML::EndMap;
  }
  const QuadratureConfig dq;
  if (c.quadrature.abs_tol != dq.abs_tol || c.quadrature.max_panels != dq.max_panels) {
    e << YAML::Key << "quadrature" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "abs_tol" << YAML::Value << c.quadrature.abs_tol;
    e << YAML::Key << "max_panels" << YAML::Value << c.quadrature.max_panels;
    e << YAML::EndMap;
  }
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

namespace {

void set_eps(JumpLaw& law, double eps) {
  std::visit(
      [&](auto& j) {
        using T = std::decay_t<decltype(j)>;
        if constexpr (std::is_same_v<T, StableSubordinator> || std::is_same_v<T, GammaSubordinator> ||
                      std::is_same_v<T, TwoSidedStable>)
          j.eps = eps;
      },
      law);
}

void set_eps(ProcessConfig& p, double eps) {
  if (auto* bv = std::get_if<BvProcessSpec>(&p)) {
    set_eps(bv->jumps, eps);
    return;
  }
  auto& b = std::get<BivariateSubordinatorSpec>(p);
  if (auto* tp = std::get_if<TimeAndProcess>(&b.coupling)) set_eps(tp->z.jumps, eps);
  if (auto* in = std::get_if<Independent>(&b.coupling)) {
    set_eps(in->y.jumps, eps);
    set_eps(in->z.jumps, eps);
  }
  if (auto* bm = std::get_if<BmLadder>(&b.coupling)) bm->eps = eps;
}

}  // namespace

void apply_eps(ScenarioConfig& cfg, double eps) {
  cfg.eps = eps;
  set_eps(cfg.process, eps);
  if (cfg.analytic_process) set_eps(*cfg.analytic_process, eps);
  cfg.ou.noise.eps = eps;
}

Violations validate_config(const ScenarioConfig& c) {
  Violations v;
  if (c.name.empty()) v.push_back("name must not be empty");
  if (c.anchor.empty()) v.push_back("anchor must not be empty");
  if (c.n_paths == 0) v.push_back("paths must be >= 1");
  if (!(c.horizon > 0)) v.push_back("horizon must be > 0");
  if (c.eps < 0) v.push_back("eps must be >= 0");
  if (!(c.quadrature.abs_tol > 0)) v.push_back("quadrature.abs_tol must be > 0");
  if (c.quadrature.max_panels < 1) v.push_back("quadrature.max_panels must be >= 1");
  const bool known_formula = c.formula == "curve" || c.formula == "inverted" || c.formula == "norm" ||
                             c.formula == "upper_bound" || c.formula == "none";
  if (!known_formula) v.push_back("unknown formula '" + c.formula + "'");
  if (c.creep_time_law != "" && c.creep_time_law != "stable_example" && c.creep_time_law != "bm_example")
    v.push_back("unknown creep_time_law '" + c.creep_time_law + "'");
  auto append = [&](Violations more) { v.insert(v.end(), more.begin(), more.end()); };
  auto check_process = [&](const ProcessConfig& p) {
    std::visit([&](const auto& s) { append(validate_spec(s)); }, p);
  };
  if (c.kind == ScenarioKind::Curve || c.kind == ScenarioKind::Tanaka) {
    check_process(c.process);
    try {
      (void)Curve::from_shape(c.curve);
    } catch (const std::exception& ex) {
      v.push_back(std::string("curve: ") + ex.what());
    }
  }
  if (c.analytic_process) check_process(*c.analytic_process);
  if (c.kind == ScenarioKind::Tanaka && !std::holds_alternative<BvProcessSpec>(c.process))
    v.push_back("tanaka scenarios need a bv process");
  if (c.kind == ScenarioKind::Ou) {
    append(validate_spec(c.ou));
    if (c.ou_target.x == 0.0 || c.ou_target.x == c.ou.z) v.push_back("ou target must differ from 0 and z");
  }
  if (c.kind == ScenarioKind::GridSupremum) {
    if (!(c.grid.dt_fine > 0 && c.grid.dt_coarse > c.grid.dt_fine)) v.push_back("grid steps must be 0 < fine < coarse");
    const double ratio = c.grid.dt_coarse / c.grid.dt_fine;
    if (std::abs(ratio - std::round(ratio)) > 1e-9) v.push_back("coarse grid step must be a multiple of the fine one");
  }
  const Windows& w = c.windows;
  if (!(w.u0 >= 0 && w.u1 > w.u0 && w.t0 >= 0 && w.t1 > w.t0)) v.push_back("windows must satisfy 0 <= lo < hi");
  return v;
}

}  // namespace creep
