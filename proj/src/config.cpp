#include "pksns/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace pksns {

const char* kind_name(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Simulate: return "simulate";
    case ScenarioKind::Semigroup: return "semigroup";
    case ScenarioKind::Sweep: return "sweep";
    case ScenarioKind::Blowup: return "blowup";
    case ScenarioKind::Verify: return "verify";
  }
  return "?";
}

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : src_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& n, const std::string& msg) const {
    std::ostringstream os;
    os << src_;
    if (n.IsDefined() && n.Mark().line >= 0) os << ":" << (n.Mark().line + 1);
    os << ": " << msg;
    throw ConfigError(os.str());
  }

  void require_map(const YAML::Node& n, const std::string& where) const {
    if (!n.IsMap()) fail(n, "'" + where + "' must be a mapping");
  }

  void check_keys(const YAML::Node& n, const std::string& where, std::initializer_list<const char*> allowed) const {
    require_map(n, where);
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& kv : n) {
      const std::string key = kv.first.as<std::string>();
      if (!ok.count(key)) {
        std::string list;
        for (const auto& a : ok) list += (list.empty() ? "" : ", ") + a;
        fail(kv.first, "unknown key '" + key + "' in " + where + " (allowed: " + list + ")");
      }
    }
  }

  template <class T>
  T scalar(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, "'" + key + "' must be a scalar");
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      fail(n, "'" + key + "' has invalid value '" + n.Scalar() + "'");
    }
  }

  template <class T>
  void opt(const YAML::Node& parent, const char* key, T& out) const {
    const YAML::Node n = parent[key];
    if (n) out = scalar<T>(n, key);
  }

  template <class T>
  void opt_list(const YAML::Node& parent, const char* key, std::vector<T>& out) const {
    const YAML::Node n = parent[key];
    if (!n) return;
    if (!n.IsSequence()) fail(n, std::string("'") + key + "' must be a list");
    out.clear();
    for (const auto& e : n) out.push_back(scalar<T>(e, key));
  }

  const std::string& source() const { return src_; }

 private:
  std::string src_;
};

void read_grid(const Reader& r, const YAML::Node& n, GridSpec& g) {
  r.check_keys(n, "grid", {"nx", "ny", "ly", "dealias_fraction"});
  r.opt(n, "nx", g.nx);
  r.opt(n, "ny", g.ny);
  r.opt(n, "ly", g.ly);
  r.opt(n, "dealias_fraction", g.dealias_fraction);
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    r.fail(n, std::string("grid: ") + e.what());
  }
}

void read_params(const Reader& r, const YAML::Node& n, ScenarioConfig& c) {
  r.check_keys(n, "params", {"a", "horizon", "eps0", "c0_semigroup", "linf_cap", "dt_min", "cfl", "dt_max",
                             "fixed_dt", "max_steps", "negativity_tol", "terms"});
  PhysParams& p = c.params;
  r.opt(n, "a", p.a);
  if (n["horizon"]) {
    r.opt(n, "horizon", p.horizon);
    c.horizon_given = true;
  }
  r.opt(n, "eps0", p.eps0);
  r.opt(n, "c0_semigroup", p.c0_semigroup);
  r.opt(n, "linf_cap", p.linf_cap);
  r.opt(n, "dt_min", p.dt_min);
  r.opt(n, "cfl", c.stepper.cfl);
  r.opt(n, "dt_max", c.stepper.dt_max);
  r.opt(n, "fixed_dt", c.stepper.fixed_dt);
  r.opt(n, "max_steps", c.stepper.max_steps);
  r.opt(n, "negativity_tol", c.stepper.negativity_tol);
  if (const YAML::Node t = n["terms"]) {
    r.check_keys(t, "params.terms", {"diffusion", "shear", "chemotaxis", "advection", "buoyancy"});
    r.opt(t, "diffusion", p.terms.diffusion);
    r.opt(t, "shear", p.terms.shear);
    r.opt(t, "chemotaxis", p.terms.chemotaxis);
    r.opt(t, "advection", p.terms.advection);
    r.opt(t, "buoyancy", p.terms.buoyancy);
  }
  if (!(p.a > 0.0)) r.fail(n["a"], "params.a must be positive");
  if (!(c.stepper.cfl > 0.0)) r.fail(n["cfl"], "params.cfl must be positive");
  if (!(c.stepper.dt_max > 0.0)) r.fail(n["dt_max"], "params.dt_max must be positive");
}

void read_recipe(const Reader& r, const YAML::Node& n, const std::string& where, InitialRecipe& rec) {
  if (n.IsScalar() && n.as<std::string>() == "zero") {
    rec.kind = "zero";
    return;
  }
  r.require_map(n, where);
  if (n.size() != 1) r.fail(n, where + " must contain exactly one recipe");
  const std::string kind = n.begin()->first.as<std::string>();
  const YAML::Node b = n.begin()->second;
  rec.kind = kind;
  if (kind == "zero") return;
  if (kind == "gaussian_blob") {
    r.check_keys(b, where + ".gaussian_blob", {"mass", "center_x", "center_y", "width"});
    r.opt(b, "mass", rec.mass);
    r.opt(b, "center_x", rec.center_x);
    r.opt(b, "center_y", rec.center_y);
    r.opt(b, "width", rec.width);
    if (!(rec.mass > 0.0)) r.fail(b, where + ": gaussian_blob.mass must be positive");
    if (!(rec.width > 0.0)) r.fail(b, where + ": gaussian_blob.width must be positive");
  } else if (kind == "mode_product") {
    r.check_keys(b, where + ".mode_product", {"kx", "basis", "y_profile", "amplitude", "x_norm", "x_norm_threshold_scale"});
    r.opt_list(b, "kx", rec.kx);
    r.opt(b, "basis", rec.basis);
    r.opt(b, "amplitude", rec.amplitude);
    r.opt(b, "x_norm", rec.x_norm);
    r.opt(b, "x_norm_threshold_scale", rec.x_norm_threshold_scale);
    if (const YAML::Node y = b["y_profile"]) {
      r.check_keys(y, where + ".mode_product.y_profile", {"kind", "width", "center"});
      r.opt(y, "kind", rec.y_profile.kind);
      r.opt(y, "width", rec.y_profile.width);
      r.opt(y, "center", rec.y_profile.center);
      if (rec.y_profile.kind != "gaussian" && rec.y_profile.kind != "constant")
        r.fail(y, "y_profile.kind must be gaussian or constant");
      if (!(rec.y_profile.width > 0.0)) r.fail(y, "y_profile.width must be positive");
    }
    if (rec.kx.empty()) r.fail(b, where + ": mode_product.kx must list at least one wavenumber");
    if (rec.basis != "sin" && rec.basis != "cos") r.fail(b, where + ": mode_product.basis must be sin or cos");
    if (rec.x_norm > 0.0 && rec.x_norm_threshold_scale > 0.0)
      r.fail(b, where + ": give at most one of x_norm and x_norm_threshold_scale");
  } else if (kind == "from_snapshot") {
    r.check_keys(b, where + ".from_snapshot", {"path"});
    r.opt(b, "path", rec.path);
    if (rec.path.empty()) r.fail(b, where + ": from_snapshot.path is required");
  } else {
    r.fail(n, "unknown initial-data recipe '" + kind + "' in " + where +
                  " (allowed: zero, gaussian_blob, mode_product, from_snapshot)");
  }
}

ScenarioKind parse_kind(const Reader& r, const YAML::Node& n) {
  const std::string k = r.scalar<std::string>(n, "kind");
  if (k == "simulate") return ScenarioKind::Simulate;
  if (k == "semigroup") return ScenarioKind::Semigroup;
  if (k == "sweep") return ScenarioKind::Sweep;
  if (k == "blowup") return ScenarioKind::Blowup;
  if (k == "verify") return ScenarioKind::Verify;
  r.fail(n, "unknown kind '" + k + "' (allowed: simulate, semigroup, sweep, blowup, verify)");
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& source) {
  Reader r(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": YAML syntax error: " + e.msg);
  }
  if (!root || root.IsNull()) throw ConfigError(source + ": empty configuration");
  r.check_keys(root, "top level",
               {"kind", "grid", "params", "initial", "diagnostics", "seed", "sweep", "semigroup", "blowup", "verify"});
  ScenarioConfig c;
  c.source = source;
  if (!root["kind"]) throw ConfigError(source + ": missing required key 'kind'");
  c.kind = parse_kind(r, root["kind"]);
  if (const YAML::Node g = root["grid"]) read_grid(r, g, c.grid);
  if (const YAML::Node p = root["params"]) read_params(r, p, c);
  if (const YAML::Node i = root["initial"]) {
    r.check_keys(i, "initial", {"n", "omega"});
    if (i["n"]) read_recipe(r, i["n"], "initial.n", c.n_init);
    if (i["omega"]) read_recipe(r, i["omega"], "initial.omega", c.omega_init);
  }
  if (const YAML::Node d = root["diagnostics"]) {
    r.check_keys(d, "diagnostics", {"interval", "snapshot_interval", "check_elliptic", "check_mode_oracle"});
    r.opt(d, "interval", c.stepper.diag_interval);
    r.opt(d, "snapshot_interval", c.stepper.snapshot_interval);
    r.opt(d, "check_elliptic", c.diag.check_elliptic);
    r.opt(d, "check_mode_oracle", c.diag.check_mode_oracle);
  }
  r.opt(root, "seed", c.seed);
  if (const YAML::Node s = root["sweep"]) {
    r.check_keys(s, "sweep", {"a_values", "omega_scales", "masses"});
    r.opt_list(s, "a_values", c.sweep.a_values);
    r.opt_list(s, "omega_scales", c.sweep.omega_scales);
    r.opt_list(s, "masses", c.sweep.masses);
    for (double m : c.sweep.masses)
      if (!(m > 0.0)) r.fail(s["masses"], "sweep.masses must be positive");
  }
  if (const YAML::Node s = root["semigroup"]) {
    r.check_keys(s, "semigroup", {"a_values", "operators", "horizon_factor", "samples", "diffusion"});
    r.opt_list(s, "a_values", c.semigroup.a_values);
    r.opt_list(s, "operators", c.semigroup.operators);
    r.opt(s, "horizon_factor", c.semigroup.horizon_factor);
    r.opt(s, "samples", c.semigroup.samples);
    r.opt(s, "diffusion", c.semigroup.diffusion);
    for (const auto& op : c.semigroup.operators)
      if (op != "L" && op != "L_tilde") r.fail(s["operators"], "semigroup.operators entries must be L or L_tilde");
    for (double a : c.semigroup.a_values)
      if (!(a > M_E)) r.fail(s["a_values"], "semigroup.a_values must exceed e");
    if (c.semigroup.samples < 2) r.fail(s["samples"], "semigroup.samples must be >= 2");
  }
  if (const YAML::Node b = root["blowup"]) {
    r.check_keys(b, "blowup", {"mass", "width", "flow_off_horizon", "flow_on_horizon", "linf_cap_factor",
                               "flow_off_negativity_tol", "a_low", "a_high", "bisection_steps", "bisection_nx", "bisection_ny", "max_growth"});
    BlowupSpec& s = c.blowup;
    r.opt(b, "mass", s.mass);
    r.opt(b, "width", s.width);
    r.opt(b, "flow_off_horizon", s.flow_off_horizon);
    r.opt(b, "flow_on_horizon", s.flow_on_horizon);
    r.opt(b, "linf_cap_factor", s.linf_cap_factor);
    r.opt(b, "flow_off_negativity_tol", s.flow_off_negativity_tol);
    r.opt(b, "a_low", s.a_low);
    r.opt(b, "a_high", s.a_high);
    r.opt(b, "bisection_steps", s.bisection_steps);
    r.opt(b, "bisection_nx", s.bisection_nx);
    r.opt(b, "bisection_ny", s.bisection_ny);
    r.opt(b, "max_growth", s.max_growth);
    if (!(s.mass > 0.0)) r.fail(b, "blowup.mass must be positive");
    if (!(s.flow_off_negativity_tol > 0.0)) r.fail(b, "blowup.flow_off_negativity_tol must be positive");
    if (!(s.a_low > M_E && s.a_high > s.a_low)) r.fail(b, "blowup requires e < a_low < a_high");
  }
  if (const YAML::Node v = root["verify"]) {
    r.check_keys(v, "verify", {"count", "theta", "resolution_study"});
    r.opt(v, "count", c.verify.count);
    r.opt(v, "theta", c.verify.theta);
    r.opt(v, "resolution_study", c.verify.resolution_study);
    if (c.verify.count < 1) r.fail(v["count"], "verify.count must be >= 1");
  }
  c.resolve();
  return c;
}

void ScenarioConfig::resolve() {
  if (!horizon_given) {
    if (params.a > M_E) params.horizon = std::pow(lambda_A(params.a), -0.25);
    else params.horizon = 1.0;
  }
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source + ": " + e.what());
  }
  if (stepper.diag_interval < 0.0 || stepper.snapshot_interval < 0.0)
    throw ConfigError(source + ": diagnostic intervals must be nonnegative");
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str(), path);
}

namespace {

void emit_recipe(YAML::Emitter& e, const InitialRecipe& r) {
  if (r.kind == "zero") {
    e << "zero";
    return;
  }
  e << YAML::BeginMap << YAML::Key << r.kind << YAML::Value << YAML::BeginMap;
  if (r.kind == "gaussian_blob") {
    e << YAML::Key << "mass" << YAML::Value << r.mass << YAML::Key << "center_x" << YAML::Value << r.center_x
      << YAML::Key << "center_y" << YAML::Value << r.center_y << YAML::Key << "width" << YAML::Value << r.width;
  } else if (r.kind == "mode_product") {
    e << YAML::Key << "kx" << YAML::Value << YAML::Flow << r.kx << YAML::Key << "basis" << YAML::Value << r.basis;
    e << YAML::Key << "y_profile" << YAML::Value << YAML::BeginMap << YAML::Key << "kind" << YAML::Value
      << r.y_profile.kind << YAML::Key << "width" << YAML::Value << r.y_profile.width << YAML::Key << "center"
      << YAML::Value << r.y_profile.center << YAML::EndMap;
    e << YAML::Key << "amplitude" << YAML::Value << r.amplitude;
    if (r.x_norm > 0.0) e << YAML::Key << "x_norm" << YAML::Value << r.x_norm;
    if (r.x_norm_threshold_scale > 0.0)
      e << YAML::Key << "x_norm_threshold_scale" << YAML::Value << r.x_norm_threshold_scale;
  } else if (r.kind == "from_snapshot") {
    e << YAML::Key << "path" << YAML::Value << r.path;
  }
  e << YAML::EndMap << YAML::EndMap;
}

}  // namespace

std::string dump_config(const ScenarioConfig& c) {
  YAML::Emitter e;
  e.SetDoublePrecision(17);
  e << YAML::BeginMap;
  e << YAML::Key << "kind" << YAML::Value << kind_name(c.kind);
  e << YAML::Key << "grid" << YAML::Value << YAML::BeginMap << YAML::Key << "nx" << YAML::Value << c.grid.nx
    << YAML::Key << "ny" << YAML::Value << c.grid.ny << YAML::Key << "ly" << YAML::Value << c.grid.ly << YAML::Key
    << "dealias_fraction" << YAML::Value << c.grid.dealias_fraction << YAML::EndMap;
  const PhysParams& p = c.params;
  e << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "a" << YAML::Value << p.a << YAML::Key << "horizon" << YAML::Value << p.horizon;
  e << YAML::Key << "eps0" << YAML::Value << p.eps0 << YAML::Key << "c0_semigroup" << YAML::Value << p.c0_semigroup;
  e << YAML::Key << "linf_cap" << YAML::Value << p.linf_cap << YAML::Key << "dt_min" << YAML::Value << p.dt_min;
  e << YAML::Key << "cfl" << YAML::Value << c.stepper.cfl << YAML::Key << "dt_max" << YAML::Value << c.stepper.dt_max;
  e << YAML::Key << "fixed_dt" << YAML::Value << c.stepper.fixed_dt << YAML::Key << "max_steps" << YAML::Value
    << c.stepper.max_steps << YAML::Key << "negativity_tol" << YAML::Value << c.stepper.negativity_tol;
  e << YAML::Key << "terms" << YAML::Value << YAML::BeginMap << YAML::Key << "diffusion" << YAML::Value
    << p.terms.diffusion << YAML::Key << "shear" << YAML::Value << p.terms.shear << YAML::Key << "chemotaxis"
    << YAML::Value << p.terms.chemotaxis << YAML::Key << "advection" << YAML::Value << p.terms.advection
    << YAML::Key << "buoyancy" << YAML::Value << p.terms.buoyancy << YAML::EndMap;
  e << YAML::EndMap;
  e << YAML::Key << "initial" << YAML::Value << YAML::BeginMap << YAML::Key << "n" << YAML::Value;
  emit_recipe(e, c.n_init);
  e << YAML::Key << "omega" << YAML::Value;
  emit_recipe(e, c.omega_init);
  e << YAML::EndMap;
  e << YAML::Key << "diagnostics" << YAML::Value << YAML::BeginMap << YAML::Key << "interval" << YAML::Value
    << c.stepper.diag_interval << YAML::Key << "snapshot_interval" << YAML::Value << c.stepper.snapshot_interval
    << YAML::Key << "check_elliptic" << YAML::Value << c.diag.check_elliptic << YAML::Key << "check_mode_oracle"
    << YAML::Value << c.diag.check_mode_oracle << YAML::EndMap;
  e << YAML::Key << "seed" << YAML::Value << c.seed;
  switch (c.kind) {
    case ScenarioKind::Sweep:
      e << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap << YAML::Key << "a_values" << YAML::Value
        << YAML::Flow << c.sweep.a_values << YAML::Key << "omega_scales" << YAML::Value << YAML::Flow
        << c.sweep.omega_scales << YAML::Key << "masses" << YAML::Value << YAML::Flow << c.sweep.masses
        << YAML::EndMap;
      break;
    case ScenarioKind::Semigroup:
      e << YAML::Key << "semigroup" << YAML::Value << YAML::BeginMap << YAML::Key << "a_values" << YAML::Value
        << YAML::Flow << c.semigroup.a_values << YAML::Key << "operators" << YAML::Value << YAML::Flow
        << c.semigroup.operators << YAML::Key << "horizon_factor" << YAML::Value << c.semigroup.horizon_factor
        << YAML::Key << "samples" << YAML::Value << c.semigroup.samples << YAML::Key << "diffusion" << YAML::Value
        << c.semigroup.diffusion << YAML::EndMap;
      break;
    case ScenarioKind::Blowup: {
      const BlowupSpec& b = c.blowup;
      e << YAML::Key << "blowup" << YAML::Value << YAML::BeginMap;
      e << YAML::Key << "mass" << YAML::Value << b.mass << YAML::Key << "width" << YAML::Value << b.width;
      e << YAML::Key << "flow_off_horizon" << YAML::Value << b.flow_off_horizon << YAML::Key << "flow_on_horizon"
        << YAML::Value << b.flow_on_horizon << YAML::Key << "linf_cap_factor" << YAML::Value << b.linf_cap_factor;
      e << YAML::Key << "flow_off_negativity_tol" << YAML::Value << b.flow_off_negativity_tol;
      e << YAML::Key << "a_low" << YAML::Value << b.a_low << YAML::Key << "a_high" << YAML::Value << b.a_high;
      e << YAML::Key << "bisection_steps" << YAML::Value << b.bisection_steps << YAML::Key << "bisection_nx"
        << YAML::Value << b.bisection_nx << YAML::Key << "bisection_ny" << YAML::Value << b.bisection_ny
        << YAML::Key << "max_growth" << YAML::Value << b.max_growth;
      e << YAML::EndMap;
      break;
    }
    case ScenarioKind::Verify:
      e << YAML::Key << "verify" << YAML::Value << YAML::BeginMap << YAML::Key << "count" << YAML::Value
        << c.verify.count << YAML::Key << "theta" << YAML::Value << c.verify.theta << YAML::Key
        << "resolution_study" << YAML::Value << c.verify.resolution_study << YAML::EndMap;
      break;
    case ScenarioKind::Simulate: break;
  }
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

}  // namespace pksns
