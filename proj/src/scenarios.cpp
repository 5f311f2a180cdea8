#include "pksns/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "pksns/corpus.hpp"
#include "pksns/norms.hpp"
#include "pksns/snapshot.hpp"

namespace fs = std::filesystem;

namespace pksns {

int exit_code_for(Outcome o) {
  switch (o) {
    case Outcome::Completed: return kExitOk;
    case Outcome::BlowUp:
    case Outcome::DtCollapse: return kExitBlowUp;
    case Outcome::UnderResolved: return kExitNumerical;
  }
  return kExitNumerical;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  const int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// ------------------------------------------------------------- initial data

ScalarField make_recipe_field(const InitialRecipe& r, const GridPtr& grid, double a) {
  if (r.kind == "zero") return ScalarField(grid);
  if (r.kind == "gaussian_blob") {
    const double w2 = 2.0 * r.width * r.width;
    ScalarField f = ScalarField::from_function(grid, [&](double x, double y) {
      double sx = 0.0;
      for (int k = -3; k <= 3; ++k) {
        const double d = x - r.center_x + 2.0 * M_PI * k;
        sx += std::exp(-d * d / w2);
      }
      const double dy = y - r.center_y;
      return sx * std::exp(-dy * dy / w2);
    });
    f *= r.mass / integral(f);
    return f;
  }
  if (r.kind == "mode_product") {
    const YProfile yp = r.y_profile;
    ScalarField f = ScalarField::from_function(grid, [&](double x, double y) {
      double sx = 0.0;
      for (int k : r.kx) sx += r.basis == "sin" ? std::sin(k * x) : std::cos(k * x);
      double py = 1.0;
      if (yp.kind == "gaussian") {
        const double z = (y - yp.center) / yp.width;
        py = std::exp(-0.5 * z * z);
      }
      return r.amplitude * sx * py;
    });
    double target = 0.0;
    if (r.x_norm > 0.0) target = r.x_norm;
    if (r.x_norm_threshold_scale > 0.0) target = r.x_norm_threshold_scale * std::pow(a, -0.75);
    if (target > 0.0) {
      const double cur = norm_x(f);
      if (cur == 0.0) throw ConfigError("mode_product: cannot rescale a field with zero X norm");
      f *= target / cur;
    }
    return f;
  }
  throw ConfigError("recipe '" + r.kind + "' cannot be sampled directly");
}

State build_initial_state(const ScenarioConfig& cfg, const GridPtr& grid) {
  double t0 = 0.0;
  ScalarField n, w;
  Snapshot snap;
  bool have_snap = false;
  auto load = [&](const std::string& path) {
    if (!have_snap) {
      snap = read_snapshot(path);
      have_snap = true;
      if (snap.nx != grid->nx() || snap.ny != grid->ny() || snap.ly != grid->ly())
        throw ConfigError("snapshot " + path + " does not match the configured grid");
    }
  };
  if (cfg.n_init.kind == "from_snapshot") {
    load(cfg.n_init.path);
    n = ScalarField(grid, snap.n);
    t0 = snap.t;
  } else {
    n = make_recipe_field(cfg.n_init, grid, cfg.params.a);
  }
  if (cfg.omega_init.kind == "from_snapshot") {
    load(cfg.omega_init.path);
    w = ScalarField(grid, snap.omega);
    t0 = snap.t;
  } else {
    w = make_recipe_field(cfg.omega_init, grid, cfg.params.a);
  }
  return make_state(t0, n, w);
}

// --------------------------------------------------------------- simulate

namespace {

std::string snap_name(int k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06d.bin", k);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

}  // namespace

SimulationResult run_simulation(const ScenarioConfig& cfg, const std::string& out_dir) {
  const GridPtr grid = make_grid(cfg.grid);
  return run_simulation(cfg, build_initial_state(cfg, grid), out_dir);
}

SimulationResult run_simulation(const ScenarioConfig& cfg, const State& initial, const std::string& out_dir) {
  if (!out_dir.empty()) fs::create_directories(out_dir);
  SimulationResult res{RunOutcome{}, DiagSeries(cfg.params, cfg.diag), BootstrapReport{}};
  std::unique_ptr<BootstrapMonitor> monitor;
  double last_dt = 0.0;
  int snap_index = 0;

  RunCallbacks cb;
  cb.on_diag = [&](const State& s, const FlowStats&) {
    const DiagPoint& p = res.series.observe(s, last_dt);
    if (!(cfg.params.a > M_E)) return;  // bootstrap quantities need lambda_A
    if (!monitor) monitor = std::make_unique<BootstrapMonitor>(make_refs(p, cfg.params));
    monitor->observe(p);
  };
  cb.on_step = [&](const State&, double dt) { last_dt = dt; };
  if (!out_dir.empty() && cfg.stepper.snapshot_interval > 0.0) {
    cb.on_snapshot = [&](const State& s) {
      write_snapshot((fs::path(out_dir) / snap_name(snap_index++)).string(), snapshot_from_state(s, cfg.params.a));
    };
  }

  res.outcome = integrate(initial, cfg.params, cfg.stepper, cb);
  if (monitor) res.bootstrap = monitor->report();

  if (!out_dir.empty()) {
    const fs::path dir(out_dir);
    write_diag_csv((dir / "diag.csv").string(), res.series, cfg.params);
    if (monitor)
      write_json((dir / "bootstrap.json").string(), to_json(res.bootstrap));
    else
      write_json((dir / "bootstrap.json").string(),
                 Json{{"evaluated", false}, {"reason", "lambda_A undefined for A <= e"}});
    Json o = to_json(res.outcome);
    o["t_phys"] = res.outcome.t / cfg.params.a;
    o["max_mass_drift"] = res.series.max_mass_drift();
    o["boundary_flagged"] = res.series.boundary_flagged();
    o["snapshots"] = snap_index;
    write_json((dir / "outcome.json").string(), o);
    write_text((dir / "config.yaml").string(), dump_config(cfg));
  }
  return res;
}

// -------------------------------------------------------------- semigroup

namespace {

ScalarField semigroup_initial(const ScenarioConfig& cfg, const GridPtr& grid) {
  if (cfg.omega_init.kind == "mode_product") return make_recipe_field(cfg.omega_init, grid, cfg.params.a);
  return ScalarField::from_function(grid, [](double x, double y) { return std::sin(x) * std::exp(-0.5 * y * y); });
}

}  // namespace

Json run_semigroup_scenario(const ScenarioConfig& cfg, int threads) {
  const GridPtr grid = make_grid(cfg.grid);
  const ScalarField f_in = semigroup_initial(cfg, grid);
  const SemigroupSpec& sp = cfg.semigroup;

  struct Cell {
    double a;
    LinearOperator op;
    LinearRun run;
    DecayFit fit;
    EnvelopeCheck env;
  };
  std::vector<Cell> cells;
  for (double a : sp.a_values)
    for (const auto& op : sp.operators) cells.push_back({a, parse_operator(op), {}, {}, {}});

  parallel_for(static_cast<int>(cells.size()), threads, [&](int i) {
    Cell& c = cells[i];
    LinearOptions lo;
    lo.a = c.a;
    lo.horizon = sp.horizon_factor / lambda_A(c.a);
    lo.sample_interval = lo.horizon / sp.samples;
    lo.cfl = cfg.stepper.cfl;
    lo.diffusion = sp.diffusion;
    c.run = evolve_linear(f_in, c.op, lo);
    c.fit = fit_decay_rate(c.run.x_norm);
    c.env = envelope_check(c.run.x_norm, c.a, 10.0, 0.1);
  });

  Json out;
  out["initial_x_norm"] = norm_x(f_in);
  Json jc = Json::array();
  std::vector<double> scaled;
  bool envelope_all = true;
  for (const Cell& c : cells) {
    const double lam = lambda_A(c.a);
    const double s = c.fit.rate * std::sqrt(c.a) * std::log(c.a);
    if (c.op == LinearOperator::LTilde) {
      scaled.push_back(s);
      envelope_all = envelope_all && c.env.pass;
    }
    jc.push_back({{"a", c.a},
                  {"operator", operator_name(c.op)},
                  {"lambda_A", lam},
                  {"horizon", c.run.x_norm.t.back()},
                  {"dt", c.run.dt},
                  {"steps", c.run.steps},
                  {"fit", to_json(c.fit)},
                  {"rate_over_lambda", c.fit.rate / lam},
                  {"scaled_rate", s},
                  {"envelope", to_json(c.env)},
                  {"series", to_json(c.run.x_norm)}});
  }
  out["cells"] = jc;
  if (!scaled.empty()) {
    const auto [mn, mx] = std::minmax_element(scaled.begin(), scaled.end());
    out["scaled_rate_spread"] = *mn > 0.0 ? *mx / *mn : std::numeric_limits<double>::infinity();
    out["scaling_pass"] = *mn > 0.0 && *mx / *mn <= 4.0;
  }
  out["envelope_pass"] = envelope_all;
  // L versus L_tilde at equal A (reported, not asserted)
  Json cmp = Json::array();
  for (const Cell& a : cells) {
    if (a.op != LinearOperator::LTilde) continue;
    for (const Cell& b : cells) {
      if (b.op != LinearOperator::L || b.a != a.a) continue;
      const double ratio = a.fit.rate != 0.0 ? b.fit.rate / a.fit.rate : 0.0;
      cmp.push_back({{"a", a.a},
                     {"rate_L", b.fit.rate},
                     {"rate_L_tilde", a.fit.rate},
                     {"ratio", ratio},
                     {"at_least_0_8", ratio >= 0.8},
                     {"strictly_faster", ratio > 1.0}});
    }
  }
  out["L_vs_L_tilde"] = cmp;
  return out;
}

// ------------------------------------------------------------------ sweep

namespace {

ScenarioConfig cell_config(const ScenarioConfig& base, double a, double omega_scale, double mass) {
  ScenarioConfig c = base;
  c.kind = ScenarioKind::Simulate;
  c.params.a = a;
  if (!base.horizon_given) c.params.horizon = std::pow(lambda_A(a), -0.25);
  c.n_init.kind = "gaussian_blob";
  c.n_init.mass = mass;
  if (base.n_init.kind != "gaussian_blob") {
    c.n_init.width = 1.0;
    c.n_init.center_x = M_PI;
    c.n_init.center_y = 0.0;
  }
  if (base.omega_init.kind != "mode_product") {
    c.omega_init = InitialRecipe{};
    c.omega_init.kind = "mode_product";
    c.omega_init.kx = {1};
    c.omega_init.basis = "sin";
  }
  c.omega_init.x_norm = 0.0;
  c.omega_init.x_norm_threshold_scale = omega_scale;
  if (omega_scale <= 0.0) c.omega_init.kind = "zero";
  c.stepper.snapshot_interval = 0.0;
  return c;
}

}  // namespace

Json run_sweep_scenario(const ScenarioConfig& cfg, const std::string& out_dir, int threads) {
  const SweepSpec& sw = cfg.sweep;
  if (sw.a_values.empty() || sw.omega_scales.empty() || sw.masses.empty())
    throw ConfigError(cfg.source + ": sweep needs non-empty a_values, omega_scales and masses");
  struct Cell {
    double a, scale, mass;
    RunOutcome outcome;
    bool bootstrap_ok = false;
    double growth = 0.0;
  };
  std::vector<Cell> cells;
  for (double m : sw.masses)
    for (double s : sw.omega_scales)
      for (double a : sw.a_values) cells.push_back({a, s, m, {}, false, 0.0});

  parallel_for(static_cast<int>(cells.size()), threads, [&](int i) {
    Cell& c = cells[i];
    char name[32];
    std::snprintf(name, sizeof name, "cell_%03d", i);
    const ScenarioConfig cc = cell_config(cfg, c.a, c.scale, c.mass);
    SimulationResult r = run_simulation(cc, (fs::path(out_dir) / name).string());
    r.outcome.final_state = State{};
    c.outcome = r.outcome;
    c.bootstrap_ok = r.bootstrap.all_satisfied();
    c.growth = r.bootstrap.growth_factor;
  });

  std::ofstream os((fs::path(out_dir) / "outcomes.csv").string(), std::ios::trunc);
  os << "# sweep outcomes; t_end in rescaled time, growth = max |n|_inf / max(1, |n_in|_inf)\n";
  os << "cell,a,omega_scale,mass,outcome,t_end,growth,bootstrap_all_satisfied,steps\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    os << i << ',' << fmt(c.a) << ',' << fmt(c.scale) << ',' << fmt(c.mass) << ',' << outcome_name(c.outcome.kind)
       << ',' << fmt(c.outcome.t) << ',' << fmt(c.growth) << ',' << (c.bootstrap_ok ? 1 : 0) << ','
       << c.outcome.steps << '\n';
  }

  // monotone completed/blow-up boundary in A for supercritical masses
  Json warnings = Json::array();
  for (double m : sw.masses) {
    if (m <= 8.0 * M_PI) continue;
    for (double s : sw.omega_scales) {
      std::vector<std::pair<double, bool>> line;
      for (const Cell& c : cells)
        if (c.mass == m && c.scale == s) line.emplace_back(c.a, c.outcome.kind == Outcome::Completed);
      std::sort(line.begin(), line.end());
      bool seen_ok = false;
      for (auto [a, ok] : line) {
        if (ok) seen_ok = true;
        else if (seen_ok)
          warnings.push_back({{"mass", m}, {"omega_scale", s}, {"a", a},
                              {"warning", "non-monotone outcome in A (possible resolution effect)"}});
      }
    }
  }
  Json out;
  out["cells"] = static_cast<int>(cells.size());
  out["monotonicity_warnings"] = warnings;
  return out;
}

// ----------------------------------------------------------------- blowup

namespace {

struct FlowOnTrial {
  double a = 0.0;
  int nx = 0, ny = 0;
  RunOutcome outcome;
  BootstrapReport bootstrap;
  double horizon = 0.0;
  double mass_drift = 0.0;
  bool success = false;
};

Json trial_json(const FlowOnTrial& t) {
  Json j = to_json(t.outcome);
  j["a"] = t.a;
  j["grid"] = {t.nx, t.ny};
  j["horizon"] = t.horizon;
  j["t_phys"] = t.outcome.t / t.a;
  j["growth_factor"] = t.bootstrap.growth_factor;
  j["bootstrap_all_satisfied"] = t.bootstrap.all_satisfied();
  Json w = Json::object();
  for (const auto& r : t.bootstrap.records) w[r.name] = r.worst_ratio;
  j["bootstrap_worst_ratios"] = w;
  j["max_mass_drift"] = t.mass_drift;
  j["success"] = t.success;
  return j;
}

}  // namespace

Json run_blowup_scenario(const ScenarioConfig& cfg, const std::string& out_dir, int threads) {
  const BlowupSpec& b = cfg.blowup;
  InitialRecipe blob;
  blob.kind = "gaussian_blob";
  blob.mass = b.mass;
  blob.width = b.width;
  if (cfg.n_init.kind == "gaussian_blob") {
    blob.center_x = cfg.n_init.center_x;
    blob.center_y = cfg.n_init.center_y;
  }

  // flow off: classical PKS in original time (A = 1)
  ScenarioConfig off = cfg;
  off.kind = ScenarioKind::Simulate;
  off.params.a = 1.0;
  off.params.horizon = b.flow_off_horizon;
  off.params.terms.shear = off.params.terms.advection = off.params.terms.buoyancy = false;
  off.n_init = blob;
  off.omega_init = InitialRecipe{};
  off.stepper.snapshot_interval = 0.0;
  off.stepper.negativity_tol = b.flow_off_negativity_tol;
  const GridPtr grid = make_grid(cfg.grid);
  const State off_init = build_initial_state(off, grid);
  off.params.linf_cap = b.linf_cap_factor * norm_linf(to_physical(off_init.n));

  auto flow_on = [&](double a, int nx, int ny, const std::string& dir) {
    ScenarioConfig on = cfg;
    on.kind = ScenarioKind::Simulate;
    on.grid.nx = nx;
    on.grid.ny = ny;
    on.params.a = a;
    const double window = std::pow(lambda_A(a), -0.25);
    on.params.horizon = b.flow_on_horizon > 0.0 ? std::min(window, b.flow_on_horizon) : window;
    on.n_init = blob;
    if (cfg.omega_init.kind == "mode_product") {
      on.omega_init = cfg.omega_init;
    } else {
      on.omega_init = InitialRecipe{};
      on.omega_init.kind = "mode_product";
      on.omega_init.kx = {1};
    }
    on.omega_init.x_norm = 0.0;
    on.omega_init.x_norm_threshold_scale = 1.0;
    on.stepper.snapshot_interval = 0.0;
    FlowOnTrial t;
    t.a = a;
    t.nx = nx;
    t.ny = ny;
    t.horizon = on.params.horizon;
    SimulationResult r = run_simulation(on, dir);
    r.outcome.final_state = State{};
    t.outcome = r.outcome;
    t.bootstrap = r.bootstrap;
    t.mass_drift = r.series.max_mass_drift();
    t.success = r.outcome.kind == Outcome::Completed && r.bootstrap.growth_factor <= b.max_growth &&
                r.bootstrap.all_satisfied();
    return t;
  };

  const fs::path dir(out_dir);
  SimulationResult off_res;
  const int bnx = b.bisection_nx > 0 ? b.bisection_nx : cfg.grid.nx;
  const int bny = b.bisection_ny > 0 ? b.bisection_ny : cfg.grid.ny;
  std::vector<FlowOnTrial> trials;
  // the flow-off run and the bracket ends are independent
  FlowOnTrial hi, lo;
  parallel_for(3, threads, [&](int i) {
    if (i == 0) {
      off_res = run_simulation(off, off_init, (dir / "flow_off").string());
      off_res.outcome.final_state = State{};
    } else if (i == 1) {
      hi = flow_on(b.a_high, bnx, bny, (dir / "bisect_hi").string());
    } else {
      lo = flow_on(b.a_low, bnx, bny, (dir / "bisect_lo").string());
    }
  });
  trials.push_back(lo);
  trials.push_back(hi);

  double a_found = 0.0;
  if (lo.success) {
    a_found = b.a_low;
  } else if (hi.success) {
    double a_lo = b.a_low, a_hi = b.a_high;
    for (int k = 0; k < b.bisection_steps; ++k) {
      const double mid = std::sqrt(a_lo * a_hi);
      char name[32];
      std::snprintf(name, sizeof name, "bisect_%02d", k);
      FlowOnTrial t = flow_on(mid, bnx, bny, (dir / name).string());
      trials.push_back(t);
      (t.success ? a_hi : a_lo) = mid;
    }
    a_found = a_hi;
  }

  Json out;
  Json joff = to_json(off_res.outcome);
  joff["growth"] = off_res.outcome.initial_linf_n > 0.0 ? off_res.outcome.linf_n / off_res.outcome.initial_linf_n : 0.0;
  joff["max_mass_drift"] = off_res.series.max_mass_drift();
  double undershoot = 0.0;
  for (const auto& p : off_res.series.points())
    if (p.linf_n > 0.0) undershoot = std::max(undershoot, -p.min_n / p.linf_n);
  joff["max_relative_undershoot"] = undershoot;
  joff["grid"] = {cfg.grid.nx, cfg.grid.ny};
  out["flow_off"] = joff;
  Json jt = Json::array();
  for (const auto& t : trials) jt.push_back(trial_json(t));
  out["bisection"] = jt;
  out["a_found"] = a_found;

  const bool off_blew = off_res.outcome.kind == Outcome::BlowUp || off_res.outcome.kind == Outcome::DtCollapse;
  const double off_growth = off_res.outcome.initial_linf_n > 0.0 ? off_res.outcome.linf_n / off_res.outcome.initial_linf_n : 0.0;
  bool on_ok = false;
  if (a_found > 0.0) {
    const FlowOnTrial* reuse = nullptr;
    if (bnx == cfg.grid.nx && bny == cfg.grid.ny)
      for (const auto& t : trials)
        if (t.a == a_found && t.success) reuse = &t;
    const FlowOnTrial confirm = reuse ? *reuse : flow_on(a_found, cfg.grid.nx, cfg.grid.ny, (dir / "flow_on").string());
    out["flow_on"] = trial_json(confirm);
    on_ok = confirm.success;
  }
  out["flow_off_blowup"] = off_blew && off_growth >= 100.0;
  out["flow_on_suppressed"] = on_ok;
  out["dichotomy"] = off_blew && off_growth >= 100.0 && on_ok;
  return out;
}

// ----------------------------------------------------------------- verify

namespace {

struct FieldChecks {
  double elliptic = 0.0;
  double elliptic_combined_zero = 0.0;
  double elliptic_combined_nonzero = 0.0;
  double commutator = 0.0;
  double relation_full = 0.0;
  double relation_interior = 0.0;
  double aniso = 0.0;
  double boundary = 0.0;
};

FieldChecks check_field(const ScalarField& f, double theta) {
  FieldChecks c;
  const EllipticChainReport er = check_elliptic_chains(f);
  c.elliptic = er.min_slack();
  for (const auto& ch : er.checks) {
    if (ch.name.rfind("zero: |dyy c|^2 + |dy c|^2 + |c|^2", 0) == 0) c.elliptic_combined_zero = ch.slack;
    if (ch.name.rfind("nonzero: |Lap c|^2 + |grad c|^2 + |c|^2", 0) == 0) c.elliptic_combined_nonzero = ch.slack;
  }
  const ScalarField fz = project_nonzero(f);
  c.commutator = verify_commutator(fz).min_slack();
  const CommutatorRelation rel = verify_commutator_relation(fz);
  c.relation_full = rel.full;
  c.relation_interior = rel.interior;
  c.aniso = verify_aniso_sobolev(fz, theta).ratio;
  c.boundary = boundary_mass_fraction(f, ScalarField(f.grid()));
  return c;
}

}  // namespace

Json run_verify_scenario(const ScenarioConfig& cfg, int threads) {
  const GridPtr grid = make_grid(cfg.grid);
  const int count = cfg.verify.count;
  const std::vector<ScalarField> corpus = make_corpus(grid, count, cfg.seed);
  std::vector<FieldChecks> res(count);
  parallel_for(count, threads, [&](int i) { res[i] = check_field(corpus[i], cfg.verify.theta); });

  auto col = [&](auto member) {
    Json a = Json::array();
    for (const auto& r : res) a.push_back(r.*member);
    return a;
  };
  auto min_of = [&](auto member) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : res) m = std::min(m, r.*member);
    return m;
  };
  auto max_of = [&](auto member) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& r : res) m = std::max(m, r.*member);
    return m;
  };

  Json out;
  out["grid"] = {{"nx", cfg.grid.nx}, {"ny", cfg.grid.ny}, {"ly", cfg.grid.ly}};
  out["seed"] = cfg.seed;
  out["count"] = count;
  const double el = min_of(&FieldChecks::elliptic);
  const double cm = min_of(&FieldChecks::commutator);
  const double rf = max_of(&FieldChecks::relation_full);
  const double ri = max_of(&FieldChecks::relation_interior);
  const double bd = max_of(&FieldChecks::boundary);
  out["elliptic_min_slack"] = el;
  out["elliptic_combined_zero_min_slack"] = min_of(&FieldChecks::elliptic_combined_zero);
  out["elliptic_combined_nonzero_min_slack"] = min_of(&FieldChecks::elliptic_combined_nonzero);
  out["commutator_min_slack"] = cm;
  out["relation_max_residual"] = rf;
  out["relation_max_residual_interior"] = ri;
  out["boundary_max_fraction"] = bd;
  out["aniso_theta"] = cfg.verify.theta;
  const double aniso = max_of(&FieldChecks::aniso);
  out["aniso_max_ratio"] = aniso;

  bool aniso_stable = true;
  if (cfg.verify.resolution_study) {
    GridSpec fine = cfg.grid;
    fine.nx *= 2;
    fine.ny *= 2;
    const GridPtr g2 = make_grid(fine);
    const std::vector<ScalarField> corpus2 = make_corpus(g2, count, cfg.seed);
    std::vector<double> r2(count);
    parallel_for(count, threads, [&](int i) {
      r2[i] = verify_aniso_sobolev(project_nonzero(corpus2[i]), cfg.verify.theta).ratio;
    });
    const double aniso2 = *std::max_element(r2.begin(), r2.end());
    const double change = std::abs(aniso2 - aniso) / aniso;
    aniso_stable = change <= 0.10;
    out["aniso_max_ratio_doubled"] = aniso2;
    out["aniso_relative_change"] = change;
  }
  out["aniso_stable"] = aniso_stable;

  // negative control: no decay in y
  const ScalarField ctrl = ScalarField::from_function(grid, [](double x, double) { return std::cos(x); });
  out["negative_control_relation_residual"] = verify_commutator_relation(ctrl).full;

  out["elliptic_pass"] = el >= -1e-8;
  out["commutator_pass"] = cm >= -1e-8;
  out["relation_pass"] = rf <= 1e-6;
  out["boundary_flagged"] = bd > kBoundaryFlag;
  out["pass"] = el >= -1e-8 && cm >= -1e-8 && rf <= 1e-6;
  out["per_field"] = {{"elliptic_min_slack", col(&FieldChecks::elliptic)},
                      {"commutator_min_slack", col(&FieldChecks::commutator)},
                      {"relation_residual", col(&FieldChecks::relation_full)},
                      {"relation_residual_interior", col(&FieldChecks::relation_interior)},
                      {"aniso_ratio", col(&FieldChecks::aniso)},
                      {"boundary_fraction", col(&FieldChecks::boundary)}};
  return out;
}

// --------------------------------------------------------------- dispatch

int run_scenario(const ScenarioConfig& cfg, const std::string& out_dir, int threads) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  switch (cfg.kind) {
    case ScenarioKind::Simulate: {
      const SimulationResult r = run_simulation(cfg, out_dir);
      return exit_code_for(r.outcome.kind);
    }
    case ScenarioKind::Semigroup: {
      const Json j = run_semigroup_scenario(cfg, threads);
      write_json((dir / "semigroup.json").string(), j);
      return kExitOk;
    }
    case ScenarioKind::Sweep: {
      const Json j = run_sweep_scenario(cfg, out_dir, threads);
      write_json((dir / "sweep.json").string(), j);
      return kExitOk;
    }
    case ScenarioKind::Blowup: {
      const Json j = run_blowup_scenario(cfg, out_dir, threads);
      write_json((dir / "blowup.json").string(), j);
      return kExitOk;
    }
    case ScenarioKind::Verify: {
      const Json j = run_verify_scenario(cfg, threads);
      write_json((dir / "verify.json").string(), j);
      return j["pass"].get<bool>() ? kExitOk : kExitNumerical;
    }
  }
  return kExitNumerical;
}

std::string dry_run_report(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << dump_config(cfg);
  os << "# derived\n";
  if (cfg.params.a > M_E) {
    const double lam = lambda_A(cfg.params.a);
    os << "lambda_A: " << fmt(lam) << "\n";
    os << "A_pow_minus_3_4: " << fmt(std::pow(cfg.params.a, -0.75)) << "\n";
    os << "bootstrap_window_lambda_A_pow_minus_1_4: " << fmt(std::pow(lam, -0.25)) << "\n";
  } else {
    os << "lambda_A: undefined (A <= e)\n";
    os << "A_pow_minus_3_4: " << fmt(std::pow(cfg.params.a, -0.75)) << "\n";
  }
  os << "horizon: " << fmt(cfg.params.horizon) << "\n";
  os << "horizon_phys: " << fmt(cfg.params.horizon / cfg.params.a) << "\n";
  return os.str();
}

}  // namespace pksns
