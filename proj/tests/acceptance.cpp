// End-to-end acceptance checks; one PASS/FAIL line per criterion.
// Usage: pksns_acceptance [criterion numbers...]   (default: all)
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "pksns/corpus.hpp"
#include "pksns/norms.hpp"
#include "pksns/scenarios.hpp"
#include "pksns/semigroup.hpp"

using namespace pksns;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = fs::path(PKSNS_SOURCE_DIR) / "configs";
const fs::path kWork = fs::temp_directory_path() / "pksns_acceptance";

struct Line {
  int id;
  bool pass;
  std::string what;
  std::string detail;
};

std::string num(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4g", v);
  return b;
}

GridPtr grid(int nx, int ny, double ly) {
  GridSpec s;
  s.nx = nx;
  s.ny = ny;
  s.ly = ly;
  return make_grid(s);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

// --- 1, 2: enhanced dissipation envelope and lambda_A scaling -------------
std::pair<Line, Line> semigroup_criteria() {
  auto g = grid(128, 512, 12.0);
  auto f = ScalarField::from_function(g, [](double x, double y) { return std::sin(x) * std::exp(-0.5 * y * y); });
  bool env_ok = true;
  std::string env_detail, rate_detail;
  double lo = INFINITY, hi = 0.0;
  for (double a : {50.0, 200.0, 800.0}) {
    LinearOptions o;
    o.a = a;
    const LinearRun r = evolve_linear(f, LinearOperator::LTilde, o);
    const EnvelopeCheck e = envelope_check(r.x_norm, a, 10.0, 0.1);
    const DecayFit fit = fit_decay_rate(r.x_norm);
    const double scaled = fit.rate * std::sqrt(a) * std::log(a);
    env_ok = env_ok && e.pass;
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
    env_detail += " A=" + num(a) + " margin=" + num(e.margin) + " samples=" + std::to_string(r.x_norm.t.size());
    rate_detail += " A=" + num(a) + " r=" + num(fit.rate) + " r*sqrt(A)*logA=" + num(scaled) +
                   (fit.poor ? " (poor fit)" : "");
  }
  const double spread = hi / lo;
  return {Line{1, env_ok, "linear envelope |f(t)|_X <= 10 e^{-lambda_A t/10} |f_in|_X", env_detail},
          Line{2, spread <= 4.0, "lambda_A scaling spread <= 4", rate_detail + " spread=" + num(spread)}};
}

// --- 3, 4: elliptic and commutator constants on the corpus ---------------
std::pair<Line, Line> verify_criteria() {
  const ScenarioConfig cfg = load_config((kConfigs / "verify.yaml").string());
  const Json j = run_verify_scenario(cfg, 1);
  const double z = j["elliptic_combined_zero_min_slack"].get<double>();
  const double nz = j["elliptic_combined_nonzero_min_slack"].get<double>();
  const double cm = j["commutator_min_slack"].get<double>();
  const double rf = j["relation_max_residual"].get<double>();
  const std::string where = " corpus=" + std::to_string(cfg.verify.count) + " seed=" + std::to_string(cfg.seed) +
                            " grid=" + std::to_string(cfg.grid.nx) + "x" + std::to_string(cfg.grid.ny) +
                            " ly=" + num(cfg.grid.ly);
  return {Line{3, z >= -1e-8 && nz >= -1e-8, "elliptic combined bounds, slack >= -1e-8",
               "min slack zero-mode=" + num(z) + " nonzero=" + num(nz) +
                   " all chains=" + num(j["elliptic_min_slack"].get<double>()) + where},
          Line{4, cm >= -1e-8 && rf <= 1e-6, "commutator bounds and [y, Lap^-1] identity",
               "min slack=" + num(cm) + " max relation residual=" + num(rf) +
                   " (interior " + num(j["relation_max_residual_interior"].get<double>()) + ")" + where}};
}

// --- 5, 6: long reference run: mass and mode-decomposition oracle ---------
double g_blowup_mass_drift = -1.0;  // filled by criterion 7 when it ran first

std::pair<Line, Line> reference_run_criteria() {
  ScenarioConfig cfg;
  cfg.kind = ScenarioKind::Simulate;
  cfg.grid.nx = 64;
  cfg.grid.ny = 256;
  cfg.grid.ly = 6.0;
  cfg.params.a = 100.0;
  cfg.params.horizon = 12.0;
  cfg.stepper.diag_interval = 0.5;
  cfg.diag.check_mode_oracle = true;
  const GridPtr g = make_grid(cfg.grid);
  const auto c = make_corpus(g, 2, 11);
  ScalarField n = ScalarField::from_function(g, [](double x, double y) {
    return 0.5 + 2.0 * std::exp(-0.5 * y * y) * (1.2 + std::cos(x - 1.0));
  });
  const State s0 = make_state(0.0, n, 0.1 * c[1]);
  const SimulationResult r = run_simulation(cfg, s0, "");
  double oracle = 0.0;
  int evaluated = 0;
  for (const auto& p : r.series.points())
    if (p.mode_oracle_residual >= 0.0) {
      oracle = std::max(oracle, p.mode_oracle_residual);
      ++evaluated;
    }
  const double drift = r.series.max_mass_drift();
  const bool long_enough = r.outcome.steps >= 10000;
  const bool completed = r.outcome.kind == Outcome::Completed;
  std::string d5 = "reference run " + std::string(outcome_name(r.outcome.kind)) +
                   " steps=" + std::to_string(r.outcome.steps) + " max relative drift=" + num(drift);
  bool ok5 = completed && long_enough && drift <= 1e-8;
  if (g_blowup_mass_drift >= 0.0) {
    d5 += "; blowup runs max drift=" + num(g_blowup_mass_drift);
    ok5 = ok5 && g_blowup_mass_drift <= 1e-8;
  }
  return {Line{5, ok5, "mass conserved to 1e-8 over >= 1e4 steps", d5},
          Line{6, completed && evaluated == int(r.series.points().size()) && oracle <= 1e-10,
               "full RHS equals mode-decomposed assembly to 1e-10",
               "max residual=" + num(oracle) + " over " + std::to_string(evaluated) + " diagnostic points"}};
}

// --- 7: suppression dichotomy --------------------------------------------
Line blowup_criterion() {
  const ScenarioConfig cfg = load_config((kConfigs / "blowup.yaml").string());
  const fs::path out = kWork / "blowup";
  fs::remove_all(out);
  const Json j = run_blowup_scenario(cfg, out.string(), 1);
  const Json& off = j["flow_off"];
  std::string d = "flow-off " + off["outcome"].get<std::string>() + " growth=" + num(off["growth"].get<double>()) +
                  " t=" + num(off["t"].get<double>()) + " max undershoot=" +
                  num(off["max_relative_undershoot"].get<double>()) + " grid=" + std::to_string(cfg.grid.nx) + "x" +
                  std::to_string(cfg.grid.ny);
  double drift = off["max_mass_drift"].get<double>();
  d += "; A_found=" + num(j["a_found"].get<double>());
  for (const auto& t : j["bisection"]) {
    d += " [A=" + num(t["a"].get<double>()) + " " + t["outcome"].get<std::string>() +
         " growth=" + num(t["growth_factor"].get<double>()) +
         " bootstrap=" + (t["bootstrap_all_satisfied"].get<bool>() ? "ok" : "violated") + "]";
    drift = std::max(drift, t["max_mass_drift"].get<double>());
  }
  if (j.contains("flow_on")) {
    const Json& on = j["flow_on"];
    d += "; flow-on confirm A=" + num(on["a"].get<double>()) + " " + on["outcome"].get<std::string>() +
         " T=" + num(on["horizon"].get<double>()) + " growth=" + num(on["growth_factor"].get<double>()) +
         " bootstrap=" + (on["bootstrap_all_satisfied"].get<bool>() ? "ok" : "violated");
    drift = std::max(drift, on["max_mass_drift"].get<double>());
  }
  g_blowup_mass_drift = drift;
  return Line{7, j["dichotomy"].get<bool>(), "flow-off blow-up (>= 100x) vs flow-on suppression", d};
}

// --- 8: self-convergence ---------------------------------------------------
Line convergence_criterion() {
  auto g = grid(64, 256, 12.0);
  const auto c = make_corpus(g, 2, 7);
  ScalarField n = ScalarField::from_function(g, [](double x, double y) {
    return 2.0 * std::exp(-((x - M_PI) * (x - M_PI) + y * y) / 2.0);
  });
  n += 0.3 * hadamard(c[0], c[0]);
  const State s = make_state(0.0, n, 0.1 * c[1]);
  PhysParams p;
  p.a = 100.0;
  p.horizon = 0.2;
  auto run = [&](double dt) {
    StepperOptions o;
    o.fixed_dt = dt;
    return integrate(s, p, o).final_state;
  };
  const State a = run(4e-4), b = run(2e-4), cc = run(1e-4);
  const double e1 = spectral_l2(a.n - b.n) + spectral_l2(a.omega - b.omega);
  const double e2 = spectral_l2(b.n - cc.n) + spectral_l2(b.omega - cc.omega);
  const double ratio = e1 / e2;
  return Line{8, ratio >= 3.4 && ratio <= 4.6, "self-convergence ratio in [3.4, 4.6]",
              "dt=4e-4/2e-4/1e-4 errors " + num(e1) + ", " + num(e2) + " ratio=" + num(ratio)};
}

// --- 9: reproducibility across executions ----------------------------------
Line reproducibility_criterion() {
  const std::string bin = PKSNS_BIN;
  const fs::path cfg = kConfigs / "simulate.yaml";
  std::string detail;
  bool same = true;
  std::string first;
  // a run that aborts early would be reproducible too; require completion
  for (int k = 0; k < 2; ++k) {
    const fs::path out = kWork / ("repro_" + std::to_string(k));
    fs::remove_all(out);
    const std::string cmd = bin + " simulate --config " + cfg.string() + " --out " + out.string() + " > " +
                            (kWork / "repro.log").string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    const std::string csv = slurp(out / "diag.csv");
    detail += " run" + std::to_string(k) + " exit=" + std::to_string(WEXITSTATUS(rc)) + " bytes=" + std::to_string(csv.size());
    if (csv.empty() || !WIFEXITED(rc) || WEXITSTATUS(rc) != 0) same = false;
    if (k == 0) first = csv;
    else same = same && csv == first;
  }
  return Line{9, same, "two executions give byte-identical diag.csv", "configs/simulate.yaml" + detail};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> want;
  for (int i = 1; i < argc; ++i) want.insert(std::atoi(argv[i]));
  auto on = [&](int k) { return want.empty() || want.count(k); };
  fs::create_directories(kWork);

  std::vector<Line> lines;
  auto timed = [&](auto fn) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = fn();
    std::cerr << "  (" << num(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count())
              << " s)\n";
    return r;
  };
  auto emit = [&](const Line& l) {
    std::cout << "CRITERION " << l.id << ": " << (l.pass ? "PASS" : "FAIL") << " - " << l.what << " | "
              << l.detail << std::endl;
    lines.push_back(l);
  };

  try {
    if (on(1) || on(2)) {
      auto [a, b] = timed(semigroup_criteria);
      if (on(1)) emit(a);
      if (on(2)) emit(b);
    }
    if (on(3) || on(4)) {
      auto [a, b] = timed(verify_criteria);
      if (on(3)) emit(a);
      if (on(4)) emit(b);
    }
    // 7 before 5 so the blow-up runs enter the mass audit
    Line seven{7, false, "", ""};
    if (on(7)) seven = timed(blowup_criterion);
    if (on(5) || on(6)) {
      auto [a, b] = timed(reference_run_criteria);
      if (on(5)) emit(a);
      if (on(6)) emit(b);
    }
    if (on(7)) emit(seven);
    if (on(8)) emit(timed(convergence_criterion));
    if (on(9)) emit(timed(reproducibility_criterion));
  } catch (const std::exception& e) {
    std::cout << "acceptance aborted: " << e.what() << std::endl;
    return 2;
  }

  int failed = 0;
  for (const auto& l : lines) failed += !l.pass;
  std::cout << "SUMMARY: " << lines.size() - failed << "/" << lines.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
