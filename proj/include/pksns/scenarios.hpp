// Scenario drivers behind the command-line tool. Each writes its artifacts
// into an output directory and returns a process exit code:
//   0 completed, 2 blow-up detected (simulate), 3 config error, 4 numerical failure.
#pragma once

#include <functional>
#include <string>

#include "pksns/bootstrap.hpp"
#include "pksns/config.hpp"
#include "pksns/output.hpp"

namespace pksns {

constexpr int kExitOk = 0;
constexpr int kExitBlowUp = 2;
constexpr int kExitConfig = 3;
constexpr int kExitNumerical = 4;

int exit_code_for(Outcome o);

/// Samples an initial-data recipe on `grid` (from_snapshot is handled by build_initial_state).
ScalarField make_recipe_field(const InitialRecipe& r, const GridPtr& grid, double a);
State build_initial_state(const ScenarioConfig& cfg, const GridPtr& grid);

struct SimulationResult {
  RunOutcome outcome;
  DiagSeries series;
  BootstrapReport bootstrap;
};

/// Integrates cfg; if out_dir is non-empty writes diag.csv, bootstrap.json,
/// outcome.json, config.yaml and snapshots there.
SimulationResult run_simulation(const ScenarioConfig& cfg, const std::string& out_dir);
SimulationResult run_simulation(const ScenarioConfig& cfg, const State& initial, const std::string& out_dir);

Json run_semigroup_scenario(const ScenarioConfig& cfg, int threads);
Json run_sweep_scenario(const ScenarioConfig& cfg, const std::string& out_dir, int threads);
Json run_blowup_scenario(const ScenarioConfig& cfg, const std::string& out_dir, int threads);
Json run_verify_scenario(const ScenarioConfig& cfg, int threads);

/// Dispatches on cfg.kind, writes artifacts and returns the exit code.
int run_scenario(const ScenarioConfig& cfg, const std::string& out_dir, int threads);

/// Resolved configuration plus lambda_A, A^{-3/4} and lambda_A^{-1/4}.
std::string dry_run_report(const ScenarioConfig& cfg);

/// Runs fn(0..count-1) on at most `threads` workers; results must be written
/// by index so the outcome does not depend on scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace pksns
