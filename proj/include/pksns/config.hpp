// Scenario configuration (YAML). Every key is checked against the schema and
// unknown keys are rejected with their line number. See configs/README.md.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pksns/diagnostics.hpp"
#include "pksns/grid.hpp"
#include "pksns/params.hpp"
#include "pksns/timestepper.hpp"

namespace pksns {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ScenarioKind { Simulate, Semigroup, Sweep, Blowup, Verify };
const char* kind_name(ScenarioKind k);

struct YProfile {
  std::string kind = "gaussian";  // gaussian | constant
  double width = 1.0;
  double center = 0.0;
};

struct InitialRecipe {
  std::string kind = "zero";  // zero | gaussian_blob | mode_product | from_snapshot
  // gaussian_blob
  double mass = 0.0;
  double center_x = M_PI;
  double center_y = 0.0;
  double width = 1.0;
  // mode_product
  std::vector<int> kx;
  std::string basis = "sin";  // sin | cos
  YProfile y_profile;
  double amplitude = 1.0;
  double x_norm = 0.0;                   // > 0: rescale to this X norm
  double x_norm_threshold_scale = 0.0;   // > 0: rescale to scale * A^{-3/4}
  // from_snapshot
  std::string path;
};

struct SweepSpec {
  std::vector<double> a_values;
  std::vector<double> omega_scales;  // multiples of A^{-3/4} for |omega_in|_X
  std::vector<double> masses;
};

struct SemigroupSpec {
  std::vector<double> a_values{50.0, 200.0, 800.0};
  std::vector<std::string> operators{"L_tilde", "L"};
  double horizon_factor = 3.0;  // horizon = factor / lambda_A
  int samples = 400;
  bool diffusion = true;
};

struct BlowupSpec {
  double mass = 10.0 * M_PI;
  double width = 1.0;
  double flow_off_horizon = 1.0;   // original time units (A = 1)
  double flow_on_horizon = 0.0;    // affordable rescaled horizon; <= 0: lambda_A^{-1/4}
  double linf_cap_factor = 200.0;  // flow-off cap as a multiple of |n_in|_inf
  // undershoot tolerance for the flow-off run only; a collapsing core outruns any
  // fixed grid, so by default Gibbs undershoot is recorded, not fatal
  double flow_off_negativity_tol = 1.0;
  double a_low = 100.0;
  double a_high = 5000.0;
  int bisection_steps = 4;
  int bisection_nx = 0;  // 0: use the main grid
  int bisection_ny = 0;
  double max_growth = 4.0;
};

struct VerifySpec {
  int count = 100;
  double theta = 0.5;
  bool resolution_study = true;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Simulate;
  GridSpec grid;
  PhysParams params;
  bool horizon_given = false;
  StepperOptions stepper;
  DiagOptions diag;
  InitialRecipe n_init;
  InitialRecipe omega_init;
  std::uint64_t seed = 0;
  SweepSpec sweep;
  SemigroupSpec semigroup;
  BlowupSpec blowup;
  VerifySpec verify;
  std::string source;  // path of the file it came from

  /// Fills derived defaults (horizon = lambda_A^{-1/4} when absent) and
  /// checks cross-field constraints. Throws ConfigError.
  void resolve();
};

ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(const std::string& text, const std::string& source = "<string>");
/// Resolved configuration as YAML text (used by --dry-run).
std::string dump_config(const ScenarioConfig& cfg);

}  // namespace pksns
