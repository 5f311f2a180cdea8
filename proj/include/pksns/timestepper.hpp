// Integrating-factor Runge-Kutta for the rescaled system. The diffusion
// (1/A) Lap is absorbed exactly by exp(-|k|^2 t / A); everything else goes
// through a three-stage low-storage scheme of Jameson type,
//   v1 = v0 + dt/2 F(v0),  v2 = v0 + dt/2 F(v1),  v3 = v0 + dt F(v2),
// written for v = exp(-t Lap / A) u. Second order; stability polynomial
// 1 + z + z^2/2 + z^3/4 reaches |Im z| = 2 on the imaginary axis.
#pragma once

#include <functional>
#include <string>

#include "pksns/dynamics.hpp"

namespace pksns {

struct StepperOptions {
  double cfl = 0.4;
  double dt_max = 0.05;
  double fixed_dt = 0.0;          // > 0 disables adaptation (convergence studies)
  double negativity_tol = 1e-6;   // abort when min n < -tol * max n
  double diag_interval = 0.0;     // <= 0: only t = 0 and the end
  double snapshot_interval = 0.0; // <= 0: none
  long max_steps = 0;             // <= 0: unlimited
};

enum class Outcome { Completed, BlowUp, DtCollapse, UnderResolved };

const char* outcome_name(Outcome o);

/// Step size from the CFL-type limits of the explicit terms:
///   cfl * min(dx / max|y^2 + u1/A|, dy / max|u2|/A, dx / max|grad c|/A, A / max n),
/// capped by dt_max. Terms that are switched off do not constrain dt.
double adapt_dt(const FlowStats& stats, const Grid& grid, const PhysParams& params, const StepperOptions& opt);
double adapt_dt(const State& s, const PhysParams& params, const StepperOptions& opt);

/// Stateful stepper: owns the right-hand-side workspace and cached exponentials.
class Stepper {
 public:
  Stepper(GridPtr grid, PhysParams params);

  /// Evaluates the explicit part at `s` and returns its statistics. The
  /// tendency is kept for the next step() on the same state.
  const FlowStats& prepare(const State& s);
  /// Advances `s` by dt. Uses the tendency from prepare() if it was called on
  /// this exact state, otherwise evaluates it.
  void step(State& s, double dt);

  const PhysParams& params() const { return rhs_.params(); }
  const GridPtr& grid() const { return rhs_.grid(); }

 private:
  void set_factors(double dt);

  RhsEvaluator rhs_;
  Tendency n0_, n1_, n2_;
  SpectralField stage_n_, stage_w_;
  std::vector<double> k2_;
  std::vector<double> half_;  // exp(-k^2 dt / (2A))
  double factor_dt_ = -1.0;
  const State* prepared_ = nullptr;
  double prepared_t_ = 0.0;
};

/// One step from `s` (convenience, allocates a Stepper).
State step(const State& s, const PhysParams& params, double dt);

struct RunOutcome {
  Outcome kind = Outcome::Completed;
  double t = 0.0;
  double linf_n = 0.0;
  double initial_linf_n = 0.0;
  double linf_cap = 0.0;
  double last_dt = 0.0;
  long steps = 0;
  std::string message;
  State final_state;
};

struct RunCallbacks {
  /// Called at t0, at every diagnostic time and at termination.
  std::function<void(const State&, const FlowStats&)> on_diag;
  std::function<void(const State&)> on_snapshot;
  /// Called after every accepted step with the step size used.
  std::function<void(const State&, double)> on_step;
};

/// Integrates to params.horizon. Deterministic for a given input.
RunOutcome integrate(State initial, const PhysParams& params, const StepperOptions& opt,
                     const RunCallbacks& callbacks = {});

}  // namespace pksns
