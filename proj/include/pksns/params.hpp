#pragma once

namespace pksns {

/// Which parts of the rescaled system are active. Defaults give the full
/// coupled model; "flow off" disables shear, advection and buoyancy.
struct TermSwitches {
  bool diffusion = true;   // (1/A) Lap on n and omega
  bool shear = true;       // y^2 d_x transport and the 2 d_x Lap^{-1} omega coupling
  bool chemotaxis = true;  // -(1/A) div(n grad c)
  bool advection = true;   // -(1/A) u . grad n and -(1/A) u . grad omega
  bool buoyancy = true;    // (1/A) d_x n forcing of omega
};

/// Enhanced-dissipation rate A^{-1/2} / log A. Throws std::domain_error for a <= e.
double lambda_A(double a);

struct PhysParams {
  double a = 100.0;           // flow amplitude A
  double horizon = 1.0;       // end time in rescaled units
  double eps0 = 0.1;          // semigroup rate constant
  double c0_semigroup = 10.0; // semigroup prefactor
  double linf_cap = 0.0;      // blow-up threshold for ||n||_inf; <= 0 means 1e4 * initial
  double dt_min = 1e-9;
  TermSwitches terms;

  /// Throws std::invalid_argument on a <= 0, horizon <= 0, eps0 < 1/10,
  /// c0_semigroup outside (1, 10] or dt_min <= 0.
  void validate() const;
  double lambda() const { return lambda_A(a); }
  /// Bootstrap window end lambda_A^{-1/4}.
  double bootstrap_window() const;
  /// Vorticity smallness threshold A^{-3/4}.
  double omega_threshold() const;
};

}  // namespace pksns
