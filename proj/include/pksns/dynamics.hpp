// Right-hand side of the rescaled Keller-Segel / Navier-Stokes system around
// the Poiseuille profile, in (n, omega) variables:
//
//   n_t     = (1/A) Lap n - y^2 n_x - (1/A) div(n grad c) - (1/A) u . grad n
//   omega_t = (1/A) Lap omega - y^2 omega_x + 2 d_x Lap^{-1} omega
//             - (1/A) u . grad omega + (1/A) n_x
//   -Lap c + c = n,   u = grad-perp Lap^{-1} omega
//
// Products are formed pseudo-spectrally on dealiased inputs and the result is
// dealiased again.
#pragma once

#include <limits>

#include "pksns/elliptic.hpp"
#include "pksns/params.hpp"

namespace pksns {

/// Prognostic pair in spectral form plus the derived fields it determines.
struct State {
  double t = 0.0;
  SpectralField n;
  SpectralField omega;
  SpectralField c;   // cached: -Lap c + c = n
  SpectralField u1;  // cached: Biot-Savart velocity
  SpectralField u2;
  double removed_omega_mean = 0.0;
};

/// Dealiases the inputs and fills the cached c and u.
State make_state(double t, const ScalarField& n, const ScalarField& omega);
State make_state(double t, SpectralField n, SpectralField omega);
void refresh_cache(State& s);

struct DerivedFields {
  ScalarField c;
  VectorField u;
  double removed_omega_mean = 0.0;
};

DerivedFields derived_fields(const ScalarField& n, const ScalarField& omega);

struct Tendency {
  SpectralField dn;
  SpectralField domega;
};

/// Maxima gathered while assembling the explicit terms; the step-size
/// controller reads these.
struct FlowStats {
  double max_speed_x = 0.0;     // max |shear * y^2 + u1 / A|
  double max_speed_y = 0.0;     // max |u2| / A
  double max_chemo_drift = 0.0; // max |grad c| / A
  double max_n = 0.0;
  double min_n = 0.0;
  bool finite = true;
};

/// Reusable workspace for the pseudo-spectral right-hand side. Not thread-safe;
/// each integration owns one.
class RhsEvaluator {
 public:
  RhsEvaluator(GridPtr grid, PhysParams params);

  /// Every term except the diffusion (1/A) Lap, which the integrating factor handles.
  void explicit_part(const SpectralField& n, const SpectralField& omega, Tendency& out);
  Tendency explicit_part(const SpectralField& n, const SpectralField& omega);
  /// Full right-hand side including diffusion.
  Tendency full(const State& s);

  const FlowStats& last_stats() const { return stats_; }
  const PhysParams& params() const { return params_; }
  const GridPtr& grid() const { return grid_; }

 private:
  GridPtr grid_;
  PhysParams params_;
  FlowStats stats_;
  std::vector<double> ikx_, iky_, inv_k2_, screen_;
  std::vector<char> mask_;
  SpectralField tmp_spec_, psi_, qx_hat_, qy_hat_, pn_hat_, pw_hat_;
  RealVec n_, cx_, cy_, u1_, u2_, nx_, ny_, wx_, wy_, pn_, pw_, qx_, qy_;
};

/// Convenience wrapper: full right-hand side of `s` under `params`.
Tendency rhs(const State& s, const PhysParams& params);

/// The same right-hand side assembled from the zero-mode / nonzero-mode
/// subsystems with every interaction product formed separately in
/// divergence form. Used as an independent oracle for rhs().
struct ModeTendency {
  SpectralField dn0, dn_nz, domega0, domega_nz;
};
ModeTendency rhs_mode_decomposed(const State& s, const PhysParams& params);

/// L2 norm of  (u0^1(curr) - u0^1(prev)) / dt - (1/A) d_yy u0^1 + (1/A) d_y (u1_nz u2_nz)_0,
/// with the spatial terms evaluated at `prev` (first order in dt).
double zero_mode_velocity_residual(const State& prev, const State& curr, const PhysParams& params);

}  // namespace pksns
