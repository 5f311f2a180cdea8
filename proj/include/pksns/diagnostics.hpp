// Run-time measurements: norm time series, truncation monitor, and numeric
// checks of the elliptic, commutator and anisotropic Sobolev inequalities.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pksns/dynamics.hpp"

namespace pksns {

/// Fraction of int|n| + int|omega| carried by |y| > 0.9 ly.
double boundary_mass_fraction(const ScalarField& n, const ScalarField& omega);
double boundary_mass_fraction(const State& s);
constexpr double kBoundaryFlag = 1e-8;

// ---------------------------------------------------------------- inequalities

struct NamedSlack {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
};

struct EllipticChainReport {
  std::vector<NamedSlack> checks;
  double min_slack() const;
  bool pass(double tol = -1e-8) const { return min_slack() >= tol; }
};

/// Screened-Poisson inequality chains for the zero mode and the nonzero modes
/// of `n` (c solved separately for each part):
///   2|dy c0|^2 + |c0|^2 <= |n0|^2,  |dyy c0|^2 + 2|dy c0|^2 <= |n0|^2,
///   |dyy c0|^2 + |dy c0|^2 + |c0|^2 <= 2|n0|^2,
///   2|y dy c0|^2 + |y c0|^2 <= 2|c0|^2 + |y n0|^2,
///   |y dyy c0|^2 + 2|y dy c0|^2 <= 2|c0|^2 + |y n0|^2,
/// and the same with (dy, dyy) -> (grad, Lap) for the nonzero part.
EllipticChainReport check_elliptic_chains(const ScalarField& n);

struct CommutatorMargins {
  double omega_l2 = 0.0;
  double y_omega_l2 = 0.0;
  NamedSlack yu;     // |y u| <= 3|w| + |y w|
  NamedSlack ydyu;   // |y dy u| <= 4|w| + |y w|
  NamedSlack ydxu;   // |y dx u| <= 3|w| + |y w|
  double min_slack() const;
};

/// u = grad-perp Lap^{-1} omega for x-mean-free omega. Throws std::domain_error
/// on zero-mode content above 1e-10 relative.
CommutatorMargins verify_commutator(const ScalarField& omega_nonzero);

struct CommutatorRelation {
  double full = 0.0;      // relative residual over the whole strip
  double interior = 0.0;  // relative residual restricted to |y| <= ly / 2
};

/// | y Lap^{-1} f - Lap^{-1} P_nz(y f) - 2 Lap^{-2} dy f | / |f| in L2.
CommutatorRelation verify_commutator_relation(const ScalarField& f_nonzero);

struct AnisoSobolev {
  double lhs = 0.0;       // |f|_inf
  double rhs_core = 0.0;  // |grad f|^{1-theta} |grad dx f|^theta
  double ratio = 0.0;     // lhs / rhs_core (0 when both vanish)
};

AnisoSobolev verify_aniso_sobolev(const ScalarField& f_nonzero, double theta);

/// max of |(dn0 + dn_nz) - dn| / |dn| and the omega analogue (spectral L2).
double mode_oracle_residual(const State& s, const PhysParams& params);

// ------------------------------------------------------------------ time series

struct DiagPoint {
  double t = 0.0;
  double mass = 0.0;
  double linf_n = 0.0;
  double min_n = 0.0;
  double x_norm_n_nonzero = 0.0;
  double x_norm_dxn = 0.0;
  double x_norm_dxn_nonzero = 0.0;
  double x_norm_omega_nonzero = 0.0;
  double grad_n_nonzero_x_sq = 0.0;      // |grad n_nz|_X^2 at t
  double grad_omega_nonzero_x_sq = 0.0;  // |grad omega_nz|_X^2 at t
  double l2_grad_n_nonzero_cumint = 0.0;     // int_0^t |grad n_nz|_X^2
  double l2_grad_omega_nonzero_cumint = 0.0; // int_0^t |grad omega_nz|_X^2
  double boundary_mass_fraction = 0.0;
  double removed_omega_mean = 0.0;
  double elliptic_min_slack = 0.0;
  double mode_oracle_residual = -1.0;  // < 0: not evaluated
  double dt = 0.0;
};

struct DiagOptions {
  bool check_elliptic = true;
  bool check_mode_oracle = false;
};

/// Time series accumulated at the diagnostic cadence; the cumulative integrals
/// use the trapezoid rule between consecutive points.
class DiagSeries {
 public:
  explicit DiagSeries(PhysParams params = {}, DiagOptions opt = {});

  /// Measures `s` and appends the point. `dt` is informational (last step size).
  const DiagPoint& observe(const State& s, double dt = 0.0);
  /// Appends a point measured elsewhere (restarts); integrals are taken as given.
  void append(const DiagPoint& p) { points_.push_back(p); }

  const std::vector<DiagPoint>& points() const { return points_; }
  bool empty() const { return points_.empty(); }
  const DiagPoint& back() const { return points_.back(); }
  bool boundary_flagged() const;
  double max_mass_drift() const;  // max |mass - mass0| / mass0

 private:
  PhysParams params_;
  DiagOptions opt_;
  std::vector<DiagPoint> points_;
};

/// Measures one state without accumulation (cumulative fields left at zero).
DiagPoint measure(const State& s, const PhysParams& params, const DiagOptions& opt = {});

}  // namespace pksns
