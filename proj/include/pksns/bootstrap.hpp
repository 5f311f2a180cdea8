// Monitor for the six bootstrap hypotheses on [0, T]:
//   A1  (1/A) int |grad n_nz|_X^2      <= 4 |n_in,nz|_X^2
//   A2  |n_nz|_X                       <= 4 C0 e^{-eps0 lambda_A t} |n_in,nz|_X
//   A3  |dx n|_X^2                     <= 4 |(dx n_in)_nz|_X^2
//   A4  |n|_inf                        <= 4 Cinf
//   A5  (1/A) int |grad omega_nz|_X^2  <= 4 (|omega_in,nz|_X^2 + A^{-3/4})
//   A6  |omega_nz|_X                   <= 4 C0 e^{-eps0 lambda_A t} (|omega_in,nz|_X + A^{-3/4})
// The refined versions (factor 2 instead of 4) hold iff worst_ratio <= 1/2.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "pksns/diagnostics.hpp"

namespace pksns {

struct BootstrapRefs {
  double n_in_nonzero_x = 0.0;
  double dxn_in_nonzero_x = 0.0;
  double omega_in_nonzero_x = 0.0;
  double c0 = 10.0;
  double eps0 = 0.1;
  double a = 0.0;
  double lambda = 0.0;
  double omega_threshold = 0.0;  // A^{-3/4}
  double c_inf = 1.0;            // max(1, |n_in|_inf)
  double window_end = 0.0;       // lambda_A^{-1/4}
};

/// Reference constants frozen from the first diagnostic point. Uses C0 = 10 and
/// eps0 = 1/10 regardless of params (the worst admissible constants).
BootstrapRefs make_refs(const DiagPoint& initial, const PhysParams& params);

struct BootstrapRecord {
  std::string name;
  std::string statement;
  std::vector<double> t, lhs, rhs;
  bool satisfied = true;
  double worst_ratio = 0.0;
  double worst_t = 0.0;
  double worst_ratio_in_window = 0.0;
  bool refined() const { return worst_ratio <= 0.5; }
};

struct BootstrapReport {
  BootstrapRefs refs;
  std::array<BootstrapRecord, 6> records;
  double growth_factor = 0.0;       // max_t |n|_inf / Cinf
  double dxn_consistency = 0.0;     // max_t | |dx n|_X - |dx n_nz|_X | / max(|dx n|_X, tiny)
  bool all_satisfied() const;
  bool all_refined() const;
};

class BootstrapMonitor {
 public:
  explicit BootstrapMonitor(BootstrapRefs refs);
  /// Appends the six evaluations at point p. Never mutates the solution.
  void observe(const DiagPoint& p);
  const BootstrapReport& report() const { return report_; }

 private:
  BootstrapReport report_;
};

/// Runs the monitor over a whole series (refs from its first point).
BootstrapReport evaluate_bootstrap(const DiagSeries& series, const PhysParams& params);

}  // namespace pksns
