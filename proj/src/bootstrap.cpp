#include "pksns/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pksns {

BootstrapRefs make_refs(const DiagPoint& p0, const PhysParams& params) {
  BootstrapRefs r;
  r.n_in_nonzero_x = p0.x_norm_n_nonzero;
  r.dxn_in_nonzero_x = p0.x_norm_dxn_nonzero;
  r.omega_in_nonzero_x = p0.x_norm_omega_nonzero;
  r.a = params.a;
  r.lambda = lambda_A(params.a);
  r.omega_threshold = std::pow(params.a, -0.75);
  r.c_inf = std::max(1.0, p0.linf_n);
  r.window_end = std::pow(r.lambda, -0.25);
  return r;
}

bool BootstrapReport::all_satisfied() const {
  return std::all_of(records.begin(), records.end(), [](const BootstrapRecord& r) { return r.satisfied; });
}

bool BootstrapReport::all_refined() const {
  return std::all_of(records.begin(), records.end(), [](const BootstrapRecord& r) { return r.refined(); });
}

BootstrapMonitor::BootstrapMonitor(BootstrapRefs refs) {
  report_.refs = refs;
  const char* names[6] = {"A1", "A2", "A3", "A4", "A5", "A6"};
  const char* stmt[6] = {
      "(1/A) int_0^t |grad n_nz|_X^2 <= 4 |(n_in)_nz|_X^2",
      "|n_nz|_X <= 4 C0 exp(-eps0 lambda_A t) |(n_in)_nz|_X",
      "|dx n|_X^2 <= 4 |(dx n_in)_nz|_X^2",
      "|n|_inf <= 4 Cinf",
      "(1/A) int_0^t |grad omega_nz|_X^2 <= 4 (|(omega_in)_nz|_X^2 + A^{-3/4})",
      "|omega_nz|_X <= 4 C0 exp(-eps0 lambda_A t) (|(omega_in)_nz|_X + A^{-3/4})",
  };
  for (int i = 0; i < 6; ++i) {
    report_.records[i].name = names[i];
    report_.records[i].statement = stmt[i];
  }
}

void BootstrapMonitor::observe(const DiagPoint& p) {
  const BootstrapRefs& r = report_.refs;
  const double inv_a = 1.0 / r.a;
  const double env = std::exp(-r.eps0 * r.lambda * p.t);
  const double lhs[6] = {
      inv_a * p.l2_grad_n_nonzero_cumint,
      p.x_norm_n_nonzero,
      p.x_norm_dxn * p.x_norm_dxn,
      p.linf_n,
      inv_a * p.l2_grad_omega_nonzero_cumint,
      p.x_norm_omega_nonzero,
  };
  const double rhs[6] = {
      4.0 * r.n_in_nonzero_x * r.n_in_nonzero_x,
      4.0 * r.c0 * env * r.n_in_nonzero_x,
      4.0 * r.dxn_in_nonzero_x * r.dxn_in_nonzero_x,
      4.0 * r.c_inf,
      4.0 * (r.omega_in_nonzero_x * r.omega_in_nonzero_x + r.omega_threshold),
      4.0 * r.c0 * env * (r.omega_in_nonzero_x + r.omega_threshold),
  };
  for (int i = 0; i < 6; ++i) {
    BootstrapRecord& rec = report_.records[i];
    rec.t.push_back(p.t);
    rec.lhs.push_back(lhs[i]);
    rec.rhs.push_back(rhs[i]);
    double ratio;
    if (rhs[i] > 0.0) ratio = lhs[i] / rhs[i];
    else ratio = lhs[i] > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    if (!(lhs[i] <= rhs[i])) rec.satisfied = false;
    if (ratio > rec.worst_ratio || std::isnan(ratio)) {
      rec.worst_ratio = ratio;
      rec.worst_t = p.t;
    }
    if (p.t <= r.window_end * (1.0 + 1e-12)) rec.worst_ratio_in_window = std::max(rec.worst_ratio_in_window, ratio);
  }
  report_.growth_factor = std::max(report_.growth_factor, p.linf_n / r.c_inf);
  const double scale = std::max(p.x_norm_dxn, 1e-300);
  report_.dxn_consistency = std::max(report_.dxn_consistency, std::abs(p.x_norm_dxn - p.x_norm_dxn_nonzero) / scale);
}

BootstrapReport evaluate_bootstrap(const DiagSeries& series, const PhysParams& params) {
  if (series.empty()) throw std::invalid_argument("evaluate_bootstrap: empty series");
  BootstrapMonitor mon(make_refs(series.points().front(), params));
  for (const auto& p : series.points()) mon.observe(p);
  return mon.report();
}

}  // namespace pksns
