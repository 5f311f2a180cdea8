#include "pksns/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace pksns {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

namespace {

// JSON has no inf/nan; encode them as strings.
Json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json vec(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

}  // namespace

std::string diag_csv_header(const PhysParams& p) {
  std::string h;
  h += "# pksns diagnostic series\n";
  h += "# time t is the rescaled time of the amplitude-A system; physical time t_phys = t / A (A = " + fmt(p.a) +
       ")\n";
  h += "# norms: X^2 = L2^2 + |y f|_L2^2 on the truncated strip; nz = nonzero x modes\n";
  h += "# columns:\n";
  h += "#   t, t_phys, mass (integral of n), linf_n, min_n,\n";
  h += "#   x_norm_n_nonzero, x_norm_dxn, x_norm_dxn_nonzero, x_norm_omega_nonzero,\n";
  h += "#   grad_n_nonzero_x_sq, grad_omega_nonzero_x_sq (|grad f_nz|_X^2 at t),\n";
  h += "#   l2_grad_n_nonzero_cumint, l2_grad_omega_nonzero_cumint (trapezoid int_0^t of the above),\n";
  h += "#   boundary_mass_fraction (|y| > 0.9 ly), removed_omega_mean, elliptic_min_slack,\n";
  h += "#   mode_oracle_residual (-1 when not evaluated), dt (last step)\n";
  h += "t,t_phys,mass,linf_n,min_n,x_norm_n_nonzero,x_norm_dxn,x_norm_dxn_nonzero,x_norm_omega_nonzero,"
       "grad_n_nonzero_x_sq,grad_omega_nonzero_x_sq,l2_grad_n_nonzero_cumint,l2_grad_omega_nonzero_cumint,"
       "boundary_mass_fraction,removed_omega_mean,elliptic_min_slack,mode_oracle_residual,dt\n";
  return h;
}

void write_diag_csv(const std::string& path, const DiagSeries& series, const PhysParams& params) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << diag_csv_header(params);
  for (const DiagPoint& p : series.points()) {
    const double row[] = {p.t,
                          p.t / params.a,
                          p.mass,
                          p.linf_n,
                          p.min_n,
                          p.x_norm_n_nonzero,
                          p.x_norm_dxn,
                          p.x_norm_dxn_nonzero,
                          p.x_norm_omega_nonzero,
                          p.grad_n_nonzero_x_sq,
                          p.grad_omega_nonzero_x_sq,
                          p.l2_grad_n_nonzero_cumint,
                          p.l2_grad_omega_nonzero_cumint,
                          p.boundary_mass_fraction,
                          p.removed_omega_mean,
                          p.elliptic_min_slack,
                          p.mode_oracle_residual,
                          p.dt};
    bool first = true;
    for (double v : row) {
      if (!first) os << ',';
      os << fmt(v);
      first = false;
    }
    os << '\n';
  }
}

Json to_json(const BootstrapReport& r) {
  Json j;
  const BootstrapRefs& f = r.refs;
  j["refs"] = {{"n_in_nonzero_x", num(f.n_in_nonzero_x)},
               {"dxn_in_nonzero_x", num(f.dxn_in_nonzero_x)},
               {"omega_in_nonzero_x", num(f.omega_in_nonzero_x)},
               {"C0", f.c0},
               {"eps0", f.eps0},
               {"A", f.a},
               {"lambda_A", num(f.lambda)},
               {"A_pow_minus_3_4", num(f.omega_threshold)},
               {"C_inf", num(f.c_inf)},
               {"window_end", num(f.window_end)}};
  j["all_satisfied"] = r.all_satisfied();
  j["all_refined"] = r.all_refined();
  j["growth_factor"] = num(r.growth_factor);
  j["dxn_consistency"] = num(r.dxn_consistency);
  Json recs = Json::array();
  for (const BootstrapRecord& rec : r.records) {
    recs.push_back({{"name", rec.name},
                    {"statement", rec.statement},
                    {"satisfied", rec.satisfied},
                    {"refined", rec.refined()},
                    {"worst_ratio", num(rec.worst_ratio)},
                    {"worst_t", num(rec.worst_t)},
                    {"worst_ratio_in_window", num(rec.worst_ratio_in_window)},
                    {"t", vec(rec.t)},
                    {"lhs", vec(rec.lhs)},
                    {"rhs", vec(rec.rhs)}});
  }
  j["records"] = recs;
  return j;
}

Json to_json(const RunOutcome& o) {
  return {{"outcome", outcome_name(o.kind)},
          {"t", num(o.t)},
          {"linf_n", num(o.linf_n)},
          {"initial_linf_n", num(o.initial_linf_n)},
          {"growth", num(o.initial_linf_n > 0.0 ? o.linf_n / o.initial_linf_n : 0.0)},
          {"linf_cap", num(o.linf_cap)},
          {"last_dt", num(o.last_dt)},
          {"steps", o.steps},
          {"message", o.message}};
}

Json to_json(const DecayFit& f) {
  return {{"rate", num(f.rate)},           {"prefactor", num(f.prefactor)}, {"t_start", num(f.t_start)},
          {"t_end", num(f.t_end)},         {"residual", num(f.residual)},   {"poor", f.poor},
          {"points", f.points}};
}

Json to_json(const EnvelopeCheck& e) {
  return {{"pass", e.pass}, {"margin", num(e.margin)}, {"worst_t", num(e.worst_t)}};
}

Json to_json(const NormSeries& s) { return {{"t", vec(s.t)}, {"value", vec(s.value)}}; }

void write_json(const std::string& path, const Json& j) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << j.dump(2) << '\n';
}

}  // namespace pksns
