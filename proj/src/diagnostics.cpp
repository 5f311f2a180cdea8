#include "pksns/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pksns/norms.hpp"

namespace pksns {

double boundary_mass_fraction(const ScalarField& n, const ScalarField& omega) {
  require_same_grid(n.grid(), omega.grid(), "boundary_mass_fraction");
  const Grid& g = n.g();
  const double cut = 0.9 * g.ly();
  double total = 0.0, edge = 0.0;
  for (int iy = 0; iy < g.ny(); ++iy) {
    double row = 0.0;
    for (int ix = 0; ix < g.nx(); ++ix) row += std::abs(n(ix, iy)) + std::abs(omega(ix, iy));
    total += row;
    if (std::abs(g.y(iy)) > cut) edge += row;
  }
  return total > 0.0 ? edge / total : 0.0;
}

double boundary_mass_fraction(const State& s) {
  return boundary_mass_fraction(to_physical(s.n), to_physical(s.omega));
}

// ----------------------------------------------------------------- elliptic

double EllipticChainReport::min_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : checks) m = std::min(m, c.slack);
  return checks.empty() ? 0.0 : m;
}

namespace {

NamedSlack slack(std::string name, double lhs, double rhs) { return {std::move(name), lhs, rhs, rhs - lhs}; }

double sq(const ScalarField& f) { return norm_l2_sq(f); }
double ysq(const ScalarField& f) { return weighted_l2_sq(f); }

}  // namespace

EllipticChainReport check_elliptic_chains(const ScalarField& n) {
  EllipticChainReport r;
  const SpectralField nh = to_spectral(n);

  {
    const SpectralField n0h = project_zero(nh);
    const SpectralField c0h = solve_screened_poisson(n0h);
    const ScalarField n0 = to_physical(n0h);
    const ScalarField c0 = to_physical(c0h);
    const ScalarField dy = to_physical(ddy(c0h));
    const ScalarField dyy = to_physical(ddy(ddy(c0h)));
    const double N = sq(n0), C = sq(c0), D = sq(dy), DD = sq(dyy);
    const double yN = ysq(n0), yC = ysq(c0), yD = ysq(dy), yDD = ysq(dyy);
    r.checks.push_back(slack("zero: 2|dy c|^2 + |c|^2 <= |n|^2", 2 * D + C, N));
    r.checks.push_back(slack("zero: |dyy c|^2 + 2|dy c|^2 <= |n|^2", DD + 2 * D, N));
    r.checks.push_back(slack("zero: |dyy c|^2 + |dy c|^2 + |c|^2 <= 2|n|^2", DD + D + C, 2 * N));
    r.checks.push_back(slack("zero: 2|y dy c|^2 + |y c|^2 <= 2|c|^2 + |y n|^2", 2 * yD + yC, 2 * C + yN));
    r.checks.push_back(slack("zero: |y dyy c|^2 + 2|y dy c|^2 <= 2|c|^2 + |y n|^2", yDD + 2 * yD, 2 * C + yN));
  }
  {
    const SpectralField nzh = project_nonzero(nh);
    const SpectralField czh = solve_screened_poisson(nzh);
    const ScalarField nz = to_physical(nzh);
    const ScalarField cz = to_physical(czh);
    const ScalarField gx = to_physical(ddx(czh));
    const ScalarField gy = to_physical(ddy(czh));
    const ScalarField lap = to_physical(laplacian(czh));
    const double N = sq(nz), C = sq(cz), G = sq(gx) + sq(gy), L = sq(lap);
    const double yN = ysq(nz), yC = ysq(cz), yG = ysq(gx) + ysq(gy), yL = ysq(lap);
    r.checks.push_back(slack("nonzero: 2|grad c|^2 + |c|^2 <= |n|^2", 2 * G + C, N));
    r.checks.push_back(slack("nonzero: |Lap c|^2 + 2|grad c|^2 <= |n|^2", L + 2 * G, N));
    r.checks.push_back(slack("nonzero: |Lap c|^2 + |grad c|^2 + |c|^2 <= 2|n|^2", L + G + C, 2 * N));
    r.checks.push_back(slack("nonzero: 2|y grad c|^2 + |y c|^2 <= 2|c|^2 + |y n|^2", 2 * yG + yC, 2 * C + yN));
    r.checks.push_back(slack("nonzero: |y Lap c|^2 + 2|y grad c|^2 <= 2|c|^2 + |y n|^2", yL + 2 * yG, 2 * C + yN));
  }
  return r;
}

// --------------------------------------------------------------- commutator

double CommutatorMargins::min_slack() const { return std::min({yu.slack, ydyu.slack, ydxu.slack}); }

CommutatorMargins verify_commutator(const ScalarField& omega) {
  const SpectralField wh = to_spectral(omega);
  const double frac = zero_mode_fraction(wh);
  if (frac > 1e-10) {
    throw std::domain_error("verify_commutator: vorticity has zero-mode content (relative " +
                            std::to_string(frac) + ")");
  }
  const SpectralField psi = inverse_laplacian_nonzero(project_nonzero(wh), 1e-300);
  const SpectralField u1h = ddy(psi) * -1.0;
  const SpectralField u2h = ddx(psi);
  auto yvec = [](const SpectralField& a, const SpectralField& b) {
    return std::sqrt(weighted_l2_sq(to_physical(a)) + weighted_l2_sq(to_physical(b)));
  };
  CommutatorMargins m;
  m.omega_l2 = norm_l2(omega);
  m.y_omega_l2 = weighted_l2(omega);
  const double w = m.omega_l2, yw = m.y_omega_l2;
  m.yu = slack("|y u| <= 3|w| + |y w|", yvec(u1h, u2h), 3 * w + yw);
  m.ydyu = slack("|y dy u| <= 4|w| + |y w|", yvec(ddy(u1h), ddy(u2h)), 4 * w + yw);
  m.ydxu = slack("|y dx u| <= 3|w| + |y w|", yvec(ddx(u1h), ddx(u2h)), 3 * w + yw);
  return m;
}

CommutatorRelation verify_commutator_relation(const ScalarField& f) {
  const Grid& g = f.g();
  const double fl2 = norm_l2(f);
  CommutatorRelation out;
  if (fl2 == 0.0) return out;
  const SpectralField fh = project_nonzero(to_spectral(f));
  const SpectralField inv = inverse_laplacian_nonzero(fh, 1e-300);
  const ScalarField y_inv = times_y_power(to_physical(inv), 1);
  const SpectralField yf = project_nonzero(to_spectral(times_y_power(f, 1)));
  const ScalarField inv_yf = to_physical(inverse_laplacian_nonzero(yf, 1e-300));
  const ScalarField corr = to_physical(inverse_laplacian_nonzero(inverse_laplacian_nonzero(ddy(fh), 1e-300), 1e-300));
  ScalarField r = y_inv - inv_yf - 2.0 * corr;
  out.full = norm_l2(r) / fl2;
  double inner = 0.0;
  for (int iy = 0; iy < g.ny(); ++iy) {
    if (std::abs(g.y(iy)) > 0.5 * g.ly()) continue;
    for (int ix = 0; ix < g.nx(); ++ix) inner += r(ix, iy) * r(ix, iy);
  }
  out.interior = std::sqrt(inner * g.cell_area()) / fl2;
  return out;
}

AnisoSobolev verify_aniso_sobolev(const ScalarField& f, double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("verify_aniso_sobolev: theta must lie in (0, 1]");
  const SpectralField fh = project_nonzero(to_spectral(f));
  const SpectralField fx = ddx(fh);
  const double grad = std::sqrt(spectral_l2(fx) * spectral_l2(fx) + spectral_l2(ddy(fh)) * spectral_l2(ddy(fh)));
  const double grad_x = std::sqrt(spectral_l2(ddx(fx)) * spectral_l2(ddx(fx)) +
                                  spectral_l2(ddy(fx)) * spectral_l2(ddy(fx)));
  AnisoSobolev a;
  a.lhs = norm_linf(to_physical(fh));
  a.rhs_core = std::pow(grad, 1.0 - theta) * std::pow(grad_x, theta);
  a.ratio = a.rhs_core > 0.0 ? a.lhs / a.rhs_core : 0.0;
  return a;
}

double mode_oracle_residual(const State& s, const PhysParams& params) {
  const Tendency full = rhs(s, params);
  const ModeTendency m = rhs_mode_decomposed(s, params);
  auto rel = [](const SpectralField& a, const SpectralField& b, const SpectralField& ref) {
    const double d = spectral_l2(a + b - ref);
    const double r = spectral_l2(ref);
    return r > 0.0 ? d / r : d;
  };
  return std::max(rel(m.dn0, m.dn_nz, full.dn), rel(m.domega0, m.domega_nz, full.domega));
}

// ---------------------------------------------------------------- DiagSeries

DiagPoint measure(const State& s, const PhysParams& params, const DiagOptions& opt) {
  DiagPoint p;
  p.t = s.t;
  const ScalarField n = to_physical(s.n);
  const ScalarField w = to_physical(s.omega);
  p.mass = integral(n);
  p.linf_n = norm_linf(n);
  p.min_n = n.min();

  const SpectralField nz = project_nonzero(s.n);
  const SpectralField wz = project_nonzero(s.omega);
  const SpectralField nzx = ddx(nz);
  p.x_norm_n_nonzero = norm_x(to_physical(nz));
  p.x_norm_dxn = norm_x(to_physical(ddx(s.n)));
  p.x_norm_dxn_nonzero = norm_x(to_physical(nzx));
  p.x_norm_omega_nonzero = norm_x(to_physical(wz));
  p.grad_n_nonzero_x_sq = norm_x_sq(to_physical(nzx)) + norm_x_sq(to_physical(ddy(nz)));
  p.grad_omega_nonzero_x_sq = norm_x_sq(to_physical(ddx(wz))) + norm_x_sq(to_physical(ddy(wz)));
  p.boundary_mass_fraction = boundary_mass_fraction(n, w);
  p.removed_omega_mean = s.removed_omega_mean;
  if (opt.check_elliptic) p.elliptic_min_slack = check_elliptic_chains(n).min_slack();
  if (opt.check_mode_oracle) p.mode_oracle_residual = mode_oracle_residual(s, params);
  return p;
}

DiagSeries::DiagSeries(PhysParams params, DiagOptions opt) : params_(params), opt_(opt) {}

const DiagPoint& DiagSeries::observe(const State& s, double dt) {
  DiagPoint p = measure(s, params_, opt_);
  p.dt = dt;
  if (!points_.empty()) {
    const DiagPoint& q = points_.back();
    const double h = p.t - q.t;
    p.l2_grad_n_nonzero_cumint = q.l2_grad_n_nonzero_cumint + 0.5 * h * (q.grad_n_nonzero_x_sq + p.grad_n_nonzero_x_sq);
    p.l2_grad_omega_nonzero_cumint =
        q.l2_grad_omega_nonzero_cumint + 0.5 * h * (q.grad_omega_nonzero_x_sq + p.grad_omega_nonzero_x_sq);
  }
  points_.push_back(p);
  return points_.back();
}

bool DiagSeries::boundary_flagged() const {
  for (const auto& p : points_)
    if (p.boundary_mass_fraction > kBoundaryFlag) return true;
  return false;
}

double DiagSeries::max_mass_drift() const {
  if (points_.empty() || points_.front().mass == 0.0) return 0.0;
  const double m0 = points_.front().mass;
  double d = 0.0;
  for (const auto& p : points_) d = std::max(d, std::abs(p.mass - m0) / std::abs(m0));
  return d;
}

}  // namespace pksns
