#include "pksns/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pksns/norms.hpp"

namespace pksns {

double lambda_A(double a) {
  if (!(a > M_E)) {
    throw std::domain_error("lambda_A: requires A > e, got " + std::to_string(a));
  }
  return 1.0 / (std::sqrt(a) * std::log(a));
}

void PhysParams::validate() const {
  if (!(a > 0.0)) throw std::invalid_argument("params: a must be positive");
  if (!(horizon > 0.0)) throw std::invalid_argument("params: horizon must be positive");
  if (!(eps0 >= 0.1)) throw std::invalid_argument("params: eps0 must be >= 1/10");
  if (!(c0_semigroup > 1.0 && c0_semigroup <= 10.0)) {
    throw std::invalid_argument("params: c0_semigroup must lie in (1, 10]");
  }
  if (!(dt_min > 0.0)) throw std::invalid_argument("params: dt_min must be positive");
}

double PhysParams::bootstrap_window() const { return std::pow(lambda_A(a), -0.25); }

double PhysParams::omega_threshold() const { return std::pow(a, -0.75); }

// ----------------------------------------------------------------------- State

void refresh_cache(State& s) {
  s.c = solve_screened_poisson(s.n);
  BiotSavartSpectral bs = biot_savart(s.omega);
  s.u1 = std::move(bs.u1);
  s.u2 = std::move(bs.u2);
  s.removed_omega_mean = bs.removed_mean;
}

State make_state(double t, SpectralField n, SpectralField omega) {
  require_same_grid(n.grid(), omega.grid(), "make_state");
  State s;
  s.t = t;
  s.n = dealias(std::move(n));
  s.omega = dealias(std::move(omega));
  refresh_cache(s);
  return s;
}

State make_state(double t, const ScalarField& n, const ScalarField& omega) {
  return make_state(t, to_spectral(n), to_spectral(omega));
}

DerivedFields derived_fields(const ScalarField& n, const ScalarField& omega) {
  require_same_grid(n.grid(), omega.grid(), "derived_fields");
  BiotSavartResult bs = biot_savart(omega);
  return {solve_screened_poisson(n), std::move(bs.u), bs.removed_mean};
}

// ---------------------------------------------------------------- RhsEvaluator

RhsEvaluator::RhsEvaluator(GridPtr grid, PhysParams params) : grid_(std::move(grid)), params_(params) {
  const Grid& g = *grid_;
  const int nkx = g.nkx();
  const int ny = g.ny();
  ikx_.resize(nkx);
  for (int ik = 0; ik < nkx; ++ik) ikx_[ik] = (ik == g.nx() / 2) ? 0.0 : g.kx(ik);
  iky_.resize(ny);
  for (int iy = 0; iy < ny; ++iy) iky_[iy] = (iy == ny / 2) ? 0.0 : g.ky(iy);
  const std::size_t ns = g.spectral_size();
  inv_k2_.resize(ns);
  screen_.resize(ns);
  mask_.resize(ns);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ik = 0; ik < nkx; ++ik) {
      const std::size_t k = static_cast<std::size_t>(iy) * nkx + ik;
      const double k2 = g.k2(ik, iy);
      inv_k2_[k] = (k2 > 0.0) ? 1.0 / k2 : 0.0;
      screen_[k] = 1.0 / (1.0 + k2);
      mask_[k] = g.retained(ik, iy) ? 1 : 0;
    }
  }
  for (SpectralField* f : {&tmp_spec_, &psi_, &qx_hat_, &qy_hat_, &pn_hat_, &pw_hat_}) *f = SpectralField(grid_);
  const std::size_t np = g.physical_size();
  for (RealVec* v : {&n_, &cx_, &cy_, &u1_, &u2_, &nx_, &ny_, &wx_, &wy_, &pn_, &pw_, &qx_, &qy_}) {
    v->assign(np, 0.0);
  }
}

void RhsEvaluator::explicit_part(const SpectralField& n, const SpectralField& omega, Tendency& out) {
  const Grid& g = *grid_;
  const TermSwitches& on = params_.terms;
  const double inv_a = 1.0 / params_.a;
  const int nkx = g.nkx();
  const int ny = g.ny();
  const int nx = g.nx();
  const std::size_t np = g.physical_size();
  const std::size_t ns = g.spectral_size();
  if (out.dn.size() != ns) out.dn = SpectralField(grid_);
  if (out.domega.size() != ns) out.domega = SpectralField(grid_);

  const bool need_psi = on.advection || on.shear;
  const bool need_w_grad = on.advection || on.shear;
  const Complex* nh = n.data();
  const Complex* wh = omega.data();
  Complex* tmp = tmp_spec_.data();

  // d/dx and d/dy of a spectral array into a physical buffer.
  auto dx_to_phys = [&](const Complex* src, RealVec& dst) {
    for (int iy = 0; iy < ny; ++iy)
      for (int ik = 0; ik < nkx; ++ik) {
        const std::size_t k = static_cast<std::size_t>(iy) * nkx + ik;
        tmp[k] = Complex(0.0, ikx_[ik]) * src[k];
      }
    g.inverse(tmp, dst.data());
  };
  auto dy_to_phys = [&](const Complex* src, RealVec& dst) {
    for (int iy = 0; iy < ny; ++iy)
      for (int ik = 0; ik < nkx; ++ik) {
        const std::size_t k = static_cast<std::size_t>(iy) * nkx + ik;
        tmp[k] = Complex(0.0, iky_[iy]) * src[k];
      }
    g.inverse(tmp, dst.data());
  };

  g.inverse(nh, n_.data());

  if (need_psi) {
    Complex* psi = psi_.data();
    for (std::size_t k = 0; k < ns; ++k) psi[k] = -inv_k2_[k] * wh[k];
  }
  if (on.advection) {
    // u1 = -d_y psi, u2 = d_x psi
    dy_to_phys(psi_.data(), u1_);
    for (double& v : u1_) v = -v;
    dx_to_phys(psi_.data(), u2_);
  }
  if (on.advection || on.shear) dx_to_phys(nh, nx_);
  if (on.advection) dy_to_phys(nh, ny_);
  if (need_w_grad) dx_to_phys(wh, wx_);
  if (on.advection) dy_to_phys(wh, wy_);

  // Physical-space products.
  FlowStats st;
  st.max_n = -std::numeric_limits<double>::infinity();
  st.min_n = std::numeric_limits<double>::infinity();
  double max_vx = 0.0, max_vy = 0.0;
  for (int iy = 0; iy < ny; ++iy) {
    const double yy = on.shear ? g.y(iy) * g.y(iy) : 0.0;
    for (int ix = 0; ix < nx; ++ix) {
      const std::size_t p = static_cast<std::size_t>(iy) * nx + ix;
      double pn = 0.0, pw = 0.0, vx = yy;
      if (on.shear) {
        pn -= yy * nx_[p];
        pw -= yy * wx_[p];
      }
      if (on.advection) {
        pn -= inv_a * (u1_[p] * nx_[p] + u2_[p] * ny_[p]);
        pw -= inv_a * (u1_[p] * wx_[p] + u2_[p] * wy_[p]);
        vx += inv_a * u1_[p];
        max_vy = std::max(max_vy, std::abs(u2_[p]) * inv_a);
      }
      max_vx = std::max(max_vx, std::abs(vx));
      pn_[p] = pn;
      pw_[p] = pw;
      st.max_n = std::max(st.max_n, n_[p]);
      st.min_n = std::min(st.min_n, n_[p]);
    }
  }
  st.max_speed_x = max_vx;
  st.max_speed_y = max_vy;

  Complex* dn = out.dn.data();
  Complex* dw = out.domega.data();
  g.forward(pn_.data(), dn);
  g.forward(pw_.data(), dw);

  if (on.chemotaxis) {
    for (std::size_t k = 0; k < ns; ++k) qx_hat_.data()[k] = screen_[k] * nh[k];
    dx_to_phys(qx_hat_.data(), cx_);
    dy_to_phys(qx_hat_.data(), cy_);
    double max_gc = 0.0;
    for (std::size_t p = 0; p < np; ++p) {
      max_gc = std::max(max_gc, cx_[p] * cx_[p] + cy_[p] * cy_[p]);
      qx_[p] = n_[p] * cx_[p];
      qy_[p] = n_[p] * cy_[p];
    }
    st.max_chemo_drift = std::sqrt(max_gc) * inv_a;
    g.forward(qx_.data(), qx_hat_.data());
    g.forward(qy_.data(), qy_hat_.data());
    const Complex* qx = qx_hat_.data();
    const Complex* qy = qy_hat_.data();
    for (int iy = 0; iy < ny; ++iy)
      for (int ik = 0; ik < nkx; ++ik) {
        const std::size_t k = static_cast<std::size_t>(iy) * nkx + ik;
        dn[k] -= inv_a * Complex(0.0, 1.0) * (ikx_[ik] * qx[k] + iky_[iy] * qy[k]);
      }
  }

  if (on.shear) {
    const Complex* psi = psi_.data();
    for (int iy = 0; iy < ny; ++iy)
      for (int ik = 1; ik < nkx; ++ik) {
        const std::size_t k = static_cast<std::size_t>(iy) * nkx + ik;
        dw[k] += 2.0 * Complex(0.0, ikx_[ik]) * psi[k];
      }
  }
  if (on.buoyancy) {
    for (int iy = 0; iy < ny; ++iy)
      for (int ik = 0; ik < nkx; ++ik) {
        const std::size_t k = static_cast<std::size_t>(iy) * nkx + ik;
        dw[k] += inv_a * Complex(0.0, ikx_[ik]) * nh[k];
      }
  }

  for (std::size_t k = 0; k < ns; ++k) {
    if (!mask_[k]) {
      dn[k] = Complex{};
      dw[k] = Complex{};
    }
  }

  st.finite = std::isfinite(st.max_n) && std::isfinite(st.min_n) && std::isfinite(st.max_speed_x) &&
              std::isfinite(st.max_speed_y) && std::isfinite(st.max_chemo_drift);
  if (st.finite) {
    for (std::size_t k = 0; k < ns; ++k) {
      if (!std::isfinite(dn[k].real()) || !std::isfinite(dn[k].imag()) || !std::isfinite(dw[k].real()) ||
          !std::isfinite(dw[k].imag())) {
        st.finite = false;
        break;
      }
    }
  }
  stats_ = st;
}

Tendency RhsEvaluator::explicit_part(const SpectralField& n, const SpectralField& omega) {
  Tendency out{SpectralField(grid_), SpectralField(grid_)};
  explicit_part(n, omega, out);
  return out;
}

Tendency RhsEvaluator::full(const State& s) {
  Tendency out = explicit_part(s.n, s.omega);
  if (params_.terms.diffusion) {
    const double inv_a = 1.0 / params_.a;
    const Grid& g = *grid_;
    for (int iy = 0; iy < g.ny(); ++iy)
      for (int ik = 0; ik < g.nkx(); ++ik) {
        if (!g.retained(ik, iy)) continue;
        const double d = -inv_a * g.k2(ik, iy);
        out.dn(ik, iy) += d * s.n(ik, iy);
        out.domega(ik, iy) += d * s.omega(ik, iy);
      }
  }
  return out;
}

Tendency rhs(const State& s, const PhysParams& params) {
  RhsEvaluator ev(s.n.grid(), params);
  return ev.full(s);
}

// ------------------------------------------------------- mode-decomposed oracle

namespace {

// Divergence of the vector (a * bx, a * by) formed in physical space.
SpectralField div_product(const ScalarField& a, const ScalarField& bx, const ScalarField& by) {
  return ddx(to_spectral(hadamard(a, bx))) + ddy(to_spectral(hadamard(a, by)));
}

SpectralField dy_product(const ScalarField& a, const ScalarField& b) { return ddy(to_spectral(hadamard(a, b))); }

}  // namespace

ModeTendency rhs_mode_decomposed(const State& s, const PhysParams& params) {
  const GridPtr& grid = s.n.grid();
  const TermSwitches& on = params.terms;
  const double inv_a = 1.0 / params.a;

  const SpectralField n0h = project_zero(s.n);
  const SpectralField nzh = project_nonzero(s.n);
  const SpectralField w0h = project_zero(s.omega);
  const SpectralField wzh = project_nonzero(s.omega);

  const ScalarField n0 = to_physical(n0h);
  const ScalarField nz = to_physical(nzh);
  const ScalarField w0 = to_physical(w0h);
  const ScalarField wz = to_physical(wzh);

  // Elliptic pieces for each mode class separately.
  const SpectralField c0h = solve_screened_poisson(n0h);
  const SpectralField czh = solve_screened_poisson(nzh);
  const ScalarField dyc0 = to_physical(ddy(c0h));
  const ScalarField dxcz = to_physical(ddx(czh));
  const ScalarField dycz = to_physical(ddy(czh));

  // u0 = (-d_y (d_yy)^{-1} omega0, 0); u_nz = grad-perp Lap^{-1} omega_nz.
  const BiotSavartSpectral bs0 = biot_savart(w0h);
  const SpectralField psi_nz = inverse_laplacian_nonzero(wzh, 1e-9);
  const ScalarField u0_1 = to_physical(bs0.u1);
  const ScalarField uz_1 = to_physical(ddy(psi_nz)) * -1.0;
  const ScalarField uz_2 = to_physical(ddx(psi_nz));
  const ScalarField zero(grid);

  ModeTendency out{SpectralField(grid), SpectralField(grid), SpectralField(grid), SpectralField(grid)};

  if (on.diffusion) {
    out.dn0.axpy(inv_a, laplacian(n0h));
    out.dn_nz.axpy(inv_a, laplacian(nzh));
    out.domega0.axpy(inv_a, laplacian(w0h));
    out.domega_nz.axpy(inv_a, laplacian(wzh));
  }

  if (on.chemotaxis) {
    // zero mode: d_y (n_nz d_y c_nz)_0 + d_y (n0 d_y c0)
    out.dn0.axpy(-inv_a, project_zero(dy_product(nz, dycz)) + dy_product(n0, dyc0));
    // nonzero: div(n_nz grad c_nz)_nz + div(n0 grad c_nz) + d_y(n_nz d_y c0)
    out.dn_nz.axpy(-inv_a, project_nonzero(div_product(nz, dxcz, dycz)) + div_product(n0, dxcz, dycz) +
                               dy_product(nz, dyc0));
  }

  if (on.advection) {
    // zero mode: d_y (u2_nz n_nz)_0 ; u0 has no second component
    out.dn0.axpy(-inv_a, project_zero(dy_product(uz_2, nz)));
    out.dn_nz.axpy(-inv_a, project_nonzero(div_product(nz, uz_1, uz_2)) + div_product(nz, u0_1, zero) +
                               div_product(n0, uz_1, uz_2));
    out.domega0.axpy(-inv_a, project_zero(dy_product(uz_2, wz)));
    out.domega_nz.axpy(-inv_a, project_nonzero(div_product(wz, uz_1, uz_2)) + div_product(wz, u0_1, zero) +
                                   div_product(w0, uz_1, uz_2));
  }

  if (on.shear) {
    const ScalarField dxnz = to_physical(ddx(nzh));
    const ScalarField dxwz = to_physical(ddx(wzh));
    out.dn_nz -= to_spectral(times_y_power(dxnz, 2));
    out.domega_nz -= to_spectral(times_y_power(dxwz, 2));
    out.domega_nz.axpy(2.0, ddx(psi_nz));
  }

  if (on.buoyancy) out.domega_nz.axpy(inv_a, ddx(nzh));

  for (SpectralField* f : {&out.dn0, &out.dn_nz, &out.domega0, &out.domega_nz}) dealias_in_place(*f);
  return out;
}

double zero_mode_velocity_residual(const State& prev, const State& curr, const PhysParams& params) {
  const double dt = curr.t - prev.t;
  if (!(dt > 0.0)) throw std::invalid_argument("zero_mode_velocity_residual: states must be time-ordered");
  const double inv_a = 1.0 / params.a;

  const SpectralField u0_prev = project_zero(prev.u1);
  const SpectralField u0_curr = project_zero(curr.u1);
  SpectralField res = (u0_curr - u0_prev) * (1.0 / dt);
  res.axpy(-inv_a, laplacian(u0_prev));  // only ky contributes on the zero mode

  const ScalarField uz1 = to_physical(project_nonzero(prev.u1));
  const ScalarField uz2 = to_physical(project_nonzero(prev.u2));
  res.axpy(inv_a, project_zero(dy_product(uz1, uz2)));
  dealias_in_place(res);
  return spectral_l2(res);
}

}  // namespace pksns
