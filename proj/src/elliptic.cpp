#include "pksns/elliptic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pksns/norms.hpp"

namespace pksns {

SpectralField solve_screened_poisson(const SpectralField& n) {
  const Grid& g = n.g();
  SpectralField c(n.grid());
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ik = 0; ik < g.nkx(); ++ik) c(ik, iy) = n(ik, iy) / (1.0 + g.k2(ik, iy));
  }
  return c;
}

ScalarField solve_screened_poisson(const ScalarField& n) {
  return to_physical(solve_screened_poisson(to_spectral(n)));
}

double screened_poisson_residual(const ScalarField& c, const ScalarField& n) {
  ScalarField r = c - laplacian(c) - n;
  return norm_l2(r);
}

double zero_mode_fraction(const SpectralField& f) {
  const double total = spectral_l2(f);
  if (total == 0.0) return 0.0;
  return spectral_l2(project_zero(f)) / total;
}

SpectralField inverse_laplacian_nonzero(const SpectralField& f, double tol) {
  const double frac = zero_mode_fraction(f);
  if (frac > tol) {
    throw std::domain_error("inverse_laplacian_nonzero: input has zero-mode content (relative " +
                            std::to_string(frac) + ")");
  }
  const Grid& g = f.g();
  SpectralField out(f.grid());
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ik = 1; ik < g.nkx(); ++ik) out(ik, iy) = -f(ik, iy) / g.k2(ik, iy);
  }
  return out;
}

ScalarField inverse_laplacian_nonzero(const ScalarField& f, double tol) {
  return to_physical(inverse_laplacian_nonzero(to_spectral(f), tol));
}

ZeroModeInverse inverse_dyy_zero(const ScalarField& f0, double tol) {
  SpectralField fh = to_spectral(f0);
  const double frac = spectral_l2(project_nonzero(fh)) / std::max(spectral_l2(fh), 1e-300);
  if (frac > tol) {
    throw std::domain_error("inverse_dyy_zero: input is not x-independent (relative nonzero-mode content " +
                            std::to_string(frac) + ")");
  }
  const Grid& g = f0.g();
  ZeroModeInverse out{ScalarField(f0.grid()), fh(0, 0).real()};
  SpectralField inv(f0.grid());
  for (int iy = 1; iy < g.ny(); ++iy) {
    const double ky = g.ky(iy);
    inv(0, iy) = -fh(0, iy) / (ky * ky);
  }
  out.result = to_physical(inv);
  return out;
}

BiotSavartSpectral biot_savart(const SpectralField& omega) {
  const Grid& g = omega.g();
  BiotSavartSpectral out{SpectralField(omega.grid()), SpectralField(omega.grid()), SpectralField(omega.grid()),
                         omega(0, 0).real()};
  SpectralField& psi = out.psi;
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ik = 0; ik < g.nkx(); ++ik) {
      if (ik == 0 && iy == 0) continue;
      psi(ik, iy) = -omega(ik, iy) / g.k2(ik, iy);
    }
  }
  out.u1 = ddy(psi);
  out.u1 *= -1.0;
  out.u2 = ddx(psi);
  return out;
}

BiotSavartResult biot_savart(const ScalarField& omega) {
  BiotSavartSpectral s = biot_savart(to_spectral(omega));
  return {{to_physical(s.u1), to_physical(s.u2)}, s.removed_mean};
}

}  // namespace pksns
