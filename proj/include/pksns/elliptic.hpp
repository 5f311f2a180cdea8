// Inverse operators: screened Poisson, Laplacian on nonzero modes, d_yy on the
// zero mode, and Biot-Savart velocity reconstruction. Every solve is an exact
// division by the diagonal spectral symbol.
#pragma once

#include "pksns/field.hpp"

namespace pksns {

/// Solves -Lap c + c = n (symbol 1 + |k|^2 >= 1).
SpectralField solve_screened_poisson(const SpectralField& n);
ScalarField solve_screened_poisson(const ScalarField& n);

/// L2 norm of -Lap c + c - n.
double screened_poisson_residual(const ScalarField& c, const ScalarField& n);

/// Relative size ||P0 f|| / ||f|| used by the zero-mode guards.
double zero_mode_fraction(const SpectralField& f);

/// Lap^{-1} on x-mean-free data. Throws std::domain_error when the kx = 0
/// content exceeds `tol` relative to ||f||.
SpectralField inverse_laplacian_nonzero(const SpectralField& f, double tol = 1e-12);
ScalarField inverse_laplacian_nonzero(const ScalarField& f, double tol = 1e-12);

struct ZeroModeInverse {
  ScalarField result;
  /// y-mean of the input that had to be removed (the kernel of d_yy on the torus).
  double removed_mean = 0.0;
};

/// (d_yy)^{-1} of an x-independent field. The y-mean is subtracted and reported.
/// Throws std::domain_error if the input carries nonzero x modes.
ZeroModeInverse inverse_dyy_zero(const ScalarField& f0, double tol = 1e-12);

struct BiotSavartSpectral {
  SpectralField u1;
  SpectralField u2;
  SpectralField psi;  // stream function Lap^{-1} omega (zero mean)
  double removed_mean = 0.0;
};

struct BiotSavartResult {
  VectorField u;
  double removed_mean = 0.0;
};

/// u = grad-perp Lap^{-1} omega with grad-perp = (-d_y, d_x); the zero x mode is
/// inverted through (d_yy)^{-1}, so u2 has exactly zero x-mean.
BiotSavartSpectral biot_savart(const SpectralField& omega);
BiotSavartResult biot_savart(const ScalarField& omega);

}  // namespace pksns
