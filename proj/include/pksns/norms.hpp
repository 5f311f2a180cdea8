// Quadrature norms on the truncated strip, including the weighted X-norm
// ||f||_X^2 = ||f||_{L2}^2 + ||y f||_{L2}^2.
//
// All integrals use the periodic rectangle rule dx*dy*sum; L-infinity is the
// grid-sampled maximum.
#pragma once

#include "pksns/field.hpp"

namespace pksns {

struct NormReport {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double weighted_l2 = 0.0;  // ||y f||_{L2}
  double x_norm = 0.0;
};

double integral(const ScalarField& f);
double norm_l1(const ScalarField& f);
double norm_l2(const ScalarField& f);
double norm_l2_sq(const ScalarField& f);
double norm_linf(const ScalarField& f);
/// ||y f||_{L2}.
double weighted_l2(const ScalarField& f);
double weighted_l2_sq(const ScalarField& f);
double norm_x(const ScalarField& f);
double norm_x_sq(const ScalarField& f);

/// p in {1, 2, 4, inf}; pass std::numeric_limits<double>::infinity() for the sup norm.
/// Throws std::invalid_argument for any other exponent.
double norm_lp(const ScalarField& f, double p);

/// Total mass ||n||_{L1}. Writes a warning to stderr when n has negative values
/// below -tol * max|n| (tol = 1e-10).
double mass(const ScalarField& n);

NormReport norm_report(const ScalarField& f);

/// ||f||_X^2 for a vector field, summed over components.
double norm_x_sq(const VectorField& u);

}  // namespace pksns
