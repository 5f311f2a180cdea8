// Linear shear-diffusion experiments on x-mean-free data:
//   L~ f = (1/A) Lap f - y^2 d_x f + 2 d_x Lap^{-1} f,   L f = (1/A) Lap f - y^2 d_x f.
// Each x mode decouples, so the evolution runs column by column on complex
// y-profiles with the same integrating-factor scheme as the nonlinear stepper.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pksns/field.hpp"
#include "pksns/params.hpp"

namespace pksns {

enum class LinearOperator { L, LTilde };

const char* operator_name(LinearOperator op);
/// Accepts "L" and "L_tilde".
LinearOperator parse_operator(const std::string& name);

struct NormSeries {
  std::vector<double> t;
  std::vector<double> value;
};

struct LinearOptions {
  double a = 200.0;
  double horizon = 0.0;       // <= 0: 3 / lambda_A
  double sample_interval = 0.0; // <= 0: horizon / 400
  double cfl = 0.4;
  bool diffusion = true;       // off: the A -> infinity transport limit
  bool record_l2 = false;      // additionally record the L2 norm
};

struct LinearRun {
  NormSeries x_norm;
  NormSeries l2;
  double dt = 0.0;
  long steps = 0;
};

/// Applies the operator to `f` (spectral, x-mean-free). Uses a physical-space
/// y^2 multiply, as the nonlinear right-hand side does.
SpectralField apply_operator(const SpectralField& f, double a, LinearOperator op);

/// Evolves df/dt = op f and records ||f(t)||_X at the sample cadence
/// (including t = 0 and the horizon). Throws std::invalid_argument when the
/// zero-mode fraction of f_in exceeds 1e-12.
LinearRun evolve_linear(const ScalarField& f_in, LinearOperator op, const LinearOptions& opt);

struct DecayFit {
  double rate = 0.0;
  double prefactor = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  double residual = 0.0;  // RMS of log residuals
  bool poor = false;      // residual > 0.05
  int points = 0;
};

/// Least squares of log(value) against t over [t_start, t_end]. Throws
/// std::invalid_argument for nonpositive values in the window or < 2 points.
DecayFit fit_decay_rate(const NormSeries& s, double t_start, double t_end);
/// Default window [0.1, 0.9] of the series span.
DecayFit fit_decay_rate(const NormSeries& s);

struct EnvelopeCheck {
  bool pass = true;
  double margin = 1.0;  // min over samples of (bound - value) / bound
  double worst_t = 0.0;
};

/// ||f(t)||_X <= c0 exp(-eps0 lambda_A t) ||f_in||_X at every sample, with
/// ||f_in||_X taken as the first sample.
EnvelopeCheck envelope_check(const NormSeries& s, double a, double c0 = 10.0, double eps0 = 0.1);

}  // namespace pksns
