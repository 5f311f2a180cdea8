#include "pksns/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pksns/elliptic.hpp"

namespace pksns {

const char* operator_name(LinearOperator op) { return op == LinearOperator::L ? "L" : "L_tilde"; }

LinearOperator parse_operator(const std::string& name) {
  if (name == "L") return LinearOperator::L;
  if (name == "L_tilde" || name == "Ltilde") return LinearOperator::LTilde;
  throw std::invalid_argument("unknown linear operator '" + name + "' (expected L or L_tilde)");
}

SpectralField apply_operator(const SpectralField& f, double a, LinearOperator op) {
  SpectralField out = laplacian(f) * (1.0 / a);
  out -= to_spectral(times_y_power(to_physical(ddx(f)), 2));
  if (op == LinearOperator::LTilde) out.axpy(2.0, ddx(inverse_laplacian_nonzero(f, 1e-9)));
  return out;
}

namespace {

// One x mode: complex y-profile kept as y-Fourier coefficients.
struct Column {
  int ikx = 0;
  double kx = 0.0;
  ComplexVec coef;
};

class ColumnEvolver {
 public:
  ColumnEvolver(const Grid& g, double a, LinearOperator op, bool diffusion)
      : g_(g), a_(a), op_(op), diffusion_(diffusion), phys_(g.ny()), prod_(g.ny()), y2_(g.ny()) {
    for (int j = 0; j < g.ny(); ++j) y2_[j] = g.y(j) * g.y(j);
  }

  // N(c) = -i kx F_y[y^2 g] + 2 i kx (-c / k^2)
  void explicit_part(const Column& col, const Complex* c, Complex* out) {
    const int ny = g_.ny();
    g_.inverse_y(c, phys_.data());
    for (int j = 0; j < ny; ++j) phys_[j] *= y2_[j];
    g_.forward_y(phys_.data(), prod_.data());
    const Complex ikx(0.0, col.kx);
    for (int j = 0; j < ny; ++j) {
      out[j] = -ikx * prod_[j];
      if (op_ == LinearOperator::LTilde) {
        const double k2 = col.kx * col.kx + g_.ky(j) * g_.ky(j);
        out[j] += 2.0 * ikx * (-c[j] / k2);
      }
    }
  }

  void set_dt(const Column& col, double dt, std::vector<double>& half) const {
    half.resize(g_.ny());
    for (int j = 0; j < g_.ny(); ++j) {
      const double k2 = col.kx * col.kx + g_.ky(j) * g_.ky(j);
      half[j] = diffusion_ ? std::exp(-0.5 * dt * k2 / a_) : 1.0;
    }
  }

  // Same three-stage integrating-factor scheme as the nonlinear stepper.
  void step(Column& col, double dt, const std::vector<double>& half) {
    const int ny = g_.ny();
    n0_.resize(ny);
    n1_.resize(ny);
    stage_.resize(ny);
    Complex* u = col.coef.data();
    const double h = 0.5 * dt;
    explicit_part(col, u, n0_.data());
    for (int j = 0; j < ny; ++j) stage_[j] = half[j] * (u[j] + h * n0_[j]);
    explicit_part(col, stage_.data(), n1_.data());
    for (int j = 0; j < ny; ++j) stage_[j] = half[j] * u[j] + h * n1_[j];
    explicit_part(col, stage_.data(), n0_.data());
    for (int j = 0; j < ny; ++j) u[j] = half[j] * (half[j] * u[j] + dt * n0_[j]);
  }

  // Returns (L2^2, weighted^2) contributions of one column, counting its mirror.
  std::pair<double, double> norms_sq(const Column& col) {
    g_.inverse_y(col.coef.data(), phys_.data());
    double l2 = 0.0, w = 0.0;
    for (int j = 0; j < g_.ny(); ++j) {
      const double m = std::norm(phys_[j]);
      l2 += m;
      w += y2_[j] * m;
    }
    const double mult = 2.0 * 2.0 * M_PI * g_.dy();  // column and its conjugate, times the x period
    return {mult * l2, mult * w};
  }

 private:
  const Grid& g_;
  double a_;
  LinearOperator op_;
  bool diffusion_;
  ComplexVec phys_, prod_;
  std::vector<double> y2_;
  ComplexVec n0_, n1_, stage_;
};

}  // namespace

LinearRun evolve_linear(const ScalarField& f_in, LinearOperator op, const LinearOptions& opt) {
  const Grid& g = f_in.g();
  const SpectralField fh = to_spectral(f_in);
  const double frac = zero_mode_fraction(fh);
  if (frac > 1e-12) {
    throw std::invalid_argument("evolve_linear: initial data has zero-mode content (relative " +
                                std::to_string(frac) + "); x-mean-free data required");
  }
  const double horizon = opt.horizon > 0.0 ? opt.horizon : 3.0 / lambda_A(opt.a);
  const double interval = opt.sample_interval > 0.0 ? opt.sample_interval : horizon / 400.0;
  const long samples = std::max(1L, std::lround(horizon / interval));
  const double sample_dt = horizon / static_cast<double>(samples);

  // active columns: drop kx = 0 and Nyquist, and negligible ones
  double max_col = 0.0;
  std::vector<double> col_mag(g.nkx(), 0.0);
  for (int ik = 1; ik < g.nkx() - 1; ++ik) {
    double s = 0.0;
    for (int iy = 0; iy < g.ny(); ++iy) s += std::norm(fh(ik, iy));
    col_mag[ik] = std::sqrt(s);
    max_col = std::max(max_col, col_mag[ik]);
  }
  std::vector<Column> cols;
  for (int ik = 1; ik < g.nkx() - 1; ++ik) {
    if (max_col == 0.0 || col_mag[ik] <= 1e-13 * max_col) continue;
    Column c;
    c.ikx = ik;
    c.kx = g.kx(ik);
    c.coef.resize(g.ny());
    for (int iy = 0; iy < g.ny(); ++iy) c.coef[iy] = fh(ik, iy);
    cols.push_back(std::move(c));
  }

  LinearRun run;
  ColumnEvolver ev(g, opt.a, op, opt.diffusion);
  auto record = [&](double t) {
    double l2 = 0.0, w = 0.0;
    for (const Column& c : cols) {
      auto [a, b] = ev.norms_sq(c);
      l2 += a;
      w += b;
    }
    run.x_norm.t.push_back(t);
    run.x_norm.value.push_back(std::sqrt(l2 + w));
    if (opt.record_l2) {
      run.l2.t.push_back(t);
      run.l2.value.push_back(std::sqrt(l2));
    }
  };

  double kmax = 0.0;
  for (const Column& c : cols) kmax = std::max(kmax, c.kx);
  const double y2max = g.ly() * g.ly();
  const double dt_cfl = kmax > 0.0 ? opt.cfl / (kmax * y2max) : sample_dt;
  const long sub = std::max(1L, static_cast<long>(std::ceil(sample_dt / dt_cfl - 1e-12)));
  const double dt = sample_dt / static_cast<double>(sub);
  run.dt = dt;

  record(0.0);
  std::vector<std::vector<double>> halves(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) ev.set_dt(cols[i], dt, halves[i]);
  for (long k = 1; k <= samples; ++k) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      for (long s = 0; s < sub; ++s) ev.step(cols[i], dt, halves[i]);
    }
    run.steps += sub;
    record(k == samples ? horizon : k * sample_dt);
  }
  return run;
}

DecayFit fit_decay_rate(const NormSeries& s, double t_start, double t_end) {
  if (s.t.size() != s.value.size()) throw std::invalid_argument("fit_decay_rate: series length mismatch");
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  int n = 0;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    const double t = s.t[i];
    if (t < t_start - 1e-12 || t > t_end + 1e-12) continue;
    if (!(s.value[i] > 0.0)) {
      throw std::invalid_argument("fit_decay_rate: nonpositive value " + std::to_string(s.value[i]) +
                                  " at t = " + std::to_string(t));
    }
    const double y = std::log(s.value[i]);
    pts.emplace_back(t, y);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("fit_decay_rate: fewer than two samples in window");
  const double den = n * stt - st * st;
  if (den <= 0.0) throw std::invalid_argument("fit_decay_rate: degenerate time window");
  const double slope = (n * sty - st * sy) / den;
  const double icpt = (sy - slope * st) / n;
  double ss = 0.0;
  for (auto [t, y] : pts) {
    const double r = y - (icpt + slope * t);
    ss += r * r;
  }
  DecayFit f;
  f.rate = -slope;
  f.prefactor = std::exp(icpt);
  f.t_start = t_start;
  f.t_end = t_end;
  f.residual = std::sqrt(ss / n);
  f.poor = f.residual > 0.05;
  f.points = n;
  return f;
}

DecayFit fit_decay_rate(const NormSeries& s) {
  if (s.t.empty()) throw std::invalid_argument("fit_decay_rate: empty series");
  const double t0 = s.t.front();
  const double span = s.t.back() - t0;
  return fit_decay_rate(s, t0 + 0.1 * span, t0 + 0.9 * span);
}

EnvelopeCheck envelope_check(const NormSeries& s, double a, double c0, double eps0) {
  EnvelopeCheck out;
  if (s.value.empty() || s.value.front() == 0.0) return out;
  const double lam = lambda_A(a);
  const double f0 = s.value.front();
  const double t0 = s.t.front();
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    const double bound = c0 * std::exp(-eps0 * lam * (s.t[i] - t0)) * f0;
    const double m = (bound - s.value[i]) / bound;
    if (m < out.margin) {
      out.margin = m;
      out.worst_t = s.t[i];
    }
  }
  out.pass = out.margin >= 0.0;
  return out;
}

}  // namespace pksns
