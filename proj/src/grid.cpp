#include "pksns/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace pksns {

namespace {

// FFTW's planner is not re-entrant; execution through the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

ComplexVec& inverse_scratch(std::size_t n) {
  thread_local ComplexVec buf;
  if (buf.size() < n) buf.resize(n);
  return buf;
}

}  // namespace

void GridSpec::validate() const {
  auto check_res = [](int n, const char* name) {
    if (n < 4 || n % 2 != 0) {
      throw std::invalid_argument(std::string("grid: ") + name + " must be an even integer >= 4, got " +
                                  std::to_string(n));
    }
  };
  check_res(nx, "nx");
  check_res(ny, "ny");
  if (!(ly > 0.0) || !std::isfinite(ly)) {
    throw std::invalid_argument("grid: ly must be positive, got " + std::to_string(ly));
  }
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw std::invalid_argument("grid: dealias_fraction must lie in (0, 1], got " +
                                std::to_string(dealias_fraction));
  }
}

struct Grid::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  fftw_plan fwd_y = nullptr;
  fftw_plan inv_y = nullptr;
};

Grid::Grid(const GridSpec& spec) : spec_(spec), plans_(std::make_unique<Plans>()) {
  spec_.validate();
  const int nx = spec_.nx;
  const int ny = spec_.ny;
  dx_ = 2.0 * M_PI / nx;
  dy_ = 2.0 * spec_.ly / ny;

  x_.resize(nx);
  for (int i = 0; i < nx; ++i) x_[i] = i * dx_;
  y_.resize(ny);
  for (int j = 0; j < ny; ++j) y_[j] = -spec_.ly + j * dy_;

  waves_.kx.resize(nx);
  for (int i = 0; i < nx; ++i) waves_.kx[i] = (i <= nx / 2) ? i : i - nx;
  waves_.ky.resize(ny);
  const double ky_unit = M_PI / spec_.ly;
  for (int j = 0; j < ny; ++j) waves_.ky[j] = ky_unit * ((j <= ny / 2) ? j : j - ny);

  // Small slack so exact rational cutoffs (e.g. 2/3 * 6 = 4) keep the boundary mode.
  kx_cut_ = spec_.dealias_fraction * nx / 2.0;
  ky_cut_ = spec_.dealias_fraction * ky_unit * ny / 2.0;
  keep_x_.resize(nkx());
  for (int i = 0; i < nkx(); ++i) keep_x_[i] = i <= kx_cut_ + 1e-9;
  keep_y_.resize(ny);
  for (int j = 0; j < ny; ++j) {
    const int m = (j <= ny / 2) ? j : ny - j;
    keep_y_[j] = m <= spec_.dealias_fraction * ny / 2.0 + 1e-9;
  }

  // Plans are made once on scratch buffers and executed with the new-array API.
  RealVec rbuf(physical_size());
  ComplexVec cbuf(spectral_size());
  ComplexVec ybuf_in(ny), ybuf_out(ny);
  auto* cptr = reinterpret_cast<fftw_complex*>(cbuf.data());
  auto* yin = reinterpret_cast<fftw_complex*>(ybuf_in.data());
  auto* yout = reinterpret_cast<fftw_complex*>(ybuf_out.data());
  std::lock_guard<std::mutex> lock(planner_mutex());
  plans_->r2c = fftw_plan_dft_r2c_2d(ny, nx, rbuf.data(), cptr, FFTW_ESTIMATE);
  plans_->c2r = fftw_plan_dft_c2r_2d(ny, nx, cptr, rbuf.data(), FFTW_ESTIMATE);
  plans_->fwd_y = fftw_plan_dft_1d(ny, yin, yout, FFTW_FORWARD, FFTW_ESTIMATE);
  plans_->inv_y = fftw_plan_dft_1d(ny, yin, yout, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plans_->r2c || !plans_->c2r || !plans_->fwd_y || !plans_->inv_y) {
    throw std::runtime_error("grid: FFTW planning failed");
  }
}

Grid::~Grid() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  for (fftw_plan p : {plans_->r2c, plans_->c2r, plans_->fwd_y, plans_->inv_y}) {
    if (p) fftw_destroy_plan(p);
  }
}

void Grid::forward(const double* in, Complex* out) const {
  // r2c does not modify its input.
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
  const double scale = 1.0 / static_cast<double>(physical_size());
  const std::size_t n = spectral_size();
  for (std::size_t k = 0; k < n; ++k) out[k] *= scale;
}

void Grid::inverse(const Complex* in, double* out) const {
  const std::size_t n = spectral_size();
  ComplexVec& scratch = inverse_scratch(n);
  std::copy(in, in + n, scratch.begin());
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

void Grid::forward_y(const Complex* in, Complex* out) const {
  fftw_execute_dft(plans_->fwd_y, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
  const double scale = 1.0 / spec_.ny;
  for (int j = 0; j < spec_.ny; ++j) out[j] *= scale;
}

void Grid::inverse_y(const Complex* in, Complex* out) const {
  fftw_execute_dft(plans_->inv_y, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

GridPtr make_grid(const GridSpec& spec) {
  spec.validate();
  return std::make_shared<const Grid>(spec);
}

}  // namespace pksns
