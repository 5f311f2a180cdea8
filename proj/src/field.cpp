#include "pksns/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pksns {

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* what) {
  if (!a || !b) throw std::invalid_argument(std::string(what) + ": field has no grid");
  if (a == b) return;
  const GridSpec& sa = a->spec();
  const GridSpec& sb = b->spec();
  if (sa.nx != sb.nx || sa.ny != sb.ny || sa.ly != sb.ly || sa.dealias_fraction != sb.dealias_fraction) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch between fields");
  }
}

// ---------------------------------------------------------------- ScalarField

ScalarField::ScalarField(GridPtr grid) : grid_(std::move(grid)), data_(grid_->physical_size(), 0.0) {}

ScalarField::ScalarField(GridPtr grid, RealVec data) : grid_(std::move(grid)), data_(std::move(data)) {
  if (data_.size() != grid_->physical_size()) {
    throw std::invalid_argument("ScalarField: data size " + std::to_string(data_.size()) +
                                " does not match grid " + std::to_string(grid_->physical_size()));
  }
}

ScalarField ScalarField::from_function(GridPtr grid, const std::function<double(double, double)>& fn) {
  ScalarField f(grid);
  const Grid& g = *grid;
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ix = 0; ix < g.nx(); ++ix) f(ix, iy) = fn(g.x(ix), g.y(iy));
  }
  return f;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField +=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField -=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double ScalarField::max() const { return *std::max_element(data_.begin(), data_.end()); }
double ScalarField::min() const { return *std::min_element(data_.begin(), data_.end()); }

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool ScalarField::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "hadamard");
  ScalarField out(a.grid());
  for (std::size_t k = 0; k < a.size(); ++k) out.data()[k] = a.data()[k] * b.data()[k];
  return out;
}

ScalarField times_y_power(const ScalarField& f, int power) {
  ScalarField out(f.grid());
  const Grid& g = f.g();
  for (int iy = 0; iy < g.ny(); ++iy) {
    const double w = std::pow(g.y(iy), power);
    for (int ix = 0; ix < g.nx(); ++ix) out(ix, iy) = w * f(ix, iy);
  }
  return out;
}

// -------------------------------------------------------------- SpectralField

SpectralField::SpectralField(GridPtr grid) : grid_(std::move(grid)), data_(grid_->spectral_size(), Complex{}) {}

SpectralField::SpectralField(GridPtr grid, ComplexVec data) : grid_(std::move(grid)), data_(std::move(data)) {
  if (data_.size() != grid_->spectral_size()) {
    throw std::invalid_argument("SpectralField: data size does not match grid");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_, "SpectralField +=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_, "SpectralField -=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (Complex& v : data_) v *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& o) {
  require_same_grid(grid_, o.grid_, "SpectralField axpy");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * o.data_[k];
  return *this;
}

bool SpectralField::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& c) { return c == Complex{}; });
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(SpectralField a, double s) { return a *= s; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

// ------------------------------------------------------------------ transforms

SpectralField to_spectral(const ScalarField& f) {
  if (!f.grid()) throw std::invalid_argument("to_spectral: field has no grid");
  if (f.size() != f.g().physical_size()) throw std::invalid_argument("to_spectral: dimension mismatch");
  SpectralField out(f.grid());
  f.g().forward(f.data(), out.data());
  return out;
}

ScalarField to_physical(const SpectralField& f) {
  if (!f.grid()) throw std::invalid_argument("to_physical: field has no grid");
  if (f.size() != f.g().spectral_size()) throw std::invalid_argument("to_physical: dimension mismatch");
  ScalarField out(f.grid());
  f.g().inverse(f.data(), out.data());
  return out;
}

SpectralField ddx(const SpectralField& f) {
  const Grid& g = f.g();
  SpectralField out(f.grid());
  const int nyq = g.nx() / 2;
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ik = 0; ik < g.nkx(); ++ik) {
      out(ik, iy) = (ik == nyq) ? Complex{} : Complex(0.0, g.kx(ik)) * f(ik, iy);
    }
  }
  return out;
}

SpectralField ddy(const SpectralField& f) {
  const Grid& g = f.g();
  SpectralField out(f.grid());
  const int nyq = g.ny() / 2;
  for (int iy = 0; iy < g.ny(); ++iy) {
    const Complex factor = (iy == nyq) ? Complex{} : Complex(0.0, g.ky(iy));
    for (int ik = 0; ik < g.nkx(); ++ik) out(ik, iy) = factor * f(ik, iy);
  }
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  const Grid& g = f.g();
  SpectralField out(f.grid());
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ik = 0; ik < g.nkx(); ++ik) out(ik, iy) = -g.k2(ik, iy) * f(ik, iy);
  }
  return out;
}

ScalarField ddx(const ScalarField& f) { return to_physical(ddx(to_spectral(f))); }
ScalarField ddy(const ScalarField& f) { return to_physical(ddy(to_spectral(f))); }
ScalarField laplacian(const ScalarField& f) { return to_physical(laplacian(to_spectral(f))); }

void dealias_in_place(SpectralField& f) {
  const Grid& g = f.g();
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ik = 0; ik < g.nkx(); ++ik) {
      if (!g.retained(ik, iy)) f(ik, iy) = Complex{};
    }
  }
}

SpectralField dealias(SpectralField f) {
  dealias_in_place(f);
  return f;
}

// ----------------------------------------------------------------- projections

ScalarField project_zero(const ScalarField& f) {
  const Grid& g = f.g();
  ScalarField out(f.grid());
  for (int iy = 0; iy < g.ny(); ++iy) {
    double sum = 0.0;
    for (int ix = 0; ix < g.nx(); ++ix) sum += f(ix, iy);
    const double mean = sum / g.nx();
    for (int ix = 0; ix < g.nx(); ++ix) out(ix, iy) = mean;
  }
  return out;
}

ScalarField project_nonzero(const ScalarField& f) { return f - project_zero(f); }

SpectralField project_zero(const SpectralField& f) {
  const Grid& g = f.g();
  SpectralField out(f.grid());
  for (int iy = 0; iy < g.ny(); ++iy) out(0, iy) = f(0, iy);
  return out;
}

SpectralField project_nonzero(const SpectralField& f) {
  SpectralField out = f;
  const Grid& g = f.g();
  for (int iy = 0; iy < g.ny(); ++iy) out(0, iy) = Complex{};
  return out;
}

double spectral_l2(const SpectralField& f) {
  const Grid& g = f.g();
  const int nyq = g.nx() / 2;
  double sum = 0.0;
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ik = 0; ik < g.nkx(); ++ik) {
      const double w = (ik == 0 || ik == nyq) ? 1.0 : 2.0;
      sum += w * std::norm(f(ik, iy));
    }
  }
  return std::sqrt(g.area() * sum);
}

}  // namespace pksns
