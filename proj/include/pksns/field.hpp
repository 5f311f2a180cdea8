// Value-semantic scalar and vector fields in physical and spectral form.
#pragma once

#include <functional>
#include <utility>

#include "pksns/grid.hpp"

namespace pksns {

/// Real grid function; element (ix, iy) is f(x_ix, y_iy).
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridPtr grid);
  ScalarField(GridPtr grid, RealVec data);

  /// Samples fn(x, y) at every grid point.
  static ScalarField from_function(GridPtr grid, const std::function<double(double, double)>& fn);

  const GridPtr& grid() const { return grid_; }
  const Grid& g() const { return *grid_; }
  std::size_t size() const { return data_.size(); }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  RealVec& values() { return data_; }
  const RealVec& values() const { return data_; }

  double& operator()(int ix, int iy) { return data_[static_cast<std::size_t>(iy) * grid_->nx() + ix]; }
  double operator()(int ix, int iy) const { return data_[static_cast<std::size_t>(iy) * grid_->nx() + ix]; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);

  double max() const;
  double min() const;
  double max_abs() const;
  bool all_finite() const;

 private:
  GridPtr grid_;
  RealVec data_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, double s);
ScalarField operator*(double s, ScalarField a);
/// Pointwise product (no dealiasing; see dealias()).
ScalarField hadamard(const ScalarField& a, const ScalarField& b);
/// Pointwise multiplication by y^power (y is the truncated coordinate, not periodized).
ScalarField times_y_power(const ScalarField& f, int power);

/// Spectral coefficients in half-complex layout: (ikx, iky) at iky * nkx + ikx.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(GridPtr grid);
  SpectralField(GridPtr grid, ComplexVec data);

  const GridPtr& grid() const { return grid_; }
  const Grid& g() const { return *grid_; }
  std::size_t size() const { return data_.size(); }
  Complex* data() { return data_.data(); }
  const Complex* data() const { return data_.data(); }
  ComplexVec& values() { return data_; }
  const ComplexVec& values() const { return data_; }

  Complex& operator()(int ikx, int iky) { return data_[static_cast<std::size_t>(iky) * grid_->nkx() + ikx]; }
  Complex operator()(int ikx, int iky) const { return data_[static_cast<std::size_t>(iky) * grid_->nkx() + ikx]; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  /// this += s * o
  SpectralField& axpy(double s, const SpectralField& o);

  bool is_zero() const;

 private:
  GridPtr grid_;
  ComplexVec data_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(SpectralField a, double s);
SpectralField operator*(double s, SpectralField a);

struct VectorField {
  ScalarField u1;
  ScalarField u2;
};

/// Throws std::invalid_argument if the two fields live on different grids.
void require_same_grid(const GridPtr& a, const GridPtr& b, const char* what);

SpectralField to_spectral(const ScalarField& f);
ScalarField to_physical(const SpectralField& f);

// Spectral derivatives. Odd derivatives drop the Nyquist coefficient.
SpectralField ddx(const SpectralField& f);
SpectralField ddy(const SpectralField& f);
SpectralField laplacian(const SpectralField& f);
ScalarField ddx(const ScalarField& f);
ScalarField ddy(const ScalarField& f);
ScalarField laplacian(const ScalarField& f);

/// Zeroes every coefficient outside the retained 2/3-rule (or configured) set.
SpectralField dealias(SpectralField f);
void dealias_in_place(SpectralField& f);

// Mode projections. The physical versions use the quadrature x-average; the
// spectral versions keep (zero) or drop (nonzero) the kx = 0 column.
ScalarField project_zero(const ScalarField& f);
ScalarField project_nonzero(const ScalarField& f);
SpectralField project_zero(const SpectralField& f);
SpectralField project_nonzero(const SpectralField& f);

/// Coefficient-space L2 norm scaled so it equals the quadrature L2 norm (Parseval).
double spectral_l2(const SpectralField& f);

}  // namespace pksns
