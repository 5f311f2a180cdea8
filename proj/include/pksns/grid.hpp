// Discretization of the strip T x [-ly, ly) and the FFT machinery on it.
//
// Physical arrays are stored row-major with y as the slow index:
// element (ix, iy) lives at iy * nx + ix. The real-to-complex transform
// halves the x direction, so spectral arrays hold ny rows of nx/2 + 1
// non-negative x wavenumbers; column ikx = 0 is the x-independent (zero) mode.
#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <new>
#include <vector>

namespace pksns {

using Complex = std::complex<double>;

/// Allocator returning 64-byte aligned storage so FFTW's SIMD kernels can run
/// on any buffer through the new-array execute interface.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlign{64};

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), kAlign));
  }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, kAlign); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using RealVec = std::vector<double, AlignedAllocator<double>>;
using ComplexVec = std::vector<Complex, AlignedAllocator<Complex>>;

struct GridSpec {
  int nx = 64;
  int ny = 256;
  double ly = 12.0;
  double dealias_fraction = 2.0 / 3.0;

  /// Throws std::invalid_argument when a resolution is odd or below 4,
  /// ly is not positive, or the dealias fraction is outside (0, 1].
  void validate() const;
};

/// Wavenumbers in FFT ordering: kx over {0, 1, ..., nx/2, -nx/2+1, ..., -1},
/// ky = (pi / ly) * {0, 1, ..., ny/2, -ny/2+1, ..., -1}.
struct WaveNumbers {
  std::vector<int> kx;
  std::vector<double> ky;
};

class Grid {
 public:
  explicit Grid(const GridSpec& spec);
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  const GridSpec& spec() const { return spec_; }
  int nx() const { return spec_.nx; }
  int ny() const { return spec_.ny; }
  int nkx() const { return spec_.nx / 2 + 1; }
  double ly() const { return spec_.ly; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double cell_area() const { return dx_ * dy_; }
  double area() const { return 2.0 * M_PI * 2.0 * spec_.ly; }

  std::size_t physical_size() const { return static_cast<std::size_t>(spec_.nx) * spec_.ny; }
  std::size_t spectral_size() const { return static_cast<std::size_t>(nkx()) * spec_.ny; }

  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }
  double x(int ix) const { return x_[ix]; }
  double y(int iy) const { return y_[iy]; }

  const WaveNumbers& wavenumbers() const { return waves_; }
  /// Non-negative x wavenumber stored in spectral column ikx.
  double kx(int ikx) const { return static_cast<double>(ikx); }
  double ky(int iky) const { return waves_.ky[iky]; }
  double k2(int ikx, int iky) const { return kx(ikx) * kx(ikx) + ky(iky) * ky(iky); }

  /// True when spectral coefficient (ikx, iky) survives dealiasing.
  bool retained(int ikx, int iky) const { return keep_x_[ikx] && keep_y_[iky]; }
  double kx_cutoff() const { return kx_cut_; }
  double ky_cutoff() const { return ky_cut_; }

  // Normalized forward transform: the constant field 1 maps to coefficient 1 at (0, 0).
  void forward(const double* in, Complex* out) const;
  // Inverse transform; `in` is left untouched.
  void inverse(const Complex* in, double* out) const;
  // Complex transforms of one contiguous length-ny column along y.
  void forward_y(const Complex* in, Complex* out) const;
  void inverse_y(const Complex* in, Complex* out) const;

 private:
  struct Plans;

  GridSpec spec_;
  double dx_ = 0.0;
  double dy_ = 0.0;
  double kx_cut_ = 0.0;
  double ky_cut_ = 0.0;
  std::vector<double> x_;
  std::vector<double> y_;
  WaveNumbers waves_;
  std::vector<bool> keep_x_;
  std::vector<bool> keep_y_;
  std::unique_ptr<Plans> plans_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Validates the GridSpec and builds coordinates, wavenumbers and FFT plans.
GridPtr make_grid(const GridSpec& spec);

}  // namespace pksns
