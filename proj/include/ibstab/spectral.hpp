#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "ibstab/grid.hpp"

namespace ibstab {

using Complex = std::complex<double>;
using Wavenumber = std::array<int, 3>;
using Mat3c = std::array<std::array<Complex, 3>, 3>;

/// Full complex spectrum of a 3-vector field, one entry per xi in Z_n^3.
struct SpectralField3D {
  int n = 0;
  std::array<std::vector<Complex>, 3> data;

  explicit SpectralField3D(int n);
  std::size_t index(int xi1, int xi2, int xi3) const {
    return (static_cast<std::size_t>(xi1) * n + xi2) * n + xi3;
  }
};

/// Spectrum of a boundary field on the m x m lattice.
struct BoundarySpectrum {
  int m = 0;
  std::array<std::vector<Complex>, 3> data;

  explicit BoundarySpectrum(int m);
  std::size_t index(int m1, int m2) const { return static_cast<std::size_t>(m1) * m + m2; }
};

/// Forward transform without normalization.
SpectralField3D dft3(const VectorField& u);
/// Inverse transform with the 1/n^3 factor; the imaginary part is dropped.
VectorField idft3(const SpectralField3D& u_hat, double length);

BoundarySpectrum dft2_boundary(const SheetField& f);
/// Inverse boundary transform with the 1/m^2 factor; imaginary part dropped.
SheetField idft2_boundary(const BoundarySpectrum& f_hat);

/// (i/h) sin(2 pi xi_a / n) per component.
std::array<Complex, 3> grad_symbol(const Wavenumber& xi, int n, double h);
/// -(4/h^2) sum sin^2(pi xi_a / n).
double laplacian_symbol(const Wavenumber& xi, int n, double h);
/// True when every component of xi is 0 or n/2, where the gradient symbol vanishes.
bool is_null_mode(const Wavenumber& xi, int n);
/// Orthogonal projector onto the complement of the gradient symbol; identity on null modes.
Mat3c projection_matrix(const Wavenumber& xi, int n, double h);

/// Applies the projector at a mode given s_a = sin(2 pi xi_a / n).
inline void project_mode(const std::array<double, 3>& s, std::array<Complex, 3>& v) {
  const double s2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
  if (s2 == 0.0) return;
  const Complex proj = (s[0] * v[0] + s[1] * v[1] + s[2] * v[2]) / s2;
  for (int a = 0; a < 3; ++a) v[a] -= s[a] * proj;
}

/// Real-to-half-complex transforms of one scalar n^3 array, FFTW-backed.
/// Half spectrum layout: n x n x (n/2+1), last index fastest. Not thread-safe to construct.
class RealFft3 {
 public:
  explicit RealFft3(int n);
  ~RealFft3();
  RealFft3(const RealFft3&) = delete;
  RealFft3& operator=(const RealFft3&) = delete;

  int n() const { return n_; }
  int half() const { return n_ / 2 + 1; }
  std::size_t spectrum_size() const { return static_cast<std::size_t>(n_) * n_ * half(); }

  /// Unnormalized forward transform.
  void forward(const std::vector<double>& in, std::vector<Complex>& out);
  /// Inverse transform including the 1/n^3 factor.
  void inverse(const std::vector<Complex>& in, std::vector<double>& out);

 private:
  struct Impl;
  int n_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ibstab
