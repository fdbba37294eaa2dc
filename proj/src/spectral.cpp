#include "ibstab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ibstab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct FftwBuffer {
  explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {
    if (!ptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  void* ptr;
};

struct FftwPlan {
  explicit FftwPlan(fftw_plan p) : plan(p) {
    if (!plan) throw std::runtime_error("fftw: plan creation failed");
  }
  ~FftwPlan() { fftw_destroy_plan(plan); }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
  fftw_plan plan;
};

// Complex transform of a d-dimensional cube of side n, forward or backward (unnormalized).
void complex_transform(std::vector<Complex>& data, int rank, int n, int sign) {
  FftwBuffer buf(data.size() * sizeof(fftw_complex));
  auto* c = static_cast<fftw_complex*>(buf.ptr);
  std::array<int, 3> dims{n, n, n};
  FftwPlan plan(fftw_plan_dft(rank, dims.data(), c, c, sign, FFTW_ESTIMATE));
  std::copy(data.begin(), data.end(), reinterpret_cast<Complex*>(c));
  fftw_execute(plan.plan);
  std::copy(reinterpret_cast<Complex*>(c), reinterpret_cast<Complex*>(c) + data.size(),
            data.begin());
}

}  // namespace

SpectralField3D::SpectralField3D(int n_) : n(n_) {
  if (n < 1) throw std::invalid_argument("spectrum: n must be positive");
  for (auto& d : data) d.assign(static_cast<std::size_t>(n) * n * n, Complex{});
}

BoundarySpectrum::BoundarySpectrum(int m_) : m(m_) {
  if (m < 1) throw std::invalid_argument("boundary spectrum: m must be positive");
  for (auto& d : data) d.assign(static_cast<std::size_t>(m) * m, Complex{});
}

SpectralField3D dft3(const VectorField& u) {
  const int n = u.grid().n();
  SpectralField3D out(n);
  for (int c = 0; c < 3; ++c) {
    std::copy(u[c].begin(), u[c].end(), out.data[c].begin());
    complex_transform(out.data[c], 3, n, FFTW_FORWARD);
  }
  return out;
}

VectorField idft3(const SpectralField3D& u_hat, double length) {
  const int n = u_hat.n;
  VectorField out(Grid(n, length));
  const double scale = 1.0 / (static_cast<double>(n) * n * n);
  for (int c = 0; c < 3; ++c) {
    std::vector<Complex> tmp = u_hat.data[c];
    complex_transform(tmp, 3, n, FFTW_BACKWARD);
    for (std::size_t i = 0; i < tmp.size(); ++i) out[c][i] = tmp[i].real() * scale;
  }
  return out;
}

BoundarySpectrum dft2_boundary(const SheetField& f) {
  const int m = f.m();
  BoundarySpectrum out(m);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < f.size(); ++i) out.data[c][i] = f[i][c];
    complex_transform(out.data[c], 2, m, FFTW_FORWARD);
  }
  return out;
}

SheetField idft2_boundary(const BoundarySpectrum& f_hat) {
  const int m = f_hat.m;
  SheetField out(m);
  const double scale = 1.0 / (static_cast<double>(m) * m);
  for (int c = 0; c < 3; ++c) {
    std::vector<Complex> tmp = f_hat.data[c];
    complex_transform(tmp, 2, m, FFTW_BACKWARD);
    for (std::size_t i = 0; i < tmp.size(); ++i) out[i][c] = tmp[i].real() * scale;
  }
  return out;
}

std::array<Complex, 3> grad_symbol(const Wavenumber& xi, int n, double h) {
  std::array<Complex, 3> g;
  for (int a = 0; a < 3; ++a) g[a] = Complex(0.0, std::sin(kTwoPi * xi[a] / n) / h);
  return g;
}

double laplacian_symbol(const Wavenumber& xi, int n, double h) {
  double s = 0.0;
  for (int a = 0; a < 3; ++a) {
    const double v = std::sin(std::numbers::pi * xi[a] / n);
    s += v * v;
  }
  return -4.0 / (h * h) * s;
}

bool is_null_mode(const Wavenumber& xi, int n) {
  for (int a = 0; a < 3; ++a) {
    const int r = ((xi[a] % n) + n) % n;
    if (!(r == 0 || 2 * r == n)) return false;
  }
  return true;
}

Mat3c projection_matrix(const Wavenumber& xi, int n, double h) {
  Mat3c p{};
  for (int a = 0; a < 3; ++a) p[a][a] = 1.0;
  if (is_null_mode(xi, n)) return p;
  const auto g = grad_symbol(xi, n, h);
  double norm2 = 0.0;
  for (int a = 0; a < 3; ++a) norm2 += std::norm(g[a]);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) p[a][b] -= g[a] * std::conj(g[b]) / norm2;
  return p;
}

struct RealFft3::Impl {
  Impl(int n, std::size_t real_size, std::size_t spec_size)
      : real(real_size * sizeof(double)),
        spec(spec_size * sizeof(fftw_complex)),
        r2c(fftw_plan_dft_r2c_3d(n, n, n, static_cast<double*>(real.ptr),
                                 static_cast<fftw_complex*>(spec.ptr), FFTW_MEASURE)),
        c2r(fftw_plan_dft_c2r_3d(n, n, n, static_cast<fftw_complex*>(spec.ptr),
                                 static_cast<double*>(real.ptr), FFTW_MEASURE)) {}
  FftwBuffer real;
  FftwBuffer spec;
  FftwPlan r2c;
  FftwPlan c2r;
};

RealFft3::RealFft3(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("fft: n must be positive");
  impl_ = std::make_unique<Impl>(n, static_cast<std::size_t>(n) * n * n, spectrum_size());
}

RealFft3::~RealFft3() = default;

void RealFft3::forward(const std::vector<double>& in, std::vector<Complex>& out) {
  auto* r = static_cast<double*>(impl_->real.ptr);
  std::copy(in.begin(), in.end(), r);
  fftw_execute(impl_->r2c.plan);
  const auto* c = static_cast<const Complex*>(impl_->spec.ptr);
  out.assign(c, c + spectrum_size());
}

void RealFft3::inverse(const std::vector<Complex>& in, std::vector<double>& out) {
  // c2r overwrites its input, so the caller's spectrum is copied in first.
  std::copy(in.begin(), in.end(), static_cast<Complex*>(impl_->spec.ptr));
  fftw_execute(impl_->c2r.plan);
  const auto* r = static_cast<const double*>(impl_->real.ptr);
  const std::size_t total = static_cast<std::size_t>(n_) * n_ * n_;
  const double scale = 1.0 / static_cast<double>(total);
  out.resize(total);
  for (std::size_t i = 0; i < total; ++i) out[i] = r[i] * scale;
}

}  // namespace ibstab
