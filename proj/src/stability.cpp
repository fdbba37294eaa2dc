#include "ibstab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ibstab/kernel.hpp"

namespace ibstab {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void require_lattice(int n, int p) {
  if (n < 4) throw std::invalid_argument("stability: N must be >= 4, got " + std::to_string(n));
  if (p < 1) throw std::invalid_argument("stability: P must be >= 1, got " + std::to_string(p));
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string("stability: ") + what + " must be positive");
}

WavePair canonical(int xi1, int xi2, int n) {
  int a = static_cast<int>(std::abs(fold_wavenumber(xi1, n)));
  int b = static_cast<int>(std::abs(fold_wavenumber(xi2, n)));
  if (a > b) std::swap(a, b);
  return {a, b};
}

void locate_maximum(StabilityReport& r) {
  const int n = r.n;
  r.cmax = *std::max_element(r.surface.begin(), r.surface.end());
  std::vector<WavePair> exact, near;
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2) {
      const double c = r.at(x1, x2);
      const WavePair w = canonical(x1, x2, n);
      if (c >= r.cmax * (1.0 - 1e-12)) exact.push_back(w);
      if (c >= r.cmax * (1.0 - 1e-6)) near.push_back(w);
    }
  r.argmax = *std::min_element(exact.begin(), exact.end());
  std::sort(near.begin(), near.end());
  near.erase(std::unique(near.begin(), near.end()), near.end());
  r.near_ties.clear();
  for (const auto& w : near)
    if (w != r.argmax) r.near_ties.push_back(w);
}

// |a(xi + n p', eps)|^2 for every m in Z_{np}.
std::vector<double> a_squares(int n, int p, double eps) {
  std::vector<double> out(static_cast<std::size_t>(n) * p);
  for (long m = 0; m < static_cast<long>(n) * p; ++m) out[m] = std::norm(a_sum(m, eps, n, p));
  return out;
}

double b_square_sum(int n, double eps) {
  double s = 0.0;
  for (long xi = 0; xi < n; ++xi) s += std::norm(b_sum(xi, eps, n));
  return s;
}

}  // namespace

long fold_wavenumber(long xi, int n) {
  long r = xi % n;
  if (r < 0) r += n;
  return 2 * r > n ? r - n : r;
}

cd b_sum(long xi, double eps, int n) {
  if (n < 4) throw std::invalid_argument("b_sum: N must be >= 4");
  const double w = 2.0 * kPi * static_cast<double>(xi) / n;
  cd s{0.0, 0.0};
  const long lo = static_cast<long>(std::floor(-2.0 - eps));
  for (long j = lo; j <= lo + 5; ++j) {
    const double r = static_cast<double>(j) + eps;
    if (std::abs(r) >= 2.0) continue;
    s += phi(r) * std::polar(1.0, -w * r);
  }
  return s / static_cast<double>(n);
}

cd a_sum(long m, double eps, int n, int p) {
  require_lattice(n, p);
  const double w = 2.0 * kPi * static_cast<double>(m) / n;
  cd s{0.0, 0.0};
  const long lo = static_cast<long>(std::floor((-2.0 - eps) * p));
  const long hi = static_cast<long>(std::ceil((2.0 - eps) * p));
  for (long j = lo; j <= hi; ++j) {
    const double r = eps + static_cast<double>(j) / p;
    if (std::abs(r) >= 2.0) continue;
    s += phi(r) * std::polar(1.0, -w * r);
  }
  return s / (static_cast<double>(n) * p);
}

StabilityReport c_surface_target(int n, int p, const Vec3& eps, SurfaceMode mode) {
  require_lattice(n, p);
  StabilityReport r;
  r.kind = ForcingKind::TargetPoint;
  r.n = n;
  r.p = p;
  r.mode = mode;
  r.eps = mode == SurfaceMode::Exact ? eps : Vec3{0, 0, 0};
  r.surface.assign(static_cast<std::size_t>(n) * n, 0.0);
  const double n5 = std::pow(static_cast<double>(n), 5);

  std::vector<double> s1(n), s2(n);
  double sb = 0.0;
  if (mode == SurfaceMode::Exact) {
    const auto a1 = a_squares(n, p, eps[0]);
    const auto a2 = a_squares(n, p, eps[1]);
    for (int xi = 0; xi < n; ++xi)
      for (int q = 0; q < p; ++q) {
        s1[xi] += a1[xi + static_cast<std::size_t>(n) * q];
        s2[xi] += a2[xi + static_cast<std::size_t>(n) * q];
      }
    sb = b_square_sum(n, eps[2]);
  } else {
    const KernelTable table(n);
    for (int xi = 0; xi < n; ++xi) {
      const double c = table(fold_wavenumber(xi, n));
      s1[xi] = s2[xi] = c * c;
    }
    sb = 3.0 / (8.0 * n);
  }
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2)
      r.surface[static_cast<std::size_t>(x1) * n + x2] = n5 * s1[x1] * s2[x2] * sb;
  locate_maximum(r);
  return r;
}

StabilityReport c_surface_membrane(int n, int p, SurfaceMode mode, const Vec3& eps) {
  require_lattice(n, p);
  StabilityReport r;
  r.kind = ForcingKind::Membrane;
  r.n = n;
  r.p = p;
  r.mode = mode;
  r.eps = mode == SurfaceMode::Exact ? eps : Vec3{0, 0, 0};
  r.surface.assign(static_cast<std::size_t>(n) * n, 0.0);
  const long np = static_cast<long>(n) * p;

  if (mode == SurfaceMode::Exact) {
    const double n5 = std::pow(static_cast<double>(n), 5);
    const auto a1 = a_squares(n, p, eps[0]);
    const auto a2 = a_squares(n, p, eps[1]);
    const double sb = b_square_sum(n, eps[2]);
    std::vector<double> sine(np);
    for (long m = 0; m < np; ++m) {
      const double s = std::sin(kPi * static_cast<double>(m) / np);
      sine[m] = s * s;
    }
    for (int x1 = 0; x1 < n; ++x1)
      for (int x2 = 0; x2 < n; ++x2) {
        double acc = 0.0;
        for (int q1 = 0; q1 < p; ++q1) {
          const long m1 = x1 + static_cast<long>(n) * q1;
          for (int q2 = 0; q2 < p; ++q2) {
            const long m2 = x2 + static_cast<long>(n) * q2;
            acc += a1[m1] * a2[m2] * (sine[m1] + sine[m2]);
          }
        }
        r.surface[static_cast<std::size_t>(x1) * n + x2] = n5 * acc * sb;
      }
  } else {
    const KernelTable table(n);
    const double n4 = std::pow(static_cast<double>(n), 4);
    std::vector<double> phi2(n), sine(n);
    for (int xi = 0; xi < n; ++xi) {
      const long f = fold_wavenumber(xi, n);
      const double c = table(f);
      phi2[xi] = c * c;
      const double s = std::sin(kPi * static_cast<double>(f) / np);
      sine[xi] = s * s;
    }
    for (int x1 = 0; x1 < n; ++x1)
      for (int x2 = 0; x2 < n; ++x2)
        r.surface[static_cast<std::size_t>(x1) * n + x2] =
            3.0 * n4 / 8.0 * phi2[x1] * phi2[x2] * (sine[x1] + sine[x2]);
  }
  locate_maximum(r);
  return r;
}

double dtc_target_from_cmax(double stiffness, double rho, double h, double cmax) {
  require_positive(stiffness, "K");
  require_positive(rho, "rho");
  require_positive(h, "h");
  require_positive(cmax, "Cmax");
  return std::sqrt(4.0 * rho * h / (stiffness * cmax));
}

double dtc_target(double stiffness, double rho, double h) {
  return dtc_target_from_cmax(stiffness, rho, h, 3.0 / 8.0);
}

double dtc_membrane_from_cmax(double stiffness, double rho, double h, int p, double cmax) {
  require_positive(stiffness, "K");
  require_positive(rho, "rho");
  require_positive(h, "h");
  require_positive(cmax, "Cmax");
  if (p < 1) throw std::invalid_argument("stability: P must be >= 1");
  return std::sqrt(rho * h * h * h / (stiffness * p * p * cmax));
}

double dtc_membrane(double stiffness, double rho, double h, int n, int p, SurfaceMode mode,
                    const Vec3& eps) {
  const auto report = c_surface_membrane(n, p, mode, eps);
  return dtc_membrane_from_cmax(stiffness, rho, h, p, report.cmax);
}

std::vector<Table1Row> table1(const std::vector<int>& n_list, const std::vector<int>& p_list) {
  std::vector<Table1Row> rows;
  for (int n : n_list)
    for (int p : p_list) {
      const auto r = c_surface_membrane(n, p, SurfaceMode::BandLimited);
      rows.push_back({n, p, r.cmax, r.argmax.first, r.argmax.second, r.near_ties});
    }
  return rows;
}

}  // namespace ibstab
