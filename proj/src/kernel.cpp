#include "ibstab/kernel.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ibstab {

namespace {

constexpr int kGaussOrder = 24;

struct GaussRule {
  std::array<double, kGaussOrder> x{};
  std::array<double, kGaussOrder> w{};
};

// Legendre roots on [-1,1] by Newton from Chebyshev guesses.
GaussRule make_gauss_rule() {
  GaussRule rule;
  const int n = kGaussOrder;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.x[i] = x;
    rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

void require_grid(int n) {
  if (n < 4) throw std::invalid_argument("kernel: N must be >= 4, got " + std::to_string(n));
}

}  // namespace

double phi(double r) {
  const double a = std::abs(r);
  if (a >= 2.0) return 0.0;
  if (a <= 1.0) return (3.0 - 2.0 * a + std::sqrt(1.0 + 4.0 * a - 4.0 * a * a)) / 8.0;
  return (5.0 - 2.0 * a - std::sqrt(-7.0 + 12.0 * a - 4.0 * a * a)) / 8.0;
}

double phi_hat(double s) {
  // 2 * int_0^2 phi(r) cos(s r) dr, split at r = 1 where phi is not smooth.
  // Panels are narrow enough that each spans at most pi radians of the cosine.
  const auto& rule = gauss_rule();
  const int panels = 1 + static_cast<int>(std::ceil(std::abs(s) / std::numbers::pi));
  const double width = 1.0 / panels;
  double total = 0.0;
  for (int unit = 0; unit < 2; ++unit) {
    for (int p = 0; p < panels; ++p) {
      const double mid = unit + (p + 0.5) * width;
      double acc = 0.0;
      for (int i = 0; i < kGaussOrder; ++i) {
        const double r = mid + 0.5 * width * rule.x[i];
        acc += rule.w[i] * phi(r) * std::cos(s * r);
      }
      total += 0.5 * width * acc;
    }
  }
  return 2.0 * total;
}

double phi_coeff(long q, int n) {
  require_grid(n);
  return phi_hat(2.0 * std::numbers::pi * static_cast<double>(q) / n) / n;
}

SquareSum phi_coeff_square_sum(int n) {
  require_grid(n);
  // Phi vanishes at multiples of n/2, so single terms can be misleadingly small;
  // the window grows a full period at a time.
  const double c0 = phi_coeff(0, n);
  double sum = c0 * c0;
  long q = 0;
  for (;;) {
    double block = 0.0;
    double largest = 0.0;
    for (long i = 0; i < n; ++i) {
      ++q;
      const double c = phi_coeff(q, n);
      block += 2.0 * c * c;
      largest = std::max(largest, c * c);
    }
    sum += block;
    if (largest < 1e-14 && block < 1e-13) break;
  }
  return {sum, q};
}

double bandlimit_ratio(int n) {
  require_grid(n);
  double num = 0.0;
  for (long p = -n / 2; p <= n / 2; ++p) {
    const double c = phi_coeff(p, n);
    num += c * c;
  }
  return num / (3.0 / (8.0 * n));
}

KernelTable::KernelTable(int n, long qcut) : n_(n), qcut_(qcut < 0 ? 2L * n : qcut) {
  require_grid(n);
  values_.resize(static_cast<std::size_t>(qcut_) + 1);
  for (long q = 0; q <= qcut_; ++q) values_[q] = phi_coeff(q, n_);
}

double KernelTable::operator()(long q) const {
  const long a = q < 0 ? -q : q;
  if (a <= qcut_) return values_[a];
  return phi_coeff(a, n_);
}

}  // namespace ibstab
