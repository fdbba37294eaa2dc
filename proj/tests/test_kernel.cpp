#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

#include "ibstab/kernel.hpp"

using namespace ibstab;

TEST_SUITE("kernel") {

TEST_CASE("phi point values") {
  CHECK(phi(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(phi(1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(phi(2.5) == 0.0);
  CHECK(phi(-2.0) == 0.0);
  CHECK(phi(0.5) + phi(-0.5) + phi(1.5) + phi(-1.5) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("phi is continuous at the branch points") {
  for (double b : {1.0, 2.0}) {
    CHECK(std::abs(phi(b - 1e-12) - phi(b + 1e-12)) < 1e-10);
    CHECK(std::abs(phi(-b - 1e-12) - phi(-b + 1e-12)) < 1e-10);
  }
}

TEST_CASE("partition of unity and sum of squares") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double eps = uni(rng);
    double s = 0.0, s2 = 0.0;
    for (int j = -3; j <= 3; ++j) {
      s += phi(j + eps);
      s2 += phi(j + eps) * phi(j + eps);
    }
    CHECK(std::abs(s - 1.0) < 1e-13);
    CHECK(std::abs(s2 - 0.375) < 1e-13);
  }
}

TEST_CASE("evenness and support") {
  for (double r = -3.0; r <= 3.0; r += 0.0137) {
    CHECK(phi(r) == doctest::Approx(phi(-r)).epsilon(1e-15));
    if (std::abs(r) >= 2.0) CHECK(phi(r) == 0.0);
  }
}

TEST_CASE("phi_hat and phi_coeff basics") {
  CHECK(phi_hat(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(phi_coeff(0, 16) == doctest::Approx(1.0 / 16).epsilon(1e-14));
  for (long q : {1L, 3L, 17L, 250L}) CHECK(phi_coeff(q, 16) == phi_coeff(-q, 16));
  CHECK_THROWS_AS(phi_coeff(1, 3), std::invalid_argument);
}

TEST_CASE("phi_hat against an independent trapezoid evaluation") {
  // phi is C^1 with compact support, so a fine midpoint rule converges fast
  // enough to give an independent 1e-12 check at moderate s.
  for (double s : {0.3, 1.7, 4.0, 9.5}) {
    const int m = 400000;
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
      const double r = -2.0 + 4.0 * (i + 0.5) / m;
      acc += phi(r) * std::cos(s * r);
    }
    acc *= 4.0 / m;
    CHECK(std::abs(phi_hat(s) - acc) < 1e-10);
  }
}

TEST_CASE("phi_hat vanishes at 2 pi m and at pi") {
  CHECK(std::abs(phi_hat(std::numbers::pi)) < 1e-14);
  for (int m = 1; m <= 5; ++m) CHECK(std::abs(phi_hat(2.0 * std::numbers::pi * m)) < 1e-14);
}

TEST_CASE("transform consistency over q in [-2N, 2N]") {
  for (int n : {4, 16, 64}) {
    for (long q = -2L * n; q <= 2L * n; ++q) {
      const double a = phi_hat(2.0 * std::numbers::pi * q / n) / n;
      CHECK(std::abs(a - phi_coeff(q, n)) < 1e-11);
    }
  }
}

TEST_CASE("KernelTable invariants") {
  const KernelTable t(16);
  CHECK(t.qcut() == 32);
  CHECK(t(0) == doctest::Approx(1.0 / 16).epsilon(1e-14));
  for (long q = -40; q <= 40; ++q) {
    CHECK(t(q) == t(-q));
    CHECK(std::abs(t(q)) <= t(0) + 1e-15);
    CHECK(t(q) == doctest::Approx(phi_coeff(q, 16)).epsilon(1e-15));
  }
}

TEST_CASE("sum of squares of Phi approaches 3/(8N)") {
  for (int n : {4, 16}) {
    const auto s = phi_coeff_square_sum(n);
    CHECK(std::abs(s.value - 3.0 / (8.0 * n)) < 1e-12);
    CHECK(s.qcut > n);
  }
}

TEST_CASE("integral of phi_hat squared is 2 pi times 3/8") {
  // Gauss-Legendre over [0, S] with the tail bounded by 36 / (5 S^5).
  const double S = 400.0;
  const int panels = 2000;
  const double xg[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                        0.9061798459386640};
  const double wg[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                        0.4786286704993665, 0.2369268850561891};
  double acc = 0.0;
  const double w = S / panels;
  for (int p = 0; p < panels; ++p)
    for (int i = 0; i < 5; ++i) {
      const double s = (p + 0.5) * w + 0.5 * w * xg[i];
      const double v = phi_hat(s);
      acc += 0.5 * w * wg[i] * v * v;
    }
  const double integral = 2.0 * acc;
  CHECK(integral == doctest::Approx(2.0 * std::numbers::pi * 0.375).epsilon(1e-9));
  CHECK(std::abs(integral - 0.375) > 1.0);
}

TEST_CASE("bandlimit ratio") {
  for (int n : {4, 8, 16, 32, 64, 128, 256}) {
    const double r = bandlimit_ratio(n);
    CHECK(r <= 1.0);
    CHECK(r > 0.95);
  }
  CHECK_THROWS_AS(bandlimit_ratio(2), std::invalid_argument);
}

}
