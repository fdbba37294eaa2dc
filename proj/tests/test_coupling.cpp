#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "ibstab/coupling.hpp"
#include "ibstab/kernel.hpp"

using namespace ibstab;

namespace {

SheetField random_sheet(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  SheetField f(m);
  for (std::size_t k = 0; k < f.size(); ++k)
    for (int c = 0; c < 3; ++c) f[k][c] = normal(rng);
  return f;
}

VectorField random_field(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  VectorField u(g);
  for (int c = 0; c < 3; ++c)
    for (double& v : u[c]) v = normal(rng);
  return u;
}

// Direct evaluation of the full spreading sum over all grid points and markers,
// with the kernel argument reduced to its nearest periodic image.
VectorField brute_spread(const Grid& g, int p, const Vec3& eps, const SheetField& F) {
  const int n = g.n();
  const int m = n * p;
  const double h = g.h();
  const double hb = g.length() / m;
  auto periodic_phi = [n](double r) {
    double s = 0.0;
    for (int img = -2; img <= 2; ++img) s += phi(r + img * n);
    return s;
  };
  VectorField f(g);
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2)
      for (int j3 = 0; j3 < n; ++j3)
        for (int k1 = 0; k1 < m; ++k1)
          for (int k2 = 0; k2 < m; ++k2) {
            const double w = periodic_phi(j1 - static_cast<double>(k1) / p - eps[0]) *
                             periodic_phi(j2 - static_cast<double>(k2) / p - eps[1]) *
                             periodic_phi(j3 - eps[2]) * hb * hb / (h * h * h);
            if (w == 0.0) continue;
            for (int c = 0; c < 3; ++c) f[c][g.index(j1, j2, j3)] += w * F.at(k1, k2)[c];
          }
  return f;
}

}  // namespace

TEST_SUITE("coupling") {

TEST_CASE("single marker spread") {
  const Grid g(8, 1.0);
  const LagrangianSheet sheet(g, 1, {0, 0, 0});
  SheetField F(8);
  F.at(0, 0) = {0, 0, 1};
  const auto f = spread(sheet, F);
  const double h = g.h();
  CHECK(f[2][g.index(0, 0, 0)] == doctest::Approx(1.0 / (8 * h)).epsilon(1e-14));
  CHECK(f[2][g.index(1, 7, 0)] == doctest::Approx(phi(1) * phi(-1) * phi(0) / h).epsilon(1e-14));
  CHECK(f[0][g.index(0, 0, 0)] == 0.0);
}

TEST_CASE("zero in, zero out") {
  const Grid g(8, 1.0);
  const LagrangianSheet sheet(g, 2, {0.3, 0.1, 0.7});
  const auto f = spread(sheet, SheetField(16));
  CHECK(f.sum_squares() == 0.0);
  const auto U = interpolate(sheet, VectorField(g));
  CHECK(U.sum_squares() == 0.0);
}

TEST_CASE("total force is conserved") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  for (int p = 1; p <= 3; ++p) {
    const Grid g(8, 2.0);
    const LagrangianSheet sheet(g, p, {uni(rng), uni(rng), uni(rng)});
    SheetField F(sheet.m());
    F.fill({0.0, 0.0, 1.5});
    const auto f = spread(sheet, F);
    double total = 0.0;
    for (double v : f[2]) total += v;
    const double h = g.h();
    CHECK(total * h * h * h == doctest::Approx(1.5 * g.length() * g.length()).epsilon(1e-13));
  }
}

TEST_CASE("interpolating a constant gives the constant") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  for (int p = 1; p <= 3; ++p) {
    const Grid g(8, 1.0);
    const LagrangianSheet sheet(g, p, {uni(rng), uni(rng), uni(rng)});
    VectorField u(g);
    u[0].assign(g.size(), 0.25);
    u[1].assign(g.size(), -4.0);
    const auto U = interpolate(sheet, u);
    for (std::size_t k = 0; k < U.size(); ++k) {
      CHECK(U[k][0] == doctest::Approx(0.25).epsilon(1e-13));
      CHECK(U[k][1] == doctest::Approx(-4.0).epsilon(1e-13));
      CHECK(U[k][2] == 0.0);
    }
  }
}

TEST_CASE("separable spread equals the brute-force sum") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int p = 1; p <= 3; ++p) {
    const Grid g(5, 1.0);
    const Vec3 eps{uni(rng), uni(rng), uni(rng)};
    const LagrangianSheet sheet(g, p, eps);
    const auto F = random_sheet(sheet.m(), rng);
    const auto fast = spread(sheet, F);
    const auto slow = brute_spread(g, p, eps, F);
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(fast[c][i] - slow[c][i]) < 1e-12);
  }
}

TEST_CASE("adjointness of spread and interpolate") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int trial = 0; trial < 6; ++trial) {
    const int p = 1 + trial % 3;
    const Grid g(8, 1.3);
    const LagrangianSheet sheet(g, p, {uni(rng), uni(rng), uni(rng)});
    const auto F = random_sheet(sheet.m(), rng);
    const auto u = random_field(g, rng);
    const double h = g.h(), hb = sheet.hb();
    const double lhs = spread(sheet, F).dot(u) * h * h * h;
    const double rhs = F.dot(interpolate(sheet, u)) * hb * hb;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
  }
}

TEST_CASE("moving-position kernels at the targets match the separable path") {
  std::mt19937_64 rng(8);
  const Grid g(8, 1.0);
  const LagrangianSheet sheet(g, 2, {0.37, -1.2, 3.6});
  const auto F = random_sheet(sheet.m(), rng);
  const auto u = random_field(g, rng);
  const auto X0 = sheet.targets();
  const auto a = spread(sheet, F);
  const auto b = spread_at(sheet, X0, F);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(a[c][i] - b[c][i]) < 1e-12);
  const auto Ua = interpolate(sheet, u);
  const auto Ub = interpolate_at(sheet, X0, u);
  for (std::size_t k = 0; k < Ua.size(); ++k)
    for (int c = 0; c < 3; ++c) CHECK(std::abs(Ua[k][c] - Ub[k][c]) < 1e-12);
}

TEST_CASE("moving-position adjointness") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  const Grid g(8, 1.0);
  const LagrangianSheet sheet(g, 3, {0.1, 0.2, 0.3});
  SheetField X = sheet.targets();
  for (std::size_t k = 0; k < X.size(); ++k)
    for (int c = 0; c < 3; ++c) X[k][c] += jitter(rng);
  const auto F = random_sheet(sheet.m(), rng);
  const auto u = random_field(g, rng);
  const double h = g.h(), hb = sheet.hb();
  const double lhs = spread_at(sheet, X, F).dot(u) * h * h * h;
  const double rhs = F.dot(interpolate_at(sheet, X, u)) * hb * hb;
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
}

TEST_CASE("locality and z translation") {
  const Grid g(8, 1.0);
  const LagrangianSheet a(g, 1, {0.0, 0.0, 0.4});
  const LagrangianSheet b(g, 1, {0.0, 0.0, 1.4});
  SheetField F(8);
  F.at(2, 3) = {1, 1, 1};
  const auto fa = spread(a, F);
  const auto fb = spread(b, F);
  int touched = 0;
  for (int j1 = 0; j1 < 8; ++j1)
    for (int j2 = 0; j2 < 8; ++j2)
      for (int j3 = 0; j3 < 8; ++j3) {
        if (fa[0][g.index(j1, j2, j3)] != 0.0) ++touched;
        CHECK(std::abs(fb[0][g.index(j1, j2, (j3 + 1) % 8)] - fa[0][g.index(j1, j2, j3)]) < 1e-14);
      }
  // Integer eps in x and y: the 4-point stencil carries one zero weight there.
  CHECK(touched == 3 * 3 * 4);
}

TEST_CASE("size mismatch is rejected") {
  const Grid g(8, 1.0);
  const LagrangianSheet sheet(g, 2, {0, 0, 0});
  CHECK_THROWS_AS(spread(sheet, SheetField(8)), std::invalid_argument);
  CHECK_THROWS_AS(interpolate(sheet, VectorField(Grid(16, 1.0))), std::invalid_argument);
  CHECK_THROWS_AS(LagrangianSheet(Grid(3, 1.0), 1, {0, 0, 0}), std::invalid_argument);
}

}
