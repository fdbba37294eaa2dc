#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

#include "ibstab/fluid.hpp"
#include "oracles.hpp"

using namespace ibstab;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

VectorField random_field(const Grid& g, std::uint64_t seed) {
  VectorField u(g);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int c = 0; c < 3; ++c)
    for (double& v : u[c]) v = normal(rng);
  return u;
}

double max_abs(const VectorField& u) {
  double m = 0.0;
  for (int c = 0; c < 3; ++c)
    for (double v : u[c]) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_SUITE("fluid") {

TEST_CASE("single mode decays by the trapezoidal gain") {
  const int n = 16;
  const Grid g(n, 1.0);
  FluidState s(g);
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2)
      for (int j3 = 0; j3 < n; ++j3)
        s.velocity_mut()[1][g.index(j1, j2, j3)] = std::sin(kTwoPi * j1 / n);
  const VectorField before = s.velocity();
  const double dt = 0.01, mu = 0.3, rho = 1.7;
  const double h = g.h();
  const double kappa = dt * mu / (2 * rho) * 4 / (h * h) * std::pow(std::sin(std::numbers::pi / n), 2);
  const double gain = (1 - kappa) / (1 + kappa);
  const FluidState after = stokes_step(s, VectorField(g), dt, mu, rho);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(after.velocity()[1][i] == doctest::Approx(gain * before[1][i]).epsilon(1e-12));
    CHECK(std::abs(after.velocity()[0][i]) < 1e-14);
  }
  CHECK(std::abs(gain) < 1.0);
  CHECK(after.step_index == 1);
  CHECK(after.t == doctest::Approx(dt));
}

TEST_CASE("constant velocity is unchanged without force") {
  const Grid g(8, 2.0);
  FluidState s(g);
  s.velocity_mut()[0].assign(g.size(), 0.3);
  s.velocity_mut()[2].assign(g.size(), -1.1);
  const auto out = stokes_step(s, VectorField(g), 0.5, 2.0, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(out.velocity()[0][i] == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(out.velocity()[2][i] == doctest::Approx(-1.1).epsilon(1e-13));
  }
}

TEST_CASE("dense saddle-point oracle at N = 4") {
  const Grid g(4, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    FluidState s(g);
    s.velocity_mut() = random_field(g, 40 + trial);
    const VectorField f = random_field(g, 80 + trial);
    const double dt = 0.01 * (trial + 1), mu = 0.05 + 0.3 * trial, rho = 1.0 + 0.5 * trial;
    const auto fast = stokes_step(s, f, dt, mu, rho);
    const auto slow = oracle::dense_stokes_step(s.velocity(), f, dt, mu, rho);
    double diff = 0.0;
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < g.size(); ++i)
        diff = std::max(diff, std::abs(fast.velocity()[c][i] - slow[c][i]));
    CHECK(diff < 1e-10 * std::max(1.0, max_abs(slow)));
  }
}

TEST_CASE("energy") {
  const Grid g(8, 1.0);
  VectorField u(g);
  CHECK(energy(u) == 0.0);
  u[0].assign(g.size(), 1.0);
  CHECK(energy(u) == doctest::Approx(1.0).epsilon(1e-14));
  const auto r = random_field(g, 9);
  const auto rh = dft3(r);
  double spec = 0.0;
  for (int c = 0; c < 3; ++c)
    for (const auto& v : rh.data[c]) spec += std::norm(v);
  const double h = g.h();
  CHECK(energy(r) * energy(r) == doctest::Approx(spec / g.size() * h * h * h).epsilon(1e-12));
}

TEST_CASE("unforced steps never increase energy and stay divergence free") {
  const Grid g(12, 1.0);
  StokesSolver solver(g);
  FluidState s(g);
  s.velocity_mut() = solver.project(random_field(g, 12));
  const VectorField zero(g);
  double prev = energy(s.velocity());
  for (double dt : {1e-6, 1e-3, 1.0, 1e3}) {
    solver.step(s, zero, dt, 0.02, 1.0);
    const double e = energy(s.velocity());
    CHECK(e <= prev * (1 + 1e-14));
    prev = e;
    CHECK(solver.relative_divergence(s.velocity()) < 1e-10);
  }
}

TEST_CASE("forced step output is divergence free") {
  const Grid g(8, 1.0);
  StokesSolver solver(g);
  FluidState s(g);
  s.velocity_mut() = solver.project(random_field(g, 1));
  solver.step(s, random_field(g, 2), 0.1, 0.01, 1.0);
  CHECK(solver.relative_divergence(s.velocity()) < 1e-10);
}

TEST_CASE("translation equivariance") {
  const int n = 8;
  const Grid g(n, 1.0);
  FluidState s(g);
  s.velocity_mut() = random_field(g, 77);
  const VectorField f = random_field(g, 78);
  FluidState shifted(g);
  VectorField fs(g);
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2)
      for (int j3 = 0; j3 < n; ++j3)
        for (int c = 0; c < 3; ++c) {
          shifted.velocity_mut()[c][g.index((j1 + 1) % n, j2, j3)] = s.velocity()[c][g.index(j1, j2, j3)];
          fs[c][g.index((j1 + 1) % n, j2, j3)] = f[c][g.index(j1, j2, j3)];
        }
  const auto a = stokes_step(s, f, 0.05, 0.1, 1.0);
  const auto b = stokes_step(shifted, fs, 0.05, 0.1, 1.0);
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2)
      for (int j3 = 0; j3 < n; ++j3)
        for (int c = 0; c < 3; ++c)
          CHECK(std::abs(b.velocity()[c][g.index((j1 + 1) % n, j2, j3)] -
                         a.velocity()[c][g.index(j1, j2, j3)]) < 1e-12);
}

TEST_CASE("stokes_step rejects bad input") {
  const Grid g(8, 1.0);
  FluidState s(g);
  CHECK_THROWS_AS(stokes_step(s, VectorField(g), 0.1, 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(stokes_step(s, VectorField(Grid(4, 1.0)), 0.1, 0.1, 1.0), std::invalid_argument);
}

TEST_CASE("advection term") {
  const int n = 8;
  const Grid g(n, 1.0);
  VectorField u(g);
  u[0].assign(g.size(), 0.7);
  u[1].assign(g.size(), -0.2);
  CHECK(max_abs(advect(u)) == 0.0);

  VectorField shear(g);
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2)
      for (int j3 = 0; j3 < n; ++j3) shear[0][g.index(j1, j2, j3)] = std::sin(kTwoPi * j2 / n);
  CHECK(max_abs(advect(shear)) < 1e-15);

  // u = (sin x1, cos x2, 0) in grid angles: -(u.grad)u has a closed centered-difference form.
  VectorField w(g);
  const double h = g.h();
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2)
      for (int j3 = 0; j3 < n; ++j3) {
        w[0][g.index(j1, j2, j3)] = std::sin(kTwoPi * j1 / n);
        w[1][g.index(j1, j2, j3)] = std::cos(kTwoPi * j2 / n);
      }
  const auto a = advect(w);
  const double dk = std::sin(kTwoPi / n) / h;  // centered derivative factor
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2) {
      const double s1 = std::sin(kTwoPi * j1 / n), c1 = std::cos(kTwoPi * j1 / n);
      const double s2 = std::sin(kTwoPi * j2 / n), c2 = std::cos(kTwoPi * j2 / n);
      CHECK(a[0][g.index(j1, j2, 3)] == doctest::Approx(-s1 * c1 * dk).epsilon(1e-12).scale(1.0));
      CHECK(a[1][g.index(j1, j2, 3)] == doctest::Approx(c2 * s2 * dk).epsilon(1e-12).scale(1.0));
      CHECK(a[2][g.index(j1, j2, 3)] == 0.0);
    }
}

}
