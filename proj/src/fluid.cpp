#include "ibstab/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ibstab {

StokesSolver::StokesSolver(const Grid& grid) : grid_(grid), fft_(grid.n()) {
  const int n = grid_.n();
  sin_full_.resize(n);
  sin2_half_.resize(n);
  for (int xi = 0; xi < n; ++xi) {
    sin_full_[xi] = std::sin(2.0 * std::numbers::pi * xi / n);
    const double s = std::sin(std::numbers::pi * xi / n);
    sin2_half_[xi] = s * s;
  }
  // Exact zeros where they belong, so null modes are detected reliably.
  sin_full_[0] = 0.0;
  if (n % 2 == 0) sin_full_[n / 2] = 0.0;
}

void StokesSolver::ensure_spectrum(FluidState& state) {
  if (state.spectrum_valid_) return;
  for (int c = 0; c < 3; ++c) fft_.forward(state.u_[c], state.spectrum_[c]);
  state.spectrum_valid_ = true;
}

void StokesSolver::step(FluidState& state, const VectorField& f, double dt, double mu,
                        double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("stokes_step: rho must be positive");
  if (dt < 0.0 || mu < 0.0) throw std::invalid_argument("stokes_step: dt and mu must be >= 0");
  if (!(state.grid() == grid_) || !(f.grid() == grid_))
    throw std::invalid_argument("stokes_step: grid mismatch");

  ensure_spectrum(state);
  for (int c = 0; c < 3; ++c) fft_.forward(f[c], work_[c]);

  const int n = grid_.n();
  const int half = fft_.half();
  const double h = grid_.h();
  const double diffusion = dt * mu / (2.0 * rho) * (-4.0 / (h * h));
  const double force_scale = dt / rho;

  std::size_t idx = 0;
  for (int x1 = 0; x1 < n; ++x1) {
    for (int x2 = 0; x2 < n; ++x2) {
      for (int x3 = 0; x3 < half; ++x3, ++idx) {
        const double kappa = diffusion * (sin2_half_[x1] + sin2_half_[x2] + sin2_half_[x3]);
        std::array<Complex, 3> v;
        for (int c = 0; c < 3; ++c)
          v[c] = (1.0 + kappa) * state.spectrum_[c][idx] + force_scale * work_[c][idx];
        project_mode({sin_full_[x1], sin_full_[x2], sin_full_[x3]}, v);
        const double inv = 1.0 / (1.0 - kappa);
        for (int c = 0; c < 3; ++c) state.spectrum_[c][idx] = v[c] * inv;
      }
    }
  }
  for (int c = 0; c < 3; ++c) fft_.inverse(state.spectrum_[c], state.u_[c]);
  state.t += dt;
  ++state.step_index;
}

VectorField StokesSolver::project(const VectorField& u) {
  if (!(u.grid() == grid_)) throw std::invalid_argument("project: grid mismatch");
  for (int c = 0; c < 3; ++c) fft_.forward(u[c], work_[c]);
  const int n = grid_.n();
  const int half = fft_.half();
  std::size_t idx = 0;
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2)
      for (int x3 = 0; x3 < half; ++x3, ++idx) {
        std::array<Complex, 3> v{work_[0][idx], work_[1][idx], work_[2][idx]};
        project_mode({sin_full_[x1], sin_full_[x2], sin_full_[x3]}, v);
        for (int c = 0; c < 3; ++c) work_[c][idx] = v[c];
      }
  VectorField out(grid_);
  for (int c = 0; c < 3; ++c) fft_.inverse(work_[c], out[c]);
  return out;
}

double StokesSolver::relative_divergence(const VectorField& u) {
  if (!(u.grid() == grid_)) throw std::invalid_argument("divergence: grid mismatch");
  for (int c = 0; c < 3; ++c) fft_.forward(u[c], work_[c]);
  const int n = grid_.n();
  const int half = fft_.half();
  const double h = grid_.h();
  double div_max = 0.0;
  double u_max = 0.0;
  std::size_t idx = 0;
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2)
      for (int x3 = 0; x3 < half; ++x3, ++idx) {
        const Complex d = (sin_full_[x1] * work_[0][idx] + sin_full_[x2] * work_[1][idx] +
                           sin_full_[x3] * work_[2][idx]) /
                          h;
        div_max = std::max(div_max, std::abs(d));
        for (int c = 0; c < 3; ++c) u_max = std::max(u_max, std::abs(work_[c][idx]) / h);
      }
  return u_max > 0.0 ? div_max / u_max : 0.0;
}

FluidState stokes_step(const FluidState& u_n, const VectorField& f, double dt, double mu,
                       double rho) {
  StokesSolver solver(u_n.grid());
  FluidState next(u_n.grid());
  next.velocity_mut() = u_n.velocity();
  next.t = u_n.t;
  next.step_index = u_n.step_index;
  solver.step(next, f, dt, mu, rho);
  return next;
}

double energy(const VectorField& u) {
  const double h = u.grid().h();
  return std::sqrt(u.sum_squares() * h * h * h);
}

VectorField advect(const VectorField& u) {
  const Grid& g = u.grid();
  const int n = g.n();
  const double inv2h = 1.0 / (2.0 * g.h());
  VectorField out(g);
  for (int j1 = 0; j1 < n; ++j1) {
    const int p1 = g.wrap(j1 + 1), m1 = g.wrap(j1 - 1);
    for (int j2 = 0; j2 < n; ++j2) {
      const int p2 = g.wrap(j2 + 1), m2 = g.wrap(j2 - 1);
      for (int j3 = 0; j3 < n; ++j3) {
        const int p3 = g.wrap(j3 + 1), m3 = g.wrap(j3 - 1);
        const std::size_t i = g.index(j1, j2, j3);
        const double a1 = u[0][i], a2 = u[1][i], a3 = u[2][i];
        for (int c = 0; c < 3; ++c) {
          const auto& v = u[c];
          const double d1 = v[g.index(p1, j2, j3)] - v[g.index(m1, j2, j3)];
          const double d2 = v[g.index(j1, p2, j3)] - v[g.index(j1, m2, j3)];
          const double d3 = v[g.index(j1, j2, p3)] - v[g.index(j1, j2, m3)];
          out[c][i] = -(a1 * d1 + a2 * d2 + a3 * d3) * inv2h;
        }
      }
    }
  }
  return out;
}

}  // namespace ibstab
