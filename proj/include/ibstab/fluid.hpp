#pragma once

#include <array>
#include <vector>

#include "ibstab/grid.hpp"
#include "ibstab/spectral.hpp"

namespace ibstab {

/// Velocity on the periodic grid plus time bookkeeping. The half spectrum is
/// cached by the solver and dropped whenever the velocity is touched.
class FluidState {
 public:
  explicit FluidState(const Grid& grid) : u_(grid) {}

  const Grid& grid() const { return u_.grid(); }
  const VectorField& velocity() const { return u_; }
  VectorField& velocity_mut() {
    spectrum_valid_ = false;
    return u_;
  }

  double t = 0.0;
  long step_index = 0;

 private:
  friend class StokesSolver;
  VectorField u_;
  std::array<std::vector<Complex>, 3> spectrum_;
  bool spectrum_valid_ = false;
};

/// Trapezoidal-viscosity Stokes stepper with spectral projection.
class StokesSolver {
 public:
  explicit StokesSolver(const Grid& grid);

  const Grid& grid() const { return grid_; }

  /// Advances u^n -> u^{n+1} under body force f (force/volume).
  void step(FluidState& state, const VectorField& f, double dt, double mu, double rho);

  /// Applies the projector to every mode of u.
  VectorField project(const VectorField& u);

  /// max over non-null modes of |grad_hat . u_hat| relative to max |u_hat|.
  double relative_divergence(const VectorField& u);

 private:
  void ensure_spectrum(FluidState& state);

  Grid grid_;
  RealFft3 fft_;
  std::vector<double> sin_full_;     // sin(2 pi xi / n), xi in 0..n-1
  std::vector<double> sin2_half_;    // sin^2(pi xi / n)
  std::array<std::vector<Complex>, 3> work_;
};

/// One step without a persistent solver.
FluidState stokes_step(const FluidState& u_n, const VectorField& f, double dt, double mu,
                       double rho);

/// Discrete L2 norm sqrt(sum |u|^2 h^3).
double energy(const VectorField& u);

/// -(u . grad_h) u with centered differences.
VectorField advect(const VectorField& u);

}  // namespace ibstab
