#pragma once

#include <optional>
#include <vector>

#include "ibstab/config.hpp"
#include "ibstab/coupling.hpp"
#include "ibstab/fluid.hpp"

namespace ibstab {

/// One leapfrog simulation: interpolate, update boundary, spread, fluid solve.
class Simulation {
 public:
  explicit Simulation(const SimConfig& config);

  const SimConfig& config() const { return config_; }
  const LagrangianSheet& sheet() const { return sheet_; }
  const FluidState& fluid() const { return fluid_; }
  /// Target mode: F^{n-1/2}. Membrane mode: F evaluated at the latest positions.
  const SheetField& force() const { return force_; }
  /// Membrane positions X^{n-1/2}; equals the targets in target mode.
  const SheetField& positions() const { return positions_; }
  long step_index() const { return fluid_.step_index; }
  double time() const { return fluid_.t; }

  void step();

  /// sqrt(sum |u|^2 h^3).
  double fluid_norm() const { return energy(fluid_.velocity()); }
  /// Reference for relative energies: sqrt(|u0|^2 + 2 E_boundary(0) / rho).
  double reference_norm() const { return reference_norm_; }
  /// fluid_norm / reference_norm (or the absolute norm when the reference is zero).
  double relative_energy() const;
  /// Kinetic energy plus the leapfrog-staggered boundary energy. Exactly
  /// non-increasing for the linear scheme with fixed deltas.
  double modified_energy() const;

 private:
  SheetField boundary_velocity() const;
  VectorField body_force(const SheetField& boundary_force) const;
  void add_external_forces(VectorField& f) const;

  SimConfig config_;
  Grid grid_;
  LagrangianSheet sheet_;
  StokesSolver solver_;
  FluidState fluid_;
  SheetField force_;
  SheetField positions_;
  SheetField rest_;
  double reference_norm_ = 0.0;
};

enum class RunStatus { Stable, Unstable, Indeterminate };

struct TracePoint {
  long step = 0;
  double time = 0.0;
  double relative_energy = 0.0;
};

struct RunVerdict {
  RunStatus status = RunStatus::Indeterminate;
  double final_relative_energy = 0.0;
  std::optional<long> blowup_step;
  std::vector<TracePoint> trace;
};

/// Relative energy above which a run counts as blown up.
inline constexpr double kBlowupThreshold = 1e3;

RunVerdict run(const SimConfig& config);

struct CriticalDtResult {
  double mean = 0.0;
  std::vector<double> per_seed;
};

struct BisectionOptions {
  double rel_tol = 1e-3;
  int n_seeds = 10;
  /// Horizon may grow to this multiple of config.steps on indeterminate verdicts.
  int horizon_cap = 4;
};

/// Bisection for the largest stable step, per seed for Gaussian starts.
/// Throws std::runtime_error when the bracket does not straddle or a verdict
/// stays indeterminate at the horizon cap.
CriticalDtResult find_critical_dt(const SimConfig& config, double dt_lo, double dt_hi,
                                  const BisectionOptions& options = {});

struct PoiseuilleOptions {
  int levels = 3;
  int n0 = 16;
  double dt0 = 1.0 / 400.0;
  double stiffness0 = 8e4;
  int p = 2;
  double length = 1.0;
  double rho = 1.0;
  double mu = 0.1;
  double f0 = 0.1;
  /// Non-positive selects 2 L^2 / mu.
  double t_end = 0.0;
  bool nonlinear = false;
};

struct PoiseuilleRow {
  int n = 0;
  double stiffness = 0.0;
  double dt = 0.0;
  long steps = 0;
  double err_u_l1 = 0.0, err_u_l2 = 0.0, err_u_linf = 0.0;
  double d_l1 = 0.0, d_l2 = 0.0, d_linf = 0.0;
};

/// Steady channel flow driven by a uniform force past one no-slip plane at z = 0.
std::vector<PoiseuilleRow> poiseuille_experiment(const PoiseuilleOptions& options);

/// Analytic profile (f0 / 2 mu) z (L - z) at height z in [0, L).
double poiseuille_profile(double z, double f0, double mu, double length);

struct MembraneSnapshot {
  long step = 0;
  double time = 0.0;
  std::vector<double> height;  // X3 - rest height, k2 fastest
  double max_deviation = 0.0;
  double fluid_norm = 0.0;
  double modified_energy = 0.0;
};

struct MembraneTrajectory {
  std::vector<MembraneSnapshot> snapshots;
  RunStatus status = RunStatus::Indeterminate;
};

/// Runs a membrane configuration, recording every config.record_every steps.
MembraneTrajectory membrane_demo(const SimConfig& config);

}  // namespace ibstab
