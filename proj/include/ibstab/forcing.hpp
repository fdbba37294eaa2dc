#pragma once

#include "ibstab/grid.hpp"

namespace ibstab {

enum class ForcingKind { TargetPoint, Membrane };
enum class DeltaMode { FixedAtTarget, Moving };

struct ForcingModel {
  ForcingKind kind = ForcingKind::TargetPoint;
  double stiffness = 0.0;
  DeltaMode delta_mode = DeltaMode::FixedAtTarget;

  /// Throws on negative stiffness or a moving-delta target model.
  void validate() const;
};

/// F^{n+1/2} = F^{n-1/2} - dt K U^n.
SheetField target_force_update(const SheetField& force_prev, const SheetField& velocity,
                               double stiffness, double dt);

/// X^{n+1/2} = X^{n-1/2} + dt U^n.
SheetField membrane_step(const SheetField& x_prev, const SheetField& velocity, double dt);

/// K times the periodic 5-point Laplacian of X. In-plane components are taken
/// modulo the box period, so a flat lattice produces no force.
SheetField membrane_force(const SheetField& x, double stiffness, double hb, double period);

/// (K/2) sum over lattice bonds of |dX - hb e|^2, the energy whose gradient is -hb^2 F.
double membrane_elastic_energy(const SheetField& x, double stiffness, double hb, double period);

/// Spring energy hb^2 sum |F|^2 / (2K) for target forces F = -K (X - X0).
double target_spring_energy(const SheetField& force, double stiffness, double hb);

}  // namespace ibstab
