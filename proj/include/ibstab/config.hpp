#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ibstab/forcing.hpp"
#include "ibstab/grid.hpp"

namespace ibstab {

enum class InitKind { Gaussian, Zero, MembranePerturbation, Poiseuille };

struct SimConfig {
  int n = 32;
  int p = 2;
  double length = 1.0;
  double rho = 1.0;
  double mu = 0.01;
  double stiffness = 8e4;
  double dt = 1e-3;
  long steps = 5000;
  ForcingKind forcing = ForcingKind::TargetPoint;
  DeltaMode delta_mode = DeltaMode::FixedAtTarget;
  Vec3 eps{0.0, 0.0, 0.0};
  bool nonlinear = false;
  InitKind init = InitKind::Gaussian;
  double amplitude = 1.0;
  double f0 = 0.0;
  std::uint64_t seed = 1;
  long record_every = 1;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

/// Parses `key = value` lines. Blank lines and lines starting with '#' are skipped.
/// Unknown keys, repeated keys and malformed values are errors. When delta_mode is
/// not given it defaults to moving for membranes and fixed for target points.
SimConfig parse_config(std::istream& in);
SimConfig load_config(const std::string& path);

}  // namespace ibstab
