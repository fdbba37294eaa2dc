#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "ibstab/forcing.hpp"
#include "ibstab/grid.hpp"

namespace ibstab {

enum class SurfaceMode { Exact, BandLimited };

using WavePair = std::pair<int, int>;

/// C(xi1, xi2) over Z_n^2 with its maximum and the predicted critical step.
struct StabilityReport {
  ForcingKind kind = ForcingKind::TargetPoint;
  int n = 0;
  int p = 1;
  Vec3 eps{0, 0, 0};
  SurfaceMode mode = SurfaceMode::BandLimited;
  std::vector<double> surface;  // index xi1 * n + xi2
  double cmax = 0.0;
  WavePair argmax{0, 0};        // folded, nonnegative, smaller first
  std::vector<WavePair> near_ties;  // other canonical pairs within 1e-6 relative of cmax
  double dt_critical = 0.0;         // filled by the dtc helpers when physical data is known

  double at(int xi1, int xi2) const { return surface[static_cast<std::size_t>(xi1) * n + xi2]; }
};

/// Fluid-lattice aliasing sum, evaluated through its finite kernel form.
std::complex<double> b_sum(long xi, double eps, int n);

/// Boundary-lattice aliasing sum sum_l Phi(m + l n p) e^{i 2 pi p l eps}, evaluated
/// through its finite kernel form (Poisson summation). For p = 1 it equals b_sum.
std::complex<double> a_sum(long m, double eps, int n, int p);

/// Folds xi into the symmetric range [-n/2, n/2].
long fold_wavenumber(long xi, int n);

StabilityReport c_surface_target(int n, int p, const Vec3& eps, SurfaceMode mode);
StabilityReport c_surface_membrane(int n, int p, SurfaceMode mode, const Vec3& eps = {0, 0, 0});

/// sqrt(4 rho h / (K cmax)).
double dtc_target_from_cmax(double stiffness, double rho, double h, double cmax);
/// Closed form with cmax = 3/8: sqrt(32 rho h / (3 K)).
double dtc_target(double stiffness, double rho, double h);

/// sqrt(rho h^3 / (K p^2 cmax)).
double dtc_membrane_from_cmax(double stiffness, double rho, double h, int p, double cmax);
double dtc_membrane(double stiffness, double rho, double h, int n, int p, SurfaceMode mode,
                    const Vec3& eps = {0, 0, 0});

struct Table1Row {
  int n = 0;
  int p = 0;
  double cmax = 0.0;
  int xi1 = 0;
  int xi2 = 0;
  std::vector<WavePair> near_ties;
};

/// Band-limited membrane maxima for every (n, p) combination, n-major.
std::vector<Table1Row> table1(const std::vector<int>& n_list, const std::vector<int>& p_list);

}  // namespace ibstab
