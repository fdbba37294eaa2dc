#pragma once

#include <array>
#include <vector>

#include "ibstab/grid.hpp"

namespace ibstab {

/// Four kernel weights and their (wrapped) fluid indices along one axis.
struct Stencil1D {
  std::array<int, 4> index{};
  std::array<double, 4> weight{};
};

/// Stencil for a point at coordinate r (in fluid meshwidths) on a periodic axis of n points.
Stencil1D make_stencil(double r, int n);

/// (NP)^2 boundary lattice shifted by eps (fluid meshwidths), with targets
/// X0 = (k1 hb + s1, k2 hb + s2, s3), s = eps h.
class LagrangianSheet {
 public:
  LagrangianSheet(const Grid& grid, int p, const Vec3& eps);

  const Grid& grid() const { return grid_; }
  int n() const { return grid_.n(); }
  int p() const { return p_; }
  int m() const { return grid_.n() * p_; }
  double hb() const { return grid_.length() / m(); }
  const Vec3& eps() const { return eps_; }

  Vec3 target(int k1, int k2) const;
  SheetField targets() const;

  const std::vector<Stencil1D>& stencil_x() const { return sx_; }
  const std::vector<Stencil1D>& stencil_y() const { return sy_; }
  const Stencil1D& stencil_z() const { return sz_; }

 private:
  Grid grid_;
  int p_;
  Vec3 eps_;
  std::vector<Stencil1D> sx_, sy_;
  Stencil1D sz_;
};

/// Force density on the fluid grid from boundary forces, kernels at the targets.
VectorField spread(const LagrangianSheet& sheet, const SheetField& force);
/// Fluid velocity sampled at the targets.
SheetField interpolate(const LagrangianSheet& sheet, const VectorField& u);

/// As spread, with kernels centered at arbitrary marker positions (length units).
VectorField spread_at(const LagrangianSheet& sheet, const SheetField& positions,
                      const SheetField& force);
/// As interpolate, at arbitrary marker positions.
SheetField interpolate_at(const LagrangianSheet& sheet, const SheetField& positions,
                          const VectorField& u);

}  // namespace ibstab
