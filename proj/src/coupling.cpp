#include "ibstab/coupling.hpp"

#include <cmath>
#include <stdexcept>

#include "ibstab/kernel.hpp"

namespace ibstab {

namespace {

void require_same_grid(const LagrangianSheet& sheet, const Grid& g) {
  if (!(sheet.grid() == g)) throw std::invalid_argument("coupling: sheet and field grids differ");
}

void require_sheet_size(const LagrangianSheet& sheet, const SheetField& f) {
  if (f.m() != sheet.m()) throw std::invalid_argument("coupling: boundary field size mismatch");
}

}  // namespace

Stencil1D make_stencil(double r, int n) {
  Stencil1D s;
  const double base = std::floor(r);
  const long b = static_cast<long>(base);
  for (int t = 0; t < 4; ++t) {
    const long j = b - 1 + t;
    s.weight[t] = phi(static_cast<double>(j) - r);
    long w = j % n;
    s.index[t] = static_cast<int>(w < 0 ? w + n : w);
  }
  return s;
}

LagrangianSheet::LagrangianSheet(const Grid& grid, int p, const Vec3& eps)
    : grid_(grid), p_(p), eps_(eps) {
  if (grid.n() < 4) throw std::invalid_argument("sheet: N must be >= 4");
  if (p < 1) throw std::invalid_argument("sheet: P must be >= 1");
  const int mm = m();
  sx_.resize(mm);
  sy_.resize(mm);
  for (int k = 0; k < mm; ++k) {
    sx_[k] = make_stencil(static_cast<double>(k) / p_ + eps_[0], grid_.n());
    sy_[k] = make_stencil(static_cast<double>(k) / p_ + eps_[1], grid_.n());
  }
  sz_ = make_stencil(eps_[2], grid_.n());
}

Vec3 LagrangianSheet::target(int k1, int k2) const {
  const double h = grid_.h();
  return {k1 * hb() + eps_[0] * h, k2 * hb() + eps_[1] * h, eps_[2] * h};
}

SheetField LagrangianSheet::targets() const {
  SheetField x(m());
  for (int k1 = 0; k1 < m(); ++k1)
    for (int k2 = 0; k2 < m(); ++k2) x.at(k1, k2) = target(k1, k2);
  return x;
}

VectorField spread(const LagrangianSheet& sheet, const SheetField& force) {
  require_sheet_size(sheet, force);
  const Grid& g = sheet.grid();
  const int n = g.n();
  const int m = sheet.m();
  const double h = g.h();
  const double scale = sheet.hb() * sheet.hb() / (h * h * h);

  // Contract k2 -> j2, then k1 -> j1, then extrude over the four z planes.
  std::vector<Vec3> along_y(static_cast<std::size_t>(m) * n, Vec3{0, 0, 0});
  for (int k1 = 0; k1 < m; ++k1)
    for (int k2 = 0; k2 < m; ++k2) {
      const Vec3& F = force.at(k1, k2);
      const Stencil1D& sy = sheet.stencil_y()[k2];
      for (int t = 0; t < 4; ++t) {
        Vec3& dst = along_y[static_cast<std::size_t>(k1) * n + sy.index[t]];
        for (int c = 0; c < 3; ++c) dst[c] += F[c] * sy.weight[t];
      }
    }
  std::vector<Vec3> plane(static_cast<std::size_t>(n) * n, Vec3{0, 0, 0});
  for (int k1 = 0; k1 < m; ++k1) {
    const Stencil1D& sx = sheet.stencil_x()[k1];
    for (int t = 0; t < 4; ++t) {
      const double w = sx.weight[t];
      Vec3* dst = &plane[static_cast<std::size_t>(sx.index[t]) * n];
      const Vec3* src = &along_y[static_cast<std::size_t>(k1) * n];
      for (int j2 = 0; j2 < n; ++j2)
        for (int c = 0; c < 3; ++c) dst[j2][c] += w * src[j2][c];
    }
  }
  VectorField f(g);
  const Stencil1D& sz = sheet.stencil_z();
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2) {
      const Vec3& v = plane[static_cast<std::size_t>(j1) * n + j2];
      for (int t = 0; t < 4; ++t) {
        const std::size_t i = g.index(j1, j2, sz.index[t]);
        const double w = scale * sz.weight[t];
        for (int c = 0; c < 3; ++c) f[c][i] += w * v[c];
      }
    }
  return f;
}

SheetField interpolate(const LagrangianSheet& sheet, const VectorField& u) {
  require_same_grid(sheet, u.grid());
  const Grid& g = sheet.grid();
  const int n = g.n();
  const int m = sheet.m();

  const Stencil1D& sz = sheet.stencil_z();
  std::vector<Vec3> plane(static_cast<std::size_t>(n) * n, Vec3{0, 0, 0});
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2) {
      Vec3& dst = plane[static_cast<std::size_t>(j1) * n + j2];
      for (int t = 0; t < 4; ++t) {
        const std::size_t i = g.index(j1, j2, sz.index[t]);
        for (int c = 0; c < 3; ++c) dst[c] += sz.weight[t] * u[c][i];
      }
    }
  std::vector<Vec3> along_x(static_cast<std::size_t>(m) * n, Vec3{0, 0, 0});
  for (int k1 = 0; k1 < m; ++k1) {
    const Stencil1D& sx = sheet.stencil_x()[k1];
    Vec3* dst = &along_x[static_cast<std::size_t>(k1) * n];
    for (int t = 0; t < 4; ++t) {
      const double w = sx.weight[t];
      const Vec3* src = &plane[static_cast<std::size_t>(sx.index[t]) * n];
      for (int j2 = 0; j2 < n; ++j2)
        for (int c = 0; c < 3; ++c) dst[j2][c] += w * src[j2][c];
    }
  }
  SheetField U(m);
  for (int k1 = 0; k1 < m; ++k1)
    for (int k2 = 0; k2 < m; ++k2) {
      const Stencil1D& sy = sheet.stencil_y()[k2];
      Vec3 acc{0, 0, 0};
      for (int t = 0; t < 4; ++t) {
        const Vec3& v = along_x[static_cast<std::size_t>(k1) * n + sy.index[t]];
        for (int c = 0; c < 3; ++c) acc[c] += sy.weight[t] * v[c];
      }
      U.at(k1, k2) = acc;
    }
  return U;
}

VectorField spread_at(const LagrangianSheet& sheet, const SheetField& positions,
                      const SheetField& force) {
  require_sheet_size(sheet, force);
  require_sheet_size(sheet, positions);
  const Grid& g = sheet.grid();
  const int n = g.n();
  const double h = g.h();
  const double scale = sheet.hb() * sheet.hb() / (h * h * h);
  VectorField f(g);
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const Vec3& X = positions[k];
    const Stencil1D s1 = make_stencil(X[0] / h, n);
    const Stencil1D s2 = make_stencil(X[1] / h, n);
    const Stencil1D s3 = make_stencil(X[2] / h, n);
    const Vec3& F = force[k];
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double wab = scale * s1.weight[a] * s2.weight[b];
        for (int c3 = 0; c3 < 4; ++c3) {
          const double w = wab * s3.weight[c3];
          const std::size_t i = g.index(s1.index[a], s2.index[b], s3.index[c3]);
          for (int c = 0; c < 3; ++c) f[c][i] += w * F[c];
        }
      }
  }
  return f;
}

SheetField interpolate_at(const LagrangianSheet& sheet, const SheetField& positions,
                          const VectorField& u) {
  require_same_grid(sheet, u.grid());
  require_sheet_size(sheet, positions);
  const Grid& g = sheet.grid();
  const int n = g.n();
  const double h = g.h();
  SheetField U(sheet.m());
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const Vec3& X = positions[k];
    const Stencil1D s1 = make_stencil(X[0] / h, n);
    const Stencil1D s2 = make_stencil(X[1] / h, n);
    const Stencil1D s3 = make_stencil(X[2] / h, n);
    Vec3 acc{0, 0, 0};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double wab = s1.weight[a] * s2.weight[b];
        for (int c3 = 0; c3 < 4; ++c3) {
          const double w = wab * s3.weight[c3];
          const std::size_t i = g.index(s1.index[a], s2.index[b], s3.index[c3]);
          for (int c = 0; c < 3; ++c) acc[c] += w * u[c][i];
        }
      }
    U[k] = acc;
  }
  return U;
}

}  // namespace ibstab
