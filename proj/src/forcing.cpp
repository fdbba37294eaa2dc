#include "ibstab/forcing.hpp"

#include <stdexcept>

namespace ibstab {

void ForcingModel::validate() const {
  if (!(stiffness >= 0.0)) throw std::invalid_argument("forcing: stiffness must be >= 0");
  if (kind == ForcingKind::TargetPoint && delta_mode != DeltaMode::FixedAtTarget)
    throw std::invalid_argument("forcing: target points always use fixed deltas");
}

SheetField target_force_update(const SheetField& force_prev, const SheetField& velocity,
                               double stiffness, double dt) {
  if (force_prev.m() != velocity.m())
    throw std::invalid_argument("target_force_update: lattice mismatch");
  SheetField next(force_prev.m());
  for (std::size_t k = 0; k < next.size(); ++k)
    for (int c = 0; c < 3; ++c) next[k][c] = force_prev[k][c] - dt * stiffness * velocity[k][c];
  return next;
}

SheetField membrane_step(const SheetField& x_prev, const SheetField& velocity, double dt) {
  if (x_prev.m() != velocity.m()) throw std::invalid_argument("membrane_step: lattice mismatch");
  SheetField next(x_prev.m());
  for (std::size_t k = 0; k < next.size(); ++k)
    for (int c = 0; c < 3; ++c) next[k][c] = x_prev[k][c] + dt * velocity[k][c];
  return next;
}

namespace {

// Neighbor of marker k along axis (0 or 1) at offset +-1, shifted by the period
// when the index wraps so that the lattice stays locally continuous.
Vec3 neighbor(const SheetField& x, int k1, int k2, int axis, int step, double period) {
  const int m = x.m();
  int a = k1, b = k2;
  int& idx = axis == 0 ? a : b;
  idx += step;
  double shift = 0.0;
  if (idx >= m) {
    idx -= m;
    shift = period;
  } else if (idx < 0) {
    idx += m;
    shift = -period;
  }
  Vec3 v = x.at(a, b);
  v[axis] += shift;
  return v;
}

}  // namespace

SheetField membrane_force(const SheetField& x, double stiffness, double hb, double period) {
  const int m = x.m();
  const double scale = stiffness / (hb * hb);
  SheetField f(m);
  for (int k1 = 0; k1 < m; ++k1)
    for (int k2 = 0; k2 < m; ++k2) {
      const Vec3& c0 = x.at(k1, k2);
      const Vec3 e = neighbor(x, k1, k2, 0, 1, period);
      const Vec3 w = neighbor(x, k1, k2, 0, -1, period);
      const Vec3 nn = neighbor(x, k1, k2, 1, 1, period);
      const Vec3 s = neighbor(x, k1, k2, 1, -1, period);
      Vec3& out = f.at(k1, k2);
      for (int c = 0; c < 3; ++c) out[c] = scale * (e[c] + w[c] + nn[c] + s[c] - 4.0 * c0[c]);
    }
  return f;
}

double membrane_elastic_energy(const SheetField& x, double stiffness, double hb, double period) {
  const int m = x.m();
  double sum = 0.0;
  for (int k1 = 0; k1 < m; ++k1)
    for (int k2 = 0; k2 < m; ++k2) {
      const Vec3& c0 = x.at(k1, k2);
      for (int axis = 0; axis < 2; ++axis) {
        const Vec3 nb = neighbor(x, k1, k2, axis, 1, period);
        for (int c = 0; c < 3; ++c) {
          const double d = nb[c] - c0[c] - (c == axis ? hb : 0.0);
          sum += d * d;
        }
      }
    }
  return 0.5 * stiffness * sum;
}

double target_spring_energy(const SheetField& force, double stiffness, double hb) {
  if (stiffness == 0.0) return 0.0;
  return hb * hb * force.sum_squares() / (2.0 * stiffness);
}

}  // namespace ibstab
