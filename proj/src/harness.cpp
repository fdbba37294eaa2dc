#include "ibstab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ibstab/forcing.hpp"

namespace ibstab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void fill_gaussian(VectorField& u, StokesSolver& solver, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int c = 0; c < 3; ++c)
    for (double& v : u[c]) v = normal(rng);
  u = solver.project(u);
  const double rms = std::sqrt(u.sum_squares() / (3.0 * static_cast<double>(u.grid().size())));
  const double scale = rms > 0.0 ? amplitude / rms : 0.0;
  for (int c = 0; c < 3; ++c)
    for (double& v : u[c]) v *= scale;
}

// Displacement differences across the +e1 and +e2 bonds of marker (k1, k2).
std::array<Vec3, 2> bond_stretch(const SheetField& x, int k1, int k2, double hb, double period) {
  const int m = x.m();
  std::array<Vec3, 2> out{};
  const Vec3& c0 = x.at(k1, k2);
  for (int axis = 0; axis < 2; ++axis) {
    int a = k1, b = k2;
    int& idx = axis == 0 ? a : b;
    double shift = 0.0;
    if (++idx == m) {
      idx = 0;
      shift = period;
    }
    const Vec3& nb = x.at(a, b);
    for (int c = 0; c < 3; ++c)
      out[axis][c] = nb[c] + (c == axis ? shift - hb : 0.0) - c0[c];
  }
  return out;
}

double elastic_bilinear(const SheetField& x, const SheetField& y, double stiffness, double hb,
                        double period) {
  double sum = 0.0;
  for (int k1 = 0; k1 < x.m(); ++k1)
    for (int k2 = 0; k2 < x.m(); ++k2) {
      const auto dx = bond_stretch(x, k1, k2, hb, period);
      const auto dy = bond_stretch(y, k1, k2, hb, period);
      for (int axis = 0; axis < 2; ++axis)
        for (int c = 0; c < 3; ++c) sum += dx[axis][c] * dy[axis][c];
    }
  return 0.5 * stiffness * sum;
}

bool trailing_window_non_increasing(const std::vector<double>& values) {
  const std::size_t total = values.size();
  const std::size_t window = std::max<std::size_t>(total / 10, 2);
  if (total < window || window < 2) return true;
  const std::size_t start = total - window;
  const std::size_t mid = start + window / 2;
  const double first = *std::max_element(values.begin() + start, values.begin() + mid);
  const double second = *std::max_element(values.begin() + mid, values.end());
  return second <= first * (1.0 + 1e-9);
}

}  // namespace

double poiseuille_profile(double z, double f0, double mu, double length) {
  return f0 / (2.0 * mu) * z * (length - z);
}

Simulation::Simulation(const SimConfig& config)
    : config_(config),
      grid_(config.n, config.length),
      sheet_(grid_, config.p, config.eps),
      solver_(grid_),
      fluid_(grid_),
      force_(sheet_.m()),
      positions_(sheet_.m()),
      rest_(sheet_.m()) {
  config_.validate();
  rest_ = sheet_.targets();
  positions_ = rest_;

  VectorField& u = fluid_.velocity_mut();
  switch (config_.init) {
    case InitKind::Gaussian:
      fill_gaussian(u, solver_, config_.amplitude, config_.seed);
      break;
    case InitKind::Zero:
    case InitKind::MembranePerturbation:
      break;
    case InitKind::Poiseuille: {
      if (!(config_.mu > 0.0)) throw std::invalid_argument("poiseuille init needs mu > 0");
      const int n = grid_.n();
      const double h = grid_.h();
      const double wall = config_.eps[2] * h;
      for (int j3 = 0; j3 < n; ++j3) {
        double z = std::fmod(j3 * h - wall, config_.length);
        if (z < 0.0) z += config_.length;
        const double ux = poiseuille_profile(z, config_.f0, config_.mu, config_.length);
        for (int j1 = 0; j1 < n; ++j1)
          for (int j2 = 0; j2 < n; ++j2) u[0][grid_.index(j1, j2, j3)] = ux;
      }
      break;
    }
  }

  double boundary_energy = 0.0;
  const double dt = config_.dt;
  if (config_.forcing == ForcingKind::TargetPoint) {
    // Stagger so that the force at t = 0 vanishes: F^{-1/2} = F^0 + (dt/2) K U^0.
    const SheetField U0 = interpolate(sheet_, fluid_.velocity());
    force_ = target_force_update(SheetField(sheet_.m()), U0, config_.stiffness, -0.5 * dt);
  } else {
    if (config_.init == InitKind::MembranePerturbation) {
      const double a = config_.amplitude;
      const double hb = sheet_.hb();
      const double L = config_.length;
      for (int k1 = 0; k1 < sheet_.m(); ++k1)
        for (int k2 = 0; k2 < sheet_.m(); ++k2) {
          const double s1 = k1 * hb, s2 = k2 * hb;
          positions_.at(k1, k2)[2] +=
              a * (std::sin(kTwoPi * (3.0 * s1 + 4.0 * s2) / L) + std::cos(kTwoPi * s2 / L));
        }
    }
    boundary_energy =
        membrane_elastic_energy(positions_, config_.stiffness, sheet_.hb(), config_.length);
    const SheetField U0 = boundary_velocity();
    positions_ = membrane_step(positions_, U0, -0.5 * dt);
    force_ = membrane_force(positions_, config_.stiffness, sheet_.hb(), config_.length);
  }
  reference_norm_ =
      std::sqrt(fluid_.velocity().sum_squares() * std::pow(grid_.h(), 3) +
                2.0 * boundary_energy / config_.rho);
}

SheetField Simulation::boundary_velocity() const {
  if (config_.forcing == ForcingKind::Membrane && config_.delta_mode == DeltaMode::Moving)
    return interpolate_at(sheet_, positions_, fluid_.velocity());
  return interpolate(sheet_, fluid_.velocity());
}

VectorField Simulation::body_force(const SheetField& boundary_force) const {
  if (config_.forcing == ForcingKind::Membrane && config_.delta_mode == DeltaMode::Moving)
    return spread_at(sheet_, positions_, boundary_force);
  return spread(sheet_, boundary_force);
}

void Simulation::add_external_forces(VectorField& f) const {
  if (config_.init == InitKind::Poiseuille && config_.f0 != 0.0)
    for (double& v : f[0]) v += config_.f0;
  if (config_.nonlinear) {
    const VectorField a = advect(fluid_.velocity());
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < f[c].size(); ++i) f[c][i] += config_.rho * a[c][i];
  }
}

void Simulation::step() {
  const double dt = config_.dt;
  const SheetField U = boundary_velocity();
  if (config_.forcing == ForcingKind::TargetPoint) {
    force_ = target_force_update(force_, U, config_.stiffness, dt);
  } else {
    positions_ = membrane_step(positions_, U, dt);
    force_ = membrane_force(positions_, config_.stiffness, sheet_.hb(), config_.length);
  }
  VectorField f = body_force(force_);
  add_external_forces(f);
  solver_.step(fluid_, f, dt, config_.mu, config_.rho);
}

double Simulation::relative_energy() const {
  const double norm = fluid_norm();
  return reference_norm_ > 0.0 ? norm / reference_norm_ : norm;
}

double Simulation::modified_energy() const {
  const double h = grid_.h();
  const double kinetic = 0.5 * config_.rho * fluid_.velocity().sum_squares() * h * h * h;
  const double hb = sheet_.hb();
  const double dt = config_.dt;
  const SheetField U = boundary_velocity();
  if (config_.forcing == ForcingKind::TargetPoint) {
    if (config_.stiffness == 0.0) return kinetic;
    const SheetField next = target_force_update(force_, U, config_.stiffness, dt);
    return kinetic + hb * hb / (2.0 * config_.stiffness) * force_.dot(next);
  }
  const SheetField next = membrane_step(positions_, U, dt);
  return kinetic + elastic_bilinear(positions_, next, config_.stiffness, hb, config_.length);
}

RunVerdict run(const SimConfig& config) {
  Simulation sim(config);
  RunVerdict v;
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(config.steps) + 1);
  const double rel0 = sim.relative_energy();
  history.push_back(rel0);
  v.trace.push_back({0, 0.0, rel0});
  for (long s = 1; s <= config.steps; ++s) {
    sim.step();
    const double rel = sim.relative_energy();
    history.push_back(rel);
    if (!std::isfinite(rel) || rel > kBlowupThreshold) {
      v.status = RunStatus::Unstable;
      v.blowup_step = s;
      v.final_relative_energy = rel;
      v.trace.push_back({s, sim.time(), rel});
      return v;
    }
    if (s % config.record_every == 0 || s == config.steps) v.trace.push_back({s, sim.time(), rel});
  }
  v.final_relative_energy = history.back();
  const bool settled = v.final_relative_energy <= 1.0 && trailing_window_non_increasing(history);
  v.status = settled ? RunStatus::Stable : RunStatus::Indeterminate;
  return v;
}

namespace {

RunStatus classify(SimConfig config, double dt, int horizon_cap) {
  config.dt = dt;
  const long base = config.steps;
  for (long steps = base; steps <= base * horizon_cap; steps *= 2) {
    config.steps = steps;
    const RunStatus s = run(config).status;
    if (s != RunStatus::Indeterminate) return s;
  }
  throw std::runtime_error("find_critical_dt: verdict still indeterminate at dt = " +
                           std::to_string(dt) + " after horizon cap");
}

}  // namespace

CriticalDtResult find_critical_dt(const SimConfig& config, double dt_lo, double dt_hi,
                                  const BisectionOptions& options) {
  if (!(dt_lo > 0.0) || !(dt_hi > dt_lo))
    throw std::invalid_argument("find_critical_dt: need 0 < lo < hi");
  if (!(options.rel_tol > 0.0)) throw std::invalid_argument("find_critical_dt: rel_tol must be > 0");
  if (options.n_seeds < 1 || options.horizon_cap < 1)
    throw std::invalid_argument("find_critical_dt: n_seeds and horizon_cap must be >= 1");

  const int seeds = config.init == InitKind::Gaussian ? options.n_seeds : 1;
  CriticalDtResult result;
  for (int i = 0; i < seeds; ++i) {
    SimConfig c = config;
    c.seed = config.seed + static_cast<std::uint64_t>(i);
    if (classify(c, dt_lo, options.horizon_cap) != RunStatus::Stable)
      throw std::runtime_error("find_critical_dt: lower bracket end is not stable");
    if (classify(c, dt_hi, options.horizon_cap) != RunStatus::Unstable)
      throw std::runtime_error("find_critical_dt: upper bracket end is not unstable");
    double lo = dt_lo, hi = dt_hi;
    while (hi - lo > options.rel_tol * 0.5 * (lo + hi)) {
      const double mid = 0.5 * (lo + hi);
      if (classify(c, mid, options.horizon_cap) == RunStatus::Stable) lo = mid;
      else hi = mid;
    }
    result.per_seed.push_back(0.5 * (lo + hi));
  }
  double sum = 0.0;
  for (double v : result.per_seed) sum += v;
  result.mean = sum / static_cast<double>(result.per_seed.size());
  return result;
}

std::vector<PoiseuilleRow> poiseuille_experiment(const PoiseuilleOptions& o) {
  if (o.levels < 2) throw std::invalid_argument("poiseuille: levels must be >= 2");
  if (o.n0 < 16) throw std::invalid_argument("poiseuille: base grid must be >= 16");
  if (!(o.mu > 0.0)) throw std::invalid_argument("poiseuille: mu must be positive");
  const double t_end = o.t_end > 0.0 ? o.t_end : 2.0 * o.length * o.length / o.mu;

  std::vector<PoiseuilleRow> rows;
  for (int level = 0; level < o.levels; ++level) {
    const int scale = 1 << level;
    SimConfig c;
    c.n = o.n0 * scale;
    c.p = o.p;
    c.length = o.length;
    c.rho = o.rho;
    c.mu = o.mu;
    c.stiffness = o.stiffness0 * scale;
    c.dt = o.dt0 / scale;
    c.steps = std::max<long>(1, std::lround(t_end / c.dt));
    c.forcing = ForcingKind::TargetPoint;
    c.delta_mode = DeltaMode::FixedAtTarget;
    c.eps = {0.0, 0.0, 0.0};
    c.nonlinear = o.nonlinear;
    c.init = InitKind::Poiseuille;
    c.f0 = o.f0;

    Simulation sim(c);
    for (long s = 0; s < c.steps; ++s) sim.step();

    PoiseuilleRow row;
    row.n = c.n;
    row.stiffness = c.stiffness;
    row.dt = c.dt;
    row.steps = c.steps;
    const Grid& g = sim.fluid().grid();
    const double h = g.h();
    const VectorField& u = sim.fluid().velocity();
    for (int j1 = 0; j1 < c.n; ++j1)
      for (int j2 = 0; j2 < c.n; ++j2)
        for (int j3 = 0; j3 < c.n; ++j3) {
          const std::size_t i = g.index(j1, j2, j3);
          const double ex = u[0][i] - poiseuille_profile(j3 * h, c.f0, c.mu, c.length);
          const double e = std::sqrt(ex * ex + u[1][i] * u[1][i] + u[2][i] * u[2][i]);
          row.err_u_l1 += e * h * h * h;
          row.err_u_l2 += e * e * h * h * h;
          row.err_u_linf = std::max(row.err_u_linf, e);
        }
    row.err_u_l2 = std::sqrt(row.err_u_l2);

    const double hb = sim.sheet().hb();
    const SheetField& F = sim.force();
    for (std::size_t k = 0; k < F.size(); ++k) {
      double d2 = 0.0;
      for (int a = 0; a < 3; ++a) {
        const double d = c.stiffness > 0.0 ? -F[k][a] / c.stiffness : 0.0;
        d2 += d * d;
      }
      const double d = std::sqrt(d2);
      row.d_l1 += d * hb * hb;
      row.d_l2 += d2 * hb * hb;
      row.d_linf = std::max(row.d_linf, d);
    }
    row.d_l2 = std::sqrt(row.d_l2);
    rows.push_back(row);
  }
  return rows;
}

MembraneTrajectory membrane_demo(const SimConfig& config) {
  if (config.forcing != ForcingKind::Membrane)
    throw std::invalid_argument("membrane_demo: config must use membrane forcing");
  Simulation sim(config);
  MembraneTrajectory traj;
  const double rest = sim.sheet().target(0, 0)[2];
  auto snapshot = [&]() {
    MembraneSnapshot s;
    s.step = sim.step_index();
    s.time = sim.time();
    const SheetField& x = sim.positions();
    s.height.resize(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      s.height[k] = x[k][2] - rest;
      s.max_deviation = std::max(s.max_deviation, std::abs(s.height[k]));
    }
    s.fluid_norm = sim.fluid_norm();
    s.modified_energy = sim.modified_energy();
    traj.snapshots.push_back(std::move(s));
  };
  snapshot();
  traj.status = RunStatus::Stable;
  for (long s = 1; s <= config.steps; ++s) {
    sim.step();
    const double rel = sim.relative_energy();
    if (!std::isfinite(rel) || rel > kBlowupThreshold) {
      traj.status = RunStatus::Unstable;
      snapshot();
      return traj;
    }
    if (s % config.record_every == 0 || s == config.steps) snapshot();
  }
  return traj;
}

}  // namespace ibstab
