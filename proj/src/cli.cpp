#include "ibstab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "ibstab/harness.hpp"
#include "ibstab/kernel.hpp"
#include "ibstab/stability.hpp"

namespace ibstab {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

namespace {

// Writes to the named file, or to `fallback` when the name is empty.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Vec3 parse_eps(const std::string& text) {
  Vec3 eps{0, 0, 0};
  std::stringstream ss(text);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 3) throw UsageError("--eps takes exactly three comma-separated values");
    try {
      std::size_t used = 0;
      eps[i] = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--eps: bad number '" + item + "'");
    }
    ++i;
  }
  if (i != 3) throw UsageError("--eps takes exactly three comma-separated values");
  return eps;
}

void write_membrane_snapshot(const std::filesystem::path& dir, const Simulation& sim) {
  char name[64];
  std::snprintf(name, sizeof name, "membrane_%06ld.csv", sim.step_index());
  std::ofstream f(dir / name);
  if (!f) throw std::runtime_error("cannot write membrane snapshot in '" + dir.string() + "'");
  f << "k1,k2,X1,X2,X3\n";
  const SheetField& x = sim.positions();
  for (int k1 = 0; k1 < x.m(); ++k1)
    for (int k2 = 0; k2 < x.m(); ++k2) {
      const Vec3& v = x.at(k1, k2);
      f << k1 << ',' << k2 << ',' << format_number(v[0]) << ',' << format_number(v[1]) << ','
        << format_number(v[2]) << '\n';
    }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability toolkit for the immersed boundary method with target points and membranes",
               "ibstab"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  // kernel-report
  int kr_n = 0;
  std::string kr_out;
  auto* kernel_report = app.add_subcommand("kernel-report", "Fourier coefficients of the 4-point kernel");
  kernel_report->add_option("--n", kr_n, "fluid grid size")->required();
  kernel_report->add_option("--out", kr_out, "CSV path (default stdout)");

  // predict
  auto* predict = app.add_subcommand("predict", "Predicted critical time step");
  predict->require_subcommand(1);
  double pt_k = 0, pt_rho = 0, pt_h = 0;
  auto* predict_target = predict->add_subcommand("target", "Target-point springs");
  predict_target->add_option("--k", pt_k, "spring stiffness")->required();
  predict_target->add_option("--rho", pt_rho, "fluid density")->required();
  predict_target->add_option("--h", pt_h, "fluid meshwidth")->required();
  double pm_k = 0, pm_rho = 0, pm_l = 1.0;
  int pm_n = 0, pm_p = 0;
  bool pm_exact = false;
  std::string pm_eps = "0,0,0";
  auto* predict_membrane = predict->add_subcommand("membrane", "Elastic membrane");
  predict_membrane->add_option("--k", pm_k, "membrane stiffness")->required();
  predict_membrane->add_option("--rho", pm_rho, "fluid density")->required();
  predict_membrane->add_option("--n", pm_n, "fluid grid size")->required();
  predict_membrane->add_option("--p", pm_p, "fluid/boundary meshwidth ratio")->required();
  predict_membrane->add_option("--l", pm_l, "box length (default 1)");
  predict_membrane->add_flag("--exact", pm_exact, "use the exact lattice sums");
  predict_membrane->add_option("--eps", pm_eps, "boundary shift e1,e2,e3 (exact mode)");

  // table1
  std::vector<int> t_n{16, 32, 64, 128}, t_p{1, 2, 3};
  std::string t_out;
  auto* tab = app.add_subcommand("table1", "Band-limited membrane maxima");
  tab->add_option("--n", t_n, "grid sizes")->delimiter(',');
  tab->add_option("--p", t_p, "meshwidth ratios")->delimiter(',');
  tab->add_option("--out", t_out, "CSV path (default stdout)");

  // simulate
  std::string s_config, s_out, s_dump_dir = ".";
  long s_dump = 0;
  auto* simulate = app.add_subcommand("simulate", "Run one simulation");
  simulate->add_option("--config", s_config, "config file")->required();
  simulate->add_option("--out", s_out, "CSV path (default stdout)");
  simulate->add_option("--dump-membrane", s_dump, "write marker positions every N steps");
  simulate->add_option("--dump-dir", s_dump_dir, "directory for membrane snapshots");

  // find-critical-dt
  std::string f_config;
  double f_lo = 0, f_hi = 0, f_tol = 1e-3;
  int f_seeds = 10;
  auto* critical = app.add_subcommand("find-critical-dt", "Bisection for the empirical critical step");
  critical->add_option("--config", f_config, "config file")->required();
  critical->add_option("--lo", f_lo, "stable time step")->required();
  critical->add_option("--hi", f_hi, "unstable time step")->required();
  critical->add_option("--tol", f_tol, "relative bracket width");
  critical->add_option("--seeds", f_seeds, "number of random starts");

  // poiseuille
  PoiseuilleOptions po;
  std::string po_out;
  auto* pois = app.add_subcommand("poiseuille", "Grid convergence of channel flow");
  pois->add_option("--levels", po.levels, "number of refinement levels")->required();
  pois->add_option("--out", po_out, "CSV path (default stdout)");
  pois->add_option("--t-end", po.t_end, "end time (default 2 L^2 / mu)");
  pois->add_option("--mu", po.mu, "viscosity");
  pois->add_option("--f0", po.f0, "driving force density");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (kernel_report->parsed()) {
      OutputTarget o(kr_out, out);
      const KernelTable table(kr_n);
      o.get() << "q,Phi\n";
      for (long q = -2L * kr_n; q <= 2L * kr_n; ++q) o.get() << q << ',' << format_number(table(q)) << '\n';
      o.get() << "# R(N) = " << format_number(bandlimit_ratio(kr_n)) << '\n';
    } else if (predict_target->parsed()) {
      out << "dt_critical=" << format_number(dtc_target(pt_k, pt_rho, pt_h)) << '\n';
    } else if (predict_membrane->parsed()) {
      const Vec3 eps = parse_eps(pm_eps);
      const SurfaceMode mode = pm_exact ? SurfaceMode::Exact : SurfaceMode::BandLimited;
      const auto r = c_surface_membrane(pm_n, pm_p, mode, eps);
      const double h = pm_l / pm_n;
      out << "Cmax=" << format_number(r.cmax) << '\n';
      out << "argmax=" << r.argmax.first << ',' << r.argmax.second << '\n';
      for (const auto& t : r.near_ties) out << "near_tie=" << t.first << ',' << t.second << '\n';
      out << "dt_critical=" << format_number(dtc_membrane_from_cmax(pm_k, pm_rho, h, pm_p, r.cmax))
          << '\n';
    } else if (tab->parsed()) {
      OutputTarget o(t_out, out);
      o.get() << "N,P,Cmax,xi1,xi2\n";
      for (const auto& row : table1(t_n, t_p))
        o.get() << row.n << ',' << row.p << ',' << format_number(row.cmax) << ',' << row.xi1 << ','
                << row.xi2 << '\n';
    } else if (simulate->parsed()) {
      const SimConfig config = load_config(s_config);
      if (s_dump < 0) throw UsageError("--dump-membrane must be >= 0");
      if (s_dump > 0 && config.forcing != ForcingKind::Membrane)
        throw UsageError("--dump-membrane needs a membrane config");
      OutputTarget o(s_out, out);
      Simulation sim(config);
      auto emit = [&] {
        o.get() << sim.step_index() << ',' << format_number(sim.time()) << ','
                << format_number(sim.relative_energy()) << '\n';
      };
      o.get() << "step,time,relative_energy\n";
      emit();
      if (s_dump > 0) write_membrane_snapshot(s_dump_dir, sim);
      for (long s = 1; s <= config.steps; ++s) {
        sim.step();
        const double rel = sim.relative_energy();
        const bool blown = !std::isfinite(rel) || rel > kBlowupThreshold;
        if (s % config.record_every == 0 || s == config.steps || blown) emit();
        if (s_dump > 0 && (s % s_dump == 0 || blown)) write_membrane_snapshot(s_dump_dir, sim);
        if (blown) {
          err << "blow-up at step " << s << '\n';
          break;
        }
      }
    } else if (critical->parsed()) {
      const SimConfig config = load_config(f_config);
      BisectionOptions opt;
      opt.rel_tol = f_tol;
      opt.n_seeds = f_seeds;
      const auto r = find_critical_dt(config, f_lo, f_hi, opt);
      out << "dt_critical_empirical=" << format_number(r.mean) << '\n';
      for (std::size_t i = 0; i < r.per_seed.size(); ++i)
        out << "seed=" << config.seed + i << " dt_critical=" << format_number(r.per_seed[i]) << '\n';
    } else if (pois->parsed()) {
      OutputTarget o(po_out, out);
      const auto rows = poiseuille_experiment(po);
      o.get() << "N,err_u_L1,err_u_L2,err_u_Linf,d_L1,d_L2,d_Linf\n";
      for (const auto& r : rows)
        o.get() << r.n << ',' << format_number(r.err_u_l1) << ',' << format_number(r.err_u_l2) << ','
                << format_number(r.err_u_linf) << ',' << format_number(r.d_l1) << ','
                << format_number(r.d_l2) << ',' << format_number(r.d_linf) << '\n';
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace ibstab
