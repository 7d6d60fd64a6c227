#include "sve/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace sve {

namespace {

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

FieldState riemann_field(const RunConfig& cfg, const RiemannInitial& r) {
  std::vector<CellState> cells(cfg.cells);
  const double dx = cfg.dx();
  for (std::size_t i = 0; i < cfg.cells; ++i) {
    const double x = cfg.x_left + (static_cast<double>(i) + 0.5) * dx;
    cells[i] = x < r.x_disc ? r.left : r.right;
  }
  return FieldState::make(std::move(cells), dx, cfg.x_left, cfg.n_ghost());
}

FieldState small_hump_field(const RunConfig& cfg, const SmallHumpInitial& s, SpinupReport* report) {
  const double q = s.froude * std::sqrt(cfg.g * s.h_ref * s.h_ref * s.h_ref);
  const auto bed = hump_bed(cfg, s.eta_max);
  FieldState f = s.froude > 1.0
                     ? supercritical_profile(q, s.h_ref, bed, cfg.dx(), cfg.x_left, cfg.n_ghost(), cfg.g)
                     : backwater_profile(q, s.h_ref, bed, cfg.dx(), cfg.x_left, cfg.n_ghost(), cfg.g);

  // Relax to the discrete steady state of the fixed-bed scheme.
  RunConfig fixed = cfg;
  fixed.closure = Frozen{};
  const SchemeParams p = fixed.scheme_params();
  const SecondOrderOptions opts = fixed.second_order_options();
  SpinupReport rep;
  fill_ghosts(f, p.bc);
  while (rep.steps < s.spinup_max_steps) {
    const double dt = cfl_timestep(f, cfg.cfl, cfg.g);
    FieldState next = cfg.order == 2 ? step_second_order(f, dt, p, opts) : step_first_order(f, dt, p);
    double dq = 0.0;
    double qmax = 0.0;
    for (std::size_t i = 0; i < next.interior_size(); ++i) {
      dq = std::max(dq, std::abs(next.interior(i).q - f.interior(i).q));
      qmax = std::max(qmax, std::abs(next.interior(i).q));
    }
    f = std::move(next);
    ++rep.steps;
    rep.residual = qmax > 0.0 ? dq / qmax : dq;
    if (rep.residual < s.spinup_tolerance) {
      rep.converged = true;
      break;
    }
  }
  if (report) *report = rep;
  f.t = 0.0;
  return f;
}

RunStats collect_stats(const Trajectory& traj, const RunStats& running) {
  RunStats s = running;
  for (const FieldState& f : traj.snapshots) {
    double wv = 0.0;
    double bv = 0.0;
    for (std::size_t i = 0; i < f.interior_size(); ++i) {
      wv += f.interior(i).h * f.dx;
      bv += f.interior(i).eta * f.dx;
    }
    s.times.push_back(f.t);
    s.water_volume.push_back(wv);
    s.bed_volume.push_back(bv);
  }
  return s;
}

StepObserver stats_observer(const RunConfig& cfg, RunStats& s) {
  s.min_depth = std::numeric_limits<double>::infinity();
  s.max_depth = -std::numeric_limits<double>::infinity();
  const auto* quiescent = std::get_if<QuiescentHumpInitial>(&cfg.initial);
  const double surface = quiescent ? quiescent->surface : 0.0;
  return [&s, quiescent, surface](const FieldState& f, std::size_t) {
    for (std::size_t i = 0; i < f.interior_size(); ++i) {
      const CellState& c = f.interior(i);
      s.min_depth = std::min(s.min_depth, c.h);
      s.max_depth = std::max(s.max_depth, c.h);
      s.max_abs_discharge = std::max(s.max_abs_discharge, std::abs(c.q));
      if (quiescent) s.max_surface_deviation = std::max(s.max_surface_deviation, std::abs(c.h + c.eta - surface));
    }
  };
}

}  // namespace

std::vector<double> hump_bed(const RunConfig& cfg, double eta_max) {
  std::vector<double> bed(cfg.cells);
  const double dx = cfg.dx();
  for (std::size_t i = 0; i < cfg.cells; ++i) {
    const double x = cfg.x_left + (static_cast<double>(i) + 0.5) * dx;
    bed[i] = eta_max * std::exp(-x * x);
  }
  return bed;
}

std::vector<CellState> manufactured_exact(const FieldState& f, double t, const ManufacturedParams& p) {
  std::vector<CellState> out(f.interior_size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double xa = f.x0 + static_cast<double>(i) * f.dx;
    out[i] = manufactured_cell_average(xa, xa + f.dx, t, p);
  }
  return out;
}

FieldState initial_field(const RunConfig& cfg, SpinupReport* spinup) {
  struct Builder {
    const RunConfig& cfg;
    SpinupReport* spinup;
    FieldState operator()(const RiemannInitial& r) const { return riemann_field(cfg, r); }
    FieldState operator()(const QuiescentHumpInitial& q) const {
      const auto bed = hump_bed(cfg, q.eta_max);
      std::vector<CellState> cells(cfg.cells);
      for (std::size_t i = 0; i < cfg.cells; ++i) cells[i] = CellState::make(q.surface - bed[i], 0.0, bed[i]);
      return FieldState::make(std::move(cells), cfg.dx(), cfg.x_left, cfg.n_ghost());
    }
    FieldState operator()(const BackwaterHumpInitial& b) const {
      return backwater_profile(b.q_in, b.h_out, hump_bed(cfg, b.eta_max), cfg.dx(), cfg.x_left, cfg.n_ghost(),
                               cfg.g);
    }
    FieldState operator()(const SmallHumpInitial& s) const { return small_hump_field(cfg, s, spinup); }
    FieldState operator()(const ManufacturedInitial& m) const {
      FieldState f = FieldState::make(std::vector<CellState>(cfg.cells, CellState{1.0, 0.0, 0.0}), cfg.dx(),
                                      cfg.x_left, cfg.n_ghost());
      const auto exact = manufactured_exact(f, 0.0, m.params);
      for (std::size_t i = 0; i < exact.size(); ++i) f.interior(i) = exact[i];
      return f;
    }
  };
  FieldState f = std::visit(Builder{cfg, spinup}, cfg.initial);
  fill_ghosts(f, cfg.bc);
  return f;
}

Trajectory simulate(const RunConfig& cfg, const FieldState& f0, const StepObserver& observe) {
  const SchemeParams p = cfg.scheme_params();
  const RunSchedule sched = cfg.schedule();
  if (cfg.scheme == SchemeKind::Centered)
    return run_with(
        f0, sched, p.g, [&](const FieldState& f, double dt) { return reference_centered_step(f, dt, p); }, observe);
  if (cfg.order == 2) return run_second_order(f0, p, cfg.second_order_options(), sched, observe);
  return run_first_order(f0, p, sched, observe);
}

ErrorReport run_convergence(const RunConfig& cfg, std::vector<FieldState>* finals) {
  const auto* m = std::get_if<ManufacturedInitial>(&cfg.initial);
  if (!m) throw ConfigError("key 'initial': convergence runs need initial = manufactured");
  const std::vector<Variable> vars{Variable::H, Variable::Q, Variable::Eta};
  std::vector<std::size_t> grids = cfg.ladder.empty() ? std::vector<std::size_t>{cfg.cells} : cfg.ladder;
  std::vector<ErrorRow> rows;
  for (std::size_t cells : grids) {
    RunConfig c = cfg;
    c.cells = cells;
    c.output_times.clear();
    c.output_interval = 0.0;
    const std::clock_t start = std::clock();
    try {
      const Trajectory traj = simulate(c, initial_field(c));
      const FieldState& fin = traj.snapshots.back();
      ErrorRow row = error_norms(fin, manufactured_exact(fin, fin.t, m->params), vars);
      row.cpu_seconds = static_cast<double>(std::clock() - start) / CLOCKS_PER_SEC;
      rows.push_back(std::move(row));
      if (finals) finals->push_back(fin);
    } catch (const PositivityFailure& e) {
      rows.push_back(failed_row(cells, vars, e.what()));
    } catch (const StarFailure& e) {
      rows.push_back(failed_row(cells, vars, e.what()));
    }
  }
  return convergence_table(std::move(rows));
}

RunResult run(const RunConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  RunResult r;
  r.config = cfg;
  if (std::holds_alternative<ManufacturedInitial>(cfg.initial)) {
    std::vector<FieldState> finals;
    r.convergence = run_convergence(cfg, &finals);
    // Snapshots of the finest grid that completed (initial field only if none did).
    if (!finals.empty()) r.config.cells = finals.back().interior_size();
    r.trajectory.snapshots.push_back(initial_field(r.config));
    if (!finals.empty()) r.trajectory.snapshots.push_back(finals.back());
    RunStats running;
    const StepObserver observe = stats_observer(r.config, running);
    for (const FieldState& f : r.trajectory.snapshots) observe(f, 0);
    r.stats = collect_stats(r.trajectory, running);
  } else {
    SpinupReport spin;
    const FieldState f0 = initial_field(cfg, &spin);
    if (std::holds_alternative<SmallHumpInitial>(cfg.initial)) r.spinup = spin;
    RunStats running;
    const StepObserver observe = stats_observer(cfg, running);
    r.trajectory = simulate(cfg, f0, observe);
    r.stats = collect_stats(r.trajectory, running);
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string snapshot_csv(const FieldState& f, const BedloadClosure& closure, double g) {
  std::ostringstream os;
  os << "x,h,q,eta,H,u,Fr,qb\n";
  for (std::size_t i = 0; i < f.interior_size(); ++i) {
    const CellState& c = f.interior(i);
    const double u = c.q / c.h;
    os << num17(f.x_center(i)) << ',' << num17(c.h) << ',' << num17(c.q) << ',' << num17(c.eta) << ','
       << num17(c.h + c.eta) << ',' << num17(u) << ',' << num17(std::abs(u) / std::sqrt(g * c.h)) << ','
       << num17(bedload_flux(u, closure, c.h)) << '\n';
  }
  return os.str();
}

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_%.6g.csv", t);
  return buf;
}

std::string summary_text(const RunResult& r) {
  const RunConfig& c = r.config;
  std::ostringstream os;
  os.precision(17);
  os << "preset            " << c.preset << '\n';
  os << "scheme            " << (c.scheme == SchemeKind::Splitting ? "splitting" : "centered") << '\n';
  os << "order             " << c.order << '\n';
  os << "closure           " << describe(c.closure) << '\n';
  os << "cells             " << c.cells << '\n';
  os << "steps             " << r.trajectory.steps << (r.trajectory.step_limited ? " (step limit)" : "") << '\n';
  os << "final_time        " << r.trajectory.snapshots.back().t << '\n';
  os << "min_depth         " << r.stats.min_depth << '\n';
  os << "max_depth         " << r.stats.max_depth << '\n';
  os << "max_abs_q         " << r.stats.max_abs_discharge << '\n';
  if (std::holds_alternative<QuiescentHumpInitial>(c.initial))
    os << "max_abs_H_minus_H0 " << r.stats.max_surface_deviation << '\n';
  if (r.spinup)
    os << "spinup            steps=" << r.spinup->steps << " residual=" << r.spinup->residual
       << " converged=" << (r.spinup->converged ? "yes" : "no") << '\n';
  os << "wall_seconds      " << r.wall_seconds << '\n';
  os << "mass              t, sum(h dx), sum(eta dx)\n";
  for (std::size_t k = 0; k < r.stats.times.size(); ++k)
    os << "  " << r.stats.times[k] << ", " << r.stats.water_volume[k] << ", " << r.stats.bed_volume[k] << '\n';
  if (r.convergence) os << '\n' << r.convergence->to_text();
  return os.str();
}

void write_outputs(const RunResult& r) {
  namespace fs = std::filesystem;
  const fs::path dir(r.config.output_dir);
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << body;
  };
  for (const FieldState& f : r.trajectory.snapshots)
    write(snapshot_name(f.t), snapshot_csv(f, r.config.closure, r.config.g));
  write("summary.txt", summary_text(r));
  write("config.txt", to_config_text(r.config));
  if (r.convergence) write("rates.csv", r.convergence->to_csv());
}

int run_and_report(const KeyValues& kv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    const ResolvedConfig resolved = resolve_config(kv);
    for (const std::string& d : resolved.defaults_used) out << "default: " << d << '\n';
    cfg = resolved.config;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    const RunResult r = run(cfg);
    write_outputs(r);
    out << summary_text(r);
    if (r.convergence && r.convergence->any_failure()) {
      err << "solver failure on at least one grid of the ladder (see rates.csv / summary.txt)\n";
      return kExitSolver;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const PositivityFailure& e) {
    err << "solver failure: " << e.what() << " (cell " << e.cell() << ", t=" << num17(e.time()) << ")\n";
    return kExitSolver;
  } catch (const StarFailure& e) {
    err << "solver failure: " << e.what() << "\n  left  h=" << num17(e.left().h) << " q=" << num17(e.left().q)
        << " eta=" << num17(e.left().eta) << "\n  right h=" << num17(e.right().h) << " q=" << num17(e.right().q)
        << " eta=" << num17(e.right().eta) << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace sve
