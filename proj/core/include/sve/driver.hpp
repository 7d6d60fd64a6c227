#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sve/config.hpp"

namespace sve {

/// Outcome of relaxing the small-hump flow to a fixed-bed steady state.
struct SpinupReport {
  std::size_t steps = 0;
  double residual = 0.0;  ///< last max|dq| / max|q| between two steps
  bool converged = false;
};

/// Interior bed elevations eta_max exp(-x^2) at the cell centres of `cfg`.
std::vector<double> hump_bed(const RunConfig& cfg, double eta_max);

/// Field at t = 0 for `cfg`. For the small hump this includes the fixed-bed
/// spin-up; its report is stored in `spinup` when given.
FieldState initial_field(const RunConfig& cfg, SpinupReport* spinup = nullptr);

/// Advances `f0` with the scheme and order selected in `cfg`.
Trajectory simulate(const RunConfig& cfg, const FieldState& f0, const StepObserver& observe = {});

/// Running extrema collected during a simulation.
struct RunStats {
  double min_depth = 0.0;
  double max_depth = 0.0;
  double max_surface_deviation = 0.0;  ///< max |h + eta - H0|, quiescent runs only
  double max_abs_discharge = 0.0;
  std::vector<double> times;
  std::vector<double> water_volume;  ///< sum h dx at each entry of `times`
  std::vector<double> bed_volume;    ///< sum eta dx
};

struct RunResult {
  RunConfig config;
  Trajectory trajectory;
  RunStats stats;
  std::optional<SpinupReport> spinup;
  std::optional<ErrorReport> convergence;
  double wall_seconds = 0.0;
};

/// Exact cell averages of the manufactured solution on the grid of `f`.
std::vector<CellState> manufactured_exact(const FieldState& f, double t, const ManufacturedParams& p);

/// Runs every grid of the ladder (or the single grid `cells`) against the
/// manufactured solution. Requires a ManufacturedInitial configuration. A
/// solver failure on one grid is recorded in its row and the ladder goes on.
/// When `finals` is given it receives the final field of each grid that
/// completed.
ErrorReport run_convergence(const RunConfig& cfg, std::vector<FieldState>* finals = nullptr);

/// Single run or convergence ladder, without touching the file system.
RunResult run(const RunConfig& cfg);

/// CSV with columns x,h,q,eta,H,u,Fr,qb at 17 significant digits.
std::string snapshot_csv(const FieldState& f, const BedloadClosure& closure, double g);

std::string snapshot_name(double t);

std::string summary_text(const RunResult& r);

/// Writes snapshots, summary.txt and (for convergence runs) rates.csv into
/// cfg.output_dir.
void write_outputs(const RunResult& r);

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitSolver = 3 };

/// Resolves, runs and writes; diagnostics go to `err`. Returns an ExitCode.
int run_and_report(const KeyValues& kv, std::ostream& out, std::ostream& err);

}  // namespace sve
