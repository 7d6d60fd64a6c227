#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sve/model.hpp"
#include "sve/pressure_riemann.hpp"

namespace sve {

/// Left/right pressure increments at one interface. Third components are
/// always zero because the last row of P is zero.
struct FluctuationPair {
  Vec3 d_minus;
  Vec3 d_plus;
};

/// Numerical advection flux at one interface; the first component is zero.
using AdvectionFlux = Vec3;

/// Gauss-Legendre rule mapped to [0, 1]; weights sum to one.
class QuadratureRule {
 public:
  /// n_points in {1, 2, 3}; throws std::invalid_argument otherwise.
  explicit QuadratureRule(int n_points = 1);

  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
};

/// Quadrature of P along the segment a -> b: sum_j w_j P(a + s_j (b - a)).
Mat3 path_averaged_pressure_matrix(const CellState& a, const CellState& b, const QuadratureRule& quad,
                                   double g = kDefaultGravity);

/// D- integrates P from the left state to the right star state, D+ from the
/// left star state to the right state, both along segment paths.
FluctuationPair fluctuations(const CellState& left, const CellState& right, const StarState& star,
                             const QuadratureRule& quad, double g = kDefaultGravity);

/// (D- + D+) minus the single-segment integral from left to right.
Vec3 compatibility_residual(const CellState& left, const CellState& right, const StarState& star,
                            const QuadratureRule& quad, double g = kDefaultGravity);

/// Upwind advection flux q* (0, u, q_b/q) with u, q_b/q from the left cell
/// when q* >= 0 and from the right cell otherwise.
AdvectionFlux advection_flux_first_order(const CellState& left, const CellState& right, double q_star,
                                         const BedloadClosure& closure);

// Boundary conditions, one per side.

struct Transmissive {};
struct Reflective {};
struct InflowDischarge {
  double q_in;
};
struct FixedDepth {
  double h_out;
};
/// Both depth and discharge imposed (supercritical inflow).
struct InflowState {
  double h_in;
  double q_in;
};
struct Periodic {};

using BoundarySpec = std::variant<Transmissive, Reflective, InflowDischarge, FixedDepth, InflowState, Periodic>;

struct BoundaryConditions {
  BoundarySpec left = Transmissive{};
  BoundarySpec right = Transmissive{};
};

/// Throws std::invalid_argument when only one side is periodic.
void validate(const BoundaryConditions& bc);

std::string describe(const BoundarySpec& spec);

/// Fills the ghost cells of `f` in place.
void fill_ghosts(FieldState& f, const BoundaryConditions& bc);

inline FieldState apply_boundary(FieldState f, const BoundaryConditions& bc) {
  fill_ghosts(f, bc);
  return f;
}

/// Raised when an update produces a non-positive depth.
class PositivityFailure : public std::runtime_error {
 public:
  PositivityFailure(const std::string& what, std::size_t cell, double time)
      : std::runtime_error(what), cell_(cell), time_(time) {}

  std::size_t cell() const { return cell_; }
  double time() const { return time_; }

 private:
  std::size_t cell_;
  double time_;
};

/// Everything a step needs apart from the field and the time step.
struct SchemeParams {
  double g = kDefaultGravity;
  BedloadClosure closure = Frozen{};
  QuadratureRule quad{1};
  StarSolver star_solver = StarSolver::Linearized;
  BoundaryConditions bc{};
};

/// Interface data shared by the two neighbouring cells.
struct InterfaceTerms {
  FluctuationPair d;
  AdvectionFlux flux;
};

/// Conservative-plus-fluctuation update of every interior cell:
///   Q_i -= dt/dx [(D-_{i+1/2} + D+_{i-1/2}) + (F_{i+1/2} - F_{i-1/2})] + dt H_i.
/// `interfaces` has interior_size() + 1 entries, `cell_terms` is H_i (may be
/// empty). Throws PositivityFailure.
FieldState apply_update(const FieldState& f, double dt, const std::vector<InterfaceTerms>& interfaces,
                        const std::vector<Vec3>& cell_terms);

/// One first-order step. Ghost cells are filled from `p.bc` before the update;
/// the returned field has time f.t + dt.
FieldState step_first_order(const FieldState& f, double dt, const SchemeParams& p);

/// Time loop settings shared by the first- and second-order drivers.
struct RunSchedule {
  double cfl = 0.9;
  double t_final = 0.0;
  std::vector<double> output_times;  ///< snapshots besides t0 and t_final
  std::size_t max_steps = 100000000;
};

struct Trajectory {
  std::vector<FieldState> snapshots;  ///< at t0, each output time, t_final
  std::size_t steps = 0;
  bool step_limited = false;  ///< stopped at max_steps before t_final
};

using StepFunction = std::function<FieldState(const FieldState&, double)>;
using StepObserver = std::function<void(const FieldState&, std::size_t)>;

/// Generic driver: cfl_timestep + step until t_final, landing exactly on each
/// output time. Reaching max_steps ends the run early with a final snapshot.
Trajectory run_with(const FieldState& f0, const RunSchedule& sched, double g, const StepFunction& step,
                    const StepObserver& observe = {});

Trajectory run_first_order(const FieldState& f0, const SchemeParams& p, const RunSchedule& sched,
                           const StepObserver& observe = {});

}  // namespace sve
