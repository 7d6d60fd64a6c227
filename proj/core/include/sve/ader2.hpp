#pragma once

#include <vector>

#include "sve/model.hpp"
#include "sve/pressure_riemann.hpp"
#include "sve/splitting.hpp"

namespace sve {

/// Per-cell slope of (h, q, eta) [units of Q per metre].
using SlopeVector = Vec3;

struct AenoParams {
  double tol = 1e-4;
  double eps = 1.0;
};

void validate(const AenoParams& p);

/// AENO blending weight beta(r) = (1 - r) / sqrt(eps^2 + (r - 1)^2), |beta| <= 1.
double aeno_beta(double r, double eps);

/// Componentwise AENO slope from the two one-sided differences.
SlopeVector aeno_slope(const CellState& prev, const CellState& curr, const CellState& next, double dx,
                       const AenoParams& params);

/// Boundary-extrapolated values of one cell evolved by half a time step.
struct EvolvedBoundaryPair {
  CellState q_tilde_L;  ///< at the cell's left face
  CellState q_tilde_R;  ///< at the cell's right face
};

/// Extrapolates q -/+ (dx/2) slope to both faces and advances each by dt/2
/// with the Cauchy-Kovalevskaya time derivative of the split system:
/// -(F(Q^R) - F(Q^L))/dx - P(Q^face) slope. Throws PositivityFailure
/// (cell index `cell`) on a non-positive depth.
EvolvedBoundaryPair extrapolate_and_evolve(const CellState& q, const SlopeVector& slope, double dx, double dt,
                                           const BedloadClosure& closure, double g = kDefaultGravity,
                                           std::size_t cell = 0);

/// Conventional Riemann problem on evolved boundary values (HEOC).
inline StarState grp_star(const CellState& q_tilde_R_of_i, const CellState& q_tilde_L_of_next, StarSolver solver,
                          double g = kDefaultGravity) {
  return solve_star(solver, q_tilde_R_of_i, q_tilde_L_of_next, g);
}

/// Upwind advection flux on evolved values: left value when q* >= 0.
AdvectionFlux advection_flux_second_order(const CellState& q_tilde_R_of_i, const CellState& q_tilde_L_of_next,
                                          double q_star, const BedloadClosure& closure);

/// Smooth in-cell non-conservative product P(Q(x_i, dt/2)) (Q~R - Q~L)/dx,
/// with the cell centre evolved as Q_i - dt/2 P(Q_i) slope.
Vec3 h_i_term(const CellState& q, const SlopeVector& slope, const EvolvedBoundaryPair& pair, double dx, double dt,
              double g = kDefaultGravity, std::size_t cell = 0);

struct SecondOrderOptions {
  AenoParams aeno{};
  /// Retry a cell with zero slope when its evolved values lose positivity.
  bool zero_slope_retry = false;
  /// Forces all slopes to zero (reduces the step to first order).
  bool zero_slopes = false;
};

/// One ADER-2 step: AENO slopes, half-step evolution, Riemann problems on the
/// evolved values, fluctuations and upwind fluxes, H_i, update. Needs two
/// ghost cells per side.
FieldState step_second_order(const FieldState& f, double dt, const SchemeParams& p,
                             const SecondOrderOptions& opts = {});

Trajectory run_second_order(const FieldState& f0, const SchemeParams& p, const SecondOrderOptions& opts,
                            const RunSchedule& sched, const StepObserver& observe = {});

}  // namespace sve
