#pragma once

#include <stdexcept>
#include <string>

#include "sve/model.hpp"

namespace sve {

/// Star-region solution of the pressure-system Riemann problem. Discharge is
/// continuous across the stationary contact; the free surface h + eta is
/// continuous too.
struct StarState {
  double h_star_L;
  double h_star_R;
  double q_star;
  double eta_L;
  double eta_R;

  CellState left() const { return {h_star_L, q_star, eta_L}; }
  CellState right() const { return {h_star_R, q_star, eta_R}; }
};

/// Raised when no positive star depths exist for the given data (near-dry
/// or strongly diverging states).
class StarFailure : public std::runtime_error {
 public:
  StarFailure(const std::string& what, CellState left, CellState right)
      : std::runtime_error(what), left_(left), right_(right) {}

  const CellState& left() const { return left_; }
  const CellState& right() const { return right_; }

 private:
  CellState left_;
  CellState right_;
};

struct RiemannInputs {
  CellState left;
  CellState right;
  double k;          ///< (3/(2 sqrt g))(q_L - q_R) + h_L^1.5 + h_R^1.5
  double delta_eta;  ///< eta_R - eta_L

  static RiemannInputs make(const CellState& left, const CellState& right, double g = kDefaultGravity);
};

enum class StarSolver { Linearized, Iterative };

/// Closed-form star state from the linearized invariant system. Exact when
/// eta_L == eta_R.
StarState star_state_linearized(const CellState& left, const CellState& right, double g = kDefaultGravity);

struct IterativeOptions {
  double tol = 1e-12;
  int max_iter = 50;
};

/// Star state from Newton iteration on h^1.5 + (h - delta_eta)^1.5 = K, with
/// a bisection fallback.
StarState star_state_iterative(const CellState& left, const CellState& right, double g = kDefaultGravity,
                               IterativeOptions opts = {});

StarState solve_star(StarSolver solver, const CellState& left, const CellState& right, double g = kDefaultGravity);

struct InvariantResiduals {
  double left;
  double right;
  double contact;
};

/// How far `star` is from satisfying the left/right Riemann invariants and
/// the contact relation.
InvariantResiduals riemann_invariant_residuals(const CellState& left, const CellState& right, const StarState& star,
                                               double g = kDefaultGravity);

}  // namespace sve
