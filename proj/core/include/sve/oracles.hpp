#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sve/model.hpp"
#include "sve/splitting.hpp"

namespace sve {

// ---------------------------------------------------------------------------
// Manufactured solution
// ---------------------------------------------------------------------------

/// Travelling-wave exact solution of the homogeneous system with q_b = -q:
///   h = h0 + c0 sin(kx - wt), q = (w/k) h, eta = -h.
struct ManufacturedParams {
  double h0 = 5.0;
  double c0 = 0.01;
  double period = 10.0;     ///< T_p [s]
  double wavelength = 250;  ///< L_w [m]

  double k() const;
  double omega() const;
  void validate() const;
};

struct ManufacturedValue {
  CellState state;
  double q_b;
};

ManufacturedValue manufactured_state(double x, double t, const ManufacturedParams& p);

/// Exact average of the manufactured solution over [xa, xb].
CellState manufactured_cell_average(double xa, double xb, double t, const ManufacturedParams& p);

// ---------------------------------------------------------------------------
// Exact fixed-bed shallow-water Riemann solver
// ---------------------------------------------------------------------------

/// Classical exact solution of the shallow-water Riemann problem (no dry
/// states). Shocks and rarefactions on both sides.
class ExactSweRiemann {
 public:
  /// Throws std::invalid_argument when the data would generate a dry region.
  ExactSweRiemann(double h_left, double u_left, double h_right, double u_right, double g = kDefaultGravity);

  double star_depth() const { return h_star_; }
  double star_velocity() const { return u_star_; }
  bool left_is_shock() const { return h_star_ > hl_; }
  bool right_is_shock() const { return h_star_ > hr_; }
  /// Shock speed on the given side; only meaningful when that wave is a shock.
  double left_shock_speed() const;
  double right_shock_speed() const;

  struct Sample {
    double h;
    double u;
  };
  /// Solution at similarity coordinate xi = x / t.
  Sample sample(double xi) const;

 private:
  double depth_function(double h, double hk) const;
  double depth_derivative(double h, double hk) const;

  double hl_, ul_, hr_, ur_, g_;
  double h_star_ = 0.0;
  double u_star_ = 0.0;
};

// ---------------------------------------------------------------------------
// Centred reference scheme
// ---------------------------------------------------------------------------

/// First-order Rusanov-type scheme on the full non-conservative system.
/// Dissipation acts on the free surface h + eta instead of h, and on the bed
/// only across interfaces where sediment moves, so quiescent water over any
/// bed is preserved.
FieldState reference_centered_step(const FieldState& f, double dt, const SchemeParams& p);

Trajectory run_reference(const FieldState& f0, const SchemeParams& p, const RunSchedule& sched);

// ---------------------------------------------------------------------------
// Error metrology
// ---------------------------------------------------------------------------

enum class Variable { H, Q, Eta };

std::string to_string(Variable v);

struct NormPair {
  double l1 = 0.0;    ///< sum |e_i| dx
  double linf = 0.0;  ///< max |e_i|
};

struct ErrorRow {
  std::size_t cells = 0;
  std::vector<Variable> variables;
  std::vector<NormPair> norms;  ///< parallel to `variables`
  double cpu_seconds = 0.0;
  std::string failure;  ///< non-empty when the run on this grid aborted; norms are NaN
};

/// Row for a grid whose run aborted with `reason`.
ErrorRow failed_row(std::size_t cells, const std::vector<Variable>& variables, const std::string& reason);

/// Norms of numerical - exact over the interior cells. `exact` holds one
/// value per interior cell; throws std::invalid_argument on size mismatch.
ErrorRow error_norms(const FieldState& numerical, const std::vector<CellState>& exact,
                     const std::vector<Variable>& variables);

struct ErrorReport {
  std::vector<ErrorRow> rows;
  /// rates[r][v] = {rate_l1, rate_linf} between rows r-1 and r (row 0 empty).
  std::vector<std::vector<NormPair>> rates;

  bool any_failure() const;
  std::string to_text() const;
  std::string to_csv() const;
};

/// log2(coarse / fine).
double convergence_rate(double coarse, double fine);

/// Assembles rates; rows must be sorted with exactly doubling cell counts.
ErrorReport convergence_table(std::vector<ErrorRow> rows);

// ---------------------------------------------------------------------------
// Steady frictionless profiles
// ---------------------------------------------------------------------------

enum class FlowRegime { Subcritical, Supercritical };

/// Depth h with h + q^2/(2 g h^2) = specific_energy on the requested branch.
/// Throws std::domain_error when the energy is below the critical value.
double bernoulli_depth(double q, double specific_energy, FlowRegime regime, double g = kDefaultGravity);

/// Subcritical backwater profile for discharge q_in with depth h_out imposed
/// at the outlet (right end). `bed` holds one elevation per interior cell;
/// the last one is taken as the outlet bed level.
FieldState backwater_profile(double q_in, double h_out, const std::vector<double>& bed, double dx, double x0,
                             int n_ghost, double g = kDefaultGravity);

/// Supercritical profile with depth h_in imposed at the inlet (left end).
FieldState supercritical_profile(double q_in, double h_in, const std::vector<double>& bed, double dx, double x0,
                                 int n_ghost, double g = kDefaultGravity);

}  // namespace sve
