#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sve {

inline constexpr double kDefaultGravity = 9.806;

/// Conserved state Q = (h, q, eta) of one cell: depth [m], unit discharge
/// [m^2/s] and bed elevation [m].
///
/// Plain aggregate so it can be used as a 3-vector inside the schemes
/// (extrapolated and evolved boundary values are CellStates too). Use
/// `CellState::make` when the value comes from outside and must be checked.
struct CellState {
  double h = 0.0;
  double q = 0.0;
  double eta = 0.0;

  /// Throws std::invalid_argument unless h > 0 and all fields are finite.
  static CellState make(double h, double q, double eta);

  double operator[](std::size_t i) const { return i == 0 ? h : (i == 1 ? q : eta); }

  friend bool operator==(const CellState&, const CellState&) = default;
};

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

inline Vec3 as_vec(const CellState& s) { return {s.h, s.q, s.eta}; }
inline CellState from_vec(const Vec3& v) { return {v[0], v[1], v[2]}; }

inline CellState operator+(const CellState& a, const CellState& b) {
  return {a.h + b.h, a.q + b.q, a.eta + b.eta};
}
inline CellState operator-(const CellState& a, const CellState& b) {
  return {a.h - b.h, a.q - b.q, a.eta - b.eta};
}
inline CellState operator*(double s, const CellState& a) { return {s * a.h, s * a.q, s * a.eta}; }

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

Vec3 mat_vec(const Mat3& m, const Vec3& v);

bool is_finite(const CellState& s);

struct PrimitiveState {
  double h;
  double u;
  double eta;
  double c;
  double froude;
};

PrimitiveState to_primitive(const CellState& s, double g = kDefaultGravity);

// Bedload closures. q_b is a function of the velocity only, except
// CounterFlux, which is q_b = -q and exists for the manufactured solution.

struct Grass {
  double a_g;  ///< [s^2/m] (dimension depends on m)
  double m;    ///< exponent, m > 1
};

struct ThresholdGrass {
  double a_g;
  double m;
  double u_cr;  ///< critical velocity [m/s]
};

struct CounterFlux {};
struct Frozen {};

using BedloadClosure = std::variant<Grass, ThresholdGrass, CounterFlux, Frozen>;

/// Throws std::invalid_argument for m <= 1, negative or non-finite coefficients.
void validate(const BedloadClosure& closure);

std::string describe(const BedloadClosure& closure);

/// Critical velocity for the threshold closure, anchored at a reference
/// velocity so that psi(u_ref, h0) equals psi_u.
double critical_velocity(double u_ref, double h0, double psi_u, double a_g, double m);

/// Bedload flux q_b [m^2/s]. For Grass the power is odd: sign(u)|u|^m.
double bedload_flux(double u, const BedloadClosure& closure, double h);

/// psi = dq_b/dq, evaluated from the analytic derivative so that u = 0 is
/// well defined.
double psi(double u, double h, const BedloadClosure& closure);

/// q_b / q as used by the upwind advection flux; zero in the u -> 0 limit.
double bedload_ratio(double u, double h, const BedloadClosure& closure);

/// Advection part of the split flux: (0, q^2/h, q_b).
Vec3 advection_flux_exact(const CellState& s, const BedloadClosure& closure);

/// P = [0 1 0; c^2 0 c^2; 0 0 0] with c^2 = g h.
Mat3 pressure_matrix(const CellState& s, double g = kDefaultGravity);

/// Full coefficient matrix A(Q) of the coupled system.
Mat3 coefficient_matrix(const CellState& s, const BedloadClosure& closure, double g = kDefaultGravity);

struct Eigenvalues3 {
  double lambda1;
  double lambda2;
  double lambda3;
};

/// lambda^3 - 2u lambda^2 + (u^2 - gh(1 + psi)) lambda + u g h psi.
double characteristic_polynomial(double lambda, double u, double h, double psi_value,
                                 double g = kDefaultGravity);

/// Real roots of the characteristic polynomial, ascending. Empty when the
/// cubic has a complex pair (never the case for power-law closures with
/// psi >= 0). Diagnostic only; the splitting scheme does not use it.
std::optional<Eigenvalues3> full_system_eigenvalues(const CellState& s, const BedloadClosure& closure,
                                                    double g = kDefaultGravity);

/// |q|/h + sqrt(g h).
double max_fixed_bed_speed(const CellState& s, double g = kDefaultGravity);

/// Uniformly spaced cells including `n_ghost` ghost cells on each side.
struct FieldState {
  std::vector<CellState> cells;
  double dx = 0.0;
  double x0 = 0.0;
  int n_ghost = 1;
  double t = 0.0;

  /// Builds an interior of `interior.size()` cells; ghosts are copies of the
  /// nearest interior cell until a boundary routine fills them.
  static FieldState make(std::vector<CellState> interior, double dx, double x0, int n_ghost, double t = 0.0);

  std::size_t interior_size() const { return cells.size() - 2 * static_cast<std::size_t>(n_ghost); }
  std::size_t first() const { return static_cast<std::size_t>(n_ghost); }
  std::size_t last() const { return cells.size() - static_cast<std::size_t>(n_ghost); }  // one past

  const CellState& interior(std::size_t i) const { return cells[first() + i]; }
  CellState& interior(std::size_t i) { return cells[first() + i]; }

  /// Center of interior cell i.
  double x_center(std::size_t i) const { return x0 + (static_cast<double>(i) + 0.5) * dx; }
  double length() const { return dx * static_cast<double>(interior_size()); }

  std::vector<CellState> interior_cells() const;
};

/// Throws std::invalid_argument when the FieldState invariants do not hold.
void validate(const FieldState& f);

/// cfl * dx / max speed over interior cells; clipped so that t + dt does not
/// pass `t_limit` when given.
double cfl_timestep(const FieldState& f, double cfl, double g = kDefaultGravity,
                    std::optional<double> t_limit = std::nullopt);

}  // namespace sve
