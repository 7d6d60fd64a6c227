#include "sve/model.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

namespace sve {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double signed_pow(double u, double m) { return std::copysign(std::pow(std::abs(u), m), u); }

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string("non-finite ") + what);
}

}  // namespace

CellState CellState::make(double h, double q, double eta) {
  CellState s{h, q, eta};
  if (!is_finite(s)) throw std::invalid_argument("CellState: non-finite field");
  if (!(h > 0.0)) throw std::invalid_argument("CellState: depth must be positive, got " + std::to_string(h));
  return s;
}

bool is_finite(const CellState& s) { return std::isfinite(s.h) && std::isfinite(s.q) && std::isfinite(s.eta); }

Vec3 mat_vec(const Mat3& m, const Vec3& v) {
  Vec3 r{};
  for (std::size_t i = 0; i < 3; ++i) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return r;
}

PrimitiveState to_primitive(const CellState& s, double g) {
  const double u = s.q / s.h;
  const double c = std::sqrt(g * s.h);
  return {s.h, u, s.eta, c, u / c};
}

void validate(const BedloadClosure& closure) {
  std::visit(overloaded{
                 [](const Grass& c) {
                   if (!std::isfinite(c.a_g) || c.a_g < 0.0) throw std::invalid_argument("Grass: A_g must be >= 0");
                   if (!std::isfinite(c.m) || c.m <= 1.0) throw std::invalid_argument("Grass: m must be > 1");
                 },
                 [](const ThresholdGrass& c) {
                   if (!std::isfinite(c.a_g) || c.a_g < 0.0)
                     throw std::invalid_argument("ThresholdGrass: A_g must be >= 0");
                   if (!std::isfinite(c.m) || c.m <= 1.0) throw std::invalid_argument("ThresholdGrass: m must be > 1");
                   if (!std::isfinite(c.u_cr)) throw std::invalid_argument("ThresholdGrass: non-finite u_cr");
                 },
                 [](const CounterFlux&) {},
                 [](const Frozen&) {},
             },
             closure);
}

std::string describe(const BedloadClosure& closure) {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const Grass& c) { os << "grass(A_g=" << c.a_g << ", m=" << c.m << ")"; },
                 [&](const ThresholdGrass& c) {
                   os << "threshold_grass(A_g=" << c.a_g << ", m=" << c.m << ", u_cr=" << c.u_cr << ")";
                 },
                 [&](const CounterFlux&) { os << "counter_flux"; },
                 [&](const Frozen&) { os << "frozen"; },
             },
             closure);
  return os.str();
}

double critical_velocity(double u_ref, double h0, double psi_u, double a_g, double m) {
  return u_ref - std::pow(psi_u * h0 / (m * a_g), 1.0 / (m - 1.0));
}

double bedload_flux(double u, const BedloadClosure& closure, double h) {
  require_finite(u, "velocity");
  return std::visit(overloaded{
                        [&](const Grass& c) { return c.a_g * signed_pow(u, c.m); },
                        [&](const ThresholdGrass& c) { return c.a_g * std::pow(std::max(u - c.u_cr, 0.0), c.m); },
                        [&](const CounterFlux&) { return -u * h; },
                        [](const Frozen&) { return 0.0; },
                    },
                    closure);
}

double psi(double u, double h, const BedloadClosure& closure) {
  require_finite(u, "velocity");
  require_finite(h, "depth");
  return std::visit(overloaded{
                        [&](const Grass& c) { return c.m * c.a_g * std::pow(std::abs(u), c.m - 1.0) / h; },
                        [&](const ThresholdGrass& c) {
                          return c.m * c.a_g * std::pow(std::max(u - c.u_cr, 0.0), c.m - 1.0) / h;
                        },
                        [](const CounterFlux&) { return -1.0; },
                        [](const Frozen&) { return 0.0; },
                    },
                    closure);
}

double bedload_ratio(double u, double h, const BedloadClosure& closure) {
  return std::visit(overloaded{
                        [&](const Grass& c) { return c.a_g * std::pow(std::abs(u), c.m - 1.0) / h; },
                        [&](const ThresholdGrass& c) {
                          if (u == 0.0) return 0.0;
                          return bedload_flux(u, c, h) / (u * h);
                        },
                        [](const CounterFlux&) { return -1.0; },
                        [](const Frozen&) { return 0.0; },
                    },
                    closure);
}

Vec3 advection_flux_exact(const CellState& s, const BedloadClosure& closure) {
  const double u = s.q / s.h;
  return {0.0, s.q * u, bedload_flux(u, closure, s.h)};
}

Mat3 pressure_matrix(const CellState& s, double g) {
  const double c2 = g * s.h;
  return Mat3{Vec3{0.0, 1.0, 0.0}, Vec3{c2, 0.0, c2}, Vec3{0.0, 0.0, 0.0}};
}

Mat3 coefficient_matrix(const CellState& s, const BedloadClosure& closure, double g) {
  const double u = s.q / s.h;
  const double c2 = g * s.h;
  const double p = psi(u, s.h, closure);
  return Mat3{Vec3{0.0, 1.0, 0.0}, Vec3{c2 - u * u, 2.0 * u, c2}, Vec3{-u * p, p, 0.0}};
}

double characteristic_polynomial(double lambda, double u, double h, double psi_value, double g) {
  const double gh = g * h;
  return ((lambda - 2.0 * u) * lambda + (u * u - gh * (1.0 + psi_value))) * lambda + u * gh * psi_value;
}

std::optional<Eigenvalues3> full_system_eigenvalues(const CellState& s, const BedloadClosure& closure, double g) {
  const double u = s.q / s.h;
  const double gh = g * s.h;
  const double ps = psi(u, s.h, closure);

  // Work in units scaled by the celerity so the discriminant test is relative.
  const double scale = std::sqrt(gh) + std::abs(u);
  const double a = -2.0 * u / scale;
  const double b = (u * u - gh * (1.0 + ps)) / (scale * scale);
  const double c = u * gh * ps / (scale * scale * scale);

  const double p = b - a * a / 3.0;
  const double qq = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = 4.0 * p * p * p + 27.0 * qq * qq;  // > 0: one real root
  constexpr double kDiscTol = 1e-12;
  if (disc > kDiscTol) return std::nullopt;

  std::array<double, 3> roots{};
  if (p > -1e-15) {
    roots.fill(-a / 3.0);
  } else {
    const double amp = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * qq / (p * amp), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      roots[static_cast<std::size_t>(k)] = amp * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - a / 3.0;
  }

  for (double& r : roots) {
    for (int it = 0; it < 2; ++it) {
      const double f = ((r + a) * r + b) * r + c;
      const double df = (3.0 * r + 2.0 * a) * r + b;
      if (df == 0.0) break;
      const double step = f / df;
      if (!std::isfinite(step) || std::abs(step) > 1e-6) break;  // near a double root: keep the closed form
      r -= step;
    }
    r *= scale;
  }
  std::sort(roots.begin(), roots.end());
  return Eigenvalues3{roots[0], roots[1], roots[2]};
}

double max_fixed_bed_speed(const CellState& s, double g) { return std::abs(s.q) / s.h + std::sqrt(g * s.h); }

FieldState FieldState::make(std::vector<CellState> interior, double dx, double x0, int n_ghost, double t) {
  if (n_ghost < 1 || n_ghost > 2) throw std::invalid_argument("FieldState: n_ghost must be 1 or 2");
  if (interior.empty()) throw std::invalid_argument("FieldState: no interior cells");
  FieldState f;
  f.dx = dx;
  f.x0 = x0;
  f.n_ghost = n_ghost;
  f.t = t;
  const auto ng = static_cast<std::size_t>(n_ghost);
  f.cells.reserve(interior.size() + 2 * ng);
  for (std::size_t k = 0; k < ng; ++k) f.cells.push_back(interior.front());
  f.cells.insert(f.cells.end(), interior.begin(), interior.end());
  for (std::size_t k = 0; k < ng; ++k) f.cells.push_back(interior.back());
  validate(f);
  return f;
}

std::vector<CellState> FieldState::interior_cells() const {
  return {cells.begin() + static_cast<std::ptrdiff_t>(first()), cells.begin() + static_cast<std::ptrdiff_t>(last())};
}

void validate(const FieldState& f) {
  if (!(f.dx > 0.0) || !std::isfinite(f.dx)) throw std::invalid_argument("FieldState: dx must be positive");
  if (f.n_ghost < 1 || f.n_ghost > 2) throw std::invalid_argument("FieldState: n_ghost must be 1 or 2");
  if (f.cells.size() <= 2 * static_cast<std::size_t>(f.n_ghost))
    throw std::invalid_argument("FieldState: no interior cells");
  for (std::size_t i = f.first(); i < f.last(); ++i) {
    const CellState& s = f.cells[i];
    if (!is_finite(s) || !(s.h > 0.0))
      throw std::invalid_argument("FieldState: invalid interior cell " + std::to_string(i - f.first()));
  }
}

double cfl_timestep(const FieldState& f, double cfl, double g, std::optional<double> t_limit) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
  if (f.interior_size() == 0) throw std::invalid_argument("cfl_timestep: no interior cells");
  double smax = 0.0;
  for (std::size_t i = f.first(); i < f.last(); ++i) smax = std::max(smax, max_fixed_bed_speed(f.cells[i], g));
  double dt = cfl * f.dx / smax;
  if (t_limit && f.t + dt > *t_limit) dt = std::max(*t_limit - f.t, 0.0);
  return dt;
}

}  // namespace sve
