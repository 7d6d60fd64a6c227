#include "sve/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sve {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

QuadratureRule::QuadratureRule(int n_points) {
  switch (n_points) {
    case 1:
      points_ = {0.5};
      weights_ = {1.0};
      break;
    case 2: {
      const double d = std::sqrt(3.0) / 6.0;
      points_ = {0.5 - d, 0.5 + d};
      weights_ = {0.5, 0.5};
      break;
    }
    case 3: {
      const double d = std::sqrt(15.0) / 10.0;
      points_ = {0.5, 0.5 - d, 0.5 + d};
      weights_ = {8.0 / 18.0, 5.0 / 18.0, 5.0 / 18.0};
      break;
    }
    default:
      throw std::invalid_argument("QuadratureRule: number of points must be 1, 2 or 3");
  }
}

Mat3 path_averaged_pressure_matrix(const CellState& a, const CellState& b, const QuadratureRule& quad, double g) {
  Mat3 acc{};
  for (int j = 0; j < quad.size(); ++j) {
    const auto uj = static_cast<std::size_t>(j);
    const CellState sj = a + quad.points()[uj] * (b - a);
    const Mat3 pj = pressure_matrix(sj, g);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) acc[r][c] += quad.weights()[uj] * pj[r][c];
  }
  return acc;
}

FluctuationPair fluctuations(const CellState& left, const CellState& right, const StarState& star,
                             const QuadratureRule& quad, double g) {
  const CellState star_l = star.left();
  const CellState star_r = star.right();
  const Mat3 p_minus = path_averaged_pressure_matrix(left, star_r, quad, g);
  const Mat3 p_plus = path_averaged_pressure_matrix(star_l, right, quad, g);
  return {mat_vec(p_minus, as_vec(star_r - left)), mat_vec(p_plus, as_vec(right - star_l))};
}

Vec3 compatibility_residual(const CellState& left, const CellState& right, const StarState& star,
                            const QuadratureRule& quad, double g) {
  const FluctuationPair d = fluctuations(left, right, star, quad, g);
  const Vec3 whole = mat_vec(path_averaged_pressure_matrix(left, right, quad, g), as_vec(right - left));
  return (d.d_minus + d.d_plus) - whole;
}

AdvectionFlux advection_flux_first_order(const CellState& left, const CellState& right, double q_star,
                                         const BedloadClosure& closure) {
  const CellState& up = q_star >= 0.0 ? left : right;
  const double u = up.q / up.h;
  return {0.0, q_star * u, q_star * bedload_ratio(u, up.h, closure)};
}

void validate(const BoundaryConditions& bc) {
  const bool lp = std::holds_alternative<Periodic>(bc.left);
  const bool rp = std::holds_alternative<Periodic>(bc.right);
  if (lp != rp) throw std::invalid_argument("periodic boundary must be set on both sides");
  auto check = [](const BoundarySpec& s) {
    std::visit(overloaded{
                   [](const FixedDepth& b) {
                     if (!(b.h_out > 0.0)) throw std::invalid_argument("fixed depth must be positive");
                   },
                   [](const InflowState& b) {
                     if (!(b.h_in > 0.0)) throw std::invalid_argument("inflow depth must be positive");
                   },
                   [](const auto&) {},
               },
               s);
  };
  check(bc.left);
  check(bc.right);
}

std::string describe(const BoundarySpec& spec) {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const Transmissive&) { os << "transmissive"; },
                 [&](const Reflective&) { os << "reflective"; },
                 [&](const InflowDischarge& b) { os << "inflow_discharge(q=" << b.q_in << ")"; },
                 [&](const FixedDepth& b) { os << "fixed_depth(h=" << b.h_out << ")"; },
                 [&](const InflowState& b) { os << "inflow_state(h=" << b.h_in << ", q=" << b.q_in << ")"; },
                 [&](const Periodic&) { os << "periodic"; },
             },
             spec);
  return os.str();
}

void fill_ghosts(FieldState& f, const BoundaryConditions& bc) {
  validate(bc);
  const std::size_t ng = static_cast<std::size_t>(f.n_ghost);
  const std::size_t m = f.interior_size();
  if (m < ng) throw std::invalid_argument("fill_ghosts: fewer interior cells than ghost cells");

  // k = 0 is the ghost adjacent to the boundary; `inner(k)` is its mirror image.
  auto fill_side = [&](const BoundarySpec& spec, auto ghost, auto inner, auto wrap) {
    for (std::size_t k = 0; k < ng; ++k) {
      const CellState& nearest = inner(0);
      CellState& gk = ghost(k);
      std::visit(overloaded{
                     [&](const Transmissive&) { gk = nearest; },
                     [&](const Reflective&) {
                       const CellState& mk = inner(k);
                       gk = {mk.h, -mk.q, mk.eta};
                     },
                     [&](const InflowDischarge& b) { gk = {nearest.h, b.q_in, nearest.eta}; },
                     [&](const FixedDepth& b) { gk = {b.h_out, nearest.q, nearest.eta}; },
                     [&](const InflowState& b) { gk = {b.h_in, b.q_in, nearest.eta}; },
                     [&](const Periodic&) { gk = wrap(k); },
                 },
                 spec);
    }
  };

  const std::size_t first = f.first();
  const std::size_t last = f.last();
  fill_side(
      bc.left, [&](std::size_t k) -> CellState& { return f.cells[first - 1 - k]; },
      [&](std::size_t k) -> const CellState& { return f.cells[first + k]; },
      [&](std::size_t k) { return f.cells[last - 1 - k]; });
  fill_side(
      bc.right, [&](std::size_t k) -> CellState& { return f.cells[last + k]; },
      [&](std::size_t k) -> const CellState& { return f.cells[last - 1 - k]; },
      [&](std::size_t k) { return f.cells[first + k]; });
}

FieldState apply_update(const FieldState& f, double dt, const std::vector<InterfaceTerms>& interfaces,
                        const std::vector<Vec3>& cell_terms) {
  const std::size_t m = f.interior_size();
  if (interfaces.size() != m + 1) throw std::invalid_argument("apply_update: interface count mismatch");
  if (!cell_terms.empty() && cell_terms.size() != m) throw std::invalid_argument("apply_update: cell term mismatch");

  FieldState out = f;
  out.t = f.t + dt;
  const double lambda = dt / f.dx;
  for (std::size_t i = 0; i < m; ++i) {
    const InterfaceTerms& left = interfaces[i];
    const InterfaceTerms& right = interfaces[i + 1];
    const Vec3 q = as_vec(f.interior(i));
    Vec3 next{};
    for (std::size_t c = 0; c < 3; ++c) {
      double v = q[c] - lambda * ((right.d.d_minus[c] + left.d.d_plus[c]) + (right.flux[c] - left.flux[c]));
      if (!cell_terms.empty()) v -= dt * cell_terms[i][c];
      next[c] = v;
    }
    CellState& target = out.interior(i);
    target = from_vec(next);
    if (!(target.h > 0.0) || !is_finite(target)) {
      std::ostringstream os;
      os.precision(17);
      os << "non-positive or non-finite depth h=" << target.h << " in cell " << i << " at t=" << out.t;
      throw PositivityFailure(os.str(), i, out.t);
    }
  }
  return out;
}

FieldState step_first_order(const FieldState& f, double dt, const SchemeParams& p) {
  FieldState work = f;
  fill_ghosts(work, p.bc);
  const std::size_t m = work.interior_size();
  std::vector<InterfaceTerms> interfaces(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    const CellState& left = work.cells[work.first() + j - 1];
    const CellState& right = work.cells[work.first() + j];
    const StarState star = solve_star(p.star_solver, left, right, p.g);
    interfaces[j] = {fluctuations(left, right, star, p.quad, p.g),
                     advection_flux_first_order(left, right, star.q_star, p.closure)};
  }
  return apply_update(work, dt, interfaces, {});
}

Trajectory run_with(const FieldState& f0, const RunSchedule& sched, double g, const StepFunction& step,
                    const StepObserver& observe) {
  if (!(sched.t_final >= 0.0)) throw std::invalid_argument("t_final must be >= 0");
  std::vector<double> stops;
  for (double t : sched.output_times)
    if (t > f0.t && t < sched.t_final) stops.push_back(t);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  stops.push_back(sched.t_final);

  Trajectory traj;
  traj.snapshots.push_back(f0);
  FieldState f = f0;
  if (observe) observe(f, 0);
  for (double stop : stops) {
    if (stop <= f.t) continue;
    while (f.t < stop) {
      if (traj.steps >= sched.max_steps) {
        traj.step_limited = true;
        traj.snapshots.push_back(f);
        return traj;
      }
      double dt = cfl_timestep(f, sched.cfl, g, stop);
      const bool lands = f.t + dt >= stop;
      f = step(f, dt);
      if (lands) f.t = stop;
      ++traj.steps;
      if (observe) observe(f, traj.steps);
    }
    traj.snapshots.push_back(f);
  }
  return traj;
}

Trajectory run_first_order(const FieldState& f0, const SchemeParams& p, const RunSchedule& sched,
                           const StepObserver& observe) {
  return run_with(
      f0, sched, p.g, [&](const FieldState& f, double dt) { return step_first_order(f, dt, p); }, observe);
}

}  // namespace sve
