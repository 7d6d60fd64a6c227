#include "sve/ader2.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sve {

namespace {

[[noreturn]] void positivity(const char* where, const CellState& s, std::size_t cell) {
  std::ostringstream os;
  os.precision(17);
  os << where << ": non-positive depth h=" << s.h << " in cell " << cell;
  throw PositivityFailure(os.str(), cell, 0.0);
}

}  // namespace

void validate(const AenoParams& p) {
  if (!(p.tol > 0.0)) throw std::invalid_argument("AENO tol must be positive");
  if (!(p.eps > 0.0)) throw std::invalid_argument("AENO eps must be positive");
}

double aeno_beta(double r, double eps) { return (1.0 - r) / std::sqrt(eps * eps + (r - 1.0) * (r - 1.0)); }

SlopeVector aeno_slope(const CellState& prev, const CellState& curr, const CellState& next, double dx,
                       const AenoParams& params) {
  const Vec3 a = as_vec(prev);
  const Vec3 b = as_vec(curr);
  const Vec3 c = as_vec(next);
  SlopeVector slope{};
  for (std::size_t k = 0; k < 3; ++k) {
    const double dm = (b[k] - a[k]) / dx;
    const double dp = (c[k] - b[k]) / dx;
    const double r = std::abs(dm) / (std::abs(dp) + params.tol);
    const double beta = aeno_beta(r, params.eps);
    slope[k] = 0.5 * (1.0 + beta) * dm + 0.5 * (1.0 - beta) * dp;
  }
  return slope;
}

EvolvedBoundaryPair extrapolate_and_evolve(const CellState& q, const SlopeVector& slope, double dx, double dt,
                                           const BedloadClosure& closure, double g, std::size_t cell) {
  const CellState half = 0.5 * dx * from_vec(slope);
  const CellState ql = q - half;
  const CellState qr = q + half;
  if (!(ql.h > 0.0)) positivity("boundary extrapolation", ql, cell);
  if (!(qr.h > 0.0)) positivity("boundary extrapolation", qr, cell);

  const Vec3 grad = (1.0 / dx) * (advection_flux_exact(qr, closure) - advection_flux_exact(ql, closure));
  const Vec3 pl = mat_vec(pressure_matrix(ql, g), slope);
  const Vec3 pr = mat_vec(pressure_matrix(qr, g), slope);

  EvolvedBoundaryPair out{from_vec(as_vec(ql) - 0.5 * dt * grad - 0.5 * dt * pl),
                          from_vec(as_vec(qr) - 0.5 * dt * grad - 0.5 * dt * pr)};
  if (!(out.q_tilde_L.h > 0.0) || !is_finite(out.q_tilde_L)) positivity("half-step evolution", out.q_tilde_L, cell);
  if (!(out.q_tilde_R.h > 0.0) || !is_finite(out.q_tilde_R)) positivity("half-step evolution", out.q_tilde_R, cell);
  return out;
}

AdvectionFlux advection_flux_second_order(const CellState& q_tilde_R_of_i, const CellState& q_tilde_L_of_next,
                                          double q_star, const BedloadClosure& closure) {
  return advection_flux_first_order(q_tilde_R_of_i, q_tilde_L_of_next, q_star, closure);
}

Vec3 h_i_term(const CellState& q, const SlopeVector& slope, const EvolvedBoundaryPair& pair, double dx, double dt,
              double g, std::size_t cell) {
  const CellState center = from_vec(as_vec(q) - 0.5 * dt * mat_vec(pressure_matrix(q, g), slope));
  if (!(center.h > 0.0)) positivity("cell-centre evolution", center, cell);
  return mat_vec(pressure_matrix(center, g), (1.0 / dx) * as_vec(pair.q_tilde_R - pair.q_tilde_L));
}

FieldState step_second_order(const FieldState& f, double dt, const SchemeParams& p, const SecondOrderOptions& opts) {
  if (f.n_ghost < 2) throw std::invalid_argument("step_second_order: needs two ghost cells per side");
  validate(opts.aeno);
  FieldState work = f;
  fill_ghosts(work, p.bc);

  const std::size_t m = work.interior_size();
  const std::size_t first = work.first();
  // Cells first-1 .. first+m: the interior plus one ghost per side.
  std::vector<SlopeVector> slopes(m + 2);
  std::vector<EvolvedBoundaryPair> evolved(m + 2);
  for (std::size_t k = 0; k < m + 2; ++k) {
    const std::size_t c = first - 1 + k;
    const std::size_t cell_index = k == 0 ? 0 : k - 1;
    slopes[k] = opts.zero_slopes ? SlopeVector{}
                                 : aeno_slope(work.cells[c - 1], work.cells[c], work.cells[c + 1], work.dx, opts.aeno);
    try {
      evolved[k] = extrapolate_and_evolve(work.cells[c], slopes[k], work.dx, dt, p.closure, p.g, cell_index);
    } catch (const PositivityFailure& e) {
      if (!opts.zero_slope_retry) throw PositivityFailure(e.what(), e.cell(), f.t + dt);
      slopes[k] = SlopeVector{};
      evolved[k] = {work.cells[c], work.cells[c]};
    }
  }

  std::vector<InterfaceTerms> interfaces(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    const CellState& left = evolved[j].q_tilde_R;
    const CellState& right = evolved[j + 1].q_tilde_L;
    const StarState star = grp_star(left, right, p.star_solver, p.g);
    interfaces[j] = {fluctuations(left, right, star, p.quad, p.g),
                     advection_flux_second_order(left, right, star.q_star, p.closure)};
  }

  std::vector<Vec3> cell_terms(m);
  for (std::size_t i = 0; i < m; ++i)
    cell_terms[i] = h_i_term(work.cells[first + i], slopes[i + 1], evolved[i + 1], work.dx, dt, p.g, i);

  return apply_update(work, dt, interfaces, cell_terms);
}

Trajectory run_second_order(const FieldState& f0, const SchemeParams& p, const SecondOrderOptions& opts,
                            const RunSchedule& sched, const StepObserver& observe) {
  return run_with(
      f0, sched, p.g, [&](const FieldState& f, double dt) { return step_second_order(f, dt, p, opts); }, observe);
}

}  // namespace sve
