#include "sve/pressure_riemann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sve {

namespace {

constexpr double kDepthFloor = 1e-10;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double pow15(double h) { return h * std::sqrt(h); }

// Grouped so that h*_L == h_L and h*_R == h_R give exactly the mean discharge.
double star_discharge(const CellState& left, const CellState& right, double hsl, double hsr, double g) {
  return 0.5 * (left.q + right.q) +
         std::sqrt(g) / 3.0 * ((pow15(left.h) - pow15(hsl)) - (pow15(right.h) - pow15(hsr)));
}

[[noreturn]] void fail(const std::string& msg, const CellState& left, const CellState& right) {
  std::ostringstream os;
  os.precision(17);
  os << msg << " (left h=" << left.h << " q=" << left.q << " eta=" << left.eta << "; right h=" << right.h
     << " q=" << right.q << " eta=" << right.eta << ")";
  throw StarFailure(os.str(), left, right);
}

void check_inputs(const CellState& left, const CellState& right) {
  if (!is_finite(left) || !is_finite(right) || !(left.h > 0.0) || !(right.h > 0.0))
    fail("star solver: invalid input states", left, right);
}

}  // namespace

RiemannInputs RiemannInputs::make(const CellState& left, const CellState& right, double g) {
  const double k = 1.5 / std::sqrt(g) * (left.q - right.q) + pow15(left.h) + pow15(right.h);
  return {left, right, k, right.eta - left.eta};
}

StarState star_state_linearized(const CellState& left, const CellState& right, double g) {
  check_inputs(left, right);
  const RiemannInputs in = RiemannInputs::make(left, right, g);
  const double base = 0.75 / std::sqrt(g) * (left.q - right.q) + 0.5 * (pow15(left.h) + pow15(right.h));
  if (!(base > 0.0)) fail("linearized star solver: no positive reference depth", left, right);
  const double h_hat = std::cbrt(base * base);
  const double hsl = 0.5 * (in.k / std::sqrt(h_hat) + in.delta_eta);
  const double hsr = hsl - in.delta_eta;
  if (!(hsl > 0.0) || !(hsr > 0.0)) fail("linearized star solver: non-positive star depth", left, right);
  return {hsl, hsr, star_discharge(left, right, hsl, hsr, g), left.eta, right.eta};
}

StarState star_state_iterative(const CellState& left, const CellState& right, double g, IterativeOptions opts) {
  check_inputs(left, right);
  const RiemannInputs in = RiemannInputs::make(left, right, g);
  const double de = in.delta_eta;
  const double k = in.k;
  const double tol = opts.tol * std::max(1.0, std::abs(k));
  const double lower = std::max(de, 0.0);

  auto f = [&](double h) { return pow15(h) + pow15(h - de) - k; };
  auto df = [&](double h) { return 1.5 * (std::sqrt(h) + std::sqrt(h - de)); };
  auto finish = [&](double hsl) {
    const double hsr = hsl - de;
    if (!(hsl > 0.0) || !(hsr > 0.0)) fail("iterative star solver: non-positive star depth", left, right);
    return StarState{hsl, hsr, star_discharge(left, right, hsl, hsr, g), left.eta, right.eta};
  };

  if (!(k > std::pow(std::abs(de), 1.5))) fail("iterative star solver: no root with positive depths", left, right);

  // Data that already satisfy the invariant system (lake at rest, or uniform
  // discharge under a flat surface) are their own star state.
  if (std::abs((left.h - de) - right.h) <= 8.0 * kEps * std::max(left.h, right.h) && std::abs(f(left.h)) <= tol)
    return {left.h, right.h, star_discharge(left, right, left.h, right.h, g), left.eta, right.eta};

  const double base = 0.75 / std::sqrt(g) * (left.q - right.q) + 0.5 * (pow15(left.h) + pow15(right.h));
  const double h_hat = base > 0.0 ? std::cbrt(base * base) : 0.0;
  double h = std::max(h_hat + lower, lower + 1e-12);

  // Newton to full precision; the residual test alone would leave ~tol/f' in h.
  for (int it = 0; it < opts.max_iter; ++it) {
    const double step = f(h) / df(h);
    double next = h - step;
    if (!(next > lower)) next = 0.5 * (h + lower);
    const bool converged = std::abs(next - h) <= 4.0 * kEps * h;
    h = next;
    if (converged) break;
  }
  if (std::isfinite(h) && h > lower && std::abs(f(h)) <= tol) return finish(h);

  // Bracketed bisection: f is increasing on (lower, inf) and f(K^(2/3)) >= 0.
  double lo = lower + kDepthFloor;
  double hi = std::max(std::cbrt(k * k), lo);
  if (f(lo) > 0.0 || f(hi) < 0.0) fail("iterative star solver: root not bracketed", left, right);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= tol) return finish(mid);
    (fm < 0.0 ? lo : hi) = mid;
    if (hi - lo <= 1e-15 * hi) break;
  }
  if (lo <= lower + kDepthFloor) fail("iterative star solver: depth floor reached", left, right);
  return finish(0.5 * (lo + hi));
}

StarState solve_star(StarSolver solver, const CellState& left, const CellState& right, double g) {
  return solver == StarSolver::Iterative ? star_state_iterative(left, right, g) : star_state_linearized(left, right, g);
}

InvariantResiduals riemann_invariant_residuals(const CellState& left, const CellState& right, const StarState& star,
                                               double g) {
  const double a = 2.0 / 3.0 * std::sqrt(g);
  return {std::abs(a * pow15(left.h) + left.q - a * pow15(star.h_star_L) - star.q_star),
          std::abs(a * pow15(right.h) - right.q - a * pow15(star.h_star_R) + star.q_star),
          std::abs((star.h_star_L + star.eta_L) - (star.h_star_R + star.eta_R))};
}

}  // namespace sve
