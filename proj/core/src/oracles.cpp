#include "sve/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sve {

// --- manufactured solution --------------------------------------------------

double ManufacturedParams::k() const { return 2.0 * std::numbers::pi / wavelength; }
double ManufacturedParams::omega() const { return 2.0 * std::numbers::pi / period; }

void ManufacturedParams::validate() const {
  if (!(c0 > 0.0) || !(h0 > c0)) throw std::invalid_argument("manufactured solution needs h0 > c0 > 0");
  if (!(period > 0.0) || !(wavelength > 0.0)) throw std::invalid_argument("period and wavelength must be positive");
}

ManufacturedValue manufactured_state(double x, double t, const ManufacturedParams& p) {
  const double s = std::sin(p.k() * x - p.omega() * t);
  const double h = p.h0 + p.c0 * s;
  const double celerity = p.omega() / p.k();
  const double q = celerity * p.h0 + p.c0 * celerity * s;
  return {{h, q, -h}, -q};
}

CellState manufactured_cell_average(double xa, double xb, double t, const ManufacturedParams& p) {
  const double k = p.k();
  const double w = p.omega();
  const double mean_sin = (std::cos(k * xa - w * t) - std::cos(k * xb - w * t)) / (k * (xb - xa));
  const double h = p.h0 + p.c0 * mean_sin;
  const double celerity = w / k;
  return {h, celerity * p.h0 + p.c0 * celerity * mean_sin, -h};
}

// --- exact shallow-water Riemann solver -------------------------------------

ExactSweRiemann::ExactSweRiemann(double h_left, double u_left, double h_right, double u_right, double g)
    : hl_(h_left), ul_(u_left), hr_(h_right), ur_(u_right), g_(g) {
  if (!(hl_ > 0.0) || !(hr_ > 0.0)) throw std::invalid_argument("exact SWE Riemann: depths must be positive");
  const double cl = std::sqrt(g_ * hl_);
  const double cr = std::sqrt(g_ * hr_);
  if (!(2.0 * (cl + cr) > ur_ - ul_))
    throw std::invalid_argument("exact SWE Riemann: data generate a dry region (unsupported)");

  // Two-rarefaction estimate as the Newton start; the depth function is
  // monotone and concave so Newton from here converges.
  const double guess = std::pow(0.5 * (cl + cr) - 0.25 * (ur_ - ul_), 2) / g_;
  double h = std::max(guess, 1e-8);
  for (int it = 0; it < 100; ++it) {
    const double f = depth_function(h, hl_) + depth_function(h, hr_) + ur_ - ul_;
    const double df = depth_derivative(h, hl_) + depth_derivative(h, hr_);
    double next = h - f / df;
    if (!(next > 0.0)) next = 0.5 * h;
    const bool done = std::abs(next - h) <= 1e-15 * h;
    h = next;
    if (done) break;
  }
  h_star_ = h;
  u_star_ = 0.5 * (ul_ + ur_) + 0.5 * (depth_function(h, hr_) - depth_function(h, hl_));
}

double ExactSweRiemann::depth_function(double h, double hk) const {
  if (h > hk) return (h - hk) * std::sqrt(0.5 * g_ * (h + hk) / (h * hk));
  return 2.0 * (std::sqrt(g_ * h) - std::sqrt(g_ * hk));
}

double ExactSweRiemann::depth_derivative(double h, double hk) const {
  if (h > hk) {
    const double ghk = std::sqrt(0.5 * g_ * (h + hk) / (h * hk));
    return ghk - g_ * (h - hk) / (4.0 * h * h * ghk);
  }
  return std::sqrt(g_ / h);
}

double ExactSweRiemann::left_shock_speed() const {
  return ul_ - std::sqrt(g_ * hl_) * std::sqrt(0.5 * (h_star_ + hl_) * h_star_ / (hl_ * hl_));
}

double ExactSweRiemann::right_shock_speed() const {
  return ur_ + std::sqrt(g_ * hr_) * std::sqrt(0.5 * (h_star_ + hr_) * h_star_ / (hr_ * hr_));
}

ExactSweRiemann::Sample ExactSweRiemann::sample(double xi) const {
  const double cl = std::sqrt(g_ * hl_);
  const double cr = std::sqrt(g_ * hr_);
  const double cs = std::sqrt(g_ * h_star_);
  if (xi <= u_star_) {
    if (left_is_shock()) return xi < left_shock_speed() ? Sample{hl_, ul_} : Sample{h_star_, u_star_};
    const double head = ul_ - cl;
    const double tail = u_star_ - cs;
    if (xi <= head) return {hl_, ul_};
    if (xi >= tail) return {h_star_, u_star_};
    const double c = (ul_ + 2.0 * cl - xi) / 3.0;
    return {c * c / g_, (ul_ + 2.0 * cl + 2.0 * xi) / 3.0};
  }
  if (right_is_shock()) return xi > right_shock_speed() ? Sample{hr_, ur_} : Sample{h_star_, u_star_};
  const double head = ur_ + cr;
  const double tail = u_star_ + cs;
  if (xi >= head) return {hr_, ur_};
  if (xi <= tail) return {h_star_, u_star_};
  const double c = (-ur_ + 2.0 * cr + xi) / 3.0;
  return {c * c / g_, (ur_ - 2.0 * cr + 2.0 * xi) / 3.0};
}

// --- centred reference scheme ------------------------------------------------

namespace {

Vec3 physical_flux(const CellState& s, const BedloadClosure& closure, double g) {
  const double u = s.q / s.h;
  return {s.q, s.q * u + 0.5 * g * s.h * s.h, bedload_flux(u, closure, s.h)};
}

}  // namespace

FieldState reference_centered_step(const FieldState& f, double dt, const SchemeParams& p) {
  FieldState work = f;
  fill_ghosts(work, p.bc);
  const std::size_t m = work.interior_size();

  // Conservative flux and the interface non-conservative jump g h_avg d(eta).
  std::vector<Vec3> flux(m + 1);
  std::vector<double> bed_jump(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    const CellState& l = work.cells[work.first() + j - 1];
    const CellState& r = work.cells[work.first() + j];
    const double alpha = std::max(max_fixed_bed_speed(l, p.g), max_fixed_bed_speed(r, p.g));
    const Vec3 fl = physical_flux(l, p.closure, p.g);
    const Vec3 fr = physical_flux(r, p.closure, p.g);
    const double d_eta = r.eta - l.eta;
    const bool moving = fl[2] != 0.0 || fr[2] != 0.0;
    const Vec3 jump{(r.h + r.eta) - (l.h + l.eta), r.q - l.q, moving ? d_eta : 0.0};
    flux[j] = 0.5 * (fl + fr) - 0.5 * alpha * jump;
    bed_jump[j] = p.g * 0.5 * (l.h + r.h) * d_eta;
  }

  std::vector<InterfaceTerms> interfaces(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    // Split the non-conservative jump evenly between the two neighbours.
    const Vec3 half{0.0, 0.5 * bed_jump[j], 0.0};
    interfaces[j] = {FluctuationPair{half, half}, flux[j]};
  }
  return apply_update(work, dt, interfaces, {});
}

Trajectory run_reference(const FieldState& f0, const SchemeParams& p, const RunSchedule& sched) {
  return run_with(f0, sched, p.g, [&](const FieldState& f, double dt) { return reference_centered_step(f, dt, p); });
}

// --- error metrology ---------------------------------------------------------

std::string to_string(Variable v) {
  switch (v) {
    case Variable::H:
      return "h";
    case Variable::Q:
      return "q";
    case Variable::Eta:
      return "eta";
  }
  return "?";
}

ErrorRow error_norms(const FieldState& numerical, const std::vector<CellState>& exact,
                     const std::vector<Variable>& variables) {
  const std::size_t m = numerical.interior_size();
  if (exact.size() != m) throw std::invalid_argument("error_norms: grid mismatch");
  ErrorRow row;
  row.cells = m;
  row.variables = variables;
  for (Variable v : variables) {
    const auto idx = static_cast<std::size_t>(v);
    NormPair n;
    for (std::size_t i = 0; i < m; ++i) {
      const double e = std::abs(numerical.interior(i)[idx] - exact[i][idx]);
      n.l1 += e;
      n.linf = std::max(n.linf, e);
    }
    n.l1 *= numerical.dx;
    row.norms.push_back(n);
  }
  return row;
}

ErrorRow failed_row(std::size_t cells, const std::vector<Variable>& variables, const std::string& reason) {
  ErrorRow row;
  row.cells = cells;
  row.variables = variables;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.norms.assign(variables.size(), NormPair{nan, nan});
  row.failure = reason.empty() ? "failed" : reason;
  return row;
}

bool ErrorReport::any_failure() const {
  return std::any_of(rows.begin(), rows.end(), [](const ErrorRow& r) { return !r.failure.empty(); });
}

double convergence_rate(double coarse, double fine) { return std::log2(coarse / fine); }

ErrorReport convergence_table(std::vector<ErrorRow> rows) {
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].cells != 2 * rows[r - 1].cells)
      throw std::invalid_argument("convergence_table: grid sequence must double exactly");
    if (rows[r].variables != rows[0].variables)
      throw std::invalid_argument("convergence_table: variable selection differs between rows");
  }
  ErrorReport report;
  report.rows = std::move(rows);
  report.rates.resize(report.rows.size());
  for (std::size_t r = 1; r < report.rows.size(); ++r) {
    for (std::size_t v = 0; v < report.rows[r].norms.size(); ++v) {
      const NormPair& a = report.rows[r - 1].norms[v];
      const NormPair& b = report.rows[r].norms[v];
      report.rates[r].push_back({convergence_rate(a.l1, b.l1), convergence_rate(a.linf, b.linf)});
    }
  }
  return report;
}

std::string ErrorReport::to_text() const {
  std::ostringstream os;
  if (rows.empty()) return {};
  os << std::setw(6) << "M";
  for (Variable v : rows.front().variables) {
    const std::string n = to_string(v);
    os << std::setw(12) << ("L1(" + n + ")") << std::setw(7) << "O" << std::setw(12) << ("Linf(" + n + ")")
       << std::setw(7) << "O";
  }
  os << std::setw(10) << "CPU[s]" << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    os << std::setw(6) << rows[r].cells;
    for (std::size_t v = 0; v < rows[r].norms.size(); ++v) {
      os << std::scientific << std::setprecision(2) << std::setw(12) << rows[r].norms[v].l1;
      if (r == 0)
        os << std::setw(7) << "-";
      else
        os << std::fixed << std::setprecision(2) << std::setw(7) << rates[r][v].l1;
      os << std::scientific << std::setprecision(2) << std::setw(12) << rows[r].norms[v].linf;
      if (r == 0)
        os << std::setw(7) << "-";
      else
        os << std::fixed << std::setprecision(2) << std::setw(7) << rates[r][v].linf;
    }
    os << std::fixed << std::setprecision(2) << std::setw(10) << rows[r].cpu_seconds << '\n';
  }
  for (const ErrorRow& row : rows)
    if (!row.failure.empty()) os << "M=" << row.cells << " failed: " << row.failure << '\n';
  return os.str();
}

std::string ErrorReport::to_csv() const {
  std::ostringstream os;
  if (rows.empty()) return {};
  os << "M";
  for (Variable v : rows.front().variables) {
    const std::string n = to_string(v);
    os << ",L1_" << n << ",rate_L1_" << n << ",Linf_" << n << ",rate_Linf_" << n;
  }
  os << ",cpu_s\n";
  os << std::setprecision(17);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    os << rows[r].cells;
    for (std::size_t v = 0; v < rows[r].norms.size(); ++v) {
      os << ',' << rows[r].norms[v].l1 << ',';
      if (r > 0) os << rates[r][v].l1;
      os << ',' << rows[r].norms[v].linf << ',';
      if (r > 0) os << rates[r][v].linf;
    }
    os << ',' << rows[r].cpu_seconds << '\n';
  }
  return os.str();
}

// --- steady profiles ---------------------------------------------------------

double bernoulli_depth(double q, double specific_energy, FlowRegime regime, double g) {
  if (q == 0.0) {
    if (!(specific_energy > 0.0)) throw std::domain_error("bernoulli_depth: non-positive energy");
    return specific_energy;
  }
  const double a = q * q / (2.0 * g);
  const double hc = std::cbrt(q * q / g);
  const double e_crit = hc + a / (hc * hc);
  if (specific_energy < e_crit) throw std::domain_error("bernoulli_depth: energy below critical (choked flow)");

  auto phi = [&](double h) { return h + a / (h * h) - specific_energy; };
  auto dphi = [&](double h) { return 1.0 - 2.0 * a / (h * h * h); };
  // phi is convex; starting on the outer side of the root Newton is monotone.
  double h = regime == FlowRegime::Subcritical ? specific_energy : std::sqrt(a / specific_energy);
  for (int it = 0; it < 200; ++it) {
    const double d = dphi(h);
    if (d == 0.0) break;
    const double next = h - phi(h) / d;
    const bool done = std::abs(next - h) <= 1e-15 * h;
    h = next;
    if (done) break;
  }
  if (regime == FlowRegime::Subcritical ? h < hc : h > hc) h = hc;  // exactly critical energy
  return h;
}

namespace {

FieldState profile(double q, double energy, FlowRegime regime, const std::vector<double>& bed, double dx, double x0,
                   int n_ghost, double g) {
  std::vector<CellState> cells;
  cells.reserve(bed.size());
  for (double eta : bed) cells.push_back({bernoulli_depth(q, energy - eta, regime, g), q, eta});
  return FieldState::make(std::move(cells), dx, x0, n_ghost);
}

}  // namespace

FieldState backwater_profile(double q_in, double h_out, const std::vector<double>& bed, double dx, double x0,
                             int n_ghost, double g) {
  if (bed.empty()) throw std::invalid_argument("backwater_profile: empty bed");
  if (!(h_out > 0.0)) throw std::invalid_argument("backwater_profile: h_out must be positive");
  if (q_in * q_in / (g * h_out * h_out * h_out) >= 1.0)
    throw std::domain_error("backwater_profile: outlet state is not subcritical");
  const double energy = h_out + bed.back() + q_in * q_in / (2.0 * g * h_out * h_out);
  return profile(q_in, energy, FlowRegime::Subcritical, bed, dx, x0, n_ghost, g);
}

FieldState supercritical_profile(double q_in, double h_in, const std::vector<double>& bed, double dx, double x0,
                                 int n_ghost, double g) {
  if (bed.empty()) throw std::invalid_argument("supercritical_profile: empty bed");
  if (!(h_in > 0.0)) throw std::invalid_argument("supercritical_profile: h_in must be positive");
  if (q_in * q_in / (g * h_in * h_in * h_in) <= 1.0)
    throw std::domain_error("supercritical_profile: inlet state is not supercritical");
  const double energy = h_in + bed.front() + q_in * q_in / (2.0 * g * h_in * h_in);
  return profile(q_in, energy, FlowRegime::Supercritical, bed, dx, x0, n_ghost, g);
}

}  // namespace sve
