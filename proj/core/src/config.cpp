#include "sve/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace sve {

namespace {

const std::vector<std::string> kKeys = {
    "preset",   "scheme",     "order",       "closure",   "A_g",        "m",
    "u_cr",     "psi_u",      "g",           "cfl",       "M",          "x_left",
    "x_right",  "T_final",    "max_steps",   "bc_left",   "bc_right",   "output_times",
    "output_interval",        "aeno_tol",    "aeno_eps",  "reconstruction",
    "star",     "ngp",        "zero_slope_retry",         "output_dir", "initial",
    "left",     "right",      "x_disc",      "H0",        "eta_max",    "q_in",
    "h_out",    "froude",     "h_ref",       "spinup_tol", "spinup_max_steps",
    "h0",       "c0",         "T_p",         "L_w",       "ladder",
};

const std::map<std::string, KeyValues>& presets() {
  static const std::map<std::string, KeyValues> table = {
      {"c_property",
       {{"initial", "quiescent_hump"}, {"H0", "1"}, {"eta_max", "0.2"}, {"closure", "grass"}, {"A_g", "0.01"},
        {"m", "1.5"}, {"x_left", "-10"}, {"x_right", "10"}, {"M", "100"}, {"T_final", "1000"},
        {"max_steps", "1000"}, {"bc_left", "reflective"}, {"bc_right", "reflective"}, {"star", "iterative"},
        {"order", "1"}, {"aeno_tol", "1e-4"}, {"aeno_eps", "0.5"}}},
      {"convergence_aeno",
       {{"initial", "manufactured"}, {"h0", "5"}, {"c0", "0.01"}, {"T_p", "10"}, {"L_w", "250"},
        {"closure", "counter_flux"}, {"x_left", "0"}, {"x_right", "500"}, {"M", "1280"},
        {"ladder", "20,40,80,160,320,640,1280"}, {"T_final", "10"}, {"bc_left", "periodic"},
        {"bc_right", "periodic"}, {"order", "2"}, {"aeno_tol", "1e-4"}, {"aeno_eps", "1"}}},
      {"riemann_movable",
       {{"initial", "riemann"}, {"left", "2.0,0.5,3.0"}, {"right", "2.0,4.34297,2.84751"}, {"closure", "grass"},
        {"A_g", "0.01"}, {"m", "3"}, {"x_left", "-15"}, {"x_right", "15"}, {"M", "200"}, {"T_final", "2"},
        {"bc_left", "transmissive"}, {"bc_right", "transmissive"}, {"order", "2"}, {"aeno_tol", "1e-4"},
        {"aeno_eps", "0.5"}}},
      {"riemann_fixed",
       {{"initial", "riemann"}, {"left", "1,0,0"}, {"right", "0.1,0,0"}, {"closure", "grass"}, {"A_g", "0"},
        {"m", "3"}, {"x_left", "-15"}, {"x_right", "15"}, {"M", "100"}, {"T_final", "2"},
        {"bc_left", "transmissive"}, {"bc_right", "transmissive"}, {"order", "2"}, {"aeno_tol", "1e-4"},
        {"aeno_eps", "0.5"}}},
      {"hump_long",
       {{"initial", "backwater_hump"}, {"q_in", "0.6263"}, {"h_out", "1"}, {"eta_max", "0.2"},
        {"closure", "threshold_grass"}, {"A_g", "0.01"}, {"m", "1.5"}, {"psi_u", "1e-3"}, {"x_left", "-10"},
        {"x_right", "10"}, {"M", "100"}, {"T_final", "1000"}, {"output_interval", "100"},
        {"bc_left", "inflow_discharge:0.6263"}, {"bc_right", "fixed_depth:1"}, {"order", "2"},
        {"aeno_tol", "1e-4"}, {"aeno_eps", "0.5"}}},
      {"hump_small",
       {{"initial", "small_hump"}, {"froude", "1.2"}, {"h_ref", "1"}, {"eta_max", "1e-5"},
        {"closure", "threshold_grass"}, {"A_g", "0.01"}, {"m", "1.5"}, {"psi_u", "1e-2"}, {"x_left", "-10"},
        {"x_right", "10"}, {"M", "800"}, {"T_final", "6"}, {"output_interval", "1"}, {"bc_left", "auto"},
        {"bc_right", "auto"}, {"order", "2"}, {"aeno_tol", "1e-4"}, {"aeno_eps", "0.5"}}},
  };
  return table;
}

const std::map<std::string, std::pair<std::string, KeyValues>>& preset_aliases() {
  static const std::map<std::string, std::pair<std::string, KeyValues>> table = {
      {"hump_small_supercritical", {"hump_small", {{"froude", "1.2"}}}},
      {"hump_small_near_critical", {"hump_small", {{"froude", "0.99"}}}},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size() || !std::isfinite(v)) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + value + "'");
  }
}

std::size_t to_count(const std::string& key, const std::string& value) {
  const double v = to_double(key, value);
  if (v < 0.0 || std::floor(v) != v) throw ConfigError("key '" + key + "': expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + value + "'");
}

CellState to_state(const std::string& key, const std::string& value) {
  const auto parts = split(value, ',');
  if (parts.size() != 3) throw ConfigError("key '" + key + "': expected h,q,eta");
  try {
    return CellState::make(to_double(key, parts[0]), to_double(key, parts[1]), to_double(key, parts[2]));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  if (trim(value).empty()) return out;
  for (const auto& p : split(value, ',')) out.push_back(to_double(key, p));
  return out;
}

BoundarySpec to_bc(const std::string& key, const std::string& value) {
  const auto parts = split(value, ':');
  const std::string& kind = parts.front();
  auto arg = [&](std::size_t i) {
    if (parts.size() <= i) throw ConfigError("key '" + key + "': missing value in '" + value + "'");
    return to_double(key, parts[i]);
  };
  if (kind == "transmissive") return Transmissive{};
  if (kind == "reflective") return Reflective{};
  if (kind == "periodic") return Periodic{};
  if (kind == "inflow_discharge") return InflowDischarge{arg(1)};
  if (kind == "fixed_depth") return FixedDepth{arg(1)};
  if (kind == "inflow_state") return InflowState{arg(1), arg(2)};
  throw ConfigError("key '" + key + "': unknown boundary '" + value + "'");
}

// Shortest of 15 or 17 significant digits that reads back exactly.
std::string fmt(double v) {
  for (int digits : {15, 17}) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    if (digits == 17 || std::stod(os.str()) == v) return os.str();
  }
  return {};
}

std::string bc_text(const BoundarySpec& s) {
  struct V {
    std::string operator()(const Transmissive&) const { return "transmissive"; }
    std::string operator()(const Reflective&) const { return "reflective"; }
    std::string operator()(const Periodic&) const { return "periodic"; }
    std::string operator()(const InflowDischarge& b) const { return "inflow_discharge:" + fmt(b.q_in); }
    std::string operator()(const FixedDepth& b) const { return "fixed_depth:" + fmt(b.h_out); }
    std::string operator()(const InflowState& b) const { return "inflow_state:" + fmt(b.h_in) + ":" + fmt(b.q_in); }
  };
  return std::visit(V{}, s);
}

double reference_velocity(const InitialCondition& init, double g) {
  if (const auto* b = std::get_if<BackwaterHumpInitial>(&init)) return b->q_in / b->h_out;
  if (const auto* s = std::get_if<SmallHumpInitial>(&init)) return s->froude * std::sqrt(g * s->h_ref);
  throw ConfigError("key 'psi_u': needs a backwater_hump or small_hump initial condition (or give u_cr)");
}

double reference_depth(const InitialCondition& init) {
  if (const auto* b = std::get_if<BackwaterHumpInitial>(&init)) return b->h_out;
  if (const auto* s = std::get_if<SmallHumpInitial>(&init)) return s->h_ref;
  return 1.0;
}

}  // namespace

SchemeParams RunConfig::scheme_params() const {
  SchemeParams p;
  p.g = g;
  p.closure = closure;
  p.quad = QuadratureRule(ngp);
  p.star_solver = star;
  p.bc = bc;
  return p;
}

SecondOrderOptions RunConfig::second_order_options() const {
  SecondOrderOptions o;
  o.aeno = aeno;
  o.zero_slope_retry = zero_slope_retry;
  return o;
}

RunSchedule RunConfig::schedule() const {
  RunSchedule s;
  s.cfl = cfl;
  s.t_final = t_final;
  s.output_times = output_times;
  if (output_interval > 0.0) {
    const auto n = static_cast<std::size_t>(std::floor(t_final / output_interval + 1e-9));
    for (std::size_t k = 1; k <= n; ++k) s.output_times.push_back(static_cast<double>(k) * output_interval);
  }
  if (max_steps > 0) s.max_steps = max_steps;
  return s;
}

void validate(const RunConfig& cfg) {
  if (cfg.order != 1 && cfg.order != 2) throw ConfigError("key 'order': must be 1 or 2");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw ConfigError("key 'cfl': must lie in (0, 1]");
  if (!(cfg.g > 0.0)) throw ConfigError("key 'g': must be positive");
  if (cfg.cells < 4 + 2 * static_cast<std::size_t>(cfg.n_ghost()))
    throw ConfigError("key 'M': need at least " + std::to_string(4 + 2 * cfg.n_ghost()) + " cells");
  if (!(cfg.x_right > cfg.x_left)) throw ConfigError("key 'x_right': domain must satisfy x_left < x_right");
  if (!(cfg.t_final >= 0.0)) throw ConfigError("key 'T_final': must be >= 0");
  if (cfg.ngp < 1 || cfg.ngp > 3) throw ConfigError("key 'ngp': must be 1, 2 or 3");
  if (!(cfg.aeno.tol > 0.0)) throw ConfigError("key 'aeno_tol': must be positive");
  if (!(cfg.aeno.eps > 0.0)) throw ConfigError("key 'aeno_eps': must be positive");
  if (cfg.output_interval < 0.0) throw ConfigError("key 'output_interval': must be >= 0");
  try {
    validate(cfg.closure);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("key 'closure': ") + e.what());
  }
  try {
    validate(cfg.bc);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("key 'bc_left'/'bc_right': ") + e.what());
  }
  for (std::size_t k = 1; k < cfg.ladder.size(); ++k)
    if (cfg.ladder[k] != 2 * cfg.ladder[k - 1]) throw ConfigError("key 'ladder': grids must double exactly");
  for (std::size_t mcells : cfg.ladder)
    if (mcells < 4 + 2 * static_cast<std::size_t>(cfg.n_ghost())) throw ConfigError("key 'ladder': grid too small");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, kv] : presets()) names.push_back(name);
  for (const auto& [name, alias] : preset_aliases()) names.push_back(name);
  std::sort(names.begin(), names.end());
  return names;
}

std::vector<std::string> known_keys() { return kKeys; }

RunConfig make_preset(const std::string& name) { return resolve_config({{"preset", name}}).config; }

ResolvedConfig resolve_config(const KeyValues& kv) {
  const std::set<std::string> known(kKeys.begin(), kKeys.end());
  std::map<std::string, std::string> user;
  for (const auto& [k, v] : kv) {
    if (!known.count(k)) throw ConfigError("unknown key '" + k + "'");
    user[k] = v;
  }

  // Preset expansion; user keys override.
  std::map<std::string, std::string> merged;
  ResolvedConfig out;
  RunConfig& cfg = out.config;
  if (auto it = user.find("preset"); it != user.end()) {
    std::string name = it->second;
    if (name == "convergence_eno") throw ConfigError("key 'preset': ENO reconstruction is not supported (AENO only)");
    KeyValues extra;
    if (auto a = preset_aliases().find(name); a != preset_aliases().end()) {
      extra = a->second.second;
      name = a->second.first;
    }
    const auto p = presets().find(name);
    if (p == presets().end()) throw ConfigError("key 'preset': unknown preset '" + it->second + "'");
    for (const auto& [k, v] : p->second) merged[k] = v;
    for (const auto& [k, v] : extra) merged[k] = v;
    cfg.preset = it->second;
  }
  for (const auto& [k, v] : user) merged[k] = v;
  if (user.count("M") && !user.count("ladder")) merged.erase("ladder");

  std::vector<std::string> missing;
  for (const char* req : {"initial", "M", "x_left", "x_right", "T_final"})
    if (!merged.count(req)) missing.push_back(req);
  if (!missing.empty()) {
    std::string msg = "missing required keys:";
    for (const auto& k : missing) msg += " " + k;
    throw ConfigError(msg + " (or give a preset)");
  }

  auto has = [&](const std::string& k) { return merged.count(k) > 0; };
  auto get = [&](const std::string& k) { return merged.at(k); };
  auto num = [&](const std::string& k, double def) {
    if (has(k)) return to_double(k, get(k));
    out.defaults_used.push_back(k + " = " + fmt(def) + " (default)");
    return def;
  };
  auto num_quiet = [&](const std::string& k, double def) { return has(k) ? to_double(k, get(k)) : def; };

  if (has("scheme")) {
    const std::string s = get("scheme");
    if (s == "splitting")
      cfg.scheme = SchemeKind::Splitting;
    else if (s == "centered")
      cfg.scheme = SchemeKind::Centered;
    else
      throw ConfigError("key 'scheme': expected splitting or centered");
  }
  cfg.order = static_cast<int>(num("order", 1));
  if (static_cast<double>(cfg.order) != num_quiet("order", 1)) throw ConfigError("key 'order': must be 1 or 2");
  cfg.g = num("g", kDefaultGravity);
  cfg.cfl = num("cfl", 0.9);
  cfg.cells = to_count("M", get("M"));
  cfg.x_left = to_double("x_left", get("x_left"));
  cfg.x_right = to_double("x_right", get("x_right"));
  cfg.t_final = to_double("T_final", get("T_final"));
  cfg.max_steps = has("max_steps") ? to_count("max_steps", get("max_steps")) : 0;
  if (has("output_times")) cfg.output_times = to_list("output_times", get("output_times"));
  cfg.output_interval = num_quiet("output_interval", 0.0);
  cfg.aeno.tol = num("aeno_tol", 1e-4);
  cfg.aeno.eps = num("aeno_eps", 1.0);
  if (has("reconstruction") && get("reconstruction") != "aeno")
    throw ConfigError("key 'reconstruction': only 'aeno' is supported");
  if (has("star")) {
    const std::string s = get("star");
    if (s == "linearized")
      cfg.star = StarSolver::Linearized;
    else if (s == "iterative")
      cfg.star = StarSolver::Iterative;
    else
      throw ConfigError("key 'star': expected linearized or iterative");
  } else {
    out.defaults_used.push_back("star = linearized (default)");
  }
  cfg.ngp = static_cast<int>(num("ngp", 1));
  cfg.zero_slope_retry = has("zero_slope_retry") && to_bool("zero_slope_retry", get("zero_slope_retry"));
  cfg.output_dir = has("output_dir") ? get("output_dir") : "out";
  if (has("ladder")) {
    for (double v : to_list("ladder", get("ladder"))) cfg.ladder.push_back(to_count("ladder", fmt(v)));
  }

  // Initial condition.
  const std::string init = get("initial");
  if (init == "riemann") {
    if (!has("left") || !has("right")) throw ConfigError("key 'left'/'right': required for initial = riemann");
    cfg.initial = RiemannInitial{to_state("left", get("left")), to_state("right", get("right")),
                                 num_quiet("x_disc", 0.0)};
  } else if (init == "quiescent_hump") {
    cfg.initial = QuiescentHumpInitial{num("H0", 1.0), num("eta_max", 0.2)};
  } else if (init == "backwater_hump") {
    cfg.initial = BackwaterHumpInitial{num("q_in", 0.6263), num("h_out", 1.0), num("eta_max", 0.2)};
  } else if (init == "small_hump") {
    SmallHumpInitial s;
    s.froude = num("froude", 1.2);
    s.h_ref = num("h_ref", 1.0);
    s.eta_max = num("eta_max", 1e-5);
    s.spinup_tolerance = num_quiet("spinup_tol", 1e-10);
    s.spinup_max_steps = has("spinup_max_steps") ? to_count("spinup_max_steps", get("spinup_max_steps")) : 400000;
    cfg.initial = s;
  } else if (init == "manufactured") {
    ManufacturedInitial m;
    m.params.h0 = num("h0", 5.0);
    m.params.c0 = num("c0", 0.01);
    m.params.period = num("T_p", 10.0);
    m.params.wavelength = num("L_w", 250.0);
    try {
      m.params.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("key 'h0'/'c0': ") + e.what());
    }
    cfg.initial = m;
  } else {
    throw ConfigError("key 'initial': unknown initial condition '" + init + "'");
  }

  // Closure.
  const std::string closure = has("closure") ? get("closure") : "frozen";
  if (!has("closure")) out.defaults_used.push_back("closure = frozen (default)");
  if (closure == "grass") {
    cfg.closure = Grass{num("A_g", 0.01), num("m", 1.5)};
  } else if (closure == "threshold_grass") {
    const double a_g = num("A_g", 0.01);
    const double m = num("m", 1.5);
    double u_cr = 0.0;
    if (has("u_cr")) {
      u_cr = to_double("u_cr", get("u_cr"));
    } else if (has("psi_u")) {
      if (!(a_g > 0.0) || !(m > 1.0)) throw ConfigError("key 'psi_u': needs A_g > 0 and m > 1");
      u_cr = critical_velocity(reference_velocity(cfg.initial, cfg.g), reference_depth(cfg.initial),
                               to_double("psi_u", get("psi_u")), a_g, m);
    } else {
      throw ConfigError("key 'u_cr': threshold_grass needs u_cr or psi_u");
    }
    cfg.closure = ThresholdGrass{a_g, m, u_cr};
  } else if (closure == "counter_flux") {
    cfg.closure = CounterFlux{};
  } else if (closure == "frozen") {
    cfg.closure = Frozen{};
  } else {
    throw ConfigError("key 'closure': unknown closure '" + closure + "'");
  }

  // Boundary conditions; "auto" picks them from the small-hump flow regime.
  auto bc_side = [&](const std::string& key, bool left) -> BoundarySpec {
    const std::string v = has(key) ? get(key) : "transmissive";
    if (!has(key)) out.defaults_used.push_back(key + " = transmissive (default)");
    if (v != "auto") return to_bc(key, v);
    const auto* s = std::get_if<SmallHumpInitial>(&cfg.initial);
    if (!s) throw ConfigError("key '" + key + "': 'auto' is only defined for initial = small_hump");
    const double q = s->froude * std::sqrt(cfg.g * s->h_ref * s->h_ref * s->h_ref);
    if (s->froude > 1.0) return left ? BoundarySpec{InflowState{s->h_ref, q}} : BoundarySpec{Transmissive{}};
    return left ? BoundarySpec{InflowDischarge{q}} : BoundarySpec{FixedDepth{s->h_ref}};
  };
  cfg.bc.left = bc_side("bc_left", true);
  cfg.bc.right = bc_side("bc_right", false);

  validate(cfg);
  return out;
}

KeyValues parse_config_text(const std::string& text) {
  KeyValues kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config_text(os.str());
}

std::string to_config_text(const RunConfig& cfg) {
  std::ostringstream os;
  os << "scheme = " << (cfg.scheme == SchemeKind::Splitting ? "splitting" : "centered") << '\n';
  os << "order = " << cfg.order << '\n';
  struct ClosureText {
    std::ostream& os;
    void operator()(const Grass& c) const { os << "closure = grass\nA_g = " << fmt(c.a_g) << "\nm = " << fmt(c.m) << '\n'; }
    void operator()(const ThresholdGrass& c) const {
      os << "closure = threshold_grass\nA_g = " << fmt(c.a_g) << "\nm = " << fmt(c.m) << "\nu_cr = " << fmt(c.u_cr)
         << '\n';
    }
    void operator()(const CounterFlux&) const { os << "closure = counter_flux\n"; }
    void operator()(const Frozen&) const { os << "closure = frozen\n"; }
  };
  std::visit(ClosureText{os}, cfg.closure);
  os << "g = " << fmt(cfg.g) << "\ncfl = " << fmt(cfg.cfl) << "\nM = " << cfg.cells << "\nx_left = " << fmt(cfg.x_left)
     << "\nx_right = " << fmt(cfg.x_right) << "\nT_final = " << fmt(cfg.t_final) << '\n';
  if (cfg.max_steps > 0) os << "max_steps = " << cfg.max_steps << '\n';
  os << "bc_left = " << bc_text(cfg.bc.left) << "\nbc_right = " << bc_text(cfg.bc.right) << '\n';
  if (!cfg.output_times.empty()) {
    os << "output_times = ";
    for (std::size_t i = 0; i < cfg.output_times.size(); ++i) os << (i ? "," : "") << fmt(cfg.output_times[i]);
    os << '\n';
  }
  if (cfg.output_interval > 0.0) os << "output_interval = " << fmt(cfg.output_interval) << '\n';
  os << "aeno_tol = " << fmt(cfg.aeno.tol) << "\naeno_eps = " << fmt(cfg.aeno.eps) << '\n';
  os << "star = " << (cfg.star == StarSolver::Linearized ? "linearized" : "iterative") << '\n';
  os << "ngp = " << cfg.ngp << "\nzero_slope_retry = " << (cfg.zero_slope_retry ? "true" : "false") << '\n';
  os << "output_dir = " << cfg.output_dir << '\n';
  auto state = [](const CellState& s) { return fmt(s.h) + "," + fmt(s.q) + "," + fmt(s.eta); };
  struct InitText {
    std::ostream& os;
    decltype(state)& st;
    void operator()(const RiemannInitial& r) const {
      os << "initial = riemann\nleft = " << st(r.left) << "\nright = " << st(r.right) << "\nx_disc = " << fmt(r.x_disc)
         << '\n';
    }
    void operator()(const QuiescentHumpInitial& r) const {
      os << "initial = quiescent_hump\nH0 = " << fmt(r.surface) << "\neta_max = " << fmt(r.eta_max) << '\n';
    }
    void operator()(const BackwaterHumpInitial& r) const {
      os << "initial = backwater_hump\nq_in = " << fmt(r.q_in) << "\nh_out = " << fmt(r.h_out)
         << "\neta_max = " << fmt(r.eta_max) << '\n';
    }
    void operator()(const SmallHumpInitial& r) const {
      os << "initial = small_hump\nfroude = " << fmt(r.froude) << "\nh_ref = " << fmt(r.h_ref)
         << "\neta_max = " << fmt(r.eta_max) << "\nspinup_tol = " << fmt(r.spinup_tolerance)
         << "\nspinup_max_steps = " << r.spinup_max_steps << '\n';
    }
    void operator()(const ManufacturedInitial& r) const {
      os << "initial = manufactured\nh0 = " << fmt(r.params.h0) << "\nc0 = " << fmt(r.params.c0)
         << "\nT_p = " << fmt(r.params.period) << "\nL_w = " << fmt(r.params.wavelength) << '\n';
    }
  };
  std::visit(InitText{os, state}, cfg.initial);
  if (!cfg.ladder.empty()) {
    os << "ladder = ";
    for (std::size_t i = 0; i < cfg.ladder.size(); ++i) os << (i ? "," : "") << cfg.ladder[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace sve
