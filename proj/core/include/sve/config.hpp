#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sve/ader2.hpp"
#include "sve/model.hpp"
#include "sve/oracles.hpp"
#include "sve/splitting.hpp"

namespace sve {

/// Invalid or incomplete configuration. The message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Initial conditions a run can start from.

struct RiemannInitial {
  CellState left;
  CellState right;
  double x_disc = 0.0;
};

/// Water at rest with free surface H0 over eta_max exp(-x^2).
struct QuiescentHumpInitial {
  double surface = 1.0;
  double eta_max = 0.2;
};

/// Frictionless backwater profile over eta_max exp(-x^2) for discharge
/// q_in and outlet depth h_out.
struct BackwaterHumpInitial {
  double q_in = 0.6263;
  double h_out = 1.0;
  double eta_max = 0.2;
};

/// Small hump under a steady flow of given Froude number at depth h_ref. The
/// flow is first relaxed to a steady state of the fixed-bed scheme.
struct SmallHumpInitial {
  double froude = 1.2;
  double h_ref = 1.0;
  double eta_max = 1e-5;
  double spinup_tolerance = 1e-10;
  std::size_t spinup_max_steps = 400000;
};

struct ManufacturedInitial {
  ManufacturedParams params;
};

using InitialCondition =
    std::variant<RiemannInitial, QuiescentHumpInitial, BackwaterHumpInitial, SmallHumpInitial, ManufacturedInitial>;

enum class SchemeKind { Splitting, Centered };

struct RunConfig {
  std::string preset = "custom";
  SchemeKind scheme = SchemeKind::Splitting;
  int order = 1;
  BedloadClosure closure = Frozen{};
  double g = kDefaultGravity;
  double cfl = 0.9;
  std::size_t cells = 0;
  double x_left = 0.0;
  double x_right = 0.0;
  double t_final = 0.0;
  std::size_t max_steps = 0;  ///< 0: unlimited
  BoundaryConditions bc{};
  std::vector<double> output_times;
  double output_interval = 0.0;
  AenoParams aeno{};
  StarSolver star = StarSolver::Linearized;
  int ngp = 1;
  bool zero_slope_retry = false;
  std::string output_dir = "out";
  InitialCondition initial = QuiescentHumpInitial{};
  /// Grid ladder for manufactured-solution runs; empty: single grid `cells`.
  std::vector<std::size_t> ladder;

  int n_ghost() const { return order == 2 ? 2 : 1; }
  double dx() const { return (x_right - x_left) / static_cast<double>(cells); }
  SchemeParams scheme_params() const;
  SecondOrderOptions second_order_options() const;
  RunSchedule schedule() const;
};

/// Throws ConfigError when an invariant does not hold.
void validate(const RunConfig& cfg);

std::vector<std::string> preset_names();

/// Fully populated configuration of a named preset; throws ConfigError for
/// unknown names.
RunConfig make_preset(const std::string& name);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct ResolvedConfig {
  RunConfig config;
  std::vector<std::string> defaults_used;  ///< human-readable notes
};

/// Builds a configuration from key=value pairs. `preset` (if present) is
/// expanded first and the remaining keys override it. Unknown keys and
/// missing required keys are ConfigErrors.
ResolvedConfig resolve_config(const KeyValues& kv);

/// Parses a flat `key = value` file ('#' starts a comment).
KeyValues read_config_file(const std::string& path);
KeyValues parse_config_text(const std::string& text);

/// Writes `cfg` back as key=value text that resolve_config accepts.
std::string to_config_text(const RunConfig& cfg);

std::vector<std::string> known_keys();

}  // namespace sve
