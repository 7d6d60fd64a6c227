#include <doctest.h>

#include <algorithm>

#include "sve/config.hpp"

using namespace sve;
using doctest::Approx;

namespace {

std::string error_of(const KeyValues& kv) {
  try {
    (void)resolve_config(kv);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("riemann_fixed preset") {
  const auto cfg = make_preset("riemann_fixed");
  CHECK(cfg.cells == 100);
  CHECK(cfg.x_right - cfg.x_left == Approx(30.0));
  CHECK(cfg.x_left == Approx(-15.0));
  CHECK(cfg.t_final == Approx(2.0));
  CHECK(cfg.cfl == Approx(0.9));
  const auto* grass = std::get_if<Grass>(&cfg.closure);
  REQUIRE(grass);
  CHECK(grass->a_g == 0.0);
  const auto* init = std::get_if<RiemannInitial>(&cfg.initial);
  REQUIRE(init);
  CHECK(init->left == CellState{1.0, 0.0, 0.0});
  CHECK(init->right == CellState{0.1, 0.0, 0.0});
}

TEST_CASE("riemann_movable preset") {
  const auto cfg = make_preset("riemann_movable");
  CHECK(cfg.cells == 200);
  const auto& init = std::get<RiemannInitial>(cfg.initial);
  CHECK(init.left == CellState{2.0, 0.5, 3.0});
  CHECK(init.right == CellState{2.0, 4.34297, 2.84751});
  const auto& g = std::get<Grass>(cfg.closure);
  CHECK(g.a_g == 0.01);
  CHECK(g.m == 3.0);
}

TEST_CASE("hump presets") {
  const auto longrun = make_preset("hump_long");
  CHECK(longrun.cells == 100);
  CHECK(longrun.t_final == 1000.0);
  CHECK(longrun.x_left == -10.0);
  CHECK(longrun.x_right == 10.0);
  const auto& t = std::get<ThresholdGrass>(longrun.closure);
  CHECK(t.a_g == 0.01);
  CHECK(t.m == 1.5);
  const auto& b = std::get<BackwaterHumpInitial>(longrun.initial);
  CHECK(b.q_in == 0.6263);
  CHECK(b.h_out == 1.0);
  CHECK(b.eta_max == 0.2);
  CHECK(std::holds_alternative<InflowDischarge>(longrun.bc.left));
  CHECK(std::holds_alternative<FixedDepth>(longrun.bc.right));

  const auto sup = make_preset("hump_small_supercritical");
  CHECK(std::get<SmallHumpInitial>(sup.initial).froude == 1.2);
  CHECK(std::get<SmallHumpInitial>(sup.initial).eta_max == 1e-5);
  CHECK(std::holds_alternative<InflowState>(sup.bc.left));
  CHECK(std::holds_alternative<Transmissive>(sup.bc.right));
  CHECK(sup.t_final == 6.0);

  const auto sub = make_preset("hump_small_near_critical");
  CHECK(std::get<SmallHumpInitial>(sub.initial).froude == 0.99);
  CHECK(std::holds_alternative<InflowDischarge>(sub.bc.left));
  CHECK(std::holds_alternative<FixedDepth>(sub.bc.right));
}

TEST_CASE("convergence preset with a grid override") {
  const auto full = make_preset("convergence_aeno");
  CHECK(full.ladder == std::vector<std::size_t>{20, 40, 80, 160, 320, 640, 1280});
  CHECK(full.t_final == 10.0);
  CHECK(full.x_right - full.x_left == 500.0);
  CHECK(full.aeno.eps == 1.0);
  CHECK(full.aeno.tol == 1e-4);
  CHECK(std::holds_alternative<CounterFlux>(full.closure));

  const auto one = resolve_config({{"preset", "convergence_aeno"}, {"M", "80"}}).config;
  CHECK(one.cells == 80);
  CHECK(one.ladder.empty());
  CHECK(one.t_final == 10.0);
}

TEST_CASE("config errors") {
  const std::string empty = error_of({});
  for (const char* key : {"initial", "M", "x_left", "x_right", "T_final"})
    CHECK(empty.find(key) != std::string::npos);

  CHECK(error_of({{"preset", "c_property"}, {"bogus", "1"}}).find("bogus") != std::string::npos);
  CHECK(error_of({{"preset", "nope"}}).find("preset") != std::string::npos);
  CHECK(error_of({{"preset", "convergence_eno"}}).find("ENO") != std::string::npos);
  CHECK(error_of({{"preset", "c_property"}, {"cfl", "1.5"}}).find("cfl") != std::string::npos);
  CHECK(error_of({{"preset", "c_property"}, {"M", "5"}}).find("'M'") != std::string::npos);
  CHECK(error_of({{"preset", "c_property"}, {"order", "3"}}).find("order") != std::string::npos);
  CHECK(error_of({{"preset", "c_property"}, {"bc_left", "periodic"}}).find("bc_") != std::string::npos);
  CHECK(error_of({{"preset", "c_property"}, {"ngp", "4"}}).find("ngp") != std::string::npos);
  CHECK(error_of({{"preset", "c_property"}, {"M", "abc"}}).find("'M'") != std::string::npos);
}

TEST_CASE("defaults are reported") {
  const auto r = resolve_config({{"initial", "riemann"}, {"left", "1,0,0"}, {"right", "0.5,0,0"}, {"M", "50"},
                                 {"x_left", "-1"}, {"x_right", "1"}, {"T_final", "0.1"}});
  CHECK(!r.defaults_used.empty());
  CHECK(r.config.cfl == 0.9);
  CHECK(r.config.g == 9.806);
  const bool mentions_cfl = std::any_of(r.defaults_used.begin(), r.defaults_used.end(),
                                        [](const std::string& s) { return s.find("cfl") != std::string::npos; });
  CHECK(mentions_cfl);
}

TEST_CASE("config text round trip") {
  for (const auto& name : preset_names()) {
    const auto cfg = make_preset(name);
    const auto text = to_config_text(cfg);
    const auto back = resolve_config(parse_config_text(text)).config;
    CHECK(to_config_text(back) == text);
  }
}

TEST_CASE("config text parsing") {
  const auto kv = parse_config_text("# comment\npreset = c_property  # trailing\n\n  M=40\n");
  REQUIRE(kv.size() == 2);
  CHECK(kv[0] == std::pair<std::string, std::string>{"preset", "c_property"});
  CHECK(kv[1] == std::pair<std::string, std::string>{"M", "40"});
  CHECK_THROWS_AS(parse_config_text("no equals sign here"), ConfigError);
}

TEST_CASE("schedule expands the output interval") {
  auto cfg = make_preset("hump_long");
  const auto s = cfg.schedule();
  CHECK(s.t_final == 1000.0);
  REQUIRE(!s.output_times.empty());
  CHECK(s.output_times.front() == Approx(100.0));
  CHECK(s.output_times.size() >= 9);
  CHECK(s.output_times.back() <= s.t_final);
}
