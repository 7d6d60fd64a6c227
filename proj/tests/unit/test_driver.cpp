#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sve/driver.hpp"

using namespace sve;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sve_driver_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("snapshot CSV layout") {
  const auto f = FieldState::make({{1.0, 2.0, 0.5}, {2.0, -1.0, 0.0}}, 0.5, 0.0, 1);
  const auto csv = snapshot_csv(f, Grass{0.01, 3.0}, 9.806);
  std::istringstream in(csv);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "x,h,q,eta,H,u,Fr,qb");
  CHECK(first.rfind("0.25,1,2,0.5,1.5,2,", 0) == 0);
  CHECK(std::count(first.begin(), first.end(), ',') == 7);
  CHECK(snapshot_name(2.0) == "snapshot_2.csv");
  CHECK(snapshot_name(0.5) == "snapshot_0.5.csv");
}

TEST_CASE("initial fields") {
  SUBCASE("quiescent hump") {
    const auto cfg = make_preset("c_property");
    const auto f = initial_field(cfg);
    CHECK(f.interior_size() == cfg.cells);
    for (std::size_t i = 0; i < f.interior_size(); ++i) {
      CHECK(f.interior(i).h + f.interior(i).eta == Approx(1.0).epsilon(1e-15));
      CHECK(f.interior(i).q == 0.0);
    }
  }
  SUBCASE("Riemann split at the discontinuity") {
    const auto cfg = make_preset("riemann_fixed");
    const auto f = initial_field(cfg);
    CHECK(f.interior(0).h == 1.0);
    CHECK(f.interior(cfg.cells - 1).h == 0.1);
    CHECK(f.n_ghost == 2);
  }
}

TEST_CASE("c_property run stays at rest") {
  auto cfg = make_preset("c_property");
  for (int order : {1, 2}) {
    cfg.order = order;
    const auto r = run(cfg);
    CHECK(r.trajectory.steps == 1000);
    CHECK(r.stats.max_surface_deviation <= 1e-12);
    CHECK(r.stats.max_abs_discharge <= 1e-12);
    CHECK(summary_text(r).find("max_abs_H_minus_H0") != std::string::npos);
  }
}

TEST_CASE("first-order hump peak decays over the snapshots") {
  auto cfg = make_preset("hump_long");
  cfg.order = 1;
  cfg.t_final = 300.0;
  const auto r = run(cfg);
  double prev = 1e9;
  for (const auto& snap : r.trajectory.snapshots) {
    double peak = 0.0;
    for (std::size_t i = 0; i < snap.interior_size(); ++i) peak = std::max(peak, snap.interior(i).eta);
    CHECK(peak < prev);
    prev = peak;
  }
}

TEST_CASE("run_and_report exit codes and outputs") {
  SUBCASE("success writes snapshots and a summary") {
    const auto dir = scratch("ok");
    std::ostringstream out, err;
    const int code = run_and_report({{"preset", "riemann_fixed"}, {"output_dir", dir.string()}}, out, err);
    CHECK(code == kExitOk);
    CHECK(fs::exists(dir / "summary.txt"));
    CHECK(fs::exists(dir / "snapshot_0.csv"));
    CHECK(fs::exists(dir / "snapshot_2.csv"));
    CHECK(fs::exists(dir / "config.txt"));
    fs::remove_all(dir);
  }
  SUBCASE("config errors return 2") {
    std::ostringstream out, err;
    CHECK(run_and_report({{"preset", "riemann_fixed"}, {"bogus", "1"}}, out, err) == kExitConfig);
    CHECK(err.str().find("bogus") != std::string::npos);
  }
  SUBCASE("solver failures return 3 with the payload") {
    const auto dir = scratch("fail");
    std::ostringstream out, err;
    const int code = run_and_report({{"preset", "riemann_fixed"},
                                     {"left", "0.1,-5,0"},
                                     {"right", "0.1,5,0"},
                                     {"output_dir", dir.string()}},
                                    out, err);
    CHECK(code == kExitSolver);
    CHECK(err.str().find("solver failure") != std::string::npos);
    fs::remove_all(dir);
  }
  SUBCASE("convergence run on one grid writes rates.csv") {
    const auto dir = scratch("conv");
    std::ostringstream out, err;
    const int code = run_and_report(
        {{"preset", "convergence_aeno"}, {"M", "20"}, {"T_final", "0.5"}, {"output_dir", dir.string()}}, out, err);
    CHECK(code == kExitOk);
    CHECK(fs::exists(dir / "rates.csv"));
    fs::remove_all(dir);
  }
}

TEST_CASE("identical configs give identical files") {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  std::ostringstream out, err;
  REQUIRE(run_and_report({{"preset", "riemann_movable"}, {"output_dir", a.string()}}, out, err) == kExitOk);
  REQUIRE(run_and_report({{"preset", "riemann_movable"}, {"output_dir", b.string()}}, out, err) == kExitOk);
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    // The summary holds the wall time and config.txt the output directory.
    if (name == "summary.txt" || name == "config.txt") continue;
    CHECK(slurp(entry.path()) == slurp(b / name));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}
