#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sve/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Splitting ADER solver for bedload morphodynamics"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "run a preset or a config file");
  std::string preset;
  std::string config_file;
  std::optional<int> order;
  std::optional<std::size_t> cells;
  std::optional<double> cfl;
  std::optional<std::string> out_dir;
  std::optional<std::string> star;
  std::optional<int> ngp;
  solve->add_option("--preset", preset, "named preset");
  solve->add_option("--config", config_file, "key = value file; flags override it");
  solve->add_option("--order", order, "scheme order")->check(CLI::IsMember({1, 2}));
  solve->add_option("--M", cells, "number of cells");
  solve->add_option("--cfl", cfl, "CFL number");
  solve->add_option("--out", out_dir, "output directory");
  solve->add_option("--star", star, "star solver")->check(CLI::IsMember({"linearized", "iterative"}));
  solve->add_option("--ngp", ngp, "Gauss points per path")->check(CLI::IsMember({1, 2, 3}));

  auto* list = app.add_subcommand("presets", "list preset names");
  auto* show = app.add_subcommand("show", "print the resolved configuration of a preset");
  std::string show_name;
  show->add_option("name", show_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : sve::kExitConfig;
  }

  if (*list) {
    for (const auto& name : sve::preset_names()) std::cout << name << '\n';
    return sve::kExitOk;
  }
  if (*show) {
    try {
      std::cout << sve::to_config_text(sve::make_preset(show_name));
      return sve::kExitOk;
    } catch (const sve::ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return sve::kExitConfig;
    }
  }

  sve::KeyValues kv;
  if (!config_file.empty()) {
    try {
      kv = sve::read_config_file(config_file);
    } catch (const sve::ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return sve::kExitConfig;
    }
  }
  if (!preset.empty()) kv.emplace_back("preset", preset);
  if (order) kv.emplace_back("order", std::to_string(*order));
  if (cells) kv.emplace_back("M", std::to_string(*cells));
  if (cfl) kv.emplace_back("cfl", std::to_string(*cfl));
  if (out_dir) kv.emplace_back("output_dir", *out_dir);
  if (star) kv.emplace_back("star", *star);
  if (ngp) kv.emplace_back("ngp", std::to_string(*ngp));
  return sve::run_and_report(kv, std::cout, std::cerr);
}
