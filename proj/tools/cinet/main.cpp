// cinet: run experiment configs, bundled figure reproductions and parameter sweeps.
//
//   cinet run <config>
//   cinet figure <figN>
//   cinet sweep <config> [key=v1,v2,...]...
//
// Output goes under $CINET_OUTPUT_DIR (default ./cinet_out).
// Exit status: 0 ok, 2 configuration error, 3 numeric error, 1 anything else.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cinet/errors.hpp"
#include "cinet/scenarios.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

void report(const cinet::ScenarioResult& r, const std::filesystem::path& dir) {
  std::cout << r.name << " -> " << dir.string() << '\n';
  for (const auto& [key, value] : r.metrics) {
    std::printf("  %-32s %.6f\n", key.c_str(), value);
  }
  for (const auto& w : r.warnings) std::cout << "  warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal-inference network simulations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string figure_id;
  std::vector<std::string> overrides;
  bool list_figures = false;

  auto* run = app.add_subcommand("run", "Run one scenario config");
  run->add_option("config", config_path, "Scenario config file")->required();

  auto* figure = app.add_subcommand("figure", "Reproduce a figure from its bundled configs");
  figure->add_option("figure", figure_id, "Figure id, e.g. fig6");
  figure->add_flag("--list", list_figures, "List figure ids");

  auto* sweep = app.add_subcommand("sweep", "Cartesian sweep over key=v1,v2,... overrides");
  sweep->add_option("config", config_path, "Scenario config file")->required();
  sweep->add_option("overrides", overrides, "section.key=value[,value...]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const std::filesystem::path root = cinet::output_root();
    if (*run) {
      const auto cfg = cinet::ScenarioConfig::load(config_path);
      const auto dir = root / cfg.text("output.dir");
      const auto result = cinet::run_scenario(cfg);
      cinet::write_result(result, dir);
      report(result, dir);
    } else if (*figure) {
      if (list_figures) {
        for (const auto& id : cinet::figure_ids()) std::cout << id << '\n';
        return 0;
      }
      if (figure_id.empty()) throw cinet::ConfigError("figure id required (see --list)");
      const auto configs = cinet::figure_configs(figure_id);
      const auto results = cinet::reproduce_figure(figure_id, root);
      for (std::size_t k = 0; k < results.size(); ++k) {
        report(results[k], root / figure_id / configs[k].text("output.dir"));
      }
    } else if (*sweep) {
      const auto cfg = cinet::ScenarioConfig::load(config_path);
      const auto results = cinet::run_sweep(cfg, overrides, root);
      std::cout << results.size() << " point(s) under " << (root / cfg.text("output.dir")).string() << '\n';
      for (const auto& r : results) report(r, root / cfg.text("output.dir"));
    }
  } catch (const cinet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const cinet::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
