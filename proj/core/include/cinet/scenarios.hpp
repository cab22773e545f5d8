#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cinet/config.hpp"
#include "cinet/csv.hpp"

namespace cinet {

struct ScenarioResult {
  std::string name;
  ScenarioKind kind;
  std::vector<ResultTable> tables;
  std::vector<std::pair<std::string, double>> metrics;  // insertion order is output order
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, std::string>> config;  // resolved entries

  double metric(const std::string& key) const;  // throws ConfigError if absent
  const ResultTable& table(const std::string& name) const;
};

// Runs the computation only; nothing is written.
ScenarioResult run_scenario(const ScenarioConfig& config);

// <dir>/<table>.csv for each table, plus summary.json (metrics, warnings and
// the resolved configuration) and resolved.ini.
void write_result(const ScenarioResult& result, const std::filesystem::path& dir);

// Output root: $CINET_OUTPUT_DIR if set, else ./cinet_out.
std::filesystem::path output_root();

// run_scenario + write_result into <root>/<output.dir>. Returns the directory.
std::filesystem::path run_and_write(const ScenarioConfig& config, const std::filesystem::path& root);

// Built-in configurations reproducing one figure ("fig2" .. "fig12").
std::vector<ScenarioConfig> figure_configs(const std::string& figure_id);
std::vector<std::string> figure_ids();

// Runs every bundled configuration of a figure into <root>/<figure_id>/...
std::vector<ScenarioResult> reproduce_figure(const std::string& figure_id,
                                             const std::filesystem::path& root);

// Cartesian product over "key=v1,v2,..." overrides; point k is written to
// <root>/<output.dir>/point_<k>/ and an index.csv lists every point. With no
// overrides this is a single run written like run_and_write.
std::vector<ScenarioResult> run_sweep(const ScenarioConfig& base,
                                      const std::vector<std::string>& overrides,
                                      const std::filesystem::path& root);

}  // namespace cinet
