#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cinet/errors.hpp"
#include "cinet/scenarios.hpp"

using namespace cinet;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cinet_scenarios" / name;
  fs::remove_all(dir);
  return dir;
}

void same_tree(const fs::path& a, const fs::path& b) {
  int files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), a);
    CHECK_MESSAGE(slurp(entry.path()) == slurp(b / rel), rel.string());
    ++files;
  }
  CHECK(files > 0);
}

std::string header(const ResultTable& t) {
  std::string h;
  for (const auto& c : t.columns) h += (h.empty() ? "" : ",") + c;
  return h;
}

const char* kSmallFit = R"([scenario]
name = small_fit
kind = ci_fit
[sweep]
visual_from = -30
visual_to = 30
visual_step = 10
[oracle]
samples = 400
)";

}  // namespace

TEST_CASE("bundled figures") {
  const auto ids = figure_ids();
  CHECK(ids.size() == 11);
  CHECK(ids.front() == "fig2");
  CHECK(ids.back() == "fig12");
  for (const auto& id : ids) CHECK_FALSE(figure_configs(id).empty());
  CHECK(figure_configs("fig3").size() == 4);
  CHECK_THROWS_AS(figure_configs("fig13"), ConfigError);
}

TEST_CASE("decoding figure row and golden file") {
  const fs::path root = scratch("fig5");
  const auto results = reproduce_figure("fig5", root);
  REQUIRE(results.size() == 1);
  CHECK(results[0].metric("auditory_estimate") == 13);
  CHECK(results[0].metric("visual_estimate") == 20);
  const fs::path dir = root / "fig5" / "fig5";
  CHECK(slurp(dir / "estimates.csv") == slurp(fs::path(CINET_GOLDEN_DIR) / "fig5_estimates.csv"));
  CHECK(slurp(dir / "resolved.ini") == slurp(fs::path(CINET_GOLDEN_DIR) / "fig5_resolved.ini"));

  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary["kind"] == "decode");
  CHECK(summary["metrics"]["auditory_estimate"] == 13.0);
  CHECK(summary["config"]["network.bias"] == "12.3");
  CHECK(summary["config"]["network.gain_auditory"] == "140");
  CHECK(summary["tables"].size() == 2);
}

TEST_CASE("column schemas are stable") {
  std::ostringstream got;
  for (const char* id : {"fig2", "fig3", "fig4", "fig5", "fig11", "fig12"}) {
    for (const ScenarioConfig& cfg : figure_configs(id)) {
      ScenarioConfig c = cfg;
      if (c.kind() == ScenarioKind::kProfiles) c.set("noise.trials", "3");
      const ScenarioResult r = run_scenario(c);
      for (const auto& t : r.tables) got << to_string(r.kind) << ' ' << t.name << ' ' << header(t) << '\n';
    }
  }
  const ScenarioResult fit = run_scenario(ScenarioConfig::parse(kSmallFit));
  for (const auto& t : fit.tables) got << "ci_fit " << t.name << ' ' << header(t) << '\n';
  CHECK(got.str() == slurp(fs::path(CINET_GOLDEN_DIR) / "schemas.txt"));
}

TEST_CASE("profiles report Gaussian quality") {
  ScenarioConfig c = figure_configs("fig2").front();
  c.set("noise.trials", "50");
  const ScenarioResult r = run_scenario(c);
  CHECK(r.metric("auditory_fit_rmse") < 0.01);
  CHECK(r.metric("visual_fit_rmse") < 0.01);
  CHECK(r.table("noise_trials").rows.size() == 50);
  CHECK(r.table("profiles").rows.size() == 301);
}

TEST_CASE("reruns are byte-identical") {
  const fs::path a = scratch("rerun_a"), b = scratch("rerun_b");
  for (const fs::path& root : {a, b}) {
    reproduce_figure("fig4", root);
    reproduce_figure("fig11", root);
    ScenarioConfig noisy = figure_configs("fig2").front();
    noisy.set("noise.trials", "20");
    run_and_write(noisy, root);
    run_and_write(ScenarioConfig::parse(kSmallFit), root);
  }
  same_tree(a, b);
}

TEST_CASE("empty sweep equals a plain run") {
  const fs::path a = scratch("plain"), b = scratch("sweep_empty");
  const ScenarioConfig c = ScenarioConfig::parse(kSmallFit);
  run_and_write(c, a);
  const auto results = run_sweep(c, {}, b);
  CHECK(results.size() == 1);
  same_tree(a, b);
}

TEST_CASE("seed sweep changes only Monte Carlo columns") {
  const fs::path root = scratch("seed_sweep");
  const auto results = run_sweep(ScenarioConfig::parse(kSmallFit), {"oracle.seed=1,2"}, root);
  REQUIRE(results.size() == 2);
  const ResultTable& s1 = results[0].table("sweep");
  const ResultTable& s2 = results[1].table("sweep");
  CHECK(s1.column("net_A") == s2.column("net_A"));
  CHECK(s1.column("net_V") == s2.column("net_V"));
  CHECK(s1.column("oracle_A") != s2.column("oracle_A"));
  CHECK(fs::exists(root / "small_fit" / "point_000" / "sweep.csv"));
  CHECK(fs::exists(root / "small_fit" / "point_001" / "summary.json"));
  CHECK(slurp(root / "small_fit" / "index.csv") ==
        "point,directory,oracle.seed\n0,point_000,1\n1,point_001,2\n");
}

TEST_CASE("cartesian sweep") {
  const fs::path root = scratch("cartesian");
  ScenarioConfig c = figure_configs("fig5").front();
  const auto results = run_sweep(c, {"stimulus.visual=10,20,30", "network.bias=10.5,12.3"}, root);
  CHECK(results.size() == 6);
  // the last axis varies fastest
  CHECK(results[3].metric("auditory_estimate") == 13);
  CHECK(results[3].metric("visual_estimate") == 20);
  CHECK(results[4].metric("visual_estimate") == 30);
}

TEST_CASE("sweep rejects bad overrides before running") {
  const fs::path root = scratch("bad_sweep");
  const ScenarioConfig c = ScenarioConfig::parse(kSmallFit);
  CHECK_THROWS_AS(run_sweep(c, {"oracle.sead=1,2"}, root), ConfigError);
  CHECK_THROWS_AS(run_sweep(c, {"oracle.samples=10,x"}, root), ConfigError);
  CHECK_THROWS_AS(run_sweep(c, {"oracle.samples"}, root), ConfigError);
  CHECK_FALSE(fs::exists(root / "small_fit"));
}

TEST_CASE("fitted bias grows with auditory gain") {
  const fs::path root = scratch("gain_sweep");
  ScenarioConfig c = ScenarioConfig::parse(kSmallFit);
  c.set("fit.mode", "search");
  c.set("oracle.samples", "2000");
  c.set("sweep.visual_step", "5");
  c.set("fit.half_width", "8");
  const auto results = run_sweep(c, {"network.gain_auditory=100,120,140"}, root);
  REQUIRE(results.size() == 3);
  CHECK(results[0].metric("mu") < results[1].metric("mu"));
  CHECK(results[1].metric("mu") < results[2].metric("mu"));
}

TEST_CASE("aftereffect protocol rows") {
  const ScenarioResult r = run_scenario(figure_configs("fig11").front());
  const ResultTable& t = r.table("trials");
  CHECK(t.rows.size() == 23);
  const auto shift = t.column("shift");
  CHECK(shift[20] > shift[21]);
  CHECK(shift[21] > shift[22]);
  CHECK(r.metric("aftereffect_strictly_decreasing") == 1.0);
  CHECK(r.table("local_probes").rows.size() == 3);
}

TEST_CASE("reference data for the aftereffect") {
  const fs::path dir = scratch("reference");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "ref.csv");
    out << "delay,aftereffect\n1,2.5\n5,1.0\n20,0.5\n";
  }
  ScenarioConfig c = figure_configs("fig11").front();
  c.set("reference.file", (dir / "ref.csv").string());
  const ScenarioResult r = run_scenario(c);
  const double expect = std::sqrt((std::pow(r.metric("aftereffect_1s") - 2.5, 2) +
                                   std::pow(r.metric("aftereffect_5s") - 1.0, 2) +
                                   std::pow(r.metric("aftereffect_20s") - 0.5, 2)) / 3);
  CHECK(r.metric("reference_rmse") == doctest::Approx(expect));
  c.set("reference.file", (dir / "missing.csv").string());
  CHECK_THROWS_AS(run_scenario(c), ConfigError);
}

TEST_CASE("numeric errors carry the scenario name") {
  ScenarioConfig c = figure_configs("fig5").front();
  c.set("network.gain_auditory", "40000");
  try {
    run_scenario(c);
    FAIL("expected an overflow");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("scenario fig5:") == 0);
  }
}
