#include "cinet/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cinet/errors.hpp"

namespace cinet {
namespace {

enum class ValueType { kReal, kInteger, kChoice, kText, kRealList, kRealOrAuto, kRealOrNone };

using K = ScenarioKind;

struct KeySpec {
  const char* key;
  ValueType type;
  const char* fallback;
  std::vector<std::string> choices;  // kChoice only
  std::vector<ScenarioKind> kinds;   // empty = every kind
};

const std::vector<K> kAllFits = {K::kCiFit, K::kMuLaw, K::kGainPlane};
const std::vector<K> kSweeps = {K::kFusion, K::kRelatedness, K::kCiFit, K::kMuLaw, K::kGainPlane};
const std::vector<K> kOracle = {K::kRelatedness, K::kCiFit, K::kMuLaw, K::kGainPlane};
const std::vector<K> kRecal = {K::kAftereffect, K::kCumulative};

const std::vector<KeySpec>& schema() {
  static const std::vector<KeySpec> specs = {
      {"scenario.name", ValueType::kText, "", {}, {}},
      {"scenario.kind", ValueType::kText, "", {}, {}},
      {"scenario.description", ValueType::kText, "", {}, {}},
      {"network.gain_auditory", ValueType::kReal, "140", {}, {}},
      {"network.gain_visual", ValueType::kReal, "80", {}, {}},
      {"network.rise", ValueType::kReal, "20", {}, {}},
      {"network.width", ValueType::kReal, "20", {}, {}},
      {"network.scale_auditory", ValueType::kReal, "2", {}, {}},
      {"network.scale_visual", ValueType::kReal, "5", {}, {}},
      {"network.scale_multi_auditory", ValueType::kReal, "1", {}, {}},
      {"network.scale_multi_visual", ValueType::kReal, "2", {}, {}},
      {"network.bias", ValueType::kReal, "10.5", {}, {}},
      {"stimulus.auditory", ValueType::kRealOrNone, "0", {}, {K::kProfiles, K::kDecode}},
      {"stimulus.visual", ValueType::kRealOrNone, "0", {}, {K::kProfiles, K::kDecode}},
      {"noise.mode", ValueType::kChoice, "off", {"off", "poisson"}, {K::kAftereffect, K::kCumulative}},
      {"noise.trials", ValueType::kInteger, "1000", {}, {K::kProfiles}},
      {"noise.seed", ValueType::kInteger, "7", {}, {K::kProfiles, K::kAftereffect, K::kCumulative}},
      {"sweep.auditory", ValueType::kReal, "0", {}, kSweeps},
      {"sweep.visual_from", ValueType::kReal, "-90", {}, kSweeps},
      {"sweep.visual_to", ValueType::kReal, "90", {}, kSweeps},
      {"sweep.visual_step", ValueType::kReal, "2", {}, kSweeps},
      {"fusion.max_disparity", ValueType::kReal, "40", {}, {K::kFusion}},
      {"oracle.p_common", ValueType::kReal, "0.5", {}, {K::kRelatedness, K::kCiFit, K::kGainPlane}},
      {"oracle.sigma_auditory", ValueType::kRealOrAuto, "readout", {}, kOracle},
      {"oracle.sigma_visual", ValueType::kRealOrAuto, "readout", {}, kOracle},
      {"oracle.samples", ValueType::kInteger, "10000", {}, kAllFits},
      {"oracle.seed", ValueType::kInteger, "1", {}, kAllFits},
      {"oracle.rule", ValueType::kChoice, "unbounded", {"unbounded", "grid_mean"}, kOracle},
      {"oracle.hyp_from", ValueType::kReal, "-90", {}, kOracle},
      {"oracle.hyp_to", ValueType::kReal, "90", {}, kOracle},
      {"oracle.hyp_step", ValueType::kReal, "1", {}, kOracle},
      {"fit.mode", ValueType::kChoice, "fixed", {"fixed", "search"}, {K::kCiFit}},
      {"fit.step", ValueType::kReal, "0.05", {}, kAllFits},
      {"fit.half_width", ValueType::kReal, "5", {}, kAllFits},
      {"fit.center", ValueType::kRealOrAuto, "auto", {}, kAllFits},
      {"law.p_values", ValueType::kRealList, "0.05 0.1 0.3 0.5 0.7 0.9 0.95", {}, {K::kMuLaw}},
      {"law.gains_auditory", ValueType::kRealList, "140", {}, {K::kMuLaw}},
      {"law.gains_visual", ValueType::kRealList, "80", {}, {K::kMuLaw}},
      {"plane.gains_auditory", ValueType::kRealList, "120 140 160", {}, {K::kGainPlane}},
      {"plane.gains_visual", ValueType::kRealList, "70 80 90", {}, {K::kGainPlane}},
      {"recal.rate", ValueType::kReal, "0.65", {}, kRecal},
      {"recal.decay", ValueType::kReal, "0.009", {}, kRecal},
      {"recal.scope", ValueType::kChoice, "per_subpopulation", {"per_subpopulation", "all_auditory"}, kRecal},
      {"train.count", ValueType::kInteger, "20", {}, {K::kAftereffect}},
      {"train.auditory", ValueType::kReal, "0", {}, kRecal},
      {"train.visual", ValueType::kReal, "8", {}, kRecal},
      {"train.gap", ValueType::kInteger, "1", {}, kRecal},
      {"probe.delays", ValueType::kRealList, "1 5 20", {}, {K::kAftereffect}},
      {"probe.delay", ValueType::kInteger, "1", {}, {K::kCumulative}},
      {"probe.location", ValueType::kReal, "0", {}, kRecal},
      {"probe.local_offsets", ValueType::kRealList, "-15 15", {}, {K::kAftereffect}},
      {"probe.local_delay", ValueType::kInteger, "1", {}, {K::kAftereffect}},
      {"cumulative.repetitions", ValueType::kRealList, "1 20", {}, {K::kCumulative}},
      {"reference.file", ValueType::kText, "", {}, kRecal},
      {"output.dir", ValueType::kText, "", {}, {}},
  };
  return specs;
}

constexpr std::array<std::pair<ScenarioKind, std::string_view>, 9> kKindNames = {{
    {K::kProfiles, "profiles"},
    {K::kFusion, "fusion"},
    {K::kRelatedness, "relatedness"},
    {K::kDecode, "decode"},
    {K::kCiFit, "ci_fit"},
    {K::kMuLaw, "mu_law"},
    {K::kGainPlane, "gain_plane"},
    {K::kAftereffect, "aftereffect"},
    {K::kCumulative, "cumulative"},
}};

bool applies(const KeySpec& spec, ScenarioKind kind) {
  return spec.kinds.empty() || std::find(spec.kinds.begin(), spec.kinds.end(), kind) != spec.kinds.end();
}

const KeySpec* find_spec(const std::string& key, ScenarioKind kind) {
  for (const auto& s : schema()) {
    if (key == s.key && applies(s, kind)) return &s;
  }
  return nullptr;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> to_real(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long> to_integer(const std::string& s) {
  long v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

bool is_sentinel(const std::string& v) { return v == "auto" || v == "readout" || v == "none"; }

void check_value(const KeySpec& spec, const std::string& value, const std::string& where) {
  auto fail = [&](const std::string& why) {
    throw ConfigError(where + ": " + spec.key + " " + why + " (got '" + value + "')");
  };
  switch (spec.type) {
    case ValueType::kReal:
      if (!to_real(value)) fail("must be a real number");
      break;
    case ValueType::kInteger:
      if (!to_integer(value)) fail("must be an integer");
      break;
    case ValueType::kChoice:
      if (std::find(spec.choices.begin(), spec.choices.end(), value) == spec.choices.end()) {
        std::string options;
        for (const auto& c : spec.choices) options += (options.empty() ? "" : "|") + c;
        fail("must be one of " + options);
      }
      break;
    case ValueType::kText:
      break;
    case ValueType::kRealList: {
      const auto items = words(value);
      if (items.empty()) fail("must list at least one number");
      for (const auto& w : items) {
        if (!to_real(w)) fail("must be a space-separated list of numbers");
      }
      break;
    }
    case ValueType::kRealOrAuto:
      if (value != "auto" && value != "readout" && !to_real(value)) fail("must be a number or 'auto'");
      break;
    case ValueType::kRealOrNone:
      if (value != "none" && !to_real(value)) fail("must be a number or 'none'");
      break;
  }
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ScenarioKind parse_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  throw ConfigError("scenario.kind: unknown kind '" + std::string(text) + "'");
}

std::vector<std::string> schema_keys(ScenarioKind kind) {
  std::vector<std::string> keys;
  for (const auto& s : schema()) {
    if (applies(s, kind)) keys.emplace_back(s.key);
  }
  return keys;
}

ScenarioConfig ScenarioConfig::parse(std::string_view text, std::string_view origin) {
  struct Raw {
    std::string value;
    int line;
  };
  std::map<std::string, Raw> raw;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  const std::string where0(origin);
  while (std::getline(in, line)) {
    ++number;
    const std::string where = where0 + ":" + std::to_string(number);
    std::string body = line.substr(0, line.find('#'));
    body = trim(body);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(std::string_view(body).substr(1, body.size() - 2));
      if (section.empty()) throw ConfigError(where + ": empty section name");
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    if (section.empty()) throw ConfigError(where + ": key outside of any [section]");
    const std::string key = section + "." + trim(std::string_view(body).substr(0, eq));
    if (raw.count(key)) throw ConfigError(where + ": duplicate key " + key);
    raw[key] = {trim(std::string_view(body).substr(eq + 1)), number};
  }

  auto kind_it = raw.find("scenario.kind");
  if (kind_it == raw.end()) throw ConfigError(where0 + ": missing scenario.kind");
  auto name_it = raw.find("scenario.name");
  if (name_it == raw.end() || name_it->second.value.empty()) {
    throw ConfigError(where0 + ": missing scenario.name");
  }

  ScenarioConfig cfg;
  cfg.kind_ = parse_kind(kind_it->second.value);
  for (const auto& [key, r] : raw) {
    const KeySpec* spec = find_spec(key, cfg.kind_);
    const std::string where = where0 + ":" + std::to_string(r.line);
    if (!spec) {
      throw ConfigError(where + ": unknown key " + key + " for kind " +
                        std::string(to_string(cfg.kind_)));
    }
    check_value(*spec, r.value, where);
    cfg.values_[key] = r.value;
  }
  for (const auto& s : schema()) {
    if (applies(s, cfg.kind_) && !cfg.values_.count(s.key)) cfg.values_[s.key] = s.fallback;
  }
  if (cfg.values_["output.dir"].empty()) cfg.values_["output.dir"] = cfg.name();
  cfg.network().validate();
  return cfg;
}

ScenarioConfig ScenarioConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

void ScenarioConfig::set(const std::string& key, const std::string& value) {
  if (key == "scenario.kind") throw ConfigError("scenario.kind cannot be overridden");
  const KeySpec* spec = find_spec(key, kind_);
  if (!spec) {
    throw ConfigError("override: unknown key " + key + " for kind " + std::string(to_string(kind_)));
  }
  const std::string v = trim(value);
  check_value(*spec, v, "override");
  values_[key] = v;
  if (key.starts_with("network.")) network().validate();
}

double ScenarioConfig::real(const std::string& key) const {
  const auto v = to_real(text(key));
  if (!v) throw ConfigError(key + " is not a number");
  return *v;
}

long ScenarioConfig::integer(const std::string& key) const {
  const auto v = to_integer(text(key));
  if (!v) throw ConfigError(key + " is not an integer");
  return *v;
}

const std::string& ScenarioConfig::text(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError("key " + key + " is not defined for kind " + std::string(to_string(kind_)));
  }
  return it->second;
}

std::vector<double> ScenarioConfig::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& w : words(text(key))) out.push_back(*to_real(w));
  return out;
}

std::optional<double> ScenarioConfig::maybe_real(const std::string& key) const {
  const std::string& v = text(key);
  if (is_sentinel(v)) return std::nullopt;
  return to_real(v);
}

NetworkParams ScenarioConfig::network() const {
  NetworkParams p;
  p.gain_auditory = real("network.gain_auditory");
  p.gain_visual = real("network.gain_visual");
  p.rise = real("network.rise");
  p.width = real("network.width");
  p.scale_auditory = real("network.scale_auditory");
  p.scale_visual = real("network.scale_visual");
  p.scale_multi_auditory = real("network.scale_multi_auditory");
  p.scale_multi_visual = real("network.scale_multi_visual");
  p.bias = real("network.bias");
  return p;
}

EstimateRule ScenarioConfig::estimate_rule() const {
  return text("oracle.rule") == "grid_mean" ? EstimateRule::kGridPosteriorMean
                                            : EstimateRule::kUnboundedPrior;
}

std::vector<std::pair<std::string, std::string>> ScenarioConfig::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& key : schema_keys(kind_)) out.emplace_back(key, values_.at(key));
  return out;
}

std::string ScenarioConfig::echo() const {
  std::ostringstream out;
  std::string section;
  for (const auto& [key, value] : entries()) {
    const auto dot = key.find('.');
    const std::string sec = key.substr(0, dot);
    if (sec != section) {
      if (!section.empty()) out << '\n';
      out << '[' << sec << "]\n";
      section = sec;
    }
    out << key.substr(dot + 1) << " = " << value << '\n';
  }
  return out.str();
}

}  // namespace cinet
