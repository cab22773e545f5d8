#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cinet/causal_inference.hpp"
#include "cinet/spatial.hpp"

namespace cinet {

enum class ScenarioKind {
  kProfiles,     // pooling profiles and their Gaussian readout
  kFusion,       // multisensory peak vs reliability-weighted fusion
  kRelatedness,  // multisensory share of pooled activity vs causal posterior
  kDecode,       // one forward pass with full reconstruction profiles
  kCiFit,        // network disparity sweep against the causal-inference oracle
  kMuLaw,        // best-fit bias across p_common and gain settings
  kGainPlane,    // best-fit c across a gain grid, plane fit
  kAftereffect,  // adaptation train followed by delayed auditory probes
  kCumulative,   // online effect and aftereffect vs train length
};

std::string_view to_string(ScenarioKind kind);
ScenarioKind parse_kind(std::string_view text);

// Experiment configuration: INI-style "[section]" headers with "key = value"
// lines and '#' comments. Every key is addressed as "section.key". Keys are
// validated against a per-kind schema and every omitted key is filled with its
// default, so echo() always prints the complete resolved parameter set.
class ScenarioConfig {
 public:
  static ScenarioConfig parse(std::string_view text, std::string_view origin = "<config>");
  static ScenarioConfig load(const std::filesystem::path& path);

  const std::string& name() const { return values_.at("scenario.name"); }
  ScenarioKind kind() const { return kind_; }

  // Overrides one key; throws ConfigError on an unknown key or a bad value.
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  double real(const std::string& key) const;
  long integer(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  // nullopt for "auto"/"readout"/"none" sentinel values.
  std::optional<double> maybe_real(const std::string& key) const;

  NetworkParams network() const;
  EstimateRule estimate_rule() const;

  // Resolved configuration in the same INI syntax, keys in schema order.
  std::string echo() const;
  // Resolved key/value pairs in schema order.
  std::vector<std::pair<std::string, std::string>> entries() const;

 private:
  ScenarioKind kind_ = ScenarioKind::kProfiles;
  std::map<std::string, std::string> values_;
};

// Keys a configuration of `kind` accepts, in schema order.
std::vector<std::string> schema_keys(ScenarioKind kind);

}  // namespace cinet
