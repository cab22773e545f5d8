#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cinet/input_layer.hpp"
#include "cinet/network.hpp"

namespace cinet {

// Auditory input weights plus the learning and decay rates that move them.
struct AdaptationState {
  AuditoryWeights alpha;
  double rate = 0.65;    // eta
  double decay = 0.009;  // tau, per 1 s step
  long clock = 0;        // seconds elapsed

  static AdaptationState initial(std::size_t n, double rate, double decay);
};

// How the normalizing maxima in the update are scoped.
enum class ErrorScope {
  kPerSubpopulation,  // left and right normalized independently
  kAllAuditory,       // one max over both subpopulations
};

// alpha += eta * (theta / max theta) * (rho / max rho - theta / max theta), for the
// left and right auditory inputs. Throws NumericError if an input subpopulation is silent.
AdaptationState update_adaptation(AdaptationState state, const InputActivity& input,
                                  const ReconstructionActivity& recon,
                                  ErrorScope scope = ErrorScope::kPerSubpopulation);

// One stimulus-free second: every weight moves toward 1 by tau without overshooting.
AdaptationState decay_adaptation(AdaptationState state);

// One second of the protocol: a stimulus or nothing.
struct Trial {
  std::optional<StimulusEvent> event;  // nullopt = blank
  bool probe = false;                  // record the decoded estimates
  int label = 0;                       // caller-defined tag carried into the record
};

struct TrialSchedule {
  std::vector<Trial> trials;

  void add_stimulus(const StimulusEvent& event, bool probe = false, int label = 0);
  void add_blanks(int seconds);
};

struct ProbeRecord {
  long clock;  // second at which the trial ran
  int label;
  StimulusEvent event;
  Estimates estimates;
  double mean_alpha_left;
  double mean_alpha_right;
};

struct ScheduleResult {
  std::vector<ProbeRecord> probes;
  AdaptationState final_state;
};

// Stimulus seconds run a forward pass and then adapt; blank seconds decay.
ScheduleResult run_schedule(const TrialSchedule& schedule, const Network& network,
                            AdaptationState initial, Noise noise, std::uint64_t seed,
                            ErrorScope scope = ErrorScope::kPerSubpopulation);

// Blank seconds needed for every weight to settle back at exactly 1.
int seconds_to_recover(const AdaptationState& state);

}  // namespace cinet
