#include "cinet/recalibration.hpp"

#include <algorithm>
#include <cmath>

#include "cinet/errors.hpp"

namespace cinet {
namespace {

void adapt(Activity& alpha, const Activity& theta, const Activity& rho, double theta_max,
           double rho_max, double rate) {
  const Activity drive = theta / theta_max;
  alpha.array() += rate * drive.array() * (rho.array() / rho_max - drive.array());
}

void relax(Activity& alpha, double decay) {
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    const double gap = alpha[i] - 1.0;
    alpha[i] = std::abs(gap) <= decay ? 1.0 : alpha[i] - std::copysign(decay, gap);
  }
}

}  // namespace

AdaptationState AdaptationState::initial(std::size_t n, double rate, double decay) {
  if (!(rate >= 0.0) || !(decay >= 0.0)) throw ConfigError("adaptation rates must be non-negative");
  return {AuditoryWeights::uniform(n), rate, decay, 0};
}

AdaptationState update_adaptation(AdaptationState state, const InputActivity& input,
                                  const ReconstructionActivity& recon, ErrorScope scope) {
  double left_max = input.left.maxCoeff();
  double right_max = input.right.maxCoeff();
  if (!(left_max > 0.0) || !(right_max > 0.0)) {
    throw NumericError("adaptation update needs auditory input activity");
  }
  double rho_left_max = recon.left.maxCoeff();
  double rho_right_max = recon.right.maxCoeff();
  if (scope == ErrorScope::kAllAuditory) {
    left_max = right_max = std::max(left_max, right_max);
    rho_left_max = rho_right_max = std::max(rho_left_max, rho_right_max);
  }
  adapt(state.alpha.left, input.left, recon.left, left_max, rho_left_max, state.rate);
  adapt(state.alpha.right, input.right, recon.right, right_max, rho_right_max, state.rate);
  if (!(state.alpha.left.array() > 0.0).all() || !(state.alpha.right.array() > 0.0).all()) {
    throw NumericError("adaptation drove an input weight to zero; lower the rate");
  }
  ++state.clock;
  return state;
}

AdaptationState decay_adaptation(AdaptationState state) {
  relax(state.alpha.left, state.decay);
  relax(state.alpha.right, state.decay);
  ++state.clock;
  return state;
}

void TrialSchedule::add_stimulus(const StimulusEvent& event, bool probe, int label) {
  event.validate();
  trials.push_back({event, probe, label});
}

void TrialSchedule::add_blanks(int seconds) {
  for (int s = 0; s < seconds; ++s) trials.push_back({std::nullopt, false, 0});
}

ScheduleResult run_schedule(const TrialSchedule& schedule, const Network& network,
                            AdaptationState state, Noise noise, std::uint64_t seed,
                            ErrorScope scope) {
  Rng rng(seed);
  ScheduleResult result;
  for (const Trial& trial : schedule.trials) {
    if (!trial.event) {
      state = decay_adaptation(std::move(state));
      continue;
    }
    const NetworkOutput out = network.forward(*trial.event, state.alpha, noise, rng);
    if (trial.probe) {
      result.probes.push_back({state.clock, trial.label, *trial.event,
                               {out.auditory_estimate, out.visual_estimate},
                               state.alpha.left.mean(), state.alpha.right.mean()});
    }
    if (trial.event->has_auditory()) {
      state = update_adaptation(std::move(state), out.input, out.reconstruction, scope);
    } else {
      // Visual inputs carry no adaptation weight; the auditory weights just relax.
      state = decay_adaptation(std::move(state));
    }
  }
  result.final_state = std::move(state);
  return result;
}

int seconds_to_recover(const AdaptationState& state) {
  const double worst = std::max((state.alpha.left.array() - 1.0).abs().maxCoeff(),
                                (state.alpha.right.array() - 1.0).abs().maxCoeff());
  if (worst == 0.0) return 0;
  if (!(state.decay > 0.0)) throw ConfigError("decay rate is zero; weights never recover");
  return static_cast<int>(std::ceil(worst / state.decay - 1e-12));
}

}  // namespace cinet
