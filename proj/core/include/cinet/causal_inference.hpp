#pragma once

#include <cstdint>
#include <vector>

namespace cinet {

// How the conditional estimates are formed once the causal posterior is known.
enum class EstimateRule {
  // Flat prior over the whole line: segregated estimates are the measurements
  // and the fused estimate is the reliability-weighted mean. The hypothesis
  // grid still defines the marginal likelihoods of the two causal structures.
  kUnboundedPrior,
  // Posterior means over the discrete hypothesis grid; estimates shrink toward
  // the interior near the grid edges.
  kGridPosteriorMean,
};

std::vector<double> hypothesis_grid(double lo = -90.0, double hi = 90.0, double step = 1.0);

struct CIParams {
  double sigma_auditory = 8.1;  // sd of the auditory likelihood, degrees
  double sigma_visual = 1.7;    // sd of the visual likelihood, degrees
  double p_common = 0.5;        // prior probability of a single cause
  std::vector<double> hypotheses = hypothesis_grid();
  EstimateRule rule = EstimateRule::kUnboundedPrior;

  void validate() const;
};

struct CausalInferenceResult {
  double p_common_posterior;  // p(C=1 | x_A, x_V)
  double fused;               // estimate under a common cause
  double auditory_segregated;
  double visual_segregated;
  double auditory;            // model-averaged final estimates
  double visual;
};

// Bayesian causal inference with model averaging for one pair of noisy measurements.
// Throws NumericError when a measurement is so far outside the hypothesis grid
// that its likelihood vanishes everywhere on it.
CausalInferenceResult ci_single(double x_auditory, double x_visual, const CIParams& params);

struct MeanEstimates {
  double auditory;
  double visual;
};

// Monte Carlo means: x_A ~ N(S_A, sigma_A), x_V ~ N(S_V, sigma_V), drawn
// alternately from one mt19937_64 seeded with `seed`.
MeanEstimates ci_mean_estimates(double s_auditory, double s_visual, const CIParams& params,
                                std::size_t samples, std::uint64_t seed);

struct SweepPoint {
  double disparity;  // S_V - S_A
  double visual_location;
  double auditory;
  double visual;
};

// One ci_mean_estimates call per visual location; point k uses seed + k.
std::vector<SweepPoint> ci_disparity_sweep(double s_auditory,
                                           const std::vector<double>& visual_locations,
                                           const CIParams& params, std::size_t samples,
                                           std::uint64_t seed);

// -90..90 in 2 degree steps.
std::vector<double> default_visual_sweep();

}  // namespace cinet
