#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "cinet/spatial.hpp"

namespace cinet {

using Rng = std::mt19937_64;

// One trial's stimulation. At least one modality must be present.
struct StimulusEvent {
  std::optional<double> auditory;  // S_A, degrees
  std::optional<double> visual;    // S_V, degrees

  static StimulusEvent audiovisual(double s_a, double s_v) { return {s_a, s_v}; }
  static StimulusEvent auditory_only(double s_a) { return {s_a, std::nullopt}; }
  static StimulusEvent visual_only(double s_v) { return {std::nullopt, s_v}; }

  bool has_auditory() const { return auditory.has_value(); }
  bool has_visual() const { return visual.has_value(); }
  void validate() const;
};

// Per-unit multiplicative input weights of the two auditory subpopulations.
struct AuditoryWeights {
  Activity left;
  Activity right;

  static AuditoryWeights uniform(std::size_t n) {
    return {Activity::Ones(static_cast<Eigen::Index>(n)), Activity::Ones(static_cast<Eigen::Index>(n))};
  }
};

struct InputActivity {
  Activity left;    // leftward-tuned auditory units
  Activity right;   // rightward-tuned auditory units
  Activity visual;  // visual units
};

enum class Noise { kOff, kPoisson };

// Leftward-tuned sigmoid: alpha_i * g / (1 + exp((S - x_i) / m)).
Activity auditory_left_response(double s_a, const NetworkParams& params, const Activity& alpha,
                                const SpatialGrid& grid);

// Rightward-tuned sigmoid, the mirror image of auditory_left_response.
Activity auditory_right_response(double s_a, const NetworkParams& params, const Activity& alpha,
                                 const SpatialGrid& grid);

// Gaussian place code over the wrapped distance; visual units carry no adaptation weight.
Activity visual_response(double s_v, const NetworkParams& params, const SpatialGrid& grid);

// Independent Poisson draw per unit with the entry as mean; counts stored as doubles.
Activity apply_poisson_noise(const Activity& mean, Rng& rng);

// Absent modalities produce all-zero activity. Noise is drawn after alpha scaling,
// left, right, then visual.
InputActivity input_for_event(const StimulusEvent& event, const NetworkParams& params,
                              const SpatialGrid& grid, const AuditoryWeights& alpha,
                              Noise noise, Rng& rng);

}  // namespace cinet
