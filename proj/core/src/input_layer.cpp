#include "cinet/input_layer.hpp"

#include <cmath>
#include <string>

#include "cinet/errors.hpp"

namespace cinet {
namespace {

void check_alpha(const Activity& alpha, const SpatialGrid& grid, const char* side) {
  if (static_cast<std::size_t>(alpha.size()) != grid.size()) {
    throw ConfigError(std::string("adaptation weights (") + side + ") do not match the grid size");
  }
  if (!(alpha.array() > 0.0).all()) {
    throw NumericError(std::string("adaptation weights (") + side + ") must stay positive");
  }
}

}  // namespace

void StimulusEvent::validate() const {
  if (!auditory && !visual) throw ConfigError("stimulus event has neither modality");
  if ((auditory && !std::isfinite(*auditory)) || (visual && !std::isfinite(*visual))) {
    throw ConfigError("stimulus location must be finite");
  }
}

Activity auditory_left_response(double s_a, const NetworkParams& params, const Activity& alpha,
                                const SpatialGrid& grid) {
  check_alpha(alpha, grid, "left");
  Activity out(alpha.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double x = grid.centers[static_cast<std::size_t>(i)];
    out[i] = alpha[i] * params.gain_auditory / (1.0 + std::exp((s_a - x) / params.rise));
  }
  return out;
}

Activity auditory_right_response(double s_a, const NetworkParams& params, const Activity& alpha,
                                 const SpatialGrid& grid) {
  check_alpha(alpha, grid, "right");
  Activity out(alpha.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double x = grid.centers[static_cast<std::size_t>(i)];
    out[i] = alpha[i] * params.gain_auditory / (1.0 + std::exp(-(s_a - x) / params.rise));
  }
  return out;
}

Activity visual_response(double s_v, const NetworkParams& params, const SpatialGrid& grid) {
  Activity out(static_cast<Eigen::Index>(grid.size()));
  const double two_var = 2.0 * params.width * params.width;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double d = wrapped_distance(s_v, grid.centers[static_cast<std::size_t>(i)], grid.wrap_length);
    out[i] = params.gain_visual * std::exp(-d * d / two_var);
  }
  return out;
}

Activity apply_poisson_noise(const Activity& mean, Rng& rng) {
  Activity out(mean.size());
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    if (mean[i] < 0.0) throw NumericError("Poisson mean must be non-negative");
    if (mean[i] == 0.0) {
      out[i] = 0.0;
      continue;
    }
    std::poisson_distribution<long long> draw(mean[i]);
    out[i] = static_cast<double>(draw(rng));
  }
  return out;
}

InputActivity input_for_event(const StimulusEvent& event, const NetworkParams& params,
                              const SpatialGrid& grid, const AuditoryWeights& alpha,
                              Noise noise, Rng& rng) {
  event.validate();
  const auto n = static_cast<Eigen::Index>(grid.size());
  InputActivity in{Activity::Zero(n), Activity::Zero(n), Activity::Zero(n)};
  if (event.auditory) {
    in.left = auditory_left_response(*event.auditory, params, alpha.left, grid);
    in.right = auditory_right_response(*event.auditory, params, alpha.right, grid);
  }
  if (event.visual) in.visual = visual_response(*event.visual, params, grid);
  if (noise == Noise::kPoisson) {
    in.left = apply_poisson_noise(in.left, rng);
    in.right = apply_poisson_noise(in.right, rng);
    in.visual = apply_poisson_noise(in.visual, rng);
  }
  return in;
}

}  // namespace cinet
