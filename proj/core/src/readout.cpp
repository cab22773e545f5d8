#include "cinet/readout.hpp"

#include <cmath>
#include <vector>

#include "cinet/errors.hpp"

namespace cinet {

double argmax_location(const Activity& values, const SpatialGrid& grid) {
  const double peak = values.maxCoeff();
  const double tol = std::abs(peak) * 1e-12;
  double sum = 0.0;
  int count = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] >= peak - tol) {
      sum += grid.centers[static_cast<std::size_t>(i)];
      ++count;
    }
  }
  const double units = sum / count / grid.step;
  // An even number of tied units puts the mean between two centers; snap toward zero.
  const double snapped = std::abs(units - std::round(units)) < 1e-9 ? std::round(units) : std::trunc(units);
  return snapped * grid.step;
}

LikelihoodSummary profile_peak_and_width(const Activity& activity, const SpatialGrid& grid) {
  const Eigen::Index n = activity.size();
  if (static_cast<std::size_t>(n) != grid.size()) throw ConfigError("profile does not match grid");
  const double top = activity.maxCoeff();
  if (!(top > 0.0)) throw NumericError("profile has no positive peak");

  const Activity norm = activity / top;
  Eigen::Index peak_index = 0;
  norm.maxCoeff(&peak_index);
  const double peak = argmax_location(activity, grid);

  // Walk outward from the maximum to the first sample below half height.
  Eigen::Index r = peak_index;
  while (r < n && norm[r] >= 0.5) ++r;
  Eigen::Index l = peak_index;
  while (l >= 0 && norm[l] >= 0.5) --l;
  if (r >= n || l < 0) throw NumericError("half-maximum crossing lies outside the grid");

  auto x = [&](Eigen::Index i) { return grid.centers[static_cast<std::size_t>(i)]; };
  const double right = x(r - 1) + grid.step * (norm[r - 1] - 0.5) / (norm[r - 1] - norm[r]);
  const double left = x(l + 1) - grid.step * (norm[l + 1] - 0.5) / (norm[l + 1] - norm[l]);
  const double sd = (right - left) / kFwhmPerSd;

  double sq = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z = (x(i) - peak) / sd;
    const double e = norm[i] - std::exp(-0.5 * z * z);
    sq += e * e;
  }
  return {peak, sd, std::sqrt(sq / static_cast<double>(n))};
}

double gaussian_fit_rmse(const Activity& activity, const SpatialGrid& grid) {
  return profile_peak_and_width(activity, grid).fit_rmse;
}

UnisensoryReadout read_unisensory(const Network& network, double location) {
  Rng unused(0);
  const InputActivity in =
      input_for_event(StimulusEvent::audiovisual(location, location), network.params(), network.grid(),
                      AuditoryWeights::uniform(network.grid().size()), Noise::kOff, unused);
  return {profile_peak_and_width(pool_unisensory_auditory(in, network.weights()), network.grid()),
          profile_peak_and_width(pool_unisensory_visual(in, network.weights()), network.grid())};
}

}  // namespace cinet
