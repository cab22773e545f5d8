#pragma once

#include "cinet/network.hpp"
#include "cinet/spatial.hpp"

namespace cinet {

// Gaussian summary of a unisensory pooling profile.
struct LikelihoodSummary {
  double peak;      // location estimate, degrees
  double sd;        // likelihood standard deviation, degrees
  double fit_rmse;  // residual of the max-normalized profile against N(peak, sd)
};

// Ratio between the full width at half maximum and the standard deviation of a Gaussian.
inline constexpr double kFwhmPerSd = 2.355;

// Peak = grid center of the maximum (mean of tied indices). sd = FWHM / 2.355 with
// both half-maximum crossings linearly interpolated between neighbouring units.
// Throws NumericError when a crossing lies beyond the grid.
LikelihoodSummary profile_peak_and_width(const Activity& activity, const SpatialGrid& grid);

double gaussian_fit_rmse(const Activity& activity, const SpatialGrid& grid);

// Grid location of the maximum of `values`. Ties (within 1e-12 relative) are
// resolved to the mean tied location, rounded toward zero onto the grid.
double argmax_location(const Activity& values, const SpatialGrid& grid);

struct UnisensoryReadout {
  LikelihoodSummary auditory;
  LikelihoodSummary visual;
};

// Summaries of the noiseless unisensory pooling profiles for stimuli at `location`.
UnisensoryReadout read_unisensory(const Network& network, double location = 0.0);

}  // namespace cinet
