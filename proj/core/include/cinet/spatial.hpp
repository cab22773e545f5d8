#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace cinet {

// Activity of one population, indexed by unit (same order as SpatialGrid::centers).
using Activity = Eigen::VectorXd;

// Uniform 1-D azimuth grid shared by every population of the network.
struct SpatialGrid {
  std::vector<double> centers;  // degrees, strictly increasing
  double step = 1.0;            // degrees between neighbouring centers
  double wrap_length = 301.0;   // circumference used by wrapped_distance

  std::size_t size() const { return centers.size(); }
  double front() const { return centers.front(); }
  double back() const { return centers.back(); }

  // Index of the center closest to `location` (clamped to the grid).
  std::size_t nearest_index(double location) const;
};

// Circular distance on a circle of circumference `wrap_length`; result in [0, L/2].
double wrapped_distance(double a, double b, double wrap_length);

// n uniformly spaced centers from lo to hi inclusive. The wrap length is
// n * step, so the default grid (301, -150, 150) has L = 301.
SpatialGrid make_grid(std::size_t n, double lo, double hi);

// The grid used throughout the network: -150..150 in 1 degree steps.
SpatialGrid default_grid();

// Parameters of the three-layer network. Defaults are the standard simulation
// settings; `bias` is the constant input to the multisensory pooling units.
struct NetworkParams {
  double gain_auditory = 140.0;   // g^A
  double gain_visual = 80.0;      // g^V
  double rise = 20.0;             // auditory sigmoid rise m (degrees)
  double width = 20.0;            // visual tuning width sigma (degrees)
  double scale_auditory = 2.0;    // A
  double scale_visual = 5.0;      // V
  double scale_multi_auditory = 1.0;  // A_m
  double scale_multi_visual = 2.0;    // V_m
  double bias = 10.5;             // mu

  // Throws ConfigError naming the first offending field.
  void validate() const;

  bool same_weights_as(const NetworkParams& other) const;
};

}  // namespace cinet
