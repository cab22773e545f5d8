#include "cinet/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cinet/errors.hpp"

namespace cinet {

double wrapped_distance(double a, double b, double wrap_length) {
  const double d = std::fmod(std::abs(a - b), wrap_length);
  return d < wrap_length / 2.0 ? d : wrap_length - d;
}

std::size_t SpatialGrid::nearest_index(double location) const {
  const double raw = std::round((location - centers.front()) / step);
  const double clamped = std::clamp(raw, 0.0, static_cast<double>(centers.size() - 1));
  return static_cast<std::size_t>(clamped);
}

SpatialGrid make_grid(std::size_t n, double lo, double hi) {
  if (n < 2) throw ConfigError("grid: need at least 2 units, got " + std::to_string(n));
  if (!(hi > lo)) throw ConfigError("grid: upper bound must exceed lower bound");
  const double step = (hi - lo) / static_cast<double>(n - 1);
  // Only whole-degree spacing keeps L = n * step consistent with unit indices.
  if (std::abs(step - std::round(step)) > 1e-9 || std::round(step) < 1.0) {
    throw ConfigError("grid: spacing must be a whole number of degrees, got " +
                      std::to_string(step));
  }
  SpatialGrid grid;
  grid.step = std::round(step);
  grid.centers.resize(n);
  for (std::size_t i = 0; i < n; ++i) grid.centers[i] = lo + grid.step * static_cast<double>(i);
  grid.wrap_length = grid.step * static_cast<double>(n);
  return grid;
}

SpatialGrid default_grid() { return make_grid(301, -150.0, 150.0); }

void NetworkParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string("network.") + name + " must be positive and finite");
    }
  };
  positive(gain_auditory, "gain_auditory");
  positive(gain_visual, "gain_visual");
  positive(rise, "rise");
  positive(width, "width");
  positive(scale_auditory, "scale_auditory");
  positive(scale_visual, "scale_visual");
  positive(scale_multi_auditory, "scale_multi_auditory");
  positive(scale_multi_visual, "scale_multi_visual");
  if (!std::isfinite(bias)) throw ConfigError("network.bias must be finite");
}

bool NetworkParams::same_weights_as(const NetworkParams& o) const {
  return rise == o.rise && width == o.width && scale_auditory == o.scale_auditory &&
         scale_visual == o.scale_visual && scale_multi_auditory == o.scale_multi_auditory &&
         scale_multi_visual == o.scale_multi_visual;
}

}  // namespace cinet
