#include "cinet/pooling.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cinet/errors.hpp"

namespace cinet {

PoolingWeights PoolingWeights::build(const NetworkParams& params, const SpatialGrid& grid) {
  params.validate();
  const auto n = static_cast<Eigen::Index>(grid.size());
  const double count = static_cast<double>(n);
  const double gauss_norm = 1.0 / (params.width * std::sqrt(2.0 * std::numbers::pi));
  const double two_var = 2.0 * params.width * params.width;

  // Shared shapes; each matrix is a scaled copy of one of them.
  Eigen::MatrixXd rising(n, n);   // 1 / (n (1 + exp(-(x_i - x_j) / m)))
  Eigen::MatrixXd gaussian(n, n);  // exp(-d^2 / 2 sigma^2) / (sigma sqrt(2 pi))
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = grid.centers[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      const double xj = grid.centers[static_cast<std::size_t>(j)];
      rising(i, j) = 1.0 / (count * (1.0 + std::exp(-(xi - xj) / params.rise)));
      const double d = wrapped_distance(xi, xj, grid.wrap_length);
      gaussian(i, j) = gauss_norm * std::exp(-d * d / two_var);
    }
  }
  Eigen::MatrixXd falling(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = grid.centers[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      const double xj = grid.centers[static_cast<std::size_t>(j)];
      falling(i, j) = 1.0 / (count * (1.0 + std::exp((xi - xj) / params.rise)));
    }
  }

  PoolingWeights w;
  w.left = params.scale_auditory * rising;
  w.right = params.scale_auditory * falling;
  w.visual = params.scale_visual * gaussian;
  w.multi_left = params.scale_multi_auditory * rising;
  w.multi_right = params.scale_multi_auditory * falling;
  w.multi_visual = params.scale_multi_visual * gaussian;
  return w;
}

Activity exp_activation(const Activity& potential, const char* population) {
  const double peak = potential.maxCoeff();
  if (!(peak <= kMaxMembranePotential)) {
    std::ostringstream msg;
    msg << population << " pooling potential " << peak << " exceeds " << kMaxMembranePotential
        << "; gains or weight scales are too large";
    throw NumericError(msg.str());
  }
  return potential.array().exp().matrix();
}

Activity auditory_potential(const InputActivity& input, const PoolingWeights& w) {
  return w.left.transpose() * input.left + w.right.transpose() * input.right;
}

Activity visual_potential(const InputActivity& input, const PoolingWeights& w) {
  return w.visual.transpose() * input.visual;
}

Activity multisensory_potential(const InputActivity& input, const PoolingWeights& w, double bias) {
  Activity v = w.multi_visual.transpose() * input.visual + w.multi_left.transpose() * input.left +
               w.multi_right.transpose() * input.right;
  v.array() += bias;
  return v;
}

Activity pool_unisensory_auditory(const InputActivity& input, const PoolingWeights& w) {
  return exp_activation(auditory_potential(input, w), "auditory");
}

Activity pool_unisensory_visual(const InputActivity& input, const PoolingWeights& w) {
  return exp_activation(visual_potential(input, w), "visual");
}

Activity pool_multisensory(const InputActivity& input, const PoolingWeights& w, double bias) {
  return exp_activation(multisensory_potential(input, w, bias), "multisensory");
}

PoolingActivity pool_all(const InputActivity& input, const PoolingWeights& w, double bias) {
  return {pool_unisensory_auditory(input, w), pool_unisensory_visual(input, w),
          pool_multisensory(input, w, bias), false};
}

PoolingActivity divisive_normalize(PoolingActivity pooling) {
  if (pooling.normalized) throw NumericError("pooling activity is already normalized");
  const double units =
      static_cast<double>(pooling.auditory.size() + pooling.visual.size() + pooling.multi.size());
  const double total = pooling.multi.sum() + pooling.auditory.sum() + pooling.visual.sum();
  const double divisor = 1.0 + total / units;
  pooling.auditory /= divisor;
  pooling.visual /= divisor;
  pooling.multi /= divisor;
  pooling.normalized = true;
  return pooling;
}

Relatedness relatedness_index(const PoolingActivity& pooling) {
  const double m = pooling.multi.sum();
  const double a = pooling.auditory.sum();
  const double share = m / (m + a);
  return {share, 1.0 - share};
}

}  // namespace cinet
