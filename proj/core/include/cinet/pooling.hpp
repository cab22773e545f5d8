#pragma once

#include <Eigen/Core>

#include "cinet/input_layer.hpp"
#include "cinet/spatial.hpp"

namespace cinet {

// Feedforward weights, stored as (input unit i, pooling unit j). The pooling
// drive is W^T * theta; the reconstruction reuses the same synapses as W * r.
struct PoolingWeights {
  Eigen::MatrixXd left;          // leftward auditory -> auditory pooling
  Eigen::MatrixXd right;         // rightward auditory -> auditory pooling
  Eigen::MatrixXd visual;        // visual -> visual pooling
  Eigen::MatrixXd multi_left;    // leftward auditory -> multisensory
  Eigen::MatrixXd multi_right;   // rightward auditory -> multisensory
  Eigen::MatrixXd multi_visual;  // visual -> multisensory

  static PoolingWeights build(const NetworkParams& params, const SpatialGrid& grid);
};

struct PoolingActivity {
  Activity auditory;  // r^A
  Activity visual;    // r^V
  Activity multi;     // r^m
  bool normalized = false;
};

// Membrane potentials above this make exp() overflow a double.
inline constexpr double kMaxMembranePotential = 700.0;

Activity pool_unisensory_auditory(const InputActivity& input, const PoolingWeights& w);
Activity pool_unisensory_visual(const InputActivity& input, const PoolingWeights& w);
Activity pool_multisensory(const InputActivity& input, const PoolingWeights& w, double bias);

// Membrane potentials before the exponential (same sums as the pool_* functions).
Activity auditory_potential(const InputActivity& input, const PoolingWeights& w);
Activity visual_potential(const InputActivity& input, const PoolingWeights& w);
Activity multisensory_potential(const InputActivity& input, const PoolingWeights& w, double bias);

// exp() with the overflow guard; `population` names the layer in the error.
Activity exp_activation(const Activity& potential, const char* population);

PoolingActivity pool_all(const InputActivity& input, const PoolingWeights& w, double bias);

// Every unit divided by 1 + (total pooled activity / total unit count).
PoolingActivity divisive_normalize(PoolingActivity pooling);

struct Relatedness {
  double multi;     // share of multisensory activity
  double auditory;  // share of unisensory auditory activity
};

Relatedness relatedness_index(const PoolingActivity& pooling);

}  // namespace cinet
