#pragma once

#include <memory>
#include <optional>

#include "cinet/input_layer.hpp"
#include "cinet/pooling.hpp"
#include "cinet/spatial.hpp"

namespace cinet {

struct ReconstructionActivity {
  Activity left;
  Activity right;
  Activity visual;
};

struct NetworkOutput {
  InputActivity input;
  PoolingActivity pooling;  // after divisive normalization
  ReconstructionActivity reconstruction;
  std::optional<double> auditory_estimate;
  std::optional<double> visual_estimate;

  // Throw ModalityAbsentError when the modality was not stimulated.
  double auditory() const;
  double visual() const;
};

// Feedback through the feedforward synapses: rho = W r for each pathway.
ReconstructionActivity reconstruct(const PoolingActivity& pooling, const PoolingWeights& w);

// Location of the maximal visual reconstruction unit.
double decode_visual(const ReconstructionActivity& recon, const SpatialGrid& grid);

// Location maximizing rho^L * rho^R, i.e. where the two auditory
// reconstructions cross at half height.
double decode_auditory(const ReconstructionActivity& recon, const SpatialGrid& grid);

// Parameters, grid and the stimulus-independent weights they imply.
class Network {
 public:
  explicit Network(NetworkParams params, SpatialGrid grid = default_grid());

  const NetworkParams& params() const { return params_; }
  const SpatialGrid& grid() const { return grid_; }
  const PoolingWeights& weights() const { return *weights_; }

  // The multisensory bias does not enter any weight, so it can change freely.
  void set_bias(double bias);

  // Replaces all parameters; weights are rebuilt only if a weight-shaping one changed.
  void set_params(const NetworkParams& params);

  NetworkOutput forward(const StimulusEvent& event, const AuditoryWeights& alpha, Noise noise,
                        Rng& rng) const;
  // Noiseless pass with unadapted inputs.
  NetworkOutput forward(const StimulusEvent& event) const;

 private:
  NetworkParams params_;
  SpatialGrid grid_;
  std::shared_ptr<const PoolingWeights> weights_;
};

// input -> pooling -> normalization -> reconstruction -> decode on the default
// grid. Weights are cached per thread and rebuilt only when a weight-shaping
// parameter changes.
NetworkOutput forward_pass(const StimulusEvent& event, const NetworkParams& params,
                           const AuditoryWeights& alpha, Noise noise, Rng& rng);

struct Estimates {
  std::optional<double> auditory;
  std::optional<double> visual;
};

// Noiseless decodes of one event for many multisensory biases. Normalization
// scales every reconstruction unit equally, and the bias only multiplies the
// multisensory activity by exp(bias), so each decode is a vector blend of six
// precomputed reconstructions.
class BiasSweepDecoder {
 public:
  BiasSweepDecoder(const Network& network, const StimulusEvent& event,
                   const AuditoryWeights* alpha = nullptr);

  Estimates decode(double bias) const;

 private:
  const SpatialGrid* grid_;
  StimulusEvent event_;
  double multi_peak_potential_;
  Activity uni_left_, uni_right_, uni_visual_;
  Activity multi_left_, multi_right_, multi_visual_;
};

}  // namespace cinet
