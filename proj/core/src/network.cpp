#include "cinet/network.hpp"

#include <cmath>
#include <sstream>

#include "cinet/errors.hpp"
#include "cinet/readout.hpp"

namespace cinet {
namespace {

bool is_flat(const Activity& a) {
  const double hi = a.maxCoeff();
  const double lo = a.minCoeff();
  return hi - lo <= 1e-12 * std::abs(hi);
}

}  // namespace

double NetworkOutput::auditory() const {
  if (!auditory_estimate) throw ModalityAbsentError("no auditory stimulus in this event");
  return *auditory_estimate;
}

double NetworkOutput::visual() const {
  if (!visual_estimate) throw ModalityAbsentError("no visual stimulus in this event");
  return *visual_estimate;
}

ReconstructionActivity reconstruct(const PoolingActivity& pooling, const PoolingWeights& w) {
  return {w.left * pooling.auditory + w.multi_left * pooling.multi,
          w.right * pooling.auditory + w.multi_right * pooling.multi,
          w.visual * pooling.visual + w.multi_visual * pooling.multi};
}

double decode_visual(const ReconstructionActivity& recon, const SpatialGrid& grid) {
  if (is_flat(recon.visual)) throw ModalityAbsentError("visual reconstruction is flat");
  return argmax_location(recon.visual, grid);
}

double decode_auditory(const ReconstructionActivity& recon, const SpatialGrid& grid) {
  const Activity product = recon.left.cwiseProduct(recon.right);
  if (is_flat(product)) throw ModalityAbsentError("auditory reconstruction is flat");
  return argmax_location(product, grid);
}

Network::Network(NetworkParams params, SpatialGrid grid)
    : params_(params),
      grid_(std::move(grid)),
      weights_(std::make_shared<const PoolingWeights>(PoolingWeights::build(params_, grid_))) {}

void Network::set_bias(double bias) {
  if (!std::isfinite(bias)) throw ConfigError("network.bias must be finite");
  params_.bias = bias;
}

void Network::set_params(const NetworkParams& params) {
  params.validate();
  if (!params.same_weights_as(params_)) {
    weights_ = std::make_shared<const PoolingWeights>(PoolingWeights::build(params, grid_));
  }
  params_ = params;
}

NetworkOutput Network::forward(const StimulusEvent& event, const AuditoryWeights& alpha,
                               Noise noise, Rng& rng) const {
  NetworkOutput out;
  out.input = input_for_event(event, params_, grid_, alpha, noise, rng);
  out.pooling = divisive_normalize(pool_all(out.input, *weights_, params_.bias));
  out.reconstruction = reconstruct(out.pooling, *weights_);
  if (event.has_auditory()) out.auditory_estimate = decode_auditory(out.reconstruction, grid_);
  if (event.has_visual()) out.visual_estimate = decode_visual(out.reconstruction, grid_);
  return out;
}

NetworkOutput Network::forward(const StimulusEvent& event) const {
  Rng unused(0);
  return forward(event, AuditoryWeights::uniform(grid_.size()), Noise::kOff, unused);
}

NetworkOutput forward_pass(const StimulusEvent& event, const NetworkParams& params,
                           const AuditoryWeights& alpha, Noise noise, Rng& rng) {
  thread_local Network cached{params};
  cached.set_params(params);
  return cached.forward(event, alpha, noise, rng);
}

BiasSweepDecoder::BiasSweepDecoder(const Network& network, const StimulusEvent& event,
                                   const AuditoryWeights* alpha)
    : grid_(&network.grid()), event_(event) {
  Rng unused(0);
  const AuditoryWeights uniform = AuditoryWeights::uniform(grid_->size());
  const InputActivity in = input_for_event(event, network.params(), *grid_,
                                           alpha ? *alpha : uniform, Noise::kOff, unused);
  const PoolingWeights& w = network.weights();
  const Activity v_multi = multisensory_potential(in, w, 0.0);
  multi_peak_potential_ = v_multi.maxCoeff();
  const Activity r_aud = exp_activation(auditory_potential(in, w), "auditory");
  const Activity r_vis = exp_activation(visual_potential(in, w), "visual");
  const Activity r_multi = exp_activation(v_multi, "multisensory");
  uni_left_ = w.left * r_aud;
  uni_right_ = w.right * r_aud;
  uni_visual_ = w.visual * r_vis;
  multi_left_ = w.multi_left * r_multi;
  multi_right_ = w.multi_right * r_multi;
  multi_visual_ = w.multi_visual * r_multi;
}

Estimates BiasSweepDecoder::decode(double bias) const {
  if (!(multi_peak_potential_ + bias <= kMaxMembranePotential)) {
    std::ostringstream msg;
    msg << "multisensory pooling potential " << multi_peak_potential_ + bias << " exceeds "
        << kMaxMembranePotential;
    throw NumericError(msg.str());
  }
  const double gain = std::exp(bias);
  ReconstructionActivity recon{uni_left_ + gain * multi_left_, uni_right_ + gain * multi_right_,
                               uni_visual_ + gain * multi_visual_};
  Estimates est;
  if (event_.has_auditory()) est.auditory = decode_auditory(recon, *grid_);
  if (event_.has_visual()) est.visual = decode_visual(recon, *grid_);
  return est;
}

}  // namespace cinet
