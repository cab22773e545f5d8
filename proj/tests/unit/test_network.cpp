#include <doctest.h>

#include <cmath>

#include "cinet/errors.hpp"
#include "cinet/network.hpp"
#include "cinet/readout.hpp"

using namespace cinet;

namespace {

NetworkParams with_bias(double bias) {
  NetworkParams p;
  p.bias = bias;
  return p;
}

}  // namespace

TEST_CASE("decoding example at strong fusion") {
  const NetworkOutput out = Network(with_bias(12.3)).forward(StimulusEvent::audiovisual(0, 20));
  CHECK(out.auditory() == 13);
  CHECK(out.visual() == 20);
}

TEST_CASE("symmetric and unisensory events") {
  const Network net(NetworkParams{});
  const NetworkOutput av = net.forward(StimulusEvent::audiovisual(0, 0));
  CHECK(av.auditory() == 0);
  CHECK(av.visual() == 0);
  CHECK((av.reconstruction.visual - av.reconstruction.visual.reverse()).cwiseAbs().maxCoeff() <
        1e-9 * av.reconstruction.visual.maxCoeff());

  const NetworkOutput a = net.forward(StimulusEvent::auditory_only(0));
  CHECK(a.auditory() == 0);
  CHECK_FALSE(a.visual_estimate.has_value());
  CHECK_THROWS_AS(a.visual(), ModalityAbsentError);

  const NetworkOutput v = net.forward(StimulusEvent::visual_only(-40));
  CHECK(v.visual() == -40);
  CHECK_THROWS_AS(v.auditory(), ModalityAbsentError);
  CHECK_FALSE(v.auditory_estimate.has_value());
}

TEST_CASE("uniform pooling reconstructs a flat auditory sum") {
  const Network net(NetworkParams{});
  const PoolingActivity flat{Activity::Constant(301, 2), Activity::Constant(301, 2), Activity::Constant(301, 2),
                             true};
  const ReconstructionActivity r = reconstruct(flat, net.weights());
  const Activity sum = r.left + r.right;
  CHECK((sum.array() - sum[0]).abs().maxCoeff() < 1e-9);
}

TEST_CASE("mirror antisymmetry") {
  const Network net(NetworkParams{});
  for (double sv : {4.0, 12.0, 20.0, 33.0, 57.0}) {
    for (double sa : {0.0, -6.0}) {
      const NetworkOutput pos = net.forward(StimulusEvent::audiovisual(sa, sv));
      const NetworkOutput neg = net.forward(StimulusEvent::audiovisual(-sa, -sv));
      CHECK(neg.auditory() == -pos.auditory());
      CHECK(neg.visual() == -pos.visual());
    }
  }
}

TEST_CASE("estimates are attracted toward the other modality") {
  const Network net(NetworkParams{});
  for (double sv = -60; sv <= 60; sv += 6) {
    const NetworkOutput out = net.forward(StimulusEvent::audiovisual(0, sv));
    CHECK(out.auditory() >= std::min(0.0, sv));
    CHECK(out.auditory() <= std::max(0.0, sv));
    CHECK(std::abs(out.visual() - sv) <= std::abs(out.auditory()));
  }
}

TEST_CASE("stronger bias means stronger fusion") {
  for (double sv : {8.0, 20.0, 36.0}) {
    double prev = -1;
    for (double mu : {8.0, 9.0, 10.0, 10.5, 11.0, 12.0, 12.3}) {
      const double shift = std::abs(Network(with_bias(mu)).forward(StimulusEvent::audiovisual(0, sv)).auditory());
      CHECK(shift >= prev);
      prev = shift;
    }
  }
}

TEST_CASE("decode is invariant to normalization and scaling") {
  const Network net(NetworkParams{});
  Rng rng(0);
  const InputActivity in = input_for_event(StimulusEvent::audiovisual(0, 16), net.params(), net.grid(),
                                           AuditoryWeights::uniform(301), Noise::kOff, rng);
  PoolingActivity raw = pool_all(in, net.weights(), 10.5);
  const PoolingActivity norm = divisive_normalize(raw);
  PoolingActivity scaled = norm;
  scaled.auditory *= 17.0;
  scaled.visual *= 17.0;
  scaled.multi *= 17.0;
  for (const PoolingActivity* p : {&raw, &scaled}) {
    const ReconstructionActivity a = reconstruct(*p, net.weights());
    const ReconstructionActivity b = reconstruct(norm, net.weights());
    CHECK(decode_auditory(a, net.grid()) == decode_auditory(b, net.grid()));
    CHECK(decode_visual(a, net.grid()) == decode_visual(b, net.grid()));
  }
}

TEST_CASE("product argmax sits near the half-height crossing") {
  const Network net(with_bias(12.3));
  const NetworkOutput out = net.forward(StimulusEvent::audiovisual(0, 20));
  const Activity l = out.reconstruction.left / out.reconstruction.left.maxCoeff();
  const Activity r = out.reconstruction.right / out.reconstruction.right.maxCoeff();
  Eigen::Index cross = 0;
  (l - r).cwiseAbs().minCoeff(&cross);
  CHECK(std::abs(net.grid().centers[static_cast<std::size_t>(cross)] - out.auditory()) <= 2);
}

TEST_CASE("bias sweep decoder matches full passes") {
  Network net(NetworkParams{});
  for (double sv : {-30.0, 6.0, 20.0, 64.0}) {
    const StimulusEvent e = StimulusEvent::audiovisual(0, sv);
    const BiasSweepDecoder fast(net, e);
    for (double mu : {7.0, 9.35, 10.5, 12.3, 14.0}) {
      net.set_bias(mu);
      const NetworkOutput full = net.forward(e);
      const Estimates quick = fast.decode(mu);
      CHECK(*quick.auditory == full.auditory());
      CHECK(*quick.visual == full.visual());
    }
  }
}

TEST_CASE("noisy forward pass is reproducible") {
  const NetworkParams p = with_bias(10.7);
  const AuditoryWeights alpha = AuditoryWeights::uniform(301);
  Rng r1(5), r2(5);
  for (int t = 0; t < 20; ++t) {
    const NetworkOutput a = forward_pass(StimulusEvent::audiovisual(0, 8), p, alpha, Noise::kPoisson, r1);
    const NetworkOutput b = forward_pass(StimulusEvent::audiovisual(0, 8), p, alpha, Noise::kPoisson, r2);
    CHECK(a.auditory() == b.auditory());
    CHECK(a.reconstruction.visual == b.reconstruction.visual);
  }
}

TEST_CASE("forward_pass follows parameter changes") {
  const AuditoryWeights alpha = AuditoryWeights::uniform(301);
  Rng rng(0);
  NetworkParams p = with_bias(12.3);
  CHECK(forward_pass(StimulusEvent::audiovisual(0, 20), p, alpha, Noise::kOff, rng).auditory() == 13);
  p.width = 80;
  p.scale_visual = 4.335;
  const double wide = forward_pass(StimulusEvent::audiovisual(0, 20), p, alpha, Noise::kOff, rng).auditory();
  CHECK(wide == Network(p).forward(StimulusEvent::audiovisual(0, 20)).auditory());
  CHECK(wide != 13);
}
