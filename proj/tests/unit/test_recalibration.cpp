#include <doctest.h>

#include <cmath>

#include "cinet/errors.hpp"
#include "cinet/recalibration.hpp"

using namespace cinet;

namespace {

Network network(double bias = 10.7) {
  NetworkParams p;
  p.bias = bias;
  return Network(p);
}

AdaptationState fresh(double rate = 0.65, double decay = 0.009) {
  return AdaptationState::initial(301, rate, decay);
}

TrialSchedule train(int count, double sa, double sv, int delay, double probe_at) {
  TrialSchedule s;
  for (int k = 0; k < count; ++k) {
    if (k > 0) s.add_blanks(1);
    s.add_stimulus(StimulusEvent::audiovisual(sa, sv), true, k + 1);
  }
  s.add_blanks(delay);
  s.add_stimulus(StimulusEvent::auditory_only(probe_at), true, -1);
  return s;
}

double probe_shift(const ScheduleResult& r) {
  const ProbeRecord& p = r.probes.back();
  return *p.estimates.auditory - *p.event.auditory;
}

}  // namespace

TEST_CASE("zero reconstruction error leaves the weights alone") {
  const Activity theta = Activity::LinSpaced(301, 1, 50);
  const InputActivity in{theta, theta.reverse(), Activity::Zero(301)};
  const ReconstructionActivity recon{4 * theta, 0.5 * theta.reverse(), Activity::Zero(301)};
  const AdaptationState s = update_adaptation(fresh(), in, recon);
  CHECK(s.alpha.left == Activity::Ones(301));
  CHECK(s.alpha.right == Activity::Ones(301));
  CHECK(s.clock == 1);
}

TEST_CASE("update needs auditory input") {
  const InputActivity in{Activity::Zero(301), Activity::Zero(301), Activity::Ones(301)};
  const ReconstructionActivity recon{Activity::Ones(301), Activity::Ones(301), Activity::Ones(301)};
  CHECK_THROWS_AS(update_adaptation(fresh(), in, recon), NumericError);
}

TEST_CASE("visual capture to the right shifts weight toward the rightward channel") {
  const Network net = network();
  const NetworkOutput out = net.forward(StimulusEvent::audiovisual(0, 8));
  const AdaptationState s = update_adaptation(fresh(), out.input, out.reconstruction);
  double right = 0, left = 0;
  int n = 0;
  for (std::size_t i = 0; i < 301; ++i) {
    if (std::abs(net.grid().centers[i]) > 20) continue;
    right += s.alpha.right[static_cast<Eigen::Index>(i)] - 1;
    left += s.alpha.left[static_cast<Eigen::Index>(i)] - 1;
    ++n;
  }
  CHECK(right / n > 0);
  CHECK(left / n < 0);
}

TEST_CASE("decay toward one") {
  AdaptationState s = fresh();
  CHECK(decay_adaptation(s).alpha.left == Activity::Ones(301));
  s.alpha.left[0] = 1.05;
  s.alpha.right[5] = 1.005;
  s.alpha.right[6] = 0.95;
  const AdaptationState d = decay_adaptation(s);
  CHECK(d.alpha.left[0] == doctest::Approx(1.041));
  CHECK(d.alpha.right[5] == 1.0);
  CHECK(d.alpha.right[6] == doctest::Approx(0.959));
  CHECK(d.clock == 1);
  CHECK(seconds_to_recover(s) == 6);
  AdaptationState r = s;
  for (int k = 0; k < 6; ++k) r = decay_adaptation(r);
  CHECK(r.alpha.left == Activity::Ones(301));
  CHECK(r.alpha.right == Activity::Ones(301));
  s.decay = 0;
  CHECK_THROWS_AS(seconds_to_recover(s), ConfigError);
  CHECK_THROWS_AS(AdaptationState::initial(301, -1, 0.009), ConfigError);
}

TEST_CASE("a single exposure leaves an aftereffect") {
  const ScheduleResult r = run_schedule(train(1, 0, 8, 1, 0), network(11.3), fresh(), Noise::kOff, 1);
  CHECK(probe_shift(r) > 0);
  // At the time-course bias one exposure stays below a grid step.
  const ScheduleResult weak = run_schedule(train(1, 0, 8, 1, 0), network(), fresh(), Noise::kOff, 1);
  CHECK(probe_shift(weak) == 0);
}

TEST_CASE("aftereffect follows the sign of the disparity") {
  const ScheduleResult right = run_schedule(train(20, 0, 8, 1, 0), network(), fresh(), Noise::kOff, 1);
  const ScheduleResult left = run_schedule(train(20, 0, -8, 1, 0), network(), fresh(), Noise::kOff, 1);
  CHECK(probe_shift(right) > 0);
  CHECK(probe_shift(left) == -probe_shift(right));
}

TEST_CASE("no learning means no change") {
  const ScheduleResult r = run_schedule(train(20, 0, 8, 1, 0), network(), fresh(0.0), Noise::kOff, 1);
  for (const ProbeRecord& p : r.probes) {
    if (p.label > 0) CHECK(*p.estimates.auditory == *r.probes.front().estimates.auditory);
  }
  CHECK(probe_shift(r) == 0);
  CHECK(r.final_state.alpha.left == Activity::Ones(301));
}

TEST_CASE("weights and probes recover after enough silence") {
  const Network net = network();
  TrialSchedule s = train(20, 0, 8, 0, 0);
  s.trials.pop_back();
  const ScheduleResult trained = run_schedule(s, net, fresh(), Noise::kOff, 1);
  const int wait = seconds_to_recover(trained.final_state);
  CHECK(wait > 0);
  const ScheduleResult r = run_schedule(train(20, 0, 8, wait, 0), net, fresh(), Noise::kOff, 1);
  CHECK(probe_shift(r) == 0);
  TrialSchedule quiet = s;
  quiet.add_blanks(wait);
  const ScheduleResult q = run_schedule(quiet, net, fresh(), Noise::kOff, 1);
  CHECK(q.final_state.alpha.left == Activity::Ones(301));
  CHECK(q.final_state.alpha.right == Activity::Ones(301));
}

TEST_CASE("aftereffect grows with repetitions") {
  double prev = -1;
  for (int reps : {1, 2, 5, 10, 20}) {
    const double shift = probe_shift(run_schedule(train(reps, 0, 8, 1, 0), network(11.3), fresh(), Noise::kOff, 1));
    CHECK(shift >= prev);
    prev = shift;
  }
}

TEST_CASE("clock and probe records") {
  const ScheduleResult r = run_schedule(train(3, 0, 8, 5, 0), network(), fresh(), Noise::kOff, 1);
  REQUIRE(r.probes.size() == 4);
  CHECK(r.probes[0].clock == 0);
  CHECK(r.probes[1].clock == 2);
  CHECK(r.probes[3].clock == 10);
  CHECK(r.probes[3].label == -1);
  CHECK(r.final_state.clock == 11);
  CHECK(r.probes[0].mean_alpha_left == 1.0);
}

TEST_CASE("visual-only seconds relax the weights") {
  TrialSchedule s;
  s.add_stimulus(StimulusEvent::audiovisual(0, 8));
  s.add_stimulus(StimulusEvent::visual_only(8));
  const ScheduleResult r = run_schedule(s, network(), fresh(), Noise::kOff, 1);
  TrialSchedule b;
  b.add_stimulus(StimulusEvent::audiovisual(0, 8));
  b.add_blanks(1);
  const ScheduleResult ref = run_schedule(b, network(), fresh(), Noise::kOff, 1);
  CHECK(r.final_state.alpha.left == ref.final_state.alpha.left);
}

TEST_CASE("noisy schedules are reproducible") {
  const Network net = network();
  const TrialSchedule s = train(10, 0, 8, 1, 0);
  const ScheduleResult a = run_schedule(s, net, fresh(), Noise::kPoisson, 21);
  const ScheduleResult b = run_schedule(s, net, fresh(), Noise::kPoisson, 21);
  REQUIRE(a.probes.size() == b.probes.size());
  for (std::size_t k = 0; k < a.probes.size(); ++k) {
    CHECK(*a.probes[k].estimates.auditory == *b.probes[k].estimates.auditory);
  }
  CHECK(a.final_state.alpha.left == b.final_state.alpha.left);
}

TEST_CASE("pooled error scope") {
  const Network net = network();
  const NetworkOutput out = net.forward(StimulusEvent::audiovisual(0, 8));
  const AdaptationState pooled = update_adaptation(fresh(), out.input, out.reconstruction, ErrorScope::kAllAuditory);
  const AdaptationState split = update_adaptation(fresh(), out.input, out.reconstruction);
  CHECK(pooled.alpha.left != Activity::Ones(301));
  CHECK((pooled.alpha.left.array() > 0).all());
  CHECK(pooled.clock == split.clock);
}
