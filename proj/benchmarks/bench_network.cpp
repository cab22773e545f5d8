#include <benchmark/benchmark.h>

#include "cinet/causal_inference.hpp"
#include "cinet/mu_fit.hpp"
#include "cinet/network.hpp"
#include "cinet/recalibration.hpp"

using namespace cinet;

static void BM_ForwardPass(benchmark::State& state) {
  const Network net(NetworkParams{});
  double sv = -40;
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.forward(StimulusEvent::audiovisual(0, sv)));
    sv = sv >= 40 ? -40 : sv + 1;
  }
}
BENCHMARK(BM_ForwardPass);

static void BM_WeightBuild(benchmark::State& state) {
  const NetworkParams p;
  const SpatialGrid grid = default_grid();
  for (auto _ : state) benchmark::DoNotOptimize(PoolingWeights::build(p, grid));
}
BENCHMARK(BM_WeightBuild);

static void BM_BiasSweepDecode(benchmark::State& state) {
  const Network net(NetworkParams{});
  const BiasSweepDecoder dec(net, StimulusEvent::audiovisual(0, 12));
  double mu = 8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dec.decode(mu));
    mu = mu >= 13 ? 8 : mu + 0.05;
  }
}
BENCHMARK(BM_BiasSweepDecode);

static void BM_CiSingle(benchmark::State& state) {
  CIParams ci;
  double xv = -40;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ci_single(0.5, xv, ci));
    xv = xv >= 40 ? -40 : xv + 0.7;
  }
}
BENCHMARK(BM_CiSingle);

static void BM_CiMeanEstimates(benchmark::State& state) {
  CIParams ci;
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ci_mean_estimates(0, 15, ci, samples, 3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CiMeanEstimates)->Arg(1000)->Arg(10000);

static void BM_AdaptationSchedule(benchmark::State& state) {
  NetworkParams p;
  p.bias = 10.7;
  const Network net(p);
  TrialSchedule s;
  for (int k = 0; k < 20; ++k) {
    if (k) s.add_blanks(1);
    s.add_stimulus(StimulusEvent::audiovisual(0, 8), true);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_schedule(s, net, AdaptationState::initial(301, 0.65, 0.009), Noise::kOff, 1));
  }
}
BENCHMARK(BM_AdaptationSchedule);

BENCHMARK_MAIN();
