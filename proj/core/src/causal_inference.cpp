#include "cinet/causal_inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <numbers>
#include <string>

#include "cinet/errors.hpp"
#include "cinet/parallel.hpp"

namespace cinet {
namespace {

// exp() of anything below this underflows a double.
constexpr double kUnderflowExponent = 700.0;

struct LogMass {
  double log_sum;    // log sum_s exp(terms[s])
  double mean;       // sum_s s exp(terms[s]) / sum_s exp(terms[s])
};

template <typename LogTerm>
LogMass log_mass(const std::vector<double>& grid, LogTerm term) {
  double top = -std::numeric_limits<double>::infinity();
  for (double s : grid) top = std::max(top, term(s));
  double sum = 0.0;
  double weighted = 0.0;
  for (double s : grid) {
    const double e = std::exp(term(s) - top);
    sum += e;
    weighted += s * e;
  }
  return {top + std::log(sum), weighted / sum};
}

// exp(-(x - s)^2 / (2 var)) on a uniform grid, divided by its value at the grid
// point nearest x, via the ratio recurrence e(s + h) = e(s) r(s), r(s + h) = r(s) q.
// Returns the log of the divisor.
double relative_gaussian(double x, double var, const std::vector<double>& grid, std::vector<double>& out) {
  const std::size_t n = grid.size();
  const double h = grid[1] - grid[0];
  out.assign(n, 0.0);
  const double pos = std::clamp((x - grid.front()) / h, 0.0, static_cast<double>(n - 1));
  const auto c = static_cast<std::size_t>(std::lround(pos));
  const double d = x - grid[c];
  const double q = std::exp(-h * h / var);
  out[c] = 1.0;
  double r = std::exp((2.0 * d * h - h * h) / (2.0 * var));  // e(c+1) / e(c)
  for (std::size_t i = c + 1; i < n; ++i, r *= q) out[i] = out[i - 1] * r;
  r = std::exp((-2.0 * d * h - h * h) / (2.0 * var));  // e(c-1) / e(c)
  for (std::size_t i = c; i-- > 0; r *= q) out[i] = out[i + 1] * r;
  return -d * d / (2.0 * var);
}

}  // namespace

std::vector<double> hypothesis_grid(double lo, double hi, double step) {
  if (!(hi > lo) || !(step > 0.0)) throw ConfigError("hypothesis grid: need hi > lo and step > 0");
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(lo + step * static_cast<double>(i));
  return grid;
}

void CIParams::validate() const {
  if (!(sigma_auditory > 0.0) || !(sigma_visual > 0.0)) {
    throw ConfigError("oracle: likelihood sds must be positive");
  }
  if (!(p_common >= 0.0 && p_common <= 1.0)) throw ConfigError("oracle.p_common must lie in [0, 1]");
  if (hypotheses.size() < 2) throw ConfigError("oracle: hypothesis grid needs at least 2 points");
  const double step = hypotheses[1] - hypotheses[0];
  for (std::size_t i = 1; i < hypotheses.size(); ++i) {
    if (std::abs(hypotheses[i] - hypotheses[i - 1] - step) > 1e-9 || !(step > 0.0)) {
      throw ConfigError("oracle: hypothesis grid must be uniform and increasing");
    }
  }
}

CausalInferenceResult ci_single(double x_a, double x_v, const CIParams& params) {
  const auto& grid = params.hypotheses;
  const double var_a = params.sigma_auditory * params.sigma_auditory;
  const double var_v = params.sigma_visual * params.sigma_visual;

  auto gap = [&](double x, double var) {
    const double nearest = std::clamp(x, grid.front(), grid.back());
    return (x - nearest) * (x - nearest) / (2.0 * var);
  };
  if (!std::isfinite(x_a) || !std::isfinite(x_v) || gap(x_a, var_a) > kUnderflowExponent ||
      gap(x_v, var_v) > kUnderflowExponent) {
    throw NumericError("oracle: measurement (" + std::to_string(x_a) + ", " + std::to_string(x_v) +
                       ") has no likelihood mass on the hypothesis grid");
  }

  // Log normal densities; the shared 1/|S| prior and constants are kept so the
  // two marginal likelihoods are directly comparable.
  const double norm_a = -0.5 * std::log(2.0 * std::numbers::pi * var_a);
  const double norm_v = -0.5 * std::log(2.0 * std::numbers::pi * var_v);
  thread_local std::vector<double> ea, ev;
  const double top_a = relative_gaussian(x_a, var_a, grid, ea) + norm_a;
  const double top_v = relative_gaussian(x_v, var_v, grid, ev) + norm_v;

  double sum_a = 0.0, sum_v = 0.0, joint_sum = 0.0;
  double mom_a = 0.0, mom_v = 0.0, mom_j = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double j = ea[i] * ev[i];
    sum_a += ea[i];
    sum_v += ev[i];
    joint_sum += j;
    mom_a += grid[i] * ea[i];
    mom_v += grid[i] * ev[i];
    mom_j += grid[i] * j;
  }
  const LogMass aud{top_a + std::log(sum_a), mom_a / sum_a};
  const LogMass vis{top_v + std::log(sum_v), mom_v / sum_v};
  LogMass joint;
  if (joint_sum > 1e-250) {
    joint = {top_a + top_v + std::log(joint_sum), mom_j / joint_sum};
  } else {
    // Likelihoods barely overlap; redo the product in log space.
    joint = log_mass(grid, [&](double h) {
      return norm_a - (x_a - h) * (x_a - h) / (2.0 * var_a) + norm_v - (x_v - h) * (x_v - h) / (2.0 * var_v);
    });
  }

  const double log_prior = -std::log(static_cast<double>(grid.size()));
  const double log_common = joint.log_sum + log_prior;
  const double log_separate = aud.log_sum + log_prior + vis.log_sum + log_prior;

  const double p = params.p_common;
  double post;
  if (p <= 0.0) {
    post = 0.0;
  } else if (p >= 1.0) {
    post = 1.0;
  } else {
    const double log_odds = (std::log(p) + log_common) - (std::log1p(-p) + log_separate);
    post = 1.0 / (1.0 + std::exp(-log_odds));
  }

  CausalInferenceResult r{};
  r.p_common_posterior = post;
  if (params.rule == EstimateRule::kGridPosteriorMean) {
    r.fused = joint.mean;
    r.auditory_segregated = aud.mean;
    r.visual_segregated = vis.mean;
  } else {
    r.fused = (x_a / var_a + x_v / var_v) / (1.0 / var_a + 1.0 / var_v);
    r.auditory_segregated = x_a;
    r.visual_segregated = x_v;
  }
  r.auditory = post * r.fused + (1.0 - post) * r.auditory_segregated;
  r.visual = post * r.fused + (1.0 - post) * r.visual_segregated;
  return r;
}

MeanEstimates ci_mean_estimates(double s_a, double s_v, const CIParams& params,
                                std::size_t samples, std::uint64_t seed) {
  params.validate();
  if (samples == 0) throw ConfigError("oracle: need at least one Monte Carlo sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  double sum_a = 0.0;
  double sum_v = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double x_a = s_a + params.sigma_auditory * noise(rng);
    const double x_v = s_v + params.sigma_visual * noise(rng);
    const CausalInferenceResult r = ci_single(x_a, x_v, params);
    sum_a += r.auditory;
    sum_v += r.visual;
  }
  const double n = static_cast<double>(samples);
  return {sum_a / n, sum_v / n};
}

std::vector<SweepPoint> ci_disparity_sweep(double s_a, const std::vector<double>& visual_locations,
                                           const CIParams& params, std::size_t samples,
                                           std::uint64_t seed) {
  params.validate();
  std::vector<SweepPoint> curve(visual_locations.size());
  parallel_for(visual_locations.size(), [&](std::size_t k) {
    const double s_v = visual_locations[k];
    const MeanEstimates m = ci_mean_estimates(s_a, s_v, params, samples, seed + k);
    curve[k] = {s_v - s_a, s_v, m.auditory, m.visual};
  });
  return curve;
}

std::vector<double> default_visual_sweep() { return hypothesis_grid(-90.0, 90.0, 2.0); }

}  // namespace cinet
