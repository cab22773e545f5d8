#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cinet/causal_inference.hpp"
#include "cinet/network.hpp"

namespace cinet {

// Slope divisor of the scaled logit that maps p_common to the multisensory bias.
inline constexpr double kLogitScale = 0.7;

// mu = log10(p / (1 - p)) / 0.7 + c. Throws ConfigError outside (0, 1).
double mu_from_pcommon(double p_common, double c);

// c = 0.866 gA - 1.4025 gV + 1.616.
double c_from_gains(double gain_auditory, double gain_visual);

struct SweepSpec {
  double auditory_location = 0.0;
  std::vector<double> visual_locations = default_visual_sweep();
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  double lattice_step = 0.05;
  double lattice_half_width = 5.0;
  // Lattice center; defaults to mu_from_pcommon(p, c_from_gains(gA, gV)).
  std::optional<double> lattice_center;
};

struct CurveResiduals {
  double auditory;  // rmse of network vs oracle auditory estimates
  double visual;
  double combined;  // sqrt of the mean of both squared residuals
};

CurveResiduals curve_residuals(const std::vector<Estimates>& network,
                               const std::vector<SweepPoint>& oracle);

struct FitResult {
  double mu;
  double rmse_auditory;
  double rmse_visual;
  double objective;
  double p_common;
  std::vector<SweepPoint> oracle;
  std::vector<Estimates> network;  // decodes at the fitted mu, one per sweep point
  bool negative_bias() const { return mu < 0.0; }
};

// Noiseless network decodes over a visual sweep for every bias on a lattice.
class BiasLattice {
 public:
  BiasLattice(const Network& network, double auditory_location,
              const std::vector<double>& visual_locations, std::vector<double> biases);

  const std::vector<double>& biases() const { return biases_; }
  // Decodes for biases()[b], one per sweep point.
  const std::vector<Estimates>& curve(std::size_t b) const { return curves_[b]; }

  // Best bias against an oracle curve (ties go to the smaller bias). Throws
  // NumericError when the optimum sits on the lattice boundary.
  FitResult fit(double p_common, const std::vector<SweepPoint>& oracle) const;

 private:
  std::vector<double> biases_;
  std::vector<std::vector<Estimates>> curves_;
};

// Lattice of `step`-aligned biases within center +- half_width.
std::vector<double> bias_lattice(double center, double half_width, double step);

// Oracle likelihood sds are taken from `ci` (normally the readout of `params`);
// its p_common is replaced by `p_common`.
FitResult fit_mu(double p_common, const NetworkParams& params, CIParams ci, const SweepSpec& spec);

struct LogitFit {
  double c;
  double rmse;
};

// Least-squares c for mu = log10(p/(1-p))/0.7 + c with the slope held fixed.
LogitFit fit_logit_curve(const std::vector<std::pair<double, double>>& p_and_mu);

struct PlaneFit {
  double coef_auditory;
  double coef_visual;
  double intercept;
  double r2;
};

struct GainSample {
  double gain_auditory;
  double gain_visual;
  double c;
};

// Ordinary least squares c ~ gA + gV + 1. Throws NumericError on a rank-deficient design.
PlaneFit fit_c_plane(const std::vector<GainSample>& samples);

// Coefficient of determination of y_hat against y.
double r_squared(const std::vector<double>& y, const std::vector<double>& y_hat);

}  // namespace cinet
