#include <doctest.h>

#include <cmath>

#include "cinet/errors.hpp"
#include "cinet/mu_fit.hpp"
#include "cinet/readout.hpp"

using namespace cinet;

namespace {

CIParams readout_oracle(const NetworkParams& p) {
  const UnisensoryReadout r = read_unisensory(Network(p));
  CIParams ci;
  ci.sigma_auditory = r.auditory.sd;
  ci.sigma_visual = r.visual.sd;
  return ci;
}

double law(double p, double c) { return std::log10(p / (1 - p)) / 0.7 + c; }

}  // namespace

TEST_CASE("scaled logit law") {
  CHECK(mu_from_pcommon(0.5, 10.5) == 10.5);
  CHECK(mu_from_pcommon(0.5, -3.25) == -3.25);
  CHECK(mu_from_pcommon(0.95, 10.5) == doctest::Approx(12.33).epsilon(1e-3));
  CHECK(mu_from_pcommon(0.1, 10.5) == doctest::Approx(9.14).epsilon(1e-3));
  CHECK_THROWS_AS(mu_from_pcommon(0.0, 10.5), ConfigError);
  CHECK_THROWS_AS(mu_from_pcommon(1.0, 10.5), ConfigError);
}

TEST_CASE("gain rule") {
  CHECK(c_from_gains(140, 80) == doctest::Approx(10.656));
  CHECK(c_from_gains(0, 0) == doctest::Approx(1.616));
  CHECK(c_from_gains(151.5, 80) - c_from_gains(140, 80) == doctest::Approx(0.866 * 11.5));
}

TEST_CASE("logit fit recovers exact data") {
  std::vector<std::pair<double, double>> pts;
  for (double p : {0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95}) pts.emplace_back(p, law(p, 7.25));
  const LogitFit f = fit_logit_curve(pts);
  CHECK(f.c == doctest::Approx(7.25).epsilon(1e-12));
  CHECK(f.rmse < 1e-12);
  pts.resize(2);
  CHECK_THROWS_AS(fit_logit_curve(pts), ConfigError);
}

TEST_CASE("plane fit recovers exact data") {
  std::vector<GainSample> s;
  for (double ga : {120.0, 140.0, 160.0}) {
    for (double gv : {70.0, 80.0, 90.0}) s.push_back({ga, gv, c_from_gains(ga, gv)});
  }
  const PlaneFit f = fit_c_plane(s);
  CHECK(f.coef_auditory == doctest::Approx(0.866).epsilon(1e-9));
  CHECK(f.coef_visual == doctest::Approx(-1.4025).epsilon(1e-9));
  CHECK(f.intercept == doctest::Approx(1.616).epsilon(1e-6));
  CHECK(f.r2 == doctest::Approx(1.0));
  std::vector<GainSample> line;
  for (double g : {100.0, 110.0, 120.0, 130.0}) line.push_back({g, g / 2, 1.0});
  CHECK_THROWS_AS(fit_c_plane(line), NumericError);
}

TEST_CASE("coefficient of determination") {
  CHECK(r_squared({1, 2, 3, 4}, {1, 2, 3, 4}) == 1.0);
  CHECK(r_squared({1, 2, 3, 4}, {2.5, 2.5, 2.5, 2.5}) == doctest::Approx(0.0));
  CHECK(r_squared({0, 0, 2, 2}, {0, 1, 1, 2}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(r_squared({1, 2}, {1}), ConfigError);
}

TEST_CASE("bias lattice") {
  const std::vector<double> l = bias_lattice(10.5, 5, 0.05);
  CHECK(l.size() == 201);
  CHECK(l.front() == doctest::Approx(5.5));
  CHECK(l.back() == doctest::Approx(15.5));
  for (double b : l) CHECK(std::abs(b / 0.05 - std::round(b / 0.05)) < 1e-9);
  const std::vector<double> off = bias_lattice(10.52, 0.1, 0.05);
  CHECK(off == std::vector<double>{10.45, 10.5, 10.55, 10.6});
  CHECK_THROWS_AS(bias_lattice(10, 0.01, 0.05), ConfigError);
}

TEST_CASE("boundary optimum is reported") {
  const NetworkParams p;
  CIParams ci = readout_oracle(p);
  SweepSpec spec;
  spec.visual_locations = {-20, -10, 0, 10, 20};
  spec.samples = 500;
  spec.lattice_center = 4.0;  // far below the optimum
  spec.lattice_half_width = 1.0;
  CHECK_THROWS_AS(fit_mu(0.5, p, ci, spec), NumericError);
}

TEST_CASE("network decode agrees with the oracle at moderate disparity") {
  NetworkParams p;
  p.bias = 10.5;
  CIParams ci = readout_oracle(p);
  ci.p_common = 0.5;
  const double oracle = ci_mean_estimates(0, 20, ci, 10000, 1).auditory;
  const double net = Network(p).forward(StimulusEvent::audiovisual(0, 20)).auditory();
  CHECK(std::abs(net - oracle) <= 1.0);
}

TEST_CASE("fitted bias at the default network") {
  const NetworkParams p;
  const CIParams ci = readout_oracle(p);
  const SweepSpec spec;
  const FitResult half = fit_mu(0.5, p, ci, spec);
  CHECK(half.mu == doctest::Approx(10.5).epsilon(0.05 / 10.5 + 1e-9));
  CHECK(half.network.size() == 91);
  CHECK(std::abs(half.mu / 0.05 - std::round(half.mu / 0.05)) < 1e-9);
  CHECK_FALSE(half.negative_bias());
  const FitResult high = fit_mu(0.95, p, ci, spec);
  CHECK(high.mu == doctest::Approx(12.3).epsilon(0.05 / 12.3 + 1e-9));
}

// The objective is flat between roughly 8.0 and 8.7 at this prior, so the
// lattice optimum can land away from the reference value.
TEST_CASE("fitted bias at a low prior" * doctest::may_fail()) {
  const NetworkParams p;
  const FitResult low = fit_mu(0.05, p, readout_oracle(p), SweepSpec{});
  CHECK(low.mu == doctest::Approx(8.65).epsilon(0.05 / 8.65 + 1e-9));
}

TEST_CASE("fitted bias rises with the prior") {
  const NetworkParams p;
  const CIParams ci = readout_oracle(p);
  SweepSpec spec;
  spec.samples = 2000;
  double prev = -1e9;
  for (double pc : {0.05, 0.3, 0.5, 0.7, 0.95}) {
    const double mu = fit_mu(pc, p, ci, spec).mu;
    CHECK(mu >= prev);
    prev = mu;
  }
}

TEST_CASE("residuals") {
  const std::vector<SweepPoint> oracle = {{0, 0, 0, 0}, {10, 10, 2, 9}};
  const std::vector<Estimates> net = {{1.0, 0.0}, {2.0, 6.0}};
  const CurveResiduals r = curve_residuals(net, oracle);
  CHECK(r.auditory == doctest::Approx(std::sqrt(0.5)));
  CHECK(r.visual == doctest::Approx(std::sqrt(4.5)));
  CHECK(r.combined == doctest::Approx(std::sqrt(10.0 / 4)));
}
