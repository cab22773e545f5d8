#include "cinet/mu_fit.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "cinet/errors.hpp"

namespace cinet {

double mu_from_pcommon(double p, double c) {
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("p_common must lie strictly between 0 and 1");
  return std::log10(p / (1.0 - p)) / kLogitScale + c;
}

double c_from_gains(double gain_auditory, double gain_visual) {
  return 0.866 * gain_auditory - 1.4025 * gain_visual + 1.616;
}

CurveResiduals curve_residuals(const std::vector<Estimates>& network,
                               const std::vector<SweepPoint>& oracle) {
  if (network.size() != oracle.size() || network.empty()) {
    throw ConfigError("network and oracle curves differ in length");
  }
  double sq_a = 0.0;
  double sq_v = 0.0;
  for (std::size_t k = 0; k < oracle.size(); ++k) {
    const double ea = network[k].auditory.value() - oracle[k].auditory;
    const double ev = network[k].visual.value() - oracle[k].visual;
    sq_a += ea * ea;
    sq_v += ev * ev;
  }
  const double n = static_cast<double>(oracle.size());
  return {std::sqrt(sq_a / n), std::sqrt(sq_v / n), std::sqrt((sq_a + sq_v) / (2.0 * n))};
}

std::vector<double> bias_lattice(double center, double half_width, double step) {
  if (!(step > 0.0) || !(half_width >= step)) throw ConfigError("bias lattice: bad step or width");
  const long lo = static_cast<long>(std::ceil((center - half_width) / step - 1e-9));
  const long hi = static_cast<long>(std::floor((center + half_width) / step + 1e-9));
  std::vector<double> out;
  for (long k = lo; k <= hi; ++k) {
    // Round to the step's decimal precision so lattice values print cleanly.
    out.push_back(std::round(static_cast<double>(k) * step * 1e6) / 1e6);
  }
  return out;
}

BiasLattice::BiasLattice(const Network& network, double auditory_location,
                         const std::vector<double>& visual_locations, std::vector<double> biases)
    : biases_(std::move(biases)), curves_(biases_.size()) {
  std::vector<BiasSweepDecoder> decoders;
  decoders.reserve(visual_locations.size());
  for (double s_v : visual_locations) {
    decoders.emplace_back(network, StimulusEvent::audiovisual(auditory_location, s_v));
  }
  for (std::size_t b = 0; b < biases_.size(); ++b) {
    curves_[b].reserve(decoders.size());
    for (const auto& d : decoders) curves_[b].push_back(d.decode(biases_[b]));
  }
}

FitResult BiasLattice::fit(double p_common, const std::vector<SweepPoint>& oracle) const {
  std::size_t best = 0;
  CurveResiduals best_res{};
  for (std::size_t b = 0; b < biases_.size(); ++b) {
    const CurveResiduals res = curve_residuals(curves_[b], oracle);
    if (b == 0 || res.combined < best_res.combined) {
      best = b;
      best_res = res;
    }
  }
  if (best == 0 || best + 1 == biases_.size()) {
    std::ostringstream msg;
    msg << "best-fit bias " << biases_[best] << " for p_common " << p_common
        << " lies on the search boundary; widen the lattice";
    throw NumericError(msg.str());
  }
  return {biases_[best], best_res.auditory, best_res.visual, best_res.combined,
          p_common,      oracle,            curves_[best]};
}

FitResult fit_mu(double p_common, const NetworkParams& params, CIParams ci, const SweepSpec& spec) {
  ci.p_common = p_common;
  ci.validate();
  const double center = spec.lattice_center.value_or(
      mu_from_pcommon(p_common, c_from_gains(params.gain_auditory, params.gain_visual)));
  const Network network(params);
  const BiasLattice lattice(network, spec.auditory_location, spec.visual_locations,
                            bias_lattice(center, spec.lattice_half_width, spec.lattice_step));
  const auto oracle =
      ci_disparity_sweep(spec.auditory_location, spec.visual_locations, ci, spec.samples, spec.seed);
  return lattice.fit(p_common, oracle);
}

LogitFit fit_logit_curve(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw ConfigError("logit fit needs at least 3 points");
  std::vector<double> offsets;
  for (const auto& [p, mu] : points) offsets.push_back(mu - mu_from_pcommon(p, 0.0));
  const double c = std::accumulate(offsets.begin(), offsets.end(), 0.0) / static_cast<double>(offsets.size());
  double sq = 0.0;
  for (double o : offsets) sq += (o - c) * (o - c);
  return {c, std::sqrt(sq / static_cast<double>(offsets.size()))};
}

PlaneFit fit_c_plane(const std::vector<GainSample>& samples) {
  if (samples.size() < 4) throw ConfigError("plane fit needs at least 4 samples");
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd target(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& s = samples[static_cast<std::size_t>(k)];
    design.row(k) << s.gain_auditory, s.gain_visual, 1.0;
    target[k] = s.c;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 3) throw NumericError("gain samples are collinear; plane is not identifiable");
  const Eigen::Vector3d coef = qr.solve(target);
  const Eigen::VectorXd fitted = design * coef;
  std::vector<double> y(target.data(), target.data() + n);
  std::vector<double> y_hat(fitted.data(), fitted.data() + n);
  return {coef[0], coef[1], coef[2], r_squared(y, y_hat)};
}

double r_squared(const std::vector<double>& y, const std::vector<double>& y_hat) {
  if (y.size() != y_hat.size() || y.empty()) throw ConfigError("r_squared: size mismatch");
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    ss_res += (y[k] - y_hat[k]) * (y[k] - y_hat[k]);
    ss_tot += (y[k] - mean) * (y[k] - mean);
  }
  if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : 0.0;
  return 1.0 - ss_res / ss_tot;
}

}  // namespace cinet
