#include "cinet/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "cinet/causal_inference.hpp"
#include "cinet/errors.hpp"
#include "cinet/mu_fit.hpp"
#include "cinet/network.hpp"
#include "cinet/readout.hpp"
#include "cinet/recalibration.hpp"

namespace cinet {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string label(double value) {
  std::ostringstream s;
  s << value;
  return s.str();
}

std::vector<double> visual_sweep(const ScenarioConfig& cfg) {
  const double from = cfg.real("sweep.visual_from");
  const double to = cfg.real("sweep.visual_to");
  const double step = cfg.real("sweep.visual_step");
  if (!(step > 0.0)) throw ConfigError("sweep.visual_step must be positive");
  if (to < from) throw ConfigError("sweep.visual_to is below sweep.visual_from");
  std::vector<double> out;
  const long n = std::lround(std::floor((to - from) / step + 1e-9));
  for (long k = 0; k <= n; ++k) out.push_back(from + static_cast<double>(k) * step);
  return out;
}

CIParams oracle_params(const ScenarioConfig& cfg, const Network& network, double p_common) {
  CIParams ci;
  const auto sa = cfg.maybe_real("oracle.sigma_auditory");
  const auto sv = cfg.maybe_real("oracle.sigma_visual");
  if (!sa || !sv) {
    const UnisensoryReadout r = read_unisensory(network);
    ci.sigma_auditory = sa.value_or(r.auditory.sd);
    ci.sigma_visual = sv.value_or(r.visual.sd);
  } else {
    ci.sigma_auditory = *sa;
    ci.sigma_visual = *sv;
  }
  ci.p_common = p_common;
  ci.hypotheses = hypothesis_grid(cfg.real("oracle.hyp_from"), cfg.real("oracle.hyp_to"),
                                  cfg.real("oracle.hyp_step"));
  ci.rule = cfg.estimate_rule();
  ci.validate();
  return ci;
}

SweepSpec sweep_spec(const ScenarioConfig& cfg) {
  SweepSpec spec;
  spec.auditory_location = cfg.real("sweep.auditory");
  spec.visual_locations = visual_sweep(cfg);
  const long samples = cfg.integer("oracle.samples");
  if (samples < 1) throw ConfigError("oracle.samples must be at least 1");
  spec.samples = static_cast<std::size_t>(samples);
  spec.seed = static_cast<std::uint64_t>(cfg.integer("oracle.seed"));
  spec.lattice_step = cfg.real("fit.step");
  spec.lattice_half_width = cfg.real("fit.half_width");
  spec.lattice_center = cfg.maybe_real("fit.center");
  return spec;
}

Cell maybe_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::string("");
}

double logit10(double p) { return std::log10(p / (1.0 - p)) / kLogitScale; }

void add_readout_metrics(ScenarioResult& r, const CIParams& ci) {
  r.metrics.emplace_back("sigma_auditory", ci.sigma_auditory);
  r.metrics.emplace_back("sigma_visual", ci.sigma_visual);
}

// --- profiles --------------------------------------------------------------

void run_profiles(const ScenarioConfig& cfg, ScenarioResult& r) {
  const Network net(cfg.network());
  const SpatialGrid& grid = net.grid();
  const StimulusEvent event{cfg.maybe_real("stimulus.auditory"), cfg.maybe_real("stimulus.visual")};
  event.validate();
  const AuditoryWeights alpha = AuditoryWeights::uniform(grid.size());
  Rng rng(static_cast<std::uint64_t>(cfg.integer("noise.seed")));
  const InputActivity in = input_for_event(event, net.params(), grid, alpha, Noise::kOff, rng);
  const Activity ra = pool_unisensory_auditory(in, net.weights());
  const Activity rv = pool_unisensory_visual(in, net.weights());

  std::optional<LikelihoodSummary> sa, sv;
  if (event.has_auditory()) sa = profile_peak_and_width(ra, grid);
  if (event.has_visual()) sv = profile_peak_and_width(rv, grid);

  ResultTable prof{"profiles", {"location", "auditory", "visual", "auditory_gaussian", "visual_gaussian"}, {}};
  auto gauss = [](const std::optional<LikelihoodSummary>& s, double x) -> Cell {
    if (!s) return std::string("");
    const double z = (x - s->peak) / s->sd;
    return std::exp(-0.5 * z * z);
  };
  const double ma = ra.maxCoeff();
  const double mv = rv.maxCoeff();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.centers[static_cast<Eigen::Index>(i)];
    const auto k = static_cast<Eigen::Index>(i);
    prof.add_row({x, event.has_auditory() ? Cell{ra[k] / ma} : Cell{std::string("")},
                  event.has_visual() ? Cell{rv[k] / mv} : Cell{std::string("")}, gauss(sa, x),
                  gauss(sv, x)});
  }
  r.tables.push_back(std::move(prof));

  if (sa) {
    r.metrics.emplace_back("auditory_peak", sa->peak);
    r.metrics.emplace_back("auditory_sd", sa->sd);
    r.metrics.emplace_back("auditory_fit_rmse", sa->fit_rmse);
  }
  if (sv) {
    r.metrics.emplace_back("visual_peak", sv->peak);
    r.metrics.emplace_back("visual_sd", sv->sd);
    r.metrics.emplace_back("visual_fit_rmse", sv->fit_rmse);
  }

  const long trials = cfg.integer("noise.trials");
  if (trials < 0) throw ConfigError("noise.trials must be non-negative");
  if (trials == 0) return;
  ResultTable noisy{"noise_trials", {"trial", "auditory_peak", "visual_peak"}, {}};
  std::vector<double> pa, pv;
  for (long t = 0; t < trials; ++t) {
    const InputActivity ni = input_for_event(event, net.params(), grid, alpha, Noise::kPoisson, rng);
    std::optional<double> a, v;
    if (event.has_auditory()) a = argmax_location(pool_unisensory_auditory(ni, net.weights()), grid);
    if (event.has_visual()) v = argmax_location(pool_unisensory_visual(ni, net.weights()), grid);
    if (a) pa.push_back(*a);
    if (v) pv.push_back(*v);
    noisy.add_row({t + 1, maybe_cell(a), maybe_cell(v)});
  }
  r.tables.push_back(std::move(noisy));
  auto moments = [&](const std::string& prefix, const std::vector<double>& xs) {
    if (xs.empty()) return;
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    r.metrics.emplace_back(prefix + "_noisy_mean", mean);
    r.metrics.emplace_back(prefix + "_noisy_sd", std::sqrt(ss / static_cast<double>(xs.size())));
  };
  moments("auditory", pa);
  moments("visual", pv);
}

// --- fusion ----------------------------------------------------------------

void run_fusion(const ScenarioConfig& cfg, ScenarioResult& r) {
  const Network net(cfg.network());
  const UnisensoryReadout ro = read_unisensory(net);
  const double wa = 1.0 / (ro.auditory.sd * ro.auditory.sd);
  const double wv = 1.0 / (ro.visual.sd * ro.visual.sd);
  const double sa = cfg.real("sweep.auditory");
  const double limit = cfg.real("fusion.max_disparity");
  const AuditoryWeights alpha = AuditoryWeights::uniform(net.grid().size());
  Rng rng(0);

  ResultTable t{"fusion", {"disparity", "visual_location", "multi_peak", "fusion_estimate", "error"}, {}};
  double worst = 0.0;
  for (double sv : visual_sweep(cfg)) {
    if (std::abs(sv - sa) > limit + 1e-9) continue;
    const InputActivity in = input_for_event(StimulusEvent::audiovisual(sa, sv), net.params(),
                                             net.grid(), alpha, Noise::kOff, rng);
    const Activity potential = multisensory_potential(in, net.weights(), net.params().bias);
    const double peak = argmax_location(potential, net.grid());
    const double fused = (wa * sa + wv * sv) / (wa + wv);
    worst = std::max(worst, std::abs(peak - fused));
    t.add_row({sv - sa, sv, peak, fused, peak - fused});
  }
  if (t.rows.empty()) throw ConfigError("no sweep point lies within fusion.max_disparity");
  r.tables.push_back(std::move(t));
  r.metrics.emplace_back("sd_auditory", ro.auditory.sd);
  r.metrics.emplace_back("sd_visual", ro.visual.sd);
  r.metrics.emplace_back("max_abs_error", worst);
}

// --- relatedness -----------------------------------------------------------

void run_relatedness(const ScenarioConfig& cfg, ScenarioResult& r) {
  const Network net(cfg.network());
  const CIParams ci = oracle_params(cfg, net, cfg.real("oracle.p_common"));
  const double sa = cfg.real("sweep.auditory");
  const AuditoryWeights alpha = AuditoryWeights::uniform(net.grid().size());
  Rng rng(0);

  ResultTable t{"relatedness",
                {"disparity", "visual_location", "share_multi", "share_auditory", "posterior_common"},
                {}};
  double at_zero = kNaN, best = -1.0, best_disparity = kNaN, crossover = kNaN;
  for (double sv : visual_sweep(cfg)) {
    const InputActivity in = input_for_event(StimulusEvent::audiovisual(sa, sv), net.params(),
                                             net.grid(), alpha, Noise::kOff, rng);
    const Relatedness rel = relatedness_index(divisive_normalize(pool_all(in, net.weights(), net.params().bias)));
    const double post = ci_single(sa, sv, ci).p_common_posterior;
    const double d = sv - sa;
    if (d == 0.0) at_zero = rel.multi;
    if (rel.multi > best) {
      best = rel.multi;
      best_disparity = d;
    }
    if (d > 0.0 && std::isnan(crossover) && rel.multi < rel.auditory) crossover = d;
    t.add_row({d, sv, rel.multi, rel.auditory, post});
  }
  r.tables.push_back(std::move(t));
  add_readout_metrics(r, ci);
  r.metrics.emplace_back("share_multi_at_zero", at_zero);
  r.metrics.emplace_back("share_multi_max", best);
  r.metrics.emplace_back("disparity_of_max", best_disparity);
  r.metrics.emplace_back("crossover_disparity", crossover);
}

// --- decode ----------------------------------------------------------------

void run_decode(const ScenarioConfig& cfg, ScenarioResult& r) {
  const Network net(cfg.network());
  const StimulusEvent event{cfg.maybe_real("stimulus.auditory"), cfg.maybe_real("stimulus.visual")};
  event.validate();
  const NetworkOutput out = net.forward(event);

  ResultTable rec{"reconstruction",
                  {"location", "rho_left", "rho_right", "rho_visual", "r_auditory", "r_visual", "r_multi"},
                  {}};
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(net.grid().size()); ++i) {
    rec.add_row({net.grid().centers[i], out.reconstruction.left[i], out.reconstruction.right[i],
                 out.reconstruction.visual[i], out.pooling.auditory[i], out.pooling.visual[i],
                 out.pooling.multi[i]});
  }
  r.tables.push_back(std::move(rec));

  ResultTable est{"estimates",
                  {"auditory_stimulus", "visual_stimulus", "auditory_estimate", "visual_estimate"}, {}};
  est.add_row({maybe_cell(event.auditory), maybe_cell(event.visual), maybe_cell(out.auditory_estimate),
               maybe_cell(out.visual_estimate)});
  r.tables.push_back(std::move(est));
  if (out.auditory_estimate) r.metrics.emplace_back("auditory_estimate", *out.auditory_estimate);
  if (out.visual_estimate) r.metrics.emplace_back("visual_estimate", *out.visual_estimate);
}

// --- ci_fit ----------------------------------------------------------------

ResultTable sweep_table(const std::string& name, const FitResult& fit) {
  ResultTable t{name, {"disparity", "visual_location", "net_A", "net_V", "oracle_A", "oracle_V"}, {}};
  for (std::size_t k = 0; k < fit.oracle.size(); ++k) {
    const SweepPoint& o = fit.oracle[k];
    t.add_row({o.disparity, o.visual_location, maybe_cell(fit.network[k].auditory),
               maybe_cell(fit.network[k].visual), o.auditory, o.visual});
  }
  return t;
}

void run_ci_fit(const ScenarioConfig& cfg, ScenarioResult& r) {
  const Network net(cfg.network());
  const double p = cfg.real("oracle.p_common");
  const CIParams ci = oracle_params(cfg, net, p);
  SweepSpec spec = sweep_spec(cfg);

  FitResult fit;
  if (cfg.text("fit.mode") == "search") {
    fit = fit_mu(p, net.params(), ci, spec);
  } else {
    const double mu = net.params().bias;
    const BiasLattice lattice(net, spec.auditory_location, spec.visual_locations, {mu});
    fit.mu = mu;
    fit.p_common = p;
    fit.oracle = ci_disparity_sweep(spec.auditory_location, spec.visual_locations, ci, spec.samples, spec.seed);
    fit.network = lattice.curve(0);
    const CurveResiduals res = curve_residuals(fit.network, fit.oracle);
    fit.rmse_auditory = res.auditory;
    fit.rmse_visual = res.visual;
    fit.objective = res.combined;
  }
  if (fit.negative_bias()) r.warnings.push_back("fitted bias is negative");
  r.tables.push_back(sweep_table("sweep", fit));
  add_readout_metrics(r, ci);
  r.metrics.emplace_back("p_common", p);
  r.metrics.emplace_back("mu", fit.mu);
  r.metrics.emplace_back("rmse_auditory", fit.rmse_auditory);
  r.metrics.emplace_back("rmse_visual", fit.rmse_visual);
}

// --- mu_law ----------------------------------------------------------------

std::vector<std::pair<double, double>> gain_sets(const ScenarioConfig& cfg) {
  const auto ga = cfg.reals("law.gains_auditory");
  const auto gv = cfg.reals("law.gains_visual");
  if (ga.empty() || gv.empty()) throw ConfigError("law.gains_* must not be empty");
  if (ga.size() != gv.size() && ga.size() != 1 && gv.size() != 1) {
    throw ConfigError("law.gains_auditory and law.gains_visual differ in length");
  }
  const std::size_t n = std::max(ga.size(), gv.size());
  std::vector<std::pair<double, double>> out;
  for (std::size_t k = 0; k < n; ++k) {
    out.emplace_back(ga[ga.size() == 1 ? 0 : k], gv[gv.size() == 1 ? 0 : k]);
  }
  return out;
}

void run_mu_law(const ScenarioConfig& cfg, ScenarioResult& r) {
  const auto ps = cfg.reals("law.p_values");
  if (ps.size() < 2) throw ConfigError("law.p_values needs at least two values");
  const SweepSpec spec = sweep_spec(cfg);

  ResultTable fits{"fits",
                   {"gain_auditory", "gain_visual", "p_common", "mu", "law_mu", "rmse_auditory", "rmse_visual"},
                   {}};
  ResultTable logit{"logit", {"gain_auditory", "gain_visual", "sigma_auditory", "sigma_visual", "c",
                              "c_gain_rule", "logit_rmse"}, {}};
  ResultTable agree{"agreement", {"gain_auditory", "gain_visual", "p_common", "disparity", "net_A",
                                  "oracle_A", "net_V", "oracle_V"}, {}};

  std::vector<double> y, y_hat, ya, ya_hat, yv, yv_hat;
  std::vector<double> rmses;
  int set = 0;
  for (const auto& [ga, gv] : gain_sets(cfg)) {
    ++set;
    NetworkParams params = cfg.network();
    params.gain_auditory = ga;
    params.gain_visual = gv;
    const Network net(params);
    const CIParams ci = oracle_params(cfg, net, 0.5);
    std::vector<std::pair<double, double>> pm;
    std::vector<FitResult> results;
    for (double p : ps) {
      results.push_back(fit_mu(p, params, ci, spec));
      pm.emplace_back(p, results.back().mu);
    }
    const LogitFit lf = fit_logit_curve(pm);
    for (const FitResult& f : results) {
      if (f.negative_bias()) r.warnings.push_back("negative fitted bias at gains " + label(ga) + "/" + label(gv));
      fits.add_row({ga, gv, f.p_common, f.mu, logit10(f.p_common) + lf.c, f.rmse_auditory, f.rmse_visual});
      for (std::size_t k = 0; k < f.oracle.size(); ++k) {
        const SweepPoint& o = f.oracle[k];
        const Estimates& e = f.network[k];
        agree.add_row({ga, gv, f.p_common, o.disparity, maybe_cell(e.auditory), o.auditory,
                       maybe_cell(e.visual), o.visual});
        if (e.auditory) {
          ya.push_back(o.auditory);
          ya_hat.push_back(*e.auditory);
        }
        if (e.visual) {
          yv.push_back(o.visual);
          yv_hat.push_back(*e.visual);
        }
      }
    }
    logit.add_row({ga, gv, ci.sigma_auditory, ci.sigma_visual, lf.c, c_from_gains(ga, gv), lf.rmse});
    rmses.push_back(lf.rmse);
    const std::string tag = "set" + std::to_string(set) + "_";
    r.metrics.emplace_back(tag + "gain_auditory", ga);
    r.metrics.emplace_back(tag + "gain_visual", gv);
    r.metrics.emplace_back(tag + "c", lf.c);
    r.metrics.emplace_back(tag + "logit_rmse", lf.rmse);
  }
  y = ya;
  y.insert(y.end(), yv.begin(), yv.end());
  y_hat = ya_hat;
  y_hat.insert(y_hat.end(), yv_hat.begin(), yv_hat.end());

  r.metrics.emplace_back("logit_rmse_mean",
                         std::accumulate(rmses.begin(), rmses.end(), 0.0) / static_cast<double>(rmses.size()));
  r.metrics.emplace_back("logit_rmse_max", *std::max_element(rmses.begin(), rmses.end()));
  r.metrics.emplace_back("r2_auditory", r_squared(ya, ya_hat));
  r.metrics.emplace_back("r2_visual", r_squared(yv, yv_hat));
  r.metrics.emplace_back("r2_pooled", r_squared(y, y_hat));
  r.tables.push_back(std::move(fits));
  r.tables.push_back(std::move(logit));
  r.tables.push_back(std::move(agree));
}

// --- gain_plane ------------------------------------------------------------

void run_gain_plane(const ScenarioConfig& cfg, ScenarioResult& r) {
  const double p = cfg.real("oracle.p_common");
  const SweepSpec spec = sweep_spec(cfg);
  std::vector<GainSample> samples;
  std::vector<double> mus;
  for (double ga : cfg.reals("plane.gains_auditory")) {
    for (double gv : cfg.reals("plane.gains_visual")) {
      NetworkParams params = cfg.network();
      params.gain_auditory = ga;
      params.gain_visual = gv;
      const CIParams ci = oracle_params(cfg, Network(params), p);
      const FitResult f = fit_mu(p, params, ci, spec);
      samples.push_back({ga, gv, f.mu - logit10(p)});
      mus.push_back(f.mu);
    }
  }
  const PlaneFit plane = fit_c_plane(samples);
  ResultTable t{"plane", {"gain_auditory", "gain_visual", "mu", "c", "c_plane", "c_gain_rule"}, {}};
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const GainSample& s = samples[k];
    t.add_row({s.gain_auditory, s.gain_visual, mus[k], s.c,
               plane.coef_auditory * s.gain_auditory + plane.coef_visual * s.gain_visual + plane.intercept,
               c_from_gains(s.gain_auditory, s.gain_visual)});
  }
  r.tables.push_back(std::move(t));
  r.metrics.emplace_back("p_common", p);
  r.metrics.emplace_back("coef_auditory", plane.coef_auditory);
  r.metrics.emplace_back("coef_visual", plane.coef_visual);
  r.metrics.emplace_back("intercept", plane.intercept);
  r.metrics.emplace_back("r2", plane.r2);
}

// --- recalibration ---------------------------------------------------------

struct Protocol {
  Network network;
  AdaptationState initial;
  Noise noise;
  std::uint64_t seed;
  ErrorScope scope;
  double train_auditory;
  double train_visual;
  long gap;
};

Protocol protocol(const ScenarioConfig& cfg) {
  const Network net(cfg.network());
  const long gap = cfg.integer("train.gap");
  if (gap < 0) throw ConfigError("train.gap must be non-negative");
  return {net,
          AdaptationState::initial(net.grid().size(), cfg.real("recal.rate"), cfg.real("recal.decay")),
          cfg.text("noise.mode") == "poisson" ? Noise::kPoisson : Noise::kOff,
          static_cast<std::uint64_t>(cfg.integer("noise.seed")),
          cfg.text("recal.scope") == "all_auditory" ? ErrorScope::kAllAuditory : ErrorScope::kPerSubpopulation,
          cfg.real("train.auditory"),
          cfg.real("train.visual"),
          gap};
}

// `count` probed AV trials separated by `gap` blanks.
TrialSchedule training(const Protocol& p, long count) {
  TrialSchedule s;
  for (long k = 0; k < count; ++k) {
    if (k > 0) s.add_blanks(static_cast<int>(p.gap));
    s.add_stimulus(StimulusEvent::audiovisual(p.train_auditory, p.train_visual), true, static_cast<int>(k + 1));
  }
  return s;
}

double auditory_of(const ProbeRecord& rec) {
  if (!rec.estimates.auditory) throw ModalityAbsentError("probe has no auditory estimate");
  return *rec.estimates.auditory;
}

// Training, `delay` blanks, then one auditory-only probe; returns the probe record.
ProbeRecord probe_after(const Protocol& p, long count, long delay, double location) {
  if (delay < 0) throw ConfigError("probe delays must be non-negative");
  TrialSchedule s = training(p, count);
  s.add_blanks(static_cast<int>(delay));
  s.add_stimulus(StimulusEvent::auditory_only(location), true, -1);
  const ScheduleResult res = run_schedule(s, p.network, p.initial, p.noise, p.seed, p.scope);
  return res.probes.back();
}

void run_aftereffect(const ScenarioConfig& cfg, ScenarioResult& r) {
  const Protocol p = protocol(cfg);
  const long count = cfg.integer("train.count");
  if (count < 1) throw ConfigError("train.count must be at least 1");
  const double location = cfg.real("probe.location");

  ResultTable t{"trials", {"phase", "index", "delay", "auditory_stimulus", "visual_stimulus",
                           "auditory_estimate", "shift", "mean_alpha_left", "mean_alpha_right"}, {}};
  const ScheduleResult train = run_schedule(training(p, count), p.network, p.initial, p.noise, p.seed, p.scope);
  std::vector<double> online;
  for (const ProbeRecord& rec : train.probes) {
    const double shift = auditory_of(rec) - p.train_auditory;
    online.push_back(shift);
    t.add_row({std::string("train"), static_cast<long>(rec.label), 0L, p.train_auditory, p.train_visual,
               auditory_of(rec), shift, rec.mean_alpha_left, rec.mean_alpha_right});
  }

  std::vector<std::pair<double, double>> aftereffects;
  long index = 0;
  for (double d : cfg.reals("probe.delays")) {
    const long delay = std::lround(d);
    if (static_cast<double>(delay) != d) throw ConfigError("probe.delays must be whole seconds");
    const ProbeRecord rec = probe_after(p, count, delay, location);
    const double shift = auditory_of(rec) - location;
    aftereffects.emplace_back(d, shift);
    t.add_row({std::string("probe"), ++index, delay, location, std::string(""), auditory_of(rec), shift,
               rec.mean_alpha_left, rec.mean_alpha_right});
  }
  r.tables.push_back(std::move(t));

  r.metrics.emplace_back("online_mean",
                         std::accumulate(online.begin(), online.end(), 0.0) / static_cast<double>(online.size()));
  r.metrics.emplace_back("online_min", *std::min_element(online.begin(), online.end()));
  r.metrics.emplace_back("online_max", *std::max_element(online.begin(), online.end()));
  bool decreasing = true;
  for (std::size_t k = 0; k < aftereffects.size(); ++k) {
    r.metrics.emplace_back("aftereffect_" + label(aftereffects[k].first) + "s", aftereffects[k].second);
    if (k > 0 && !(aftereffects[k].second < aftereffects[k - 1].second)) decreasing = false;
  }
  r.metrics.emplace_back("aftereffect_strictly_decreasing", decreasing ? 1.0 : 0.0);

  const long local_delay = cfg.integer("probe.local_delay");
  const double centre_shift = auditory_of(probe_after(p, count, local_delay, location)) - location;
  ResultTable local{"local_probes", {"offset", "probe_location", "auditory_estimate", "shift", "ratio"}, {}};
  double worst_ratio = std::numeric_limits<double>::infinity();
  local.add_row({0.0, location, location + centre_shift, centre_shift, 1.0});
  for (double off : cfg.reals("probe.local_offsets")) {
    const double at = location + off;
    const double est = auditory_of(probe_after(p, count, local_delay, at));
    const double ratio = centre_shift != 0.0 ? (est - at) / centre_shift : kNaN;
    worst_ratio = std::min(worst_ratio, ratio);
    local.add_row({off, at, est, est - at, ratio});
  }
  r.tables.push_back(std::move(local));
  r.metrics.emplace_back("local_centre_shift", centre_shift);
  if (!cfg.reals("probe.local_offsets").empty()) r.metrics.emplace_back("local_ratio_min", worst_ratio);

  const std::string& ref = cfg.text("reference.file");
  if (ref.empty()) return;
  // Reference table: delay,aftereffect rows matched by delay.
  const ResultTable data = read_csv(ref);
  const auto delays = data.column("delay");
  const auto values = data.column("aftereffect");
  double ss = 0.0;
  int matched = 0;
  for (std::size_t k = 0; k < delays.size(); ++k) {
    for (const auto& [d, shift] : aftereffects) {
      if (d == delays[k]) {
        ss += (shift - values[k]) * (shift - values[k]);
        ++matched;
      }
    }
  }
  if (matched == 0) throw ConfigError("reference file " + ref + " shares no delay with probe.delays");
  r.metrics.emplace_back("reference_rmse", std::sqrt(ss / matched));
}

void run_cumulative(const ScenarioConfig& cfg, ScenarioResult& r) {
  const Protocol p = protocol(cfg);
  const long delay = cfg.integer("probe.delay");
  const double location = cfg.real("probe.location");
  ResultTable t{"cumulative", {"repetitions", "online_shift", "aftereffect"}, {}};
  std::vector<std::pair<double, double>> rows;
  for (double reps : cfg.reals("cumulative.repetitions")) {
    const long n = std::lround(reps);
    if (n < 1 || static_cast<double>(n) != reps) {
      throw ConfigError("cumulative.repetitions must be positive integers");
    }
    const ScheduleResult train = run_schedule(training(p, n), p.network, p.initial, p.noise, p.seed, p.scope);
    const double ve = auditory_of(train.probes.back()) - p.train_auditory;
    const double ae = auditory_of(probe_after(p, n, delay, location)) - location;
    rows.emplace_back(ve, ae);
    t.add_row({n, ve, ae});
    r.metrics.emplace_back("online_" + std::to_string(n), ve);
    r.metrics.emplace_back("aftereffect_" + std::to_string(n), ae);
  }
  if (rows.empty()) throw ConfigError("cumulative.repetitions is empty");
  r.tables.push_back(std::move(t));
  r.metrics.emplace_back("online_change", rows.back().first - rows.front().first);
  r.metrics.emplace_back("aftereffect_change", rows.back().second - rows.front().second);
}

}  // namespace

double ScenarioResult::metric(const std::string& key) const {
  for (const auto& [k, v] : metrics) {
    if (k == key) return v;
  }
  throw ConfigError("scenario " + name + " has no metric " + key);
}

const ResultTable& ScenarioResult::table(const std::string& table_name) const {
  for (const auto& t : tables) {
    if (t.name == table_name) return t;
  }
  throw ConfigError("scenario " + name + " has no table " + table_name);
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  ScenarioResult r{cfg.name(), cfg.kind(), {}, {}, {}, cfg.entries()};
  try {
    switch (cfg.kind()) {
      case ScenarioKind::kProfiles: run_profiles(cfg, r); break;
      case ScenarioKind::kFusion: run_fusion(cfg, r); break;
      case ScenarioKind::kRelatedness: run_relatedness(cfg, r); break;
      case ScenarioKind::kDecode: run_decode(cfg, r); break;
      case ScenarioKind::kCiFit: run_ci_fit(cfg, r); break;
      case ScenarioKind::kMuLaw: run_mu_law(cfg, r); break;
      case ScenarioKind::kGainPlane: run_gain_plane(cfg, r); break;
      case ScenarioKind::kAftereffect: run_aftereffect(cfg, r); break;
      case ScenarioKind::kCumulative: run_cumulative(cfg, r); break;
    }
  } catch (const ConfigError& e) {
    throw ConfigError("scenario " + cfg.name() + ": " + e.what());
  } catch (const NumericError& e) {
    throw NumericError("scenario " + cfg.name() + ": " + e.what());
  }
  return r;
}

void write_result(const ScenarioResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json summary;
  summary["scenario"] = result.name;
  summary["kind"] = std::string(to_string(result.kind));
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  for (const auto& [k, v] : result.metrics) {
    if (std::isfinite(v)) {
      metrics[k] = v;
    } else {
      metrics[k] = nullptr;
    }
  }
  summary["metrics"] = metrics;
  summary["warnings"] = result.warnings;
  nlohmann::ordered_json tables = nlohmann::ordered_json::array();
  for (const auto& t : result.tables) {
    write_csv(dir / (t.name + ".csv"), t);
    tables.push_back(t.name + ".csv");
  }
  summary["tables"] = tables;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [k, v] : result.config) config[k] = v;
  summary["config"] = config;

  std::ofstream js(dir / "summary.json");
  js << summary.dump(2) << '\n';
  if (!js) throw Error("cannot write " + (dir / "summary.json").string());

  std::ofstream ini(dir / "resolved.ini");
  std::string section;
  for (const auto& [k, v] : result.config) {
    const auto dot = k.find('.');
    const std::string s = k.substr(0, dot);
    if (s != section) {
      ini << (section.empty() ? "" : "\n") << '[' << s << "]\n";
      section = s;
    }
    ini << k.substr(dot + 1) << " = " << v << '\n';
  }
  if (!ini) throw Error("cannot write " + (dir / "resolved.ini").string());
}

std::filesystem::path output_root() {
  if (const char* env = std::getenv("CINET_OUTPUT_DIR"); env && *env) return env;
  return "cinet_out";
}

std::filesystem::path run_and_write(const ScenarioConfig& config, const std::filesystem::path& root) {
  const ScenarioResult result = run_scenario(config);
  const std::filesystem::path dir = root / config.text("output.dir");
  write_result(result, dir);
  return dir;
}

std::vector<ScenarioResult> run_sweep(const ScenarioConfig& base, const std::vector<std::string>& overrides,
                                      const std::filesystem::path& root) {
  if (overrides.empty()) {
    ScenarioResult r = run_scenario(base);
    write_result(r, root / base.text("output.dir"));
    return {std::move(r)};
  }
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + o + "' is not key=value");
    std::pair<std::string, std::vector<std::string>> axis{o.substr(0, eq), {}};
    std::stringstream values(o.substr(eq + 1));
    std::string v;
    while (std::getline(values, v, ',')) axis.second.push_back(v);
    if (axis.second.empty()) throw ConfigError("override '" + o + "' has no values");
    // Validate every value up front so a typo fails before any work is done.
    ScenarioConfig probe = base;
    for (const auto& value : axis.second) probe.set(axis.first, value);
    axes.push_back(std::move(axis));
  }

  std::vector<ScenarioConfig> points{base};
  for (const auto& [key, values] : axes) {
    std::vector<ScenarioConfig> next;
    for (const auto& cfg : points) {
      for (const auto& v : values) {
        next.push_back(cfg);
        next.back().set(key, v);
      }
    }
    points = std::move(next);
  }

  const std::filesystem::path dir = root / base.text("output.dir");
  std::vector<ScenarioResult> results;
  ResultTable index{"index", {"point", "directory"}, {}};
  for (const auto& [key, values] : axes) index.columns.push_back(key);
  for (std::size_t k = 0; k < points.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "point_%03zu", k);
    results.push_back(run_scenario(points[k]));
    write_result(results.back(), dir / name);
    std::vector<Cell> row{static_cast<long>(k), std::string(name)};
    for (const auto& [key, values] : axes) row.emplace_back(points[k].text(key));
    index.add_row(std::move(row));
  }
  write_csv(dir / "index.csv", index);
  return results;
}

}  // namespace cinet
