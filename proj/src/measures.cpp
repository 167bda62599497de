#include "dnls/measures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dnls/functionals.hpp"
#include "dnls/rng.hpp"

namespace dnls {

namespace {
constexpr double neg_inf = -std::numeric_limits<double>::infinity();
}

SpectralField sample_rho_field(int cutoff, uint64_t seed, uint64_t index) {
  CounterRng rng(seed, index);
  SpectralField f(cutoff);
  for (int n = -cutoff; n <= cutoff; ++n) {
    const double sd = 1.0 / std::sqrt(1.0 + static_cast<double>(n) * n);
    const double a = sd * rng.normal();
    const double b = sd * rng.normal();
    f.mode(n) = cplx(a, b);
  }
  return f;
}

WeightedEnsemble sample_rho(const MeasureConfig& config, uint64_t seed, int count) {
  WeightedEnsemble e;
  e.seed = seed;
  e.config = config;
  e.samples.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    e.samples.push_back(sample_rho_field(config.cutoff, seed, static_cast<uint64_t>(i)));
  }
  e.log_weights.assign(static_cast<size_t>(count), 0.0);
  return e;
}

double log_weight_nu(const SpectralField& u, const MeasureConfig& config) {
  if (l2_norm_sq(u) > config.mass_cutoff * config.mass_cutoff) return neg_inf;
  return -0.5 * config.beta * nonquad(u);
}

double log_weight_mu(const SpectralField& w, const MeasureConfig& config) {
  if (l2_norm_sq(w) > config.mass_cutoff * config.mass_cutoff) return neg_inf;
  return -0.5 * config.beta * gauged_nonquad(w);
}

McEstimate estimate_normalization(const MeasureConfig& config, uint64_t seed, int count) {
  if (count < 100) throw std::invalid_argument("estimate_normalization: count < 100");
  std::vector<double> weights(static_cast<size_t>(count));
  bool any = false;
  for (int i = 0; i < count; ++i) {
    SpectralField u = sample_rho_field(config.cutoff, seed, static_cast<uint64_t>(i));
    double lw = log_weight_nu(u, config);
    weights[static_cast<size_t>(i)] = std::isfinite(lw) ? std::exp(lw) : 0.0;
    any = any || std::isfinite(lw);
  }
  // Jackknife over the leave-one-out means.
  double sum = 0.0;
  for (double w : weights) sum += w;
  McEstimate e;
  e.count = count;
  e.value = sum / count;
  if (!any) {
    e.degenerate = true;
    e.ess = 0.0;
    return e;
  }
  const double n = static_cast<double>(count);
  double jk_mean = 0.0;
  std::vector<double> loo(weights.size());
  for (size_t i = 0; i < weights.size(); ++i) {
    loo[i] = (sum - weights[i]) / (n - 1.0);
    jk_mean += loo[i];
  }
  jk_mean /= n;
  double ss = 0.0;
  for (double t : loo) ss += (t - jk_mean) * (t - jk_mean);
  e.stderr_ = std::sqrt((n - 1.0) / n * ss);
  double w2 = 0.0;
  for (double w : weights) w2 += w * w;
  e.ess = w2 > 0.0 ? sum * sum / w2 : 0.0;
  return e;
}

McEstimate expectation(const WeightedEnsemble& ensemble, const Observable& observable,
                       const std::optional<std::function<double(const SpectralField&)>>& reweight,
                       double ess_floor_fraction) {
  if (ensemble.samples.empty()) throw std::invalid_argument("expectation: empty ensemble");
  std::vector<double> values(ensemble.samples.size());
  std::vector<double> lw(ensemble.samples.size());
  for (size_t i = 0; i < ensemble.samples.size(); ++i) {
    values[i] = observable(ensemble.samples[i]);
    lw[i] = ensemble.log_weights[i];
    if (reweight) lw[i] += (*reweight)(ensemble.samples[i]);
  }
  McEstimate e = weighted_estimate(values, lw);
  if (e.ess < ess_floor_fraction * static_cast<double>(ensemble.samples.size())) {
    e.low_ess_warning = true;
  }
  return e;
}

McmcResult mcmc_sample(const MeasureConfig& config, uint64_t seed, int count,
                       const McmcOptions& options) {
  McmcResult result;
  result.ensemble.seed = seed;
  result.ensemble.config = config;
  CounterRng rng(seed, 0x6d636d63u);  // single sequential chain stream

  auto target = [&config](const SpectralField& u) {
    switch (config.which) {
      case MeasureConfig::Which::rho: return 0.0;
      case MeasureConfig::Which::nu: return log_weight_nu(u, config);
      case MeasureConfig::Which::mu: return log_weight_mu(u, config);
    }
    return 0.0;
  };

  SpectralField state = sample_rho_field(config.cutoff, seed, 0xffffffffu);
  if (config.which != MeasureConfig::Which::rho) {
    // start inside the mass ball: an almost-sure rho draw lies outside it
    const double m = l2_norm_sq(state);
    const double cap = 0.5 * config.mass_cutoff * config.mass_cutoff;
    if (m > cap) {
      const double scale = std::sqrt(cap / m);
      for (cplx& c : state.coeffs()) c *= scale;
    }
  }
  double state_lw = target(state);

  const double s = options.step_scale;
  const double keep = std::sqrt(1.0 - s * s);
  int64_t accepted = 0, proposed = 0;
  const int total_steps = options.burn_in + count * options.thin;
  for (int step = 0; step < total_steps; ++step) {
    SpectralField prop(config.cutoff);
    for (int n = -config.cutoff; n <= config.cutoff; ++n) {
      const double sd = 1.0 / std::sqrt(1.0 + static_cast<double>(n) * n);
      cplx xi(sd * rng.normal(), sd * rng.normal());
      prop.mode(n) = keep * state.mode(n) + s * xi;
    }
    const double prop_lw = target(prop);
    ++proposed;
    const double log_ratio = prop_lw - state_lw;
    bool accept = false;
    if (prop_lw != neg_inf) {
      accept = (log_ratio >= 0.0) || (std::log(rng.uniform()) < log_ratio);
    }
    if (accept) {
      state = std::move(prop);
      state_lw = prop_lw;
      ++accepted;
    }
    if (step >= options.burn_in && (step - options.burn_in) % options.thin == 0) {
      result.ensemble.samples.push_back(state);
      result.ensemble.log_weights.push_back(0.0);
    }
  }
  result.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(proposed);
  result.tuning_warning = result.acceptance_rate < 0.1 || result.acceptance_rate > 0.9;
  return result;
}

McmcResult mcmc_sample_nu(const MeasureConfig& config, uint64_t seed, int count,
                          const McmcOptions& options) {
  MeasureConfig cfg = config;
  cfg.which = MeasureConfig::Which::nu;
  return mcmc_sample(cfg, seed, count, options);
}

namespace {

// F(G(u)) for the standard panel, evaluated from exact pointwise samples of
// G(u); m and int|u|^4 are gauge invariants and reuse the ungauged values.
struct PanelValues {
  double mass_v, quartic, re_mode0, cos_at0;
};

PanelValues panel_of_gauged(const SpectralField& u, const GaugeSpec& spec) {
  const Moments mm = moments(u);
  const int points = padded_resolution(u.cutoff());
  FieldGrids w = gauge_grids(u, spec, points, -1);
  cplx mode0(0.0, 0.0);
  for (const cplx& v : w.value.values) mode0 += v;
  mode0 /= static_cast<double>(points);
  return {mm.m, mm.s4, mode0.real(), std::cos(w.value[0].real())};
}

PanelValues panel_of(const SpectralField& u) {
  const Moments mm = moments(u);
  cplx at0(0.0, 0.0);
  for (const cplx& c : u.coeffs()) at0 += c;  // u(0) = sum of coefficients
  return {mm.m, mm.s4, u.mode(0).real(), std::cos(at0.real())};
}

}  // namespace

PushforwardReport pushforward_consistency(const MeasureConfig& config, uint64_t seed,
                                          int count, double pass_sigma) {
  // Importance sampling from rho_N is degenerate here: the in-ball spread of
  // the exponents N(u) and calN(w) keeps the effective sample size near one
  // for every cutoff that gives the ball any mass. Both sides therefore come
  // from Metropolis chains, with batch-means errors for the autocorrelation.
  GaugeSpec spec{config.mass_cutoff, GaugeSpec::Mode::cutoff};
  const char* names[4] = {"mass", "quartic", "re_mode0", "cos_at0"};
  // The ball is deep in the rho tail, so pCN acceptance decays fast in the
  // step scale; 0.04 keeps it near 20% with decorrelation handled by thinning.
  McmcOptions opt;
  opt.step_scale = 0.04;
  opt.burn_in = 2000;
  opt.thin = 20;
  MeasureConfig nu_cfg = config;
  nu_cfg.which = MeasureConfig::Which::nu;
  MeasureConfig mu_cfg = config;
  mu_cfg.which = MeasureConfig::Which::mu;
  McmcResult nu_chain = mcmc_sample(nu_cfg, seed, count, opt);
  McmcResult mu_chain = mcmc_sample(mu_cfg, seed + 1, count, opt);

  std::vector<std::vector<double>> lhs_vals(4), rhs_vals(4);
  for (const SpectralField& u : nu_chain.ensemble.samples) {
    PanelValues gauged = panel_of_gauged(u, spec);
    const double gv[4] = {gauged.mass_v, gauged.quartic, gauged.re_mode0, gauged.cos_at0};
    for (int k = 0; k < 4; ++k) lhs_vals[static_cast<size_t>(k)].push_back(gv[k]);
  }
  for (const SpectralField& w : mu_chain.ensemble.samples) {
    PanelValues plain = panel_of(w);
    const double pv[4] = {plain.mass_v, plain.quartic, plain.re_mode0, plain.cos_at0};
    for (int k = 0; k < 4; ++k) rhs_vals[static_cast<size_t>(k)].push_back(pv[k]);
  }

  PushforwardReport report;
  report.count = count;
  report.ess_nu = 1e300;
  report.ess_mu = 1e300;
  report.pass = true;
  for (int k = 0; k < 4; ++k) {
    ObservablePair pair;
    pair.name = names[k];
    pair.lhs = batch_mean_estimate(lhs_vals[static_cast<size_t>(k)]);
    pair.rhs = batch_mean_estimate(rhs_vals[static_cast<size_t>(k)]);
    pair.sigma_gap = sigma_gap(pair.lhs, pair.rhs);
    report.ess_nu = std::min(report.ess_nu, pair.lhs.ess);
    report.ess_mu = std::min(report.ess_mu, pair.rhs.ess);
    if (!(pair.sigma_gap <= pass_sigma)) report.pass = false;
    report.pairs.push_back(pair);
  }
  return report;
}

}  // namespace dnls
