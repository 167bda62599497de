#include "dnls/change_of_measure.hpp"

#include <cmath>
#include <stdexcept>

#include "dnls/functionals.hpp"

namespace dnls {

double ito_integral(const BridgePath& path, const std::vector<double>& h_values) {
  if (h_values.size() != path.values.size()) {
    throw std::invalid_argument("ito_integral: grid mismatch");
  }
  double sum = 0.0;
  for (int k = 0; k < path.steps(); ++k) {
    const cplx z = path.values[static_cast<size_t>(k)];
    const cplx dz_bar = std::conj(path.values[static_cast<size_t>(k + 1)]) - std::conj(z);
    sum += h_values[static_cast<size_t>(k)] * (z * dz_bar).imag();
  }
  return sum;
}

std::vector<double> path_h(const BridgePath& path, const GaugeSpec& spec) {
  const double m = path_mass(path);
  std::vector<double> h(path.values.size(), 0.0);
  if (!spec.active(m)) return h;
  for (size_t k = 0; k < path.values.size(); ++k) {
    h[k] = std::norm(path.values[k]) - m;
  }
  return h;
}

BridgePath gauge_path(const BridgePath& path, const GaugeSpec& spec) {
  const int n = path.steps();
  const double dx = path.dx();
  const std::vector<double> h = path_h(path, spec);
  // K = cumulative trapezoid of h; J = K - mean(K) per the double-average rule.
  std::vector<double> big_k(h.size(), 0.0);
  for (int k = 0; k < n; ++k) {
    big_k[static_cast<size_t>(k + 1)] =
        big_k[static_cast<size_t>(k)] +
        0.5 * dx * (h[static_cast<size_t>(k)] + h[static_cast<size_t>(k + 1)]);
  }
  double mean_k = 0.0;
  for (int k = 0; k < n; ++k) {
    mean_k += 0.5 * (big_k[static_cast<size_t>(k)] + big_k[static_cast<size_t>(k + 1)]);
  }
  mean_k /= static_cast<double>(n);
  BridgePath out;
  out.values.resize(path.values.size());
  for (size_t k = 0; k < path.values.size(); ++k) {
    out.values[k] = std::exp(cplx(0.0, -(big_k[k] - mean_k))) * path.values[k];
  }
  out.endpoint = out.values.front();
  return out;
}

double rn_log_density(const BridgePath& path, const GaugeSpec& spec, int ito_sign) {
  const double m = path_mass(path);
  if (!spec.active(m)) return 0.0;  // cutoff branch: G is the identity there
  const std::vector<double> h = path_h(path, spec);
  const double stoch = ito_integral(path, h);
  const int n = path.steps();
  const double dx = path.dx();
  double quad = 0.0;
  for (int k = 0; k < n; ++k) {
    const double a = h[static_cast<size_t>(k)] * h[static_cast<size_t>(k)] *
                     std::norm(path.values[static_cast<size_t>(k)]);
    const double b = h[static_cast<size_t>(k + 1)] * h[static_cast<size_t>(k + 1)] *
                     std::norm(path.values[static_cast<size_t>(k + 1)]);
    quad += 0.5 * dx * (a + b);
  }
  return static_cast<double>(ito_sign) * stoch - 0.5 * quad;
}

McEstimate novikov_estimate(int count, int n_steps, const GaugeSpec& spec, uint64_t seed,
                            cplx endpoint, int ito_sign) {
  if (count < 1000) throw std::invalid_argument("novikov_estimate: count < 1000");
  std::vector<double> weights(static_cast<size_t>(count));
  double max_log = -1e300;
  for (int i = 0; i < count; ++i) {
    BridgePath z = sample_bridge(endpoint, n_steps, seed, static_cast<uint64_t>(i));
    const double ld = rn_log_density(z, spec, ito_sign);
    max_log = std::max(max_log, ld);
    weights[static_cast<size_t>(i)] = std::exp(ld);
  }
  McEstimate e = mean_estimate(weights);
  if (max_log > std::log(static_cast<double>(count))) e.low_ess_warning = true;
  return e;
}

std::vector<std::pair<std::string, PathObservable>> default_path_panel(const GaugeSpec& spec) {
  const GaugeSpec s = spec;
  std::vector<std::pair<std::string, PathObservable>> panel;
  panel.emplace_back("cos_re_at_pi", [](const BridgePath& p) {
    return std::cos(p.values[static_cast<size_t>(p.steps() / 2)].real());
  });
  panel.emplace_back("exp_neg_l2", [](const BridgePath& p) {
    return std::exp(two_pi * path_mass(p) * -1.0);
  });
  panel.emplace_back("im_at_half_pi_cutoff", [s](const BridgePath& p) {
    const double ind = s.active(path_mass(p)) ? 1.0 : 0.0;
    return ind * p.values[static_cast<size_t>(p.steps() / 4)].imag();
  });
  panel.emplace_back("mass_capped", [](const BridgePath& p) {
    return std::min(path_mass(p), 1.0);
  });
  // Reflection-odd and rotation-invariant: with endpoint 0 the bridge law is
  // invariant under Z -> conj(Z) and Z -> e^{i a} Z, and conjugation flips the
  // sign of the stochastic term in the density. Observables even under both
  // symmetries cannot see that sign, so the panel includes the (bounded)
  // stochastic term itself, the most sign-sensitive statistic available.
  panel.emplace_back("gauge_twist", [s](const BridgePath& p) {
    return std::tanh(ito_integral(p, path_h(p, s)));
  });
  return panel;
}

RnReport verify_transport(int count, int n_steps, const GaugeSpec& spec, uint64_t seed,
                          const std::vector<std::pair<std::string, PathObservable>>& panel,
                          int ito_sign, cplx endpoint, double pass_sigma, int sample_steps) {
  if (sample_steps > 0 && sample_steps % n_steps != 0) {
    throw std::invalid_argument("verify_transport: sample_steps must be a multiple of n_steps");
  }
  RnReport report;
  report.n_steps = n_steps;
  report.count = count;
  std::vector<std::vector<double>> lhs(panel.size()), rhs(panel.size());
  std::vector<double> densities(static_cast<size_t>(count));
  double max_log = -1e300;
  int gauged = 0;
  for (int i = 0; i < count; ++i) {
    BridgePath z = sample_bridge(endpoint, sample_steps > 0 ? sample_steps : n_steps, seed,
                                 static_cast<uint64_t>(i));
    if (sample_steps > 0) z = coarsen_path(z, sample_steps / n_steps);
    if (spec.active(path_mass(z))) ++gauged;
    BridgePath gz = gauge_path(z, spec);
    const double ld = rn_log_density(z, spec, ito_sign);
    max_log = std::max(max_log, ld);
    const double density = std::exp(ld);
    densities[static_cast<size_t>(i)] = density;
    for (size_t k = 0; k < panel.size(); ++k) {
      lhs[k].push_back(panel[k].second(gz));
      rhs[k].push_back(panel[k].second(z) * density);
    }
  }
  report.novikov = mean_estimate(densities);
  report.gauged_fraction = static_cast<double>(gauged) / static_cast<double>(count);
  report.extreme_weight_warning = max_log > std::log(static_cast<double>(count));
  report.pass = true;
  std::vector<double> diffs(static_cast<size_t>(count));
  for (size_t k = 0; k < panel.size(); ++k) {
    PathObservablePair pair;
    pair.name = panel[k].first;
    pair.lhs = mean_estimate(lhs[k]);
    pair.rhs = mean_estimate(rhs[k]);
    // The two sides share samples, so the gap statistic is the mean of the
    // per-sample differences with its own (paired) standard error.
    for (int i = 0; i < count; ++i) {
      diffs[static_cast<size_t>(i)] =
          lhs[k][static_cast<size_t>(i)] - rhs[k][static_cast<size_t>(i)];
    }
    pair.paired_gap = mean_estimate(diffs);
    pair.sigma_gap = std::abs(pair.paired_gap.value) / pair.paired_gap.stderr_;
    if (!(pair.sigma_gap <= pass_sigma)) report.pass = false;
    report.observables.push_back(pair);
  }
  return report;
}

RefinementReport transport_refinement(int count, const std::vector<int>& resolutions,
                                      int fine_steps, const GaugeSpec& spec, uint64_t seed,
                                      const std::vector<std::pair<std::string, PathObservable>>& panel,
                                      int ito_sign, cplx endpoint) {
  for (int r : resolutions) {
    if (r < 2 || fine_steps % r != 0) {
      throw std::invalid_argument("transport_refinement: resolutions must divide fine_steps");
    }
  }
  RefinementReport report;
  report.resolutions = resolutions;
  report.fine_steps = fine_steps;
  report.count = count;
  std::vector<std::vector<double>> acc(resolutions.size(),
                                       std::vector<double>(panel.size(), 0.0));
  for (int i = 0; i < count; ++i) {
    BridgePath zf = sample_bridge(endpoint, fine_steps, seed, static_cast<uint64_t>(i));
    BridgePath gzf = gauge_path(zf, spec);
    const double wf = std::exp(rn_log_density(zf, spec, ito_sign));
    for (size_t r = 0; r < resolutions.size(); ++r) {
      BridgePath z = coarsen_path(zf, fine_steps / resolutions[r]);
      BridgePath gz = gauge_path(z, spec);
      const double w = std::exp(rn_log_density(z, spec, ito_sign));
      for (size_t k = 0; k < panel.size(); ++k) {
        const double coarse = panel[k].second(gz) - panel[k].second(z) * w;
        const double fine = panel[k].second(gzf) - panel[k].second(zf) * wf;
        acc[r][k] += coarse - fine;
      }
    }
  }
  report.gaps.resize(resolutions.size(), 0.0);
  for (size_t r = 0; r < resolutions.size(); ++r) {
    for (double v : acc[r]) report.gaps[r] += std::abs(v) / static_cast<double>(count);
  }
  report.decreasing = true;
  for (size_t r = 0; r + 1 < report.gaps.size(); ++r) {
    if (!(report.gaps[r + 1] <= report.gaps[r])) report.decreasing = false;
  }
  return report;
}

double verify_density_algebra(const SpectralField& w, const GaugeSpec& spec, int chain_sign) {
  const Moments mm = moments(w);
  if (!spec.active(mm.m)) {
    throw std::invalid_argument("verify_density_algebra: field outside mass cutoff");
  }
  const double stoch = mm.a - mm.m * mm.p;  // Im int (|w|^2 - m) w conj(w_x)
  const double quad =
      mm.s6 - 2.0 * mm.m * mm.s4 + mm.m * mm.m * mm.s2;  // int (|w|^2-m)^2 |w|^2
  const double bracket = static_cast<double>(chain_sign) * stoch - 0.5 * quad;
  return -0.5 * density_exponent_pullback(mm) + bracket + 0.5 * gauged_nonquad(mm);
}

}  // namespace dnls
