#include "dnls/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dnls {

McEstimate mean_estimate(const std::vector<double>& samples) {
  McEstimate e;
  e.count = static_cast<int64_t>(samples.size());
  if (samples.empty()) {
    e.degenerate = true;
    return e;
  }
  double sum = 0.0;
  for (double s : samples) sum += s;
  e.value = sum / static_cast<double>(samples.size());
  double ss = 0.0;
  for (double s : samples) ss += (s - e.value) * (s - e.value);
  if (samples.size() > 1) {
    e.stderr_ = std::sqrt(ss / (static_cast<double>(samples.size() - 1) *
                                static_cast<double>(samples.size())));
  }
  e.ess = static_cast<double>(samples.size());
  return e;
}

McEstimate batch_mean_estimate(const std::vector<double>& sequence, int n_batches) {
  McEstimate e;
  e.count = static_cast<int64_t>(sequence.size());
  if (sequence.size() < static_cast<size_t>(2 * n_batches) || n_batches < 2) {
    e.degenerate = sequence.empty();
    return mean_estimate(sequence);  // too short for batching
  }
  const size_t batch = sequence.size() / static_cast<size_t>(n_batches);
  const size_t used = batch * static_cast<size_t>(n_batches);
  std::vector<double> means(static_cast<size_t>(n_batches), 0.0);
  double total = 0.0;
  for (size_t i = 0; i < used; ++i) {
    means[i / batch] += sequence[i] / static_cast<double>(batch);
  }
  for (double m : means) total += m;
  e.value = total / static_cast<double>(n_batches);
  double bss = 0.0;
  for (double m : means) bss += (m - e.value) * (m - e.value);
  e.stderr_ = std::sqrt(bss / (static_cast<double>(n_batches - 1) *
                               static_cast<double>(n_batches)));
  double var = 0.0;
  for (size_t i = 0; i < used; ++i) var += (sequence[i] - e.value) * (sequence[i] - e.value);
  var /= static_cast<double>(used - 1);
  e.ess = e.stderr_ > 0.0 ? var / (e.stderr_ * e.stderr_)
                          : static_cast<double>(used);
  if (e.ess < 0.05 * static_cast<double>(used)) e.low_ess_warning = true;
  return e;
}

McEstimate weighted_estimate(const std::vector<double>& values,
                             const std::vector<double>& log_weights) {
  if (values.size() != log_weights.size()) {
    throw std::invalid_argument("weighted_estimate: size mismatch");
  }
  McEstimate e;
  e.count = static_cast<int64_t>(values.size());
  double max_lw = -std::numeric_limits<double>::infinity();
  for (double lw : log_weights) max_lw = std::max(max_lw, lw);
  if (!std::isfinite(max_lw)) {
    e.degenerate = true;
    return e;
  }
  double wsum = 0.0;
  double fwsum = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    double w = std::exp(log_weights[i] - max_lw);
    wsum += w;
    fwsum += w * values[i];
  }
  e.value = fwsum / wsum;
  double var = 0.0;
  double w2sum = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    double w = std::exp(log_weights[i] - max_lw);
    double d = values[i] - e.value;
    var += w * w * d * d;
    w2sum += w * w;
  }
  e.stderr_ = std::sqrt(var) / wsum;
  e.ess = wsum * wsum / w2sum;
  return e;
}

double effective_sample_size(const std::vector<double>& log_weights) {
  double max_lw = -std::numeric_limits<double>::infinity();
  for (double lw : log_weights) max_lw = std::max(max_lw, lw);
  if (!std::isfinite(max_lw)) return 0.0;
  double s = 0.0, s2 = 0.0;
  for (double lw : log_weights) {
    double w = std::exp(lw - max_lw);
    s += w;
    s2 += w * w;
  }
  return s * s / s2;
}

double log_sum_exp(const std::vector<double>& log_weights) {
  double max_lw = -std::numeric_limits<double>::infinity();
  for (double lw : log_weights) max_lw = std::max(max_lw, lw);
  if (!std::isfinite(max_lw)) return max_lw;
  double s = 0.0;
  for (double lw : log_weights) s += std::exp(lw - max_lw);
  return max_lw + std::log(s);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

// Asymptotic Kolmogorov distribution Q(t) = 2 sum_{k>=1} (-1)^{k-1} e^{-2k^2t^2}.
double kolmogorov_pvalue(double t) {
  if (t < 1e-8) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-12) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

double ks_test_standard_normal(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("ks test: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    double cdf = normal_cdf(samples[i]);
    double lo = static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(std::abs(cdf - lo), std::abs(cdf - hi)));
  }
  return kolmogorov_pvalue((std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d);
}

double sigma_gap(const McEstimate& a, const McEstimate& b) {
  double denom = std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
  if (denom == 0.0) return a.value == b.value ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(a.value - b.value) / denom;
}

}  // namespace dnls
