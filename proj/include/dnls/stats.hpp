#ifndef DNLS_STATS_HPP
#define DNLS_STATS_HPP

#include <cstdint>
#include <vector>

namespace dnls {

/// Monte Carlo estimate with its standard error, sample count and
/// effective sample size (Sum w)^2 / Sum w^2.
struct McEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  int64_t count = 0;
  double ess = 0.0;
  bool low_ess_warning = false;
  bool degenerate = false;
};

/// Plain sample mean with stderr = sd / sqrt(n).
McEstimate mean_estimate(const std::vector<double>& samples);

/// Self-normalized importance estimate of E[f] from (f_i, log w_i).
/// Delta-method stderr; -inf log-weights contribute zero weight.
McEstimate weighted_estimate(const std::vector<double>& values,
                             const std::vector<double>& log_weights);

/// ESS of a log-weight vector, computed stably through the max shift.
double effective_sample_size(const std::vector<double>& log_weights);

/// Mean of a (possibly autocorrelated) sequence with a batch-means standard
/// error: the sequence is cut into n_batches contiguous batches and the
/// stderr comes from the spread of the batch means. The ess field holds the
/// equivalent number of independent samples, sample_var / stderr^2.
McEstimate batch_mean_estimate(const std::vector<double>& sequence, int n_batches = 50);

/// log(Sum exp(l_i)) with the usual max shift; -inf entries drop out.
double log_sum_exp(const std::vector<double>& log_weights);

/// Two-sided one-sample Kolmogorov-Smirnov test against the standard
/// normal CDF; returns the asymptotic p-value.
double ks_test_standard_normal(std::vector<double> samples);

/// Standard normal CDF.
double normal_cdf(double x);

/// |a - b| in units of the combined standard error.
double sigma_gap(const McEstimate& a, const McEstimate& b);

}  // namespace dnls

#endif
