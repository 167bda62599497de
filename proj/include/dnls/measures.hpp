#ifndef DNLS_MEASURES_HPP
#define DNLS_MEASURES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dnls/gauge.hpp"
#include "dnls/spectral.hpp"
#include "dnls/stats.hpp"

namespace dnls {

struct MeasureConfig {
  int cutoff = 32;          // N
  double mass_cutoff = 2.0; // B, enters through the indicator ||u||_L2 <= B
  double beta = 1.0;        // kept configurable; acceptance runs use 1
  enum class Which { rho, nu, mu } which = Which::nu;
};

/// Samples with log-weights. (seed, index) determines sample i bit-exactly,
/// so serial and parallel generation agree.
struct WeightedEnsemble {
  std::vector<SpectralField> samples;
  std::vector<double> log_weights;
  uint64_t seed = 0;
  MeasureConfig config;
};

/// One draw from the finite-dimensional Gaussian rho_N: independent centered
/// real Gaussians a_n, b_n of variance 1/(1+n^2) for each |n| <= N.
SpectralField sample_rho_field(int cutoff, uint64_t seed, uint64_t index);

WeightedEnsemble sample_rho(const MeasureConfig& config, uint64_t seed, int count);

/// -(beta/2) N(u) on the mass ball, -inf outside it.
double log_weight_nu(const SpectralField& u, const MeasureConfig& config);

/// -(beta/2) calN(w) on the mass ball, -inf outside it.
double log_weight_mu(const SpectralField& w, const MeasureConfig& config);

/// Monte Carlo estimate of Z = E_rho[chi e^{-N(u)/2}] with jackknife stderr.
McEstimate estimate_normalization(const MeasureConfig& config, uint64_t seed, int count);

using Observable = std::function<double(const SpectralField&)>;

/// Self-normalized importance estimate of E[F] under the ensemble's weights,
/// optionally tilted by an extra log-weight term.
McEstimate expectation(const WeightedEnsemble& ensemble, const Observable& observable,
                       const std::optional<std::function<double(const SpectralField&)>>&
                           reweight = std::nullopt,
                       double ess_floor_fraction = 0.05);

struct McmcOptions {
  double step_scale = 0.2;  // pCN mixing parameter in (0, 1]
  int burn_in = 500;
  int thin = 5;
};

struct McmcResult {
  WeightedEnsemble ensemble;  // unit weights
  double acceptance_rate = 0.0;
  bool tuning_warning = false;
};

/// Random-walk Metropolis targeting the measure selected by config.which
/// (rho: no reweighting; nu: chi e^{-N(u)/2}; mu: chi e^{-calN(w)/2}, both
/// relative to rho_N). The proposal is the rho_N-preserving autoregressive
/// move u' = sqrt(1-s^2) u + s xi, xi ~ rho_N. The initial state is scaled
/// into the mass ball so the chain never has to find it by diffusion.
McmcResult mcmc_sample(const MeasureConfig& config, uint64_t seed, int count,
                       const McmcOptions& options = {});

/// mcmc_sample with config.which forced to nu.
McmcResult mcmc_sample_nu(const MeasureConfig& config, uint64_t seed, int count,
                          const McmcOptions& options = {});

struct ObservablePair {
  std::string name;
  McEstimate lhs;  // E_nu[F(G(u))]
  McEstimate rhs;  // E_mu[F(w)]
  double sigma_gap = 0.0;
};

struct PushforwardReport {
  std::vector<ObservablePair> pairs;
  double ess_nu = 0.0;
  double ess_mu = 0.0;
  int count = 0;
  bool pass = false;
};

/// Finite-N Monte Carlo content of the pushforward identity mu = nu o G^{-1}:
/// compares E_nu[F o G] against E_mu[F] for the standard observable panel
/// {m, int |u|^4, Re u_0, cos(Re u(0))}, with common rho_N draws on both sides.
PushforwardReport pushforward_consistency(const MeasureConfig& config, uint64_t seed,
                                          int count, double pass_sigma = 3.0);

}  // namespace dnls

#endif
