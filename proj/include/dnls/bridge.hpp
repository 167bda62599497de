#ifndef DNLS_BRIDGE_HPP
#define DNLS_BRIDGE_HPP

#include <cstdint>
#include <vector>

#include "dnls/spectral.hpp"
#include "dnls/stats.hpp"

namespace dnls {

/// Discretized complex path on [0, 2pi] pinned at both ends:
/// values[0] = values[n_steps] = endpoint.
struct BridgePath {
  std::vector<cplx> values;  // size n_steps + 1
  cplx endpoint{0.0, 0.0};

  int steps() const { return static_cast<int>(values.size()) - 1; }
  double dx() const { return two_pi / static_cast<double>(steps()); }
};

/// Standard complex Brownian bridge: independent standard real bridges in the
/// real and imaginary parts, built as B_k - (x_k/2pi) B_n + u_o from a
/// standard-increment walk.
BridgePath sample_bridge(cplx endpoint, int n_steps, uint64_t seed, uint64_t stream);

/// Complex Brownian motion on [0, 2pi] started at `start` (no pinning).
BridgePath sample_brownian_motion(cplx start, int n_steps, uint64_t seed, uint64_t stream);

/// Keep every stride-th point (stride must divide steps()). The restriction of
/// a bridge walk is again a bridge walk in law, so this couples resolutions to
/// one underlying realization for refinement comparisons.
BridgePath coarsen_path(const BridgePath& path, int stride);

/// log of d rho(.|u_o)/dP_{u_o} up to its normalization constant:
/// -(1/2) trapezoid of |Z|^2 over [0, 2pi].
double rho_bridge_log_weight(const BridgePath& path);

/// (1/2pi) trapezoid of |Z|^2 — the path-level mass m(Z).
double path_mass(const BridgePath& path);

/// The conformal clock s(x) = int_0^x dr/|Z(r)|^2 (left Riemann sums) and the
/// log/phase process W = log|Z| + i arg(Z) with the phase unwrapped
/// cumulatively along the path.
struct TimeChangedPath {
  std::vector<double> s;   // size n_steps + 1, s[0] = 0
  std::vector<double> w1;  // log |Z|
  std::vector<double> w2;  // continued argument
  double stopping_s = 0.0;       // S = s at x = 2pi
  bool near_zero = false;        // some |Z_k| fell below the modulus floor
  bool coarse_phase = false;     // a consecutive phase jump exceeded pi/2
};

TimeChangedPath time_change(const BridgePath& path, double modulus_floor = 1e-6);

/// Recover the x-grid from a clock sequence by the inverse left-Riemann step
/// x_{k+1} = x_k + |Z_k|^2 (s_{k+1} - s_k).
std::vector<double> inverse_time_change(const TimeChangedPath& tc, const BridgePath& path);

struct ConformalReport {
  McEstimate mean_w1, mean_w2;       // increment means (should be 0)
  double var_ratio_w1 = 0.0;         // Var(dW1)/ds
  double var_ratio_w2 = 0.0;
  double var_ratio_stderr = 0.0;     // stderr of the ratio estimates
  double cross_correlation = 0.0;
  double cross_corr_stderr = 0.0;
  double ks_p_value_w2 = 0.0;        // KS of normalized dW2 against N(0,1)
  int excluded_paths = 0;
  int used_paths = 0;
  int64_t increments = 0;
};

/// Samples complex Brownian motions, applies the conformal time change and
/// tests the increments of log|B| and arg(B) over equal s-increments for
/// Gaussian behaviour (zero mean, variance ds, independence).
ConformalReport conformal_gaussianity_check(int count, int n_steps, uint64_t seed,
                                            double ds = 0.05);

/// Discrete Cameron-Martin log-density for a real bridge on the clock grid s:
/// sum_j (dk_j/ds_j) dX_j - (1/2) sum_j (dk_j)^2/ds_j.
double cameron_martin_log_density(const std::vector<double>& path_x,
                                  const std::vector<double>& shift_k,
                                  const std::vector<double>& s_grid);

}  // namespace dnls

#endif
