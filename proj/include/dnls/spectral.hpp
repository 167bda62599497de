#ifndef DNLS_SPECTRAL_HPP
#define DNLS_SPECTRAL_HPP

#include <complex>
#include <vector>

namespace dnls {

using cplx = std::complex<double>;

constexpr double two_pi = 6.283185307179586476925286766559;

/// Periodic complex field stored as Fourier coefficients u_n, |n| <= N.
/// Positive and negative modes are independent (no reality constraint).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(int cutoff)
      : cutoff_(cutoff), coeffs_(2 * cutoff + 1, cplx(0.0, 0.0)) {}
  SpectralField(int cutoff, std::vector<cplx> coeffs);

  int cutoff() const { return cutoff_; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  /// Coefficient of e^{inx}, n in [-N, N].
  cplx& mode(int n) { return coeffs_[static_cast<size_t>(n + cutoff_)]; }
  const cplx& mode(int n) const { return coeffs_[static_cast<size_t>(n + cutoff_)]; }

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  std::vector<cplx>& coeffs() { return coeffs_; }

  bool finite() const;

 private:
  int cutoff_ = 0;
  std::vector<cplx> coeffs_;
};

/// Samples of a field at M equispaced points x_j = 2*pi*j/M.
struct GridField {
  std::vector<cplx> values;

  GridField() = default;
  explicit GridField(int m) : values(static_cast<size_t>(m), cplx(0.0, 0.0)) {}
  explicit GridField(std::vector<cplx> v) : values(std::move(v)) {}

  int points() const { return static_cast<int>(values.size()); }
  cplx& operator[](int j) { return values[static_cast<size_t>(j)]; }
  const cplx& operator[](int j) const { return values[static_cast<size_t>(j)]; }
};

/// Unnormalized DFT through FFTW; sign = -1 forward, +1 backward.
/// Plans are cached per (size, sign) behind a mutex; execution is thread safe.
void dft_inplace(std::vector<cplx>& data, int sign);

/// values_j = sum_n u_n e^{i n x_j}; requires M >= 2N+1.
GridField to_grid(const SpectralField& f, int points);

/// Discrete Fourier coefficients of the grid values truncated to |n| <= N;
/// requires M >= 2N+1.
SpectralField to_spectral(const GridField& g, int cutoff);

/// Mode n -> i n u_n.
SpectralField derivative(const SpectralField& f);

/// Trapezoidal rule (2pi/M) sum_j g_j; exact for trig polynomials of degree < M.
cplx quadrature(const GridField& g);

/// Parseval: 2pi sum_n |u_n|^2.
double l2_norm_sq(const SpectralField& f);

/// Pointwise product of operands sampled at a common (padded) resolution.
GridField dealiased_product(const std::vector<const GridField*>& operands);

/// Smallest power of two >= 3(2N+1); alias-free for quintic products
/// truncated back to |n| <= N, and large enough that every degree-6N
/// integrand appearing in the energy functionals is integrated exactly.
int padded_resolution(int cutoff);

/// A field known pointwise together with its derivative, at a common
/// resolution. Gauged fields are carried this way: e^{-iJ}f is not
/// band-limited, but its grid samples and derivative samples are exact.
struct FieldGrids {
  GridField value;
  GridField deriv;
};

/// Grid abscissa x_j = 2pi j / M.
inline double grid_x(int j, int points) {
  return two_pi * static_cast<double>(j) / static_cast<double>(points);
}

}  // namespace dnls

#endif
