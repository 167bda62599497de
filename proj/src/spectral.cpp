#include "dnls/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace dnls {

SpectralField::SpectralField(int cutoff, std::vector<cplx> coeffs)
    : cutoff_(cutoff), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != 2 * cutoff + 1) {
    throw std::invalid_argument("SpectralField: need exactly 2N+1 coefficients");
  }
}

bool SpectralField::finite() const {
  for (const cplx& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

namespace {

std::mutex plan_mutex;
std::map<std::pair<int, int>, fftw_plan> plan_cache;

fftw_plan plan_for(int n, int sign) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = plan_cache.find(key);
  if (it != plan_cache.end()) return it->second;
  std::vector<cplx> dummy(static_cast<size_t>(n));
  auto* buf = reinterpret_cast<fftw_complex*>(dummy.data());
  fftw_plan p = fftw_plan_dft_1d(n, buf, buf, sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_cache.emplace(key, p);
  return p;
}

}  // namespace

void dft_inplace(std::vector<cplx>& data, int sign) {
  fftw_plan p = plan_for(static_cast<int>(data.size()), sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, buf, buf);
}

GridField to_grid(const SpectralField& f, int points) {
  const int n_modes = 2 * f.cutoff() + 1;
  if (points < n_modes) {
    throw std::invalid_argument("to_grid: grid too small for cutoff");
  }
  std::vector<cplx> bins(static_cast<size_t>(points), cplx(0.0, 0.0));
  for (int n = -f.cutoff(); n <= f.cutoff(); ++n) {
    int k = ((n % points) + points) % points;
    bins[static_cast<size_t>(k)] += f.mode(n);
  }
  dft_inplace(bins, FFTW_BACKWARD);
  return GridField(std::move(bins));
}

SpectralField to_spectral(const GridField& g, int cutoff) {
  const int points = g.points();
  if (points < 2 * cutoff + 1) {
    throw std::invalid_argument("to_spectral: grid too small for cutoff");
  }
  std::vector<cplx> bins = g.values;
  dft_inplace(bins, FFTW_FORWARD);
  SpectralField f(cutoff);
  const double inv_m = 1.0 / static_cast<double>(points);
  for (int n = -cutoff; n <= cutoff; ++n) {
    int k = ((n % points) + points) % points;
    f.mode(n) = bins[static_cast<size_t>(k)] * inv_m;
  }
  return f;
}

SpectralField derivative(const SpectralField& f) {
  SpectralField d(f.cutoff());
  for (int n = -f.cutoff(); n <= f.cutoff(); ++n) {
    d.mode(n) = cplx(0.0, static_cast<double>(n)) * f.mode(n);
  }
  return d;
}

cplx quadrature(const GridField& g) {
  if (g.points() == 0) throw std::invalid_argument("quadrature: empty grid");
  cplx sum(0.0, 0.0);
  for (const cplx& v : g.values) sum += v;
  return sum * (two_pi / static_cast<double>(g.points()));
}

double l2_norm_sq(const SpectralField& f) {
  double s = 0.0;
  for (const cplx& c : f.coeffs()) s += std::norm(c);
  return two_pi * s;
}

GridField dealiased_product(const std::vector<const GridField*>& operands) {
  if (operands.empty()) throw std::invalid_argument("dealiased_product: no operands");
  const int points = operands.front()->points();
  for (const GridField* g : operands) {
    if (g->points() != points) {
      throw std::invalid_argument("dealiased_product: resolution mismatch");
    }
  }
  GridField out(points);
  for (int j = 0; j < points; ++j) {
    cplx v(1.0, 0.0);
    for (const GridField* g : operands) v *= (*g)[j];
    out[j] = v;
  }
  return out;
}

int padded_resolution(int cutoff) {
  int need = 3 * (2 * cutoff + 1);
  int m = 1;
  while (m < need) m *= 2;
  return m;
}

}  // namespace dnls
