#include "dnls/gauge.hpp"

#include <cmath>
#include <stdexcept>

namespace dnls {

double field_mass(const SpectralField& f) {
  double s = 0.0;
  for (const cplx& c : f.coeffs()) s += std::norm(c);
  return s;
}

namespace {

// |f|^2 - m(f) as a cutoff-2N field with its zero mode removed exactly.
SpectralField modulus_sq_fluct(const SpectralField& f) {
  const int n = f.cutoff();
  const int m_grid = padded_resolution(n);
  GridField g = to_grid(f, m_grid);
  for (cplx& v : g.values) v = std::norm(v);
  SpectralField p = to_spectral(g, 2 * n);
  p.mode(0) = cplx(0.0, 0.0);
  return p;
}

}  // namespace

SpectralField gauge_phase(const SpectralField& f, const GaugeSpec& spec) {
  const int n = f.cutoff();
  if (!spec.active(field_mass(f))) return SpectralField(2 * n);
  SpectralField p = modulus_sq_fluct(f);
  SpectralField j(2 * n);
  for (int k = -2 * n; k <= 2 * n; ++k) {
    if (k == 0) continue;
    j.mode(k) = p.mode(k) / cplx(0.0, static_cast<double>(k));
  }
  return j;
}

GridField gauge_h(const SpectralField& f, const GaugeSpec& spec, int points) {
  const double m = field_mass(f);
  if (!spec.active(m)) return GridField(points);
  GridField g = to_grid(f, points);
  for (cplx& v : g.values) v = cplx(std::norm(v) - m, 0.0);
  return g;
}

GridField gauge_phase_grid(const SpectralField& f, const GaugeSpec& spec, int points) {
  return to_grid(gauge_phase(f, spec), points);
}

FieldGrids gauge_grids(const SpectralField& f, const GaugeSpec& spec,
                       int points, int direction) {
  if (direction != 1 && direction != -1) {
    throw std::invalid_argument("gauge_grids: direction must be +-1");
  }
  const double sgn = static_cast<double>(direction);
  GridField j = gauge_phase_grid(f, spec, points);
  GridField h = gauge_h(f, spec, points);
  GridField fv = to_grid(f, points);
  GridField fd = to_grid(derivative(f), points);
  FieldGrids out{GridField(points), GridField(points)};
  for (int k = 0; k < points; ++k) {
    cplx phase = std::exp(cplx(0.0, sgn * j[k].real()));
    out.value[k] = phase * fv[k];
    out.deriv[k] = phase * (fd[k] + cplx(0.0, sgn * h[k].real()) * fv[k]);
  }
  return out;
}

namespace {

SpectralField apply_gauge(const SpectralField& f, const GaugeSpec& spec,
                          int out_cutoff, int direction) {
  const int n_out = out_cutoff < 0 ? f.cutoff() : out_cutoff;
  int points = padded_resolution(f.cutoff());
  while (points < 2 * n_out + 1) points *= 2;
  FieldGrids g = gauge_grids(f, spec, points, direction);
  return to_spectral(g.value, n_out);
}

}  // namespace

SpectralField gauge(const SpectralField& f, const GaugeSpec& spec, int out_cutoff) {
  return apply_gauge(f, spec, out_cutoff, -1);
}

SpectralField gauge_inverse(const SpectralField& f, const GaugeSpec& spec, int out_cutoff) {
  return apply_gauge(f, spec, out_cutoff, +1);
}

}  // namespace dnls
