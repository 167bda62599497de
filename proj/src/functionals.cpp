#include "dnls/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dnls {

namespace {

Moments moments_from_grids(const GridField& w, const GridField& wx) {
  if (w.points() != wx.points()) {
    throw std::invalid_argument("moments: value/derivative grid mismatch");
  }
  const int points = w.points();
  Moments mm;
  for (int j = 0; j < points; ++j) {
    const cplx v = w[j];
    const cplx d = wx[j];
    const double n2 = std::norm(v);
    mm.s2 += n2;
    mm.s4 += n2 * n2;
    mm.s6 += n2 * n2 * n2;
    mm.d2 += std::norm(d);
    const cplx vdbar = v * std::conj(d);
    mm.p += vdbar.imag();
    mm.a += n2 * vdbar.imag();  // Im(w^2 conj(w) conj(w_x)) = |w|^2 Im(w conj(w_x))
  }
  const double dx = two_pi / static_cast<double>(points);
  mm.s2 *= dx;
  mm.s4 *= dx;
  mm.s6 *= dx;
  mm.d2 *= dx;
  mm.p *= dx;
  mm.a *= dx;
  mm.m = mm.s2 / two_pi;
  return mm;
}

}  // namespace

Moments moments(const SpectralField& w) {
  const int points = padded_resolution(w.cutoff());
  return moments_from_grids(to_grid(w, points), to_grid(derivative(w), points));
}

Moments moments(const FieldGrids& w) { return moments_from_grids(w.value, w.deriv); }

double mass(const SpectralField& u) { return field_mass(u); }

double energy(const Moments& mm) { return mm.d2 + 1.5 * mm.a + 0.5 * mm.s6; }
double hamiltonian(const Moments& mm) { return mm.p + 0.5 * mm.s4; }
double nonquad(const Moments& mm) { return 1.5 * mm.a + 0.5 * mm.s6; }

double gauged_hamiltonian(const Moments& mm) {
  return mm.p - 0.5 * mm.s4 + two_pi * mm.m * mm.m;
}

double gauged_energy(const Moments& mm) {
  return mm.d2 + gauged_nonquad(mm);
}

double gauged_nonquad(const Moments& mm) {
  return -0.5 * mm.a + 2.0 * mm.m * mm.p - 0.5 * mm.m * mm.s4 +
         two_pi * mm.m * mm.m * mm.m;
}

double script_energy(const Moments& mm) {
  return mm.d2 - 0.5 * mm.a + mm.s2 * mm.s4 / (2.0 * two_pi);
}

double psi(const Moments& mm) {
  return -2.0 * mm.p / two_pi + mm.s4 / (2.0 * two_pi) - mm.m * mm.m;
}

double density_exponent_pullback(const Moments& mm) {
  return 1.5 * mm.a - mm.s6 + 1.5 * mm.m * mm.s4;
}

double energy(const SpectralField& u) { return energy(moments(u)); }
double hamiltonian(const SpectralField& u) { return hamiltonian(moments(u)); }
double nonquad(const SpectralField& u) { return nonquad(moments(u)); }
double gauged_hamiltonian(const SpectralField& w) { return gauged_hamiltonian(moments(w)); }
double gauged_energy(const SpectralField& w) { return gauged_energy(moments(w)); }
double gauged_nonquad(const SpectralField& w) { return gauged_nonquad(moments(w)); }
double script_energy(const SpectralField& w) { return script_energy(moments(w)); }
double psi(const SpectralField& w) { return psi(moments(w)); }
double density_exponent_pullback(const SpectralField& w) {
  return density_exponent_pullback(moments(w));
}

PointwiseResiduals pointwise_identity_residuals(const SpectralField& w,
                                                const GaugeSpec& spec) {
  const int points = padded_resolution(w.cutoff());
  const double m = field_mass(w);
  FieldGrids u = gauge_grids(w, spec, points, +1);  // u = G^{-1}(w)
  GridField wv = to_grid(w, points);
  GridField wd = to_grid(derivative(w), points);
  PointwiseResiduals res;
  for (int j = 0; j < points; ++j) {
    const cplx uv = u.value[j];
    const cplx ud = u.deriv[j];
    const double wn2 = std::norm(wv[j]);
    const cplx w_cubic = wv[j] * wv[j] * std::conj(wv[j]) * std::conj(wd[j]);
    const cplx lhs3 = uv * uv * std::conj(uv) * std::conj(ud);
    const cplx rhs3 = w_cubic - cplx(0.0, 1.0) * wn2 * wn2 * wn2 +
                      cplx(0.0, m) * wn2 * wn2;
    res.cubic = std::max(res.cubic, std::abs(lhs3 - rhs3));
    const double lhs2 = std::norm(ud);
    const double rhs2 = std::norm(wd[j]) - 2.0 * w_cubic.imag() +
                        2.0 * m * (wv[j] * std::conj(wd[j])).imag() +
                        wn2 * wn2 * wn2 - 2.0 * m * wn2 * wn2 + m * m * wn2;
    res.deriv_sq = std::max(res.deriv_sq, std::abs(lhs2 - rhs2));
  }
  return res;
}

FunctionalReport evaluate_functionals(const SpectralField& w) {
  const Moments mm = moments(w);
  FunctionalReport r;
  r.mass_m = mm.m;
  r.hamiltonian_h = hamiltonian(mm);
  r.energy_e = energy(mm);
  r.nonquad_n = nonquad(mm);
  r.gauged_hamiltonian_h = gauged_hamiltonian(mm);
  r.gauged_energy_e = gauged_energy(mm);
  r.script_energy_e = script_energy(mm);
  r.gauged_nonquad_n = gauged_nonquad(mm);
  r.psi_value = psi(mm);
  return r;
}

}  // namespace dnls
