#ifndef DNLS_FUNCTIONALS_HPP
#define DNLS_FUNCTIONALS_HPP

#include "dnls/gauge.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

/// The integral moments every conserved quantity is built from:
///   s2 = int |w|^2      s4 = int |w|^4      s6 = int |w|^6
///   p  = Im int w conj(w_x)                 a  = Im int w^2 conj(w) conj(w_x)
///   d2 = int |w_x|^2                        m  = s2 / 2pi
/// Computed by exact trapezoidal quadrature on a padded grid.
struct Moments {
  double s2 = 0, s4 = 0, s6 = 0, p = 0, a = 0, d2 = 0, m = 0;
};

Moments moments(const SpectralField& w);
Moments moments(const FieldGrids& w);

double mass(const SpectralField& u);
double energy(const SpectralField& u);
double hamiltonian(const SpectralField& u);
double nonquad(const SpectralField& u);  // non-quadratic part N of the energy

double gauged_hamiltonian(const SpectralField& w);
double gauged_energy(const SpectralField& w);
double gauged_nonquad(const SpectralField& w);
double script_energy(const SpectralField& w);
double psi(const SpectralField& w);

/// N(G^{-1}(w)) by the closed form
/// (3/2) Im int w^2 conj(w) conj(w_x) - int |w|^6 + (3/2) m int |w|^4.
double density_exponent_pullback(const SpectralField& w);

// Moment-formula variants, for fields given by exact grid samples
// (typically outputs of gauge_grids, which are not band-limited).
double energy(const Moments& mm);
double hamiltonian(const Moments& mm);
double nonquad(const Moments& mm);
double gauged_hamiltonian(const Moments& mm);
double gauged_energy(const Moments& mm);
double gauged_nonquad(const Moments& mm);
double script_energy(const Moments& mm);
double psi(const Moments& mm);
double density_exponent_pullback(const Moments& mm);

/// Max grid residual of the two pointwise gauge identities, with u = G^{-1}(w):
///   u^2 conj(u) conj(u_x) = w^2 conj(w) conj(w_x) - i |w|^6 + i m |w|^4
///   |u_x|^2 = |w_x|^2 - 2 Im(w^2 conj(w) conj(w_x)) + 2 m Im(w conj(w_x))
///             + |w|^6 - 2 m |w|^4 + m^2 |w|^2
struct PointwiseResiduals {
  double cubic = 0.0;      // first identity
  double deriv_sq = 0.0;   // second identity
};
PointwiseResiduals pointwise_identity_residuals(const SpectralField& w,
                                                const GaugeSpec& spec);

struct FunctionalReport {
  double mass_m = 0;
  double hamiltonian_h = 0;
  double energy_e = 0;
  double nonquad_n = 0;
  double gauged_hamiltonian_h = 0;
  double gauged_energy_e = 0;
  double script_energy_e = 0;
  double gauged_nonquad_n = 0;
  double psi_value = 0;
};
FunctionalReport evaluate_functionals(const SpectralField& w);

}  // namespace dnls

#endif
