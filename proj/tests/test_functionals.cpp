#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dnls/functionals.hpp"
#include "dnls/measures.hpp"

using namespace dnls;

namespace {

const double pi = two_pi / 2.0;

SpectralField constant_field(int cutoff, cplx c) {
  SpectralField f(cutoff);
  f.mode(0) = c;
  return f;
}

SpectralField plane_wave(int cutoff, int n, cplx amp = cplx(1.0, 0.0)) {
  SpectralField f(cutoff);
  f.mode(n) = amp;
  return f;
}

// Independent oracle: evaluate a functional term by term on a fine grid by
// direct quadrature, twice the padded resolution used by the implementation.
double oracle_energy(const SpectralField& u) {
  const int points = 2 * padded_resolution(u.cutoff());
  GridField g = to_grid(u, points);
  GridField gx = to_grid(derivative(u), points);
  double d2 = 0.0, a = 0.0, s6 = 0.0;
  for (int j = 0; j < points; ++j) {
    d2 += std::norm(gx[j]);
    a += (g[j] * g[j] * std::conj(g[j]) * std::conj(gx[j])).imag();
    const double n2 = std::norm(g[j]);
    s6 += n2 * n2 * n2;
  }
  const double dx = two_pi / points;
  return d2 * dx + 1.5 * a * dx + 0.5 * s6 * dx;
}

}  // namespace

TEST_CASE("mass") {
  CHECK(mass(constant_field(4, 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mass(plane_wave(4, 3)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mass(constant_field(4, cplx(1.0, 2.0))) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("energy single modes") {
  // closed form for u = e^{inx}: E = 2 pi n^2 - 3 pi n + pi
  CHECK(energy(constant_field(4, 1.0)) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(energy(plane_wave(4, 1)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(energy(plane_wave(4, 2)) == doctest::Approx(3.0 * pi).epsilon(1e-12));
  for (int n : {-2, -1, 0, 1, 2, 3}) {
    const double closed = two_pi * n * n - 3.0 * pi * n + pi;
    CHECK(energy(plane_wave(5, n)) == doctest::Approx(closed).scale(1.0).epsilon(1e-11));
  }
}

TEST_CASE("energy matches quadrature oracle on random fields") {
  MeasureConfig cfg;
  cfg.cutoff = 16;
  for (uint64_t i = 0; i < 5; ++i) {
    SpectralField u = sample_rho_field(16, 99, i);
    const double e = energy(u);
    CHECK(e == doctest::Approx(oracle_energy(u)).epsilon(1e-11));
  }
}

TEST_CASE("hamiltonian") {
  CHECK(hamiltonian(constant_field(3, 1.0)) == doctest::Approx(pi).epsilon(1e-12));
  for (int n : {-2, 0, 1, 3}) {
    CHECK(hamiltonian(plane_wave(4, n)) ==
          doctest::Approx(pi - two_pi * n).scale(1.0).epsilon(1e-12));
  }
  CHECK(hamiltonian(SpectralField(4)) == 0.0);
}

TEST_CASE("nonquad decomposition") {
  CHECK(nonquad(constant_field(3, 1.0)) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(nonquad(plane_wave(4, 1)) == doctest::Approx(-two_pi).epsilon(1e-12));
  for (uint64_t i = 0; i < 5; ++i) {
    SpectralField u = sample_rho_field(12, 5, i);
    const Moments mm = moments(u);
    CHECK(std::abs(energy(mm) - mm.d2 - nonquad(mm)) < 1e-10);
  }
}

TEST_CASE("gauged hamiltonian") {
  CHECK(gauged_hamiltonian(constant_field(3, 1.0)) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(gauged_hamiltonian(plane_wave(4, 1)) == doctest::Approx(-pi).epsilon(1e-12));
  CHECK(gauged_hamiltonian(SpectralField(4)) == 0.0);
}

TEST_CASE("gauged energy and nonquad") {
  const cplx c(0.7, -0.4);
  const double c6 = std::pow(std::norm(c), 3);
  CHECK(gauged_energy(constant_field(3, c)) == doctest::Approx(pi * c6).epsilon(1e-12));
  CHECK(gauged_nonquad(constant_field(3, c)) == doctest::Approx(pi * c6).epsilon(1e-12));
  // unimodular plane wave: G = id, so cal E(e^{ix}) = E(e^{ix}) = 0
  CHECK(gauged_energy(plane_wave(4, 1)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  for (uint64_t i = 0; i < 5; ++i) {
    SpectralField w = sample_rho_field(12, 6, i);
    const Moments mm = moments(w);
    CHECK(std::abs(gauged_energy(mm) - mm.d2 - gauged_nonquad(mm)) < 1e-10);
  }
}

TEST_CASE("script energy and the eu identity") {
  const cplx c(0.5, 0.5);
  const double c6 = std::pow(std::norm(c), 3);
  CHECK(script_energy(constant_field(3, c)) == doctest::Approx(pi * c6).epsilon(1e-12));
  CHECK(script_energy(SpectralField(3)) == 0.0);
  for (uint64_t i = 0; i < 10; ++i) {
    SpectralField w = sample_rho_field(16, 21, i);
    const Moments mm = moments(w);
    const double lhs = script_energy(mm) + 2.0 * mm.m * gauged_hamiltonian(mm) -
                       two_pi * mm.m * mm.m * mm.m;
    CHECK(std::abs(lhs - gauged_energy(mm)) <= 1e-9 * (1.0 + std::abs(gauged_energy(mm))));
  }
}

TEST_CASE("psi") {
  const cplx c(0.9, 0.1);
  const double c4 = std::norm(c) * std::norm(c);
  CHECK(psi(constant_field(3, c)) == doctest::Approx(-0.5 * c4).epsilon(1e-12));
  const cplx amp(0.0, 1.3);
  const double a2 = std::norm(amp);
  CHECK(psi(plane_wave(4, 1, amp)) ==
        doctest::Approx(2.0 * a2 - 0.5 * a2 * a2).epsilon(1e-12));
  CHECK(psi(SpectralField(4)) == 0.0);
}

TEST_CASE("density exponent pullback") {
  const cplx c(0.6, 0.2);
  const double c6 = std::pow(std::norm(c), 3);
  CHECK(density_exponent_pullback(constant_field(3, c)) ==
        doctest::Approx(pi * c6).epsilon(1e-12));
  CHECK(density_exponent_pullback(SpectralField(3)) == 0.0);
  GaugeSpec spec{100.0, GaugeSpec::Mode::plain};
  for (uint64_t i = 0; i < 5; ++i) {
    SpectralField w = sample_rho_field(12, 31, i);
    // oracle: evaluate N on exact grid samples of u = G^{-1}(w)
    const int points = padded_resolution(12);
    FieldGrids u = gauge_grids(w, spec, points, +1);
    const double direct = nonquad(moments(u));
    CHECK(std::abs(density_exponent_pullback(w) - direct) <= 1e-8 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("pointwise identities oo2 and oo3") {
  GaugeSpec spec{100.0, GaugeSpec::Mode::plain};
  PointwiseResiduals unimod = pointwise_identity_residuals(plane_wave(4, 2), spec);
  CHECK(unimod.cubic < 1e-11);
  CHECK(unimod.deriv_sq < 1e-11);
  PointwiseResiduals constant =
      pointwise_identity_residuals(constant_field(4, cplx(0.3, 0.8)), spec);
  CHECK(constant.cubic < 1e-12);
  CHECK(constant.deriv_sq < 1e-12);
  for (uint64_t i = 0; i < 5; ++i) {
    SpectralField w = sample_rho_field(16, 41, i);
    PointwiseResiduals r = pointwise_identity_residuals(w, spec);
    CHECK(r.cubic < 1e-9 * 100.0);
    CHECK(r.deriv_sq < 1e-9 * 100.0);
  }
}

TEST_CASE("phase rotation and translation invariance") {
  SpectralField w = sample_rho_field(12, 55, 0);
  FunctionalReport base = evaluate_functionals(w);

  SpectralField rotated = w;
  const cplx phase = std::exp(cplx(0.0, 0.77));
  for (cplx& c : rotated.coeffs()) c *= phase;
  SpectralField shifted = w;
  for (int n = -12; n <= 12; ++n) shifted.mode(n) *= std::exp(cplx(0.0, 0.3 * n));

  for (const SpectralField* v : {&rotated, &shifted}) {
    FunctionalReport r = evaluate_functionals(*v);
    CHECK(std::abs(r.mass_m - base.mass_m) < 1e-10);
    CHECK(std::abs(r.hamiltonian_h - base.hamiltonian_h) < 1e-10);
    CHECK(std::abs(r.energy_e - base.energy_e) < 1e-9);
    CHECK(std::abs(r.gauged_energy_e - base.gauged_energy_e) < 1e-9);
    CHECK(std::abs(r.script_energy_e - base.script_energy_e) < 1e-9);
    CHECK(std::abs(r.psi_value - base.psi_value) < 1e-10);
  }
}

TEST_CASE("gauge identities E = calE o G and H = scrH o G") {
  GaugeSpec spec{100.0, GaugeSpec::Mode::plain};
  for (uint64_t i = 0; i < 10; ++i) {
    SpectralField u = sample_rho_field(16, 77, i);
    const int points = padded_resolution(16);
    FieldGrids w = gauge_grids(u, spec, points, -1);
    const Moments mw = moments(w);
    const double e_u = energy(u);
    const double h_u = hamiltonian(u);
    CHECK(std::abs(e_u - gauged_energy(mw)) <= 1e-8 * (1.0 + std::abs(e_u)));
    CHECK(std::abs(h_u - gauged_hamiltonian(mw)) <= 1e-8 * (1.0 + std::abs(h_u)));
  }
}
