#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dnls/gauge.hpp"
#include "dnls/measures.hpp"

using namespace dnls;

namespace {

// Nested-quadrature oracle for the double integral
// J(f)(x) = (1/2pi) int_0^{2pi} int_theta^x (|f(y)|^2 - m) dy dtheta.
double oracle_j(const SpectralField& f, double x, int panels = 16384) {
  const double m = field_mass(f);
  GridField g = to_grid(f, panels);
  // cumulative integral K(t) = int_0^t (|f|^2 - m) with trapezoid on the fine grid
  std::vector<double> big_k(static_cast<size_t>(panels) + 1, 0.0);
  const double dx = two_pi / panels;
  for (int j = 0; j < panels; ++j) {
    const double a = std::norm(g[j]) - m;
    const double b = std::norm(g[(j + 1) % panels]) - m;
    big_k[static_cast<size_t>(j) + 1] = big_k[static_cast<size_t>(j)] + 0.5 * dx * (a + b);
  }
  auto k_at = [&](double t) {
    const double pos = t / dx;
    const int j = std::min(panels - 1, static_cast<int>(pos));
    return big_k[static_cast<size_t>(j)] +
           (pos - j) * (big_k[static_cast<size_t>(j) + 1] - big_k[static_cast<size_t>(j)]);
  };
  // (1/2pi) int_0^{2pi} [K(x) - K(theta)] dtheta
  double mean_k = 0.0;
  for (int j = 0; j < panels; ++j) {
    mean_k += 0.5 * (big_k[static_cast<size_t>(j)] + big_k[static_cast<size_t>(j) + 1]);
  }
  mean_k /= panels;
  return k_at(x) - mean_k;
}

}  // namespace

TEST_CASE("J closed form for 1 + e^{ix}/2") {
  SpectralField f(4);
  f.mode(0) = 1.0;
  f.mode(1) = 0.5;
  GaugeSpec spec{10.0, GaugeSpec::Mode::plain};
  GridField j = gauge_phase_grid(f, spec, 64);
  for (int k = 0; k < 64; ++k) {
    CHECK(std::abs(j[k].real() - std::sin(grid_x(k, 64))) < 1e-12);
    CHECK(std::abs(j[k].imag()) < 1e-12);
  }
}

TEST_CASE("J matches the nested-quadrature oracle") {
  GaugeSpec spec{100.0, GaugeSpec::Mode::plain};
  for (uint64_t i = 0; i < 5; ++i) {
    SpectralField f = sample_rho_field(8, 13, i);
    GridField j = gauge_phase_grid(f, spec, 64);
    for (int k = 0; k < 64; k += 5) {
      CHECK(std::abs(j[k].real() - oracle_j(f, grid_x(k, 64))) < 1e-6);
    }
  }
}

TEST_CASE("J is zero for unimodular fields and beyond the cutoff") {
  SpectralField unimod(4);
  unimod.mode(2) = 1.0;
  GaugeSpec plain{10.0, GaugeSpec::Mode::plain};
  GridField j = gauge_phase_grid(unimod, plain, 32);
  for (const cplx& v : j.values) CHECK(std::abs(v) < 1e-13);

  SpectralField big(4);
  big.mode(0) = 100.0;
  big.mode(1) = 5.0;
  GaugeSpec cutoff{1.0, GaugeSpec::Mode::cutoff};
  GridField j2 = gauge_phase_grid(big, cutoff, 32);
  for (const cplx& v : j2.values) CHECK(std::abs(v) == 0.0);
  GridField h2 = gauge_h(big, cutoff, 32);
  for (const cplx& v : h2.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("h equals |f|^2 - m with zero mean and dJ/dx = h") {
  GaugeSpec spec{100.0, GaugeSpec::Mode::plain};
  SpectralField f(4);
  f.mode(0) = 1.0;
  f.mode(1) = 0.5;
  GridField h = gauge_h(f, spec, 32);
  for (int k = 0; k < 32; ++k) {
    CHECK(std::abs(h[k].real() - std::cos(grid_x(k, 32))) < 1e-12);
  }
  CHECK(std::abs(quadrature(h)) < 1e-12);

  for (uint64_t i = 0; i < 3; ++i) {
    SpectralField r = sample_rho_field(8, 17, i);
    SpectralField j = gauge_phase(r, spec);
    GridField dj = to_grid(derivative(j), 64);
    GridField hr = gauge_h(r, spec, 64);
    for (int k = 0; k < 64; ++k) CHECK(std::abs(dj[k] - hr[k]) < 1e-10);
  }
}

TEST_CASE("gauge fixes constants and unimodular fields") {
  GaugeSpec spec{10.0, GaugeSpec::Mode::plain};
  SpectralField c(4);
  c.mode(0) = cplx(0.3, -0.7);
  SpectralField gc = gauge(c, spec);
  for (int n = -4; n <= 4; ++n) {
    CHECK(std::abs(gc.mode(n) - c.mode(n)) < 1e-13);
  }
  SpectralField e2(4);
  e2.mode(2) = 1.0;
  SpectralField ge2 = gauge(e2, spec);
  for (int n = -4; n <= 4; ++n) CHECK(std::abs(ge2.mode(n) - e2.mode(n)) < 1e-12);
}

TEST_CASE("gauge closed form for 1 + e^{ix}/2") {
  SpectralField f(4);
  f.mode(0) = 1.0;
  f.mode(1) = 0.5;
  GaugeSpec spec{10.0, GaugeSpec::Mode::plain};
  const int points = 64;
  FieldGrids w = gauge_grids(f, spec, points, -1);
  for (int j = 0; j < points; ++j) {
    const double x = grid_x(j, points);
    const cplx expected = std::exp(cplx(0.0, -std::sin(x))) *
                          (1.0 + 0.5 * std::exp(cplx(0.0, x)));
    CHECK(std::abs(w.value[j] - expected) < 1e-12);
  }
}

TEST_CASE("modulus and mass preservation") {
  GaugeSpec spec{100.0, GaugeSpec::Mode::plain};
  for (uint64_t i = 0; i < 5; ++i) {
    SpectralField f = sample_rho_field(12, 23, i);
    const int points = padded_resolution(12);
    FieldGrids w = gauge_grids(f, spec, points, -1);
    GridField fg = to_grid(f, points);
    double max_f = 0.0, mod_gap = 0.0;
    for (int j = 0; j < points; ++j) {
      max_f = std::max(max_f, std::abs(fg[j]));
      mod_gap = std::max(mod_gap, std::abs(std::abs(w.value[j]) - std::abs(fg[j])));
    }
    CHECK(mod_gap <= 1e-11 * (1.0 + max_f));
    // mass through the exact grid representation
    double m_w = 0.0;
    for (const cplx& v : w.value.values) m_w += std::norm(v);
    m_w /= points;
    CHECK(std::abs(m_w - field_mass(f)) < 1e-12);
  }
}

TEST_CASE("round trip") {
  GaugeSpec spec{100.0, GaugeSpec::Mode::plain};
  for (uint64_t i = 0; i < 5; ++i) {
    // smooth-ish field so the truncation back to the input cutoff is benign
    SpectralField f = sample_rho_field(8, 29, i);
    for (cplx& c : f.coeffs()) c *= 0.4;
    const int wide = 64;
    SpectralField w = gauge(f, spec, wide);
    SpectralField back = gauge_inverse(w, spec, wide);
    double gap = 0.0;
    for (int n = -8; n <= 8; ++n) gap = std::max(gap, std::abs(back.mode(n) - f.mode(n)));
    CHECK(gap < 1e-10);
  }
}
