#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dnls/change_of_measure.hpp"
#include "dnls/functionals.hpp"
#include "dnls/measures.hpp"

using namespace dnls;

namespace {

const double pi = two_pi / 2.0;

BridgePath circle_path(int n, double radius = 1.0) {
  BridgePath p;
  p.values.resize(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    p.values[static_cast<size_t>(k)] = radius * std::exp(cplx(0.0, two_pi * k / n));
  }
  p.endpoint = p.values.front();
  return p;
}

}  // namespace

TEST_CASE("ito integral") {
  BridgePath still;
  still.values.assign(65, cplx(0.7, -0.3));
  still.endpoint = still.values.front();
  std::vector<double> h_one(still.values.size(), 1.0);
  CHECK(ito_integral(still, h_one) == 0.0);

  BridgePath z = sample_bridge(cplx(0.0, 0.0), 64, 3, 0);
  std::vector<double> zeros(z.values.size(), 0.0);
  CHECK(ito_integral(z, zeros) == 0.0);
  std::vector<double> wrong_size(z.values.size() - 1, 1.0);
  CHECK_THROWS(ito_integral(z, wrong_size));

  // Z = e^{ix}, h = 1: Im int Z dconj(Z) = -2pi, with the left sum giving
  // exactly -n sin(2pi/n); the discretization error shrinks with n.
  double prev_err = 1e300;
  for (int n : {64, 128, 256, 512}) {
    BridgePath c = circle_path(n);
    std::vector<double> ones(c.values.size(), 1.0);
    const double got = ito_integral(c, ones);
    const double closed = -n * std::sin(two_pi / n);
    CHECK(std::abs(got - closed) < 1e-10);
    const double err = std::abs(got + two_pi);
    CHECK(err < prev_err);
    prev_err = err;
  }
}

TEST_CASE("path_h and the cutoff branch") {
  BridgePath c = circle_path(100, 2.0);  // mass 4
  GaugeSpec plain{100.0, GaugeSpec::Mode::plain};
  std::vector<double> h = path_h(c, plain);
  for (double v : h) CHECK(std::abs(v) < 1e-12);  // |Z|^2 - m = 0 on circles

  GaugeSpec tight{1.0, GaugeSpec::Mode::cutoff};  // B^2/2pi < 4
  std::vector<double> h2 = path_h(c, tight);
  for (double v : h2) CHECK(v == 0.0);
  CHECK(rn_log_density(c, tight) == 0.0);
}

TEST_CASE("gauge_path preserves modulus and fixes constant-modulus paths") {
  GaugeSpec plain{100.0, GaugeSpec::Mode::plain};
  BridgePath c = circle_path(128, 1.3);
  BridgePath gc = gauge_path(c, plain);
  for (size_t k = 0; k < c.values.size(); ++k) {
    CHECK(std::abs(gc.values[k] - c.values[k]) < 1e-12);  // h = 0 there
  }

  BridgePath z = sample_bridge(cplx(0.4, 0.1), 256, 5, 1);
  BridgePath gz = gauge_path(z, plain);
  for (size_t k = 0; k < z.values.size(); ++k) {
    CHECK(std::abs(std::abs(gz.values[k]) - std::abs(z.values[k])) < 1e-12);
  }
}

TEST_CASE("rn_log_density is deterministic and sign-sensitive") {
  GaugeSpec plain{100.0, GaugeSpec::Mode::plain};
  BridgePath z = sample_bridge(cplx(0.0, 0.0), 512, 9, 2);
  const double d1 = rn_log_density(z, plain);
  const double d2 = rn_log_density(z, plain);
  CHECK(d1 == d2);
  const double flipped = rn_log_density(z, plain, -1);
  // the quadratic part is shared; flipping negates the stochastic part
  const double stoch = 0.5 * (d1 - flipped);
  CHECK(d1 == doctest::Approx(flipped + 2.0 * stoch).epsilon(1e-12));
  CHECK(std::abs(stoch) > 0.0);
}

TEST_CASE("novikov trivia: inactive gauge gives exactly one") {
  GaugeSpec off{1e-12, GaugeSpec::Mode::cutoff};
  McEstimate e = novikov_estimate(2000, 64, off, 17);
  CHECK(e.value == 1.0);
  CHECK(e.stderr_ == 0.0);
  CHECK_THROWS(novikov_estimate(10, 64, off, 17));
}

TEST_CASE("novikov smoke at moderate resolution") {
  GaugeSpec spec{2.2, GaugeSpec::Mode::cutoff};
  McEstimate e = novikov_estimate(4000, 512, spec, 7003);
  CHECK(std::abs(e.value - 1.0) <= 4.0 * e.stderr_);
}

TEST_CASE("transport smoke and the sign-flip negative control") {
  GaugeSpec spec{2.2, GaugeSpec::Mode::cutoff};
  RnReport r = verify_transport(4000, 512, spec, 7003, default_path_panel(spec));
  CHECK(r.gauged_fraction > 0.02);
  CHECK(r.gauged_fraction < 0.5);
  for (const PathObservablePair& p : r.observables) {
    INFO(p.name);
    CHECK(p.sigma_gap <= 4.0);
  }

  RnReport bad = verify_transport(4000, 512, spec, 7003, default_path_panel(spec), -1);
  double worst = 0.0;
  for (const PathObservablePair& p : bad.observables) worst = std::max(worst, p.sigma_gap);
  CHECK(worst > 5.0);
  CHECK(!bad.pass);
}

TEST_CASE("coupled refinement isolates the discretization bias") {
  GaugeSpec spec{2.2, GaugeSpec::Mode::cutoff};
  RefinementReport r = transport_refinement(4000, {128, 256, 512}, 1024, spec, 7003,
                                            default_path_panel(spec));
  CHECK(r.gaps.size() == 3);
  for (double g : r.gaps) CHECK(g >= 0.0);
  CHECK_THROWS(transport_refinement(4000, {100}, 1024, spec, 7003,
                                    default_path_panel(spec)));
}

TEST_CASE("field-level density chain") {
  GaugeSpec plain{100.0, GaugeSpec::Mode::plain};

  // constants: every term is a closed form; residual must vanish identically
  SpectralField c(4);
  c.mode(0) = cplx(0.8, -0.3);
  CHECK(std::abs(verify_density_algebra(c, plain)) < 1e-12);

  for (uint64_t i = 0; i < 20; ++i) {
    SpectralField w = sample_rho_field(16, 29, i);
    const Moments mm = moments(w);
    const double scale = 1.0 + std::abs(density_exponent_pullback(mm)) +
                         0.5 * (mm.s6 + 2.0 * mm.m * mm.s4 + mm.m * mm.m * mm.s2);
    CHECK(std::abs(verify_density_algebra(w, plain)) <= 1e-9 * scale);
    // flipping the stochastic-term sign must break the identity unless the
    // stochastic term happens to vanish
    const double stoch = std::abs(mm.a - mm.m * mm.p);
    if (stoch > 1e-6) {
      CHECK(std::abs(verify_density_algebra(w, plain, -1)) > stoch);
    }
  }

  GaugeSpec tiny{1e-12, GaugeSpec::Mode::cutoff};
  SpectralField w0 = sample_rho_field(8, 29, 0);
  CHECK_THROWS(verify_density_algebra(w0, tiny));
}

TEST_CASE("quadratic term in rn matches a closed form") {
  // |Z| = 2 circle with B large: h = 0, so use an explicit non-circular path
  // Z(x) = 1 + (1/2) e^{ix} sampled densely; m and the integrals have closed
  // forms: |Z|^2 = 5/4 + cos x, m = 5/4, h = cos x,
  // int h^2 |Z|^2 dx = int cos^2 x (5/4 + cos x) dx = 5 pi / 4.
  const int n = 20000;
  BridgePath p;
  p.values.resize(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double x = two_pi * k / n;
    p.values[static_cast<size_t>(k)] = 1.0 + 0.5 * std::exp(cplx(0.0, x));
  }
  p.endpoint = p.values.front();
  GaugeSpec plain{100.0, GaugeSpec::Mode::plain};
  CHECK(path_mass(p) == doctest::Approx(1.25).epsilon(1e-7));
  const std::vector<double> h = path_h(p, plain);
  const double stoch = ito_integral(p, h);
  const double quad = 2.0 * (stoch - rn_log_density(p, plain));
  CHECK(quad == doctest::Approx(5.0 * pi / 4.0).epsilon(1e-6));
}
