#ifndef DNLS_GAUGE_HPP
#define DNLS_GAUGE_HPP

#include "dnls/spectral.hpp"

namespace dnls {

/// The gauge G(f) = e^{-iJ(f)} f with phase J built from |f|^2 - m(f).
/// In cutoff mode, fields with m(f) > B^2/(2 pi) are fixed points (J = h = 0).
struct GaugeSpec {
  enum class Mode { plain, cutoff };

  double mass_cutoff = 1.0;  // B
  Mode mode = Mode::plain;

  /// True when the gauge acts on a field of mass m.
  bool active(double m) const {
    return mode == Mode::plain ||
           m <= mass_cutoff * mass_cutoff / two_pi;
  }
};

/// m(f) = sum |f_n|^2.
double field_mass(const SpectralField& f);

/// J(f) as a trig polynomial of degree 2N: the zero-mean function
/// |f|^2 - m(f) antidifferentiated mode-wise. The constant is fixed by the
/// double-average convention J(x) = (1/2pi) int_0^{2pi} int_theta^x
/// (|f|^2 - m) dy dtheta, which leaves J with zero mean.
SpectralField gauge_phase(const SpectralField& f, const GaugeSpec& spec);

/// h = |f|^2 - m(f) sampled on an M-point grid (zero when the cutoff fires).
GridField gauge_h(const SpectralField& f, const GaugeSpec& spec, int points);

/// J(f) sampled on an M-point grid.
GridField gauge_phase_grid(const SpectralField& f, const GaugeSpec& spec, int points);

/// Exact grid samples of G(f) (direction -1) or G^{-1}(f) (direction +1)
/// and of its derivative:
///   G(f)      = e^{-iJ} f,   (G f)_x    = e^{-iJ} (f_x - i h f)
///   G^{-1}(f) = e^{+iJ} f,   (G^{-1}f)_x = e^{+iJ} (f_x + i h f)
FieldGrids gauge_grids(const SpectralField& f, const GaugeSpec& spec,
                       int points, int direction);

/// G(f) truncated back to out_cutoff (defaults to f's own cutoff).
SpectralField gauge(const SpectralField& f, const GaugeSpec& spec,
                    int out_cutoff = -1);

/// G^{-1}(f); uses J(f) = J(|f|), so the same phase works both ways.
SpectralField gauge_inverse(const SpectralField& f, const GaugeSpec& spec,
                            int out_cutoff = -1);

}  // namespace dnls

#endif
