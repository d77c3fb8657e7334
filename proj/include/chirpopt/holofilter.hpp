#ifndef CHIRPOPT_HOLOFILTER_HPP
#define CHIRPOPT_HOLOFILTER_HPP

#include <array>
#include <cmath>
#include <complex>

#include "chirpopt/chirplet.hpp"
#include "chirpopt/cwt2d.hpp"
#include "chirpopt/errors.hpp"
#include "chirpopt/grid.hpp"
#include "chirpopt/metrics.hpp"

namespace chirpopt {

// Ideal off-axis hologram synthesis: intensity of an object wave O plus a
// tilted plane-wave reference R = amplitude_ratio * exp(j*w_r*(x*cos(phi) +
// y*sin(phi))). The spectrum of |O+R|^2 carries the DC term at the origin and
// the +1 / -1 (twin) terms at +-(w_r*cos(phi), w_r*sin(phi)).
struct HologramSpec {
  ComplexField object;
  double reference_tilt_w = 1.0;  // rad/mm
  double reference_angle_phi = 0.0;
  double amplitude_ratio = 1.0;
};

inline ComplexField synth_hologram(const HologramSpec& spec) {
  if (!(spec.amplitude_ratio > 0.0))
    throw std::invalid_argument(strf("synth_hologram: amplitude_ratio must be > 0, got %g",
                                     spec.amplitude_ratio));
  const Grid2D& grid = spec.object.grid;
  const double nyq = kPi / grid.pitch;
  if (!(spec.reference_tilt_w > 0.0) || spec.reference_tilt_w >= nyq)
    throw aliasing_error(strf(
        "synth_hologram: reference_tilt_w %g rad/mm violates 0 < tilt < pi/pitch = %g rad/mm",
        spec.reference_tilt_w, nyq));
  detail::require_finite(spec.object.samples, "synth_hologram");
  const double cphi = std::cos(spec.reference_angle_phi);
  const double sphi = std::sin(spec.reference_angle_phi);
  ComplexField holo = make_field(grid, spec.object.wavelength, spec.object.plane_z);
  for (int j = 0; j < grid.n; ++j) {
    const double y = grid.coord(j);
    for (int i = 0; i < grid.n; ++i) {
      const double x = grid.coord(i);
      const cplx r = std::polar(spec.amplitude_ratio, spec.reference_tilt_w * (x * cphi + y * sphi));
      holo.at(j, i) = cplx{std::norm(spec.object.at(j, i) + r), 0.0};
    }
  }
  return holo;
}

// Band-pass window for one diffraction order: the round-trip response
// s*|Psi(s*(u - u_c), s*(v - v_c))|^2 / C recentered at order_center. With
// order_center = (0,0) the passband sits at the wavelet's own carrier
// position (w0*cos(theta)/s, w0*sin(theta)/s).
inline Spectrum order_filter_window(const ChirpletParams& wavelet, double scale_s,
                                    std::array<double, 2> order_center, const Grid2D& grid) {
  detail::require_scale(scale_s, "order_filter_window");
  const double umax = kPi / grid.pitch;
  if (std::abs(order_center[0]) > umax || std::abs(order_center[1]) > umax)
    throw geometry_error(strf(
        "order_filter_window: order_center (%g, %g) rad/mm outside the lattice |u| <= %g rad/mm",
        order_center[0], order_center[1], umax));
  const double c = admissibility_constant(wavelet, grid);
  Spectrum w;
  w.grid = grid;
  w.wavelength = wavelet.wavelength;
  w.samples.resize(grid.count());
  for (int l = 0; l < grid.n; ++l) {
    const double v = grid.freq(l) - order_center[1];
    for (int k = 0; k < grid.n; ++k) {
      const double u = grid.freq(k) - order_center[0];
      w.at(l, k) =
          scale_s * std::norm(chirplet_spectrum_value(wavelet, scale_s * u, scale_s * v)) / c;
    }
  }
  return w;
}

inline ComplexField apply_spectral_window(const ComplexField& field, const Spectrum& window) {
  detail::require_same_grid(field.grid, window.grid, "apply_spectral_window");
  Spectrum s = ft_forward(field);
  for (std::size_t i = 0; i < s.samples.size(); ++i) s.samples[i] *= window.samples[i];
  return ft_inverse(s);
}

// Isolate one diffraction order of a hologram by multiplying its spectrum
// with the recentered round-trip window and inverting.
inline ComplexField filter_order(const ComplexField& hologram, const ChirpletParams& wavelet,
                                 double scale_s, std::array<double, 2> order_center) {
  return apply_spectral_window(hologram,
                               order_filter_window(wavelet, scale_s, order_center, hologram.grid));
}

// Spectral-mass bookkeeping in fixed discs around DC, the +1 order at
// order_center, and the -1 order at -order_center. Suppression values are
// 10*log10(mass_before/mass_after); an exactly zero after-mass is reported as
// the 300 dB sentinel.
struct SuppressionReport {
  double dc_db = 0.0;
  double twin_db = 0.0;
  double plus1_db = 0.0;  // loss of the kept order, positive = attenuation
  double dc_mass_before = 0.0, dc_mass_after = 0.0;
  double twin_mass_before = 0.0, twin_mass_after = 0.0;
  double plus1_mass_before = 0.0, plus1_mass_after = 0.0;
};

namespace detail {

inline double disc_mass(const Spectrum& s, double cu, double cv, double radius) {
  KahanSum m;
  const double r2 = radius * radius;
  for (int l = 0; l < s.grid.n; ++l) {
    const double dv = s.grid.freq(l) - cv;
    for (int k = 0; k < s.grid.n; ++k) {
      const double du = s.grid.freq(k) - cu;
      if (du * du + dv * dv <= r2) m.add(std::norm(s.at(l, k)));
    }
  }
  return m.value();
}

inline double suppression_db(double before, double after) {
  if (after == 0.0) return before == 0.0 ? 0.0 : 300.0;
  if (before == 0.0) return 0.0;
  return 10.0 * std::log10(before / after);
}

}  // namespace detail

inline SuppressionReport suppression_metrics(const ComplexField& before,
                                             const ComplexField& after, double dc_radius,
                                             std::array<double, 2> order_center,
                                             double order_radius) {
  detail::require_same_grid(before.grid, after.grid, "suppression_metrics");
  const double umax = kPi / before.grid.pitch;
  if (!(dc_radius > 0.0) || !(order_radius > 0.0) || dc_radius > 2.0 * umax ||
      order_radius > 2.0 * umax)
    throw geometry_error(strf(
        "suppression_metrics: disc radii (%g, %g) rad/mm must be in (0, %g] rad/mm",
        dc_radius, order_radius, 2.0 * umax));
  if (std::abs(order_center[0]) > umax || std::abs(order_center[1]) > umax)
    throw geometry_error(strf(
        "suppression_metrics: order_center (%g, %g) rad/mm outside the lattice |u| <= %g rad/mm",
        order_center[0], order_center[1], umax));
  const Spectrum sb = ft_forward(before);
  const Spectrum sa = ft_forward(after);
  SuppressionReport r;
  r.dc_mass_before = detail::disc_mass(sb, 0.0, 0.0, dc_radius);
  r.dc_mass_after = detail::disc_mass(sa, 0.0, 0.0, dc_radius);
  r.plus1_mass_before = detail::disc_mass(sb, order_center[0], order_center[1], order_radius);
  r.plus1_mass_after = detail::disc_mass(sa, order_center[0], order_center[1], order_radius);
  r.twin_mass_before = detail::disc_mass(sb, -order_center[0], -order_center[1], order_radius);
  r.twin_mass_after = detail::disc_mass(sa, -order_center[0], -order_center[1], order_radius);
  r.dc_db = detail::suppression_db(r.dc_mass_before, r.dc_mass_after);
  r.twin_db = detail::suppression_db(r.twin_mass_before, r.twin_mass_after);
  r.plus1_db = detail::suppression_db(r.plus1_mass_before, r.plus1_mass_after);
  return r;
}

}  // namespace chirpopt

#endif
