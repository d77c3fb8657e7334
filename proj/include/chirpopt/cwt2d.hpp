#ifndef CHIRPOPT_CWT2D_HPP
#define CHIRPOPT_CWT2D_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "chirpopt/chirplet.hpp"
#include "chirpopt/errors.hpp"
#include "chirpopt/grid.hpp"
#include "chirpopt/propagate.hpp"

namespace chirpopt {

// Single-scale 2D CWT query. The shift axes (a,b) are inherited from the
// input grid; scale_s plays the role of the propagation scale sqrt(lambda*z/pi)
// when the transform stands in for diffraction.
struct CwtQuery {
  double scale_s = 1.0;  // mm
  ChirpletParams wavelet;
};

// Coefficients at one scale, plus the constants needed to invert or to map
// the coefficients onto a diffracted field: K_s is the propagator constant of
// the equivalent distance z = pi*s^2/wavelength (|K_s| = 1/(pi*s^2));
// admissibility_c is 0 when the constant is undefined for the wavelet
// (pure-chirp mode) or unresolved on this lattice — inversion then refuses.
struct CwtResult {
  ComplexField coefficients;
  double scale_s = 1.0;
  cplx k_constant{0.0, 0.0};
  double admissibility_c = 0.0;
  std::vector<std::string> warnings;
};

namespace detail {

inline void require_scale(double s, const char* where) {
  if (!std::isfinite(s) || s <= 0.0)
    throw std::invalid_argument(strf("%s: scale_s must be > 0 mm, got %g", where, s));
}

inline CwtResult make_result(const ComplexField& coeffs, const CwtQuery& q) {
  CwtResult r;
  r.coefficients = coeffs;
  r.scale_s = q.scale_s;
  const double z_equiv = kPi * q.scale_s * q.scale_s / q.wavelet.wavelength;
  r.k_constant = propagator_constant(q.wavelet.wavelength, z_equiv);
  try {
    r.admissibility_c = admissibility_constant(q.wavelet, coeffs.grid, &r.warnings);
  } catch (const admissibility_error& e) {
    r.admissibility_c = 0.0;
    r.warnings.push_back(e.what());
  }
  return r;
}

// The dilated kernel psi(d/s) is sampled at displacements on the periodic
// lattice: d per axis is the principal value of (i - p)*pitch in
// [-window/2, window/2). This matches the inherently circular spectral path;
// a non-wrapped kernel would disagree O(1) for shifts within a kernel width
// of the border. Its chirp Nyquist bound is the wavelet's, with both pitch
// and radius divided by s.
inline void require_scaled_sampling(const ChirpletParams& w, const Grid2D& grid, double s,
                                    const char* where) {
  const double r_eff = grid.half_window() * std::sqrt(2.0) / s;
  const double bound = s * chirplet_nyquist_pitch(w, r_eff);
  if (grid.pitch > bound)
    throw aliasing_error(strf(
        "%s: pitch %g violates pitch <= s*pi/(2*beta*r_max/s + w0) = %g at scale s=%g "
        "(beta=%g, w0=%g)", where, grid.pitch, bound, s, w.beta(), w.carrier_w0));
}

inline int wrap_index(int d, int n) { return ((d + n / 2) % n) - n / 2; }

}  // namespace detail

// Literal quadrature of the projection onto the shifted/dilated wavelet,
//   W(a,b) = (1/s) * pitch^2 * sum g(x,y) * conj(psi((x-a)/s, (y-b)/s)).
// Accumulation runs in displacement order, so lattice-shift covariance is
// exact to the bit, not just to rounding.
inline CwtResult cwt_forward_direct(const ComplexField& pattern, const CwtQuery& q) {
  detail::require_scale(q.scale_s, "cwt_forward_direct");
  detail::require_finite(pattern.samples, "cwt_forward_direct");
  const int n = pattern.grid.n;
  if (n > 128)
    throw cost_guard_error(strf(
        "cwt_forward_direct: O(n^4) path requires n <= 128, got n=%d "
        "(use cwt_forward_spectral)", n));
  detail::require_scaled_sampling(q.wavelet, pattern.grid, q.scale_s, "cwt_forward_direct");

  const double s = q.scale_s;
  const double pitch = pattern.grid.pitch;
  std::vector<cplx> kernel(pattern.grid.count());
  for (int dj = 0; dj < n; ++dj) {
    const double y = detail::wrap_index(dj, n) * pitch / s;
    for (int di = 0; di < n; ++di) {
      const double x = detail::wrap_index(di, n) * pitch / s;
      kernel[std::size_t(dj) * n + di] = std::conj(chirplet_value(q.wavelet, x, y));
    }
  }
  const double w = pitch * pitch / s;
  ComplexField coeffs = make_field(pattern.grid, pattern.wavelength, pattern.plane_z);
  for (int qrow = 0; qrow < n; ++qrow)
    for (int pcol = 0; pcol < n; ++pcol) {
      cplx acc{0.0, 0.0};
      for (int dj = 0; dj < n; ++dj) {
        const int j = (qrow + dj) % n;
        const std::size_t krow = std::size_t(dj) * n;
        for (int di = 0; di < n; ++di)
          acc += pattern.at(j, (pcol + di) % n) * kernel[krow + di];
      }
      coeffs.at(qrow, pcol) = w * acc;
    }
  return detail::make_result(coeffs, q);
}

// Spectral form of the same projection:
//   W = s * ft_inverse( ft_forward(g) .* conj(Psi(s*u, s*v)) ).
// The prefactor is pinned by requiring exact agreement with
// cwt_forward_direct under this library's FT pair (it also makes the
// wavelet-at-origin coefficient equal s, see tests).
inline CwtResult cwt_forward_spectral(const ComplexField& pattern, const CwtQuery& q) {
  detail::require_scale(q.scale_s, "cwt_forward_spectral");
  detail::require_finite(pattern.samples, "cwt_forward_spectral");
  Spectrum g = ft_forward(pattern);
  const int n = pattern.grid.n;
  const double s = q.scale_s;
  for (int l = 0; l < n; ++l) {
    const double v = pattern.grid.freq(l);
    for (int k = 0; k < n; ++k)
      g.at(l, k) *= std::conj(chirplet_spectrum_value(q.wavelet, s * pattern.grid.freq(k), s * v));
  }
  ComplexField coeffs = ft_inverse(g);
  for (cplx& c : coeffs.samples) c *= s;
  return detail::make_result(coeffs, q);
}

// Literal quadrature of the inverse transform,
//   out(x,y) = (1/(s^2*C)) * pitch^2 * sum W(a,b) * psi((x-a)/s, (y-b)/s)
// with psi NOT conjugated. The constant K_s is carried in the result as
// metadata but kept out of the sum: the round trip must be the nonnegative
// real band-pass s*|Psi(s.)|^2 / C, which a complex unit-modulus factor
// would break.
inline ComplexField icwt_direct(const CwtResult& result, const ChirpletParams& wavelet) {
  const int n = result.coefficients.grid.n;
  if (n > 128)
    throw cost_guard_error(strf(
        "icwt_direct: O(n^4) path requires n <= 128, got n=%d (use icwt_spectral)", n));
  if (!(result.admissibility_c > 0.0))
    throw admissibility_error(strf(
        "icwt_direct: requires admissibility_c > 0, got %g (inverse undefined)",
        result.admissibility_c));
  const double s = result.scale_s;
  detail::require_scaled_sampling(wavelet, result.coefficients.grid, s, "icwt_direct");

  const double pitch = result.coefficients.grid.pitch;
  std::vector<cplx> kernel(result.coefficients.grid.count());
  for (int dj = 0; dj < n; ++dj) {
    const double y = detail::wrap_index(dj, n) * pitch / s;
    for (int di = 0; di < n; ++di) {
      const double x = detail::wrap_index(di, n) * pitch / s;
      kernel[std::size_t(dj) * n + di] = chirplet_value(wavelet, x, y);
    }
  }
  const double w = pitch * pitch / (s * s * result.admissibility_c);
  ComplexField out = make_field(result.coefficients.grid, result.coefficients.wavelength,
                                result.coefficients.plane_z);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      cplx acc{0.0, 0.0};
      for (int dj = 0; dj < n; ++dj) {
        const int qrow = (j - dj + n) % n;
        const std::size_t krow = std::size_t(dj) * n;
        for (int di = 0; di < n; ++di)
          acc += result.coefficients.at(qrow, (i - di + n) % n) * kernel[krow + di];
      }
      out.at(j, i) = w * acc;
    }
  return out;
}

// Spectral form of the inverse:
//   out = (1/C) * ft_inverse( ft_forward(W) .* Psi(s*u, s*v) )
// (Psi not conjugated). As with the forward pair, the prefactor is the one
// that makes icwt_direct and icwt_spectral coincide under this FT pair.
inline ComplexField icwt_spectral(const CwtResult& result, const ChirpletParams& wavelet) {
  if (!(result.admissibility_c > 0.0))
    throw admissibility_error(strf(
        "icwt_spectral: requires admissibility_c > 0, got %g (inverse undefined)",
        result.admissibility_c));
  Spectrum w = ft_forward(result.coefficients);
  const int n = result.coefficients.grid.n;
  const double s = result.scale_s;
  for (int l = 0; l < n; ++l) {
    const double v = result.coefficients.grid.freq(l);
    for (int k = 0; k < n; ++k)
      w.at(l, k) *=
          chirplet_spectrum_value(wavelet, s * result.coefficients.grid.freq(k), s * v);
  }
  ComplexField out = ft_inverse(w);
  const double c = 1.0 / result.admissibility_c;
  for (cplx& z : out.samples) z *= c;
  return out;
}

// Analytic transfer of icwt(cwt(.)) on the dual lattice: the nonnegative real
// band-pass s*|Psi(s*u, s*v)|^2 / C. Used by tests and by the hologram filter.
inline Spectrum roundtrip_response(const ChirpletParams& wavelet, double scale_s,
                                   const Grid2D& grid,
                                   std::vector<std::string>* warnings = nullptr) {
  detail::require_scale(scale_s, "roundtrip_response");
  const double c = admissibility_constant(wavelet, grid, warnings);
  Spectrum t;
  t.grid = grid;
  t.wavelength = wavelet.wavelength;
  t.samples.resize(grid.count());
  for (int l = 0; l < grid.n; ++l) {
    const double v = grid.freq(l);
    for (int k = 0; k < grid.n; ++k)
      t.at(l, k) = scale_s *
                   std::norm(chirplet_spectrum_value(wavelet, scale_s * grid.freq(k), scale_s * v)) /
                   c;
  }
  return t;
}

}  // namespace chirpopt

#endif
