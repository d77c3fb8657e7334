#ifndef CHIRPOPT_PROPAGATE_HPP
#define CHIRPOPT_PROPAGATE_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "chirpopt/errors.hpp"
#include "chirpopt/grid.hpp"

namespace chirpopt {

enum class PropagationMethod { transfer_function, direct_quadrature };

// Scalar Fresnel propagation over distance z > 0; direction is encoded in the
// operation names (forward / inverse), never in the sign of z.
struct PropagationParams {
  double wavelength = 5.5e-4;  // mm
  double z = 1.0;              // mm
  PropagationMethod method = PropagationMethod::transfer_function;
};

namespace detail {

inline void require_lambda_z(double wavelength, double z, const char* where) {
  if (!std::isfinite(wavelength) || wavelength <= 0.0)
    throw std::invalid_argument(strf("%s: wavelength must be > 0 mm, got %g", where, wavelength));
  if (!std::isfinite(z) || z <= 0.0)
    throw std::invalid_argument(strf("%s: z must be > 0 mm, got %g", where, z));
}

}  // namespace detail

// Scale equivalent to propagating a distance z: a = sqrt(wavelength*z/pi).
inline double scale_from_distance(double wavelength, double z) {
  detail::require_lambda_z(wavelength, z, "scale_from_distance");
  return std::sqrt(wavelength * z / kPi);
}

// K = exp(j*2*pi*z/wavelength) / (j*wavelength*z); |K| = 1/(wavelength*z).
// The 1/j factor is applied as an exact complex multiply rather than folded
// into the polar angle: the carrier phase 2*pi*z/wavelength is ~1e9 rad at
// optical distances, and any term merged into it is quantized at its ulp.
inline cplx propagator_constant(double wavelength, double z) {
  detail::require_lambda_z(wavelength, z, "propagator_constant");
  const double phase = 2.0 * kPi * z / wavelength;
  return std::polar(1.0 / (wavelength * z), phase) * cplx{0.0, -1.0};
}

// Impulse response h_z(x,y) = K * exp(j*(pi/(wavelength*z))*(x^2+y^2)).
// The chirp's instantaneous frequency at the window corner caps the pitch.
inline ComplexField fresnel_impulse_response(const PropagationParams& p, const Grid2D& grid) {
  detail::require_lambda_z(p.wavelength, p.z, "fresnel_impulse_response");
  const double r_max = grid.half_window() * std::sqrt(2.0);
  const double bound = p.wavelength * p.z / (2.0 * r_max);
  if (grid.pitch > bound)
    throw aliasing_error(strf(
        "fresnel_impulse_response: pitch %g violates pitch <= wavelength*z/(2*r_max) = %g "
        "(wavelength=%g, z=%g, r_max=%g)",
        grid.pitch, bound, p.wavelength, p.z, r_max));
  const cplx k = propagator_constant(p.wavelength, p.z);
  const double beta = kPi / (p.wavelength * p.z);
  ComplexField h = make_field(grid, p.wavelength, p.z);
  for (int j = 0; j < grid.n; ++j) {
    const double y = grid.coord(j);
    for (int i = 0; i < grid.n; ++i) {
      const double x = grid.coord(i);
      h.at(j, i) = k * std::polar(1.0, beta * (x * x + y * y));
    }
  }
  return h;
}

namespace detail {

// Transfer function of h_z under this library's FT convention:
// H(u,v) = exp(j*2*pi*z/wavelength) * exp(-j*wavelength*z*(u^2+v^2)/(4*pi)).
// Kept as two unit factors so the huge carrier phase cannot swallow the
// quadratic term (see propagator_constant); this also makes the two Fresnel
// routes share bit-identical carrier rotations.
inline cplx fresnel_transfer_value(double wavelength, double z, double u, double v) {
  const double phi0 = 2.0 * kPi * z / wavelength;
  return std::polar(1.0, phi0) *
         std::polar(1.0, -wavelength * z * (u * u + v * v) / (4.0 * kPi));
}

inline ComplexField fresnel_forward_tf(const ComplexField& field, const PropagationParams& p) {
  const double crit = std::sqrt(p.wavelength * p.z / field.grid.n);
  if (field.grid.pitch < crit * (1.0 - 1e-12))
    throw sampling_error(strf(
        "fresnel_forward: transfer_function validity pitch >= sqrt(wavelength*z/n) violated "
        "(pitch=%g, bound=%g, wavelength=%g, z=%g, n=%d)",
        field.grid.pitch, crit, p.wavelength, p.z, field.grid.n));
  Spectrum s = ft_forward(field);
  const int n = field.grid.n;
  for (int l = 0; l < n; ++l) {
    const double v = field.grid.freq(l);
    for (int k = 0; k < n; ++k)
      s.at(l, k) *= fresnel_transfer_value(p.wavelength, p.z, field.grid.freq(k), v);
  }
  ComplexField out = ft_inverse(s);
  out.wavelength = p.wavelength;
  out.plane_z = field.plane_z + p.z;
  return out;
}

// Literal Riemann double sum of the Fresnel convolution with weight pitch^2,
// evaluated axis by axis (the chirp kernel factors over x and y, so the same
// double sum costs O(n^3) instead of O(n^4) without changing a single term).
inline ComplexField fresnel_forward_dq(const ComplexField& field, const PropagationParams& p) {
  const int n = field.grid.n;
  if (n > 128)
    throw cost_guard_error(strf(
        "fresnel_forward: direct_quadrature requires n <= 128, got n=%d "
        "(use method=transfer_function)", n));
  const double beta = kPi / (p.wavelength * p.z);
  std::vector<cplx> chirp(std::size_t(n) * n);  // chirp[a*n+b] = exp(j*beta*(x_a - x_b)^2)
  for (int a = 0; a < n; ++a) {
    const double xa = field.grid.coord(a);
    for (int b = 0; b < n; ++b) {
      const double d = xa - field.grid.coord(b);
      chirp[std::size_t(a) * n + b] = std::polar(1.0, beta * d * d);
    }
  }
  std::vector<cplx> tmp(std::size_t(n) * n);  // tmp[j0,i] = sum_i0 U[j0,i0] * chirp[i,i0]
  for (int j0 = 0; j0 < n; ++j0)
    for (int i = 0; i < n; ++i) {
      cplx acc{0.0, 0.0};
      for (int i0 = 0; i0 < n; ++i0)
        acc += field.at(j0, i0) * chirp[std::size_t(i) * n + i0];
      tmp[std::size_t(j0) * n + i] = acc;
    }
  const cplx k = propagator_constant(p.wavelength, p.z);
  const double w = field.grid.pitch * field.grid.pitch;
  ComplexField out = make_field(field.grid, p.wavelength, field.plane_z + p.z);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      cplx acc{0.0, 0.0};
      for (int j0 = 0; j0 < n; ++j0)
        acc += chirp[std::size_t(j) * n + j0] * tmp[std::size_t(j0) * n + i];
      out.at(j, i) = k * w * acc;
    }
  return out;
}

}  // namespace detail

// Diffracted field at distance z, U_z = U_0 ** h_z.
inline ComplexField fresnel_forward(const ComplexField& field, const PropagationParams& p) {
  detail::require_lambda_z(p.wavelength, p.z, "fresnel_forward");
  detail::require_finite(field.samples, "fresnel_forward");
  return p.method == PropagationMethod::transfer_function ? detail::fresnel_forward_tf(field, p)
                                                          : detail::fresnel_forward_dq(field, p);
}

// Single-transform (Fraunhofer-style) back-propagation: inner chirp, one
// forward transform evaluated at reflected frequencies, constant prefactor
// j*exp(-j*2*pi*z/wavelength)/(wavelength*z). The result lives on the native
// output lattice with pitch wavelength*z/(n*pitch); no resampling is done.
// A positive requested_window_mm turns an over-wide native window into a
// geometry error instead.
inline ComplexField fraunhofer_inverse(const ComplexField& field, const PropagationParams& p,
                                       double requested_window_mm = 0.0) {
  detail::require_lambda_z(p.wavelength, p.z, "fraunhofer_inverse");
  detail::require_finite(field.samples, "fraunhofer_inverse");
  const int n = field.grid.n;
  const double pitch_out = p.wavelength * p.z / (n * field.grid.pitch);
  if (requested_window_mm > 0.0 && n * pitch_out > requested_window_mm * (1.0 + 1e-12))
    throw geometry_error(strf(
        "fraunhofer_inverse: native output window wavelength*z/pitch = %g mm exceeds the "
        "requested window %g mm", n * pitch_out, requested_window_mm));
  const double beta = kPi / (p.wavelength * p.z);
  ComplexField chirped = field;
  for (int j = 0; j < n; ++j) {
    const double y = field.grid.coord(j);
    for (int i = 0; i < n; ++i) {
      const double x = field.grid.coord(i);
      chirped.at(j, i) *= std::polar(1.0, -beta * (x * x + y * y));
    }
  }
  Spectrum g = ft_forward(chirped);
  // The kernel exp(+j*2*pi*(x0*x + y0*y)/(wavelength*z)) is the forward
  // transform at negated frequency; -u_k = u_{(n-k) mod n} on this lattice
  // (exactly, by the 2*pi/pitch periodicity of the discrete spectrum).
  const cplx pref = cplx{0.0, 1.0} *
                    std::polar(1.0 / (p.wavelength * p.z), -2.0 * kPi * p.z / p.wavelength);
  ComplexField out = make_field(make_grid(n, pitch_out), p.wavelength,
                                field.plane_z - p.z);
  for (int l = 0; l < n; ++l) {
    const int lr = (n - l) % n;
    for (int k = 0; k < n; ++k)
      out.at(l, k) = pref * g.at(lr, (n - k) % n);
  }
  return out;
}

// Fraunhofer-style inversion followed by the outer chirp
// exp(-j*(pi/(wavelength*z))*(x^2+y^2)) on the output lattice.
inline ComplexField fresnel_inverse(const ComplexField& field, const PropagationParams& p,
                                    double requested_window_mm = 0.0) {
  ComplexField out = fraunhofer_inverse(field, p, requested_window_mm);
  const double beta = kPi / (p.wavelength * p.z);
  for (int j = 0; j < out.grid.n; ++j) {
    const double y = out.grid.coord(j);
    for (int i = 0; i < out.grid.n; ++i) {
      const double x = out.grid.coord(i);
      out.at(j, i) *= std::polar(1.0, -beta * (x * x + y * y));
    }
  }
  return out;
}

// Unit-modulus angular-spectrum multiplier exp(j*signed_z*sqrt((2*pi/wavelength)^2
// - u^2 - v^2)) with the evanescent band (u^2+v^2 beyond (2*pi/wavelength)^2)
// zeroed. Exposed with a signed distance so the inverse/forward pair composes
// to the identity on the propagating band.
inline ComplexField angular_spectrum_apply(const ComplexField& field, double wavelength,
                                           double signed_z) {
  if (!std::isfinite(wavelength) || wavelength <= 0.0)
    throw std::invalid_argument(strf("angular_spectrum_apply: wavelength must be > 0 mm, got %g",
                                     wavelength));
  detail::require_finite(field.samples, "angular_spectrum_apply");
  Spectrum s = ft_forward(field);
  const int n = field.grid.n;
  const double k0sq = (2.0 * kPi / wavelength) * (2.0 * kPi / wavelength);
  for (int l = 0; l < n; ++l) {
    const double v = field.grid.freq(l);
    for (int k = 0; k < n; ++k) {
      const double u = field.grid.freq(k);
      const double kz2 = k0sq - u * u - v * v;
      if (kz2 < 0.0)
        s.at(l, k) = cplx{0.0, 0.0};
      else
        s.at(l, k) *= std::polar(1.0, signed_z * std::sqrt(kz2));
    }
  }
  ComplexField out = ft_inverse(s);
  out.wavelength = wavelength;
  out.plane_z = field.plane_z + signed_z;
  return out;
}

// Back-propagation by the angular-spectrum multiplier with distance -z.
inline ComplexField angular_spectrum_inverse(const ComplexField& field,
                                             const PropagationParams& p) {
  detail::require_lambda_z(p.wavelength, p.z, "angular_spectrum_inverse");
  return angular_spectrum_apply(field, p.wavelength, -p.z);
}

}  // namespace chirpopt

#endif
