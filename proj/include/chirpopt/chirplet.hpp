#ifndef CHIRPOPT_CHIRPLET_HPP
#define CHIRPOPT_CHIRPLET_HPP

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "chirpopt/errors.hpp"
#include "chirpopt/grid.hpp"
#include "chirpopt/metrics.hpp"

namespace chirpopt {

// Gaussian-windowed quadratic-phase wavelet with an optional linear carrier:
//
//   psi(x,y) = (1/(sqrt(2*pi)*sigma)) * exp(-(x^2+y^2)/(4*sigma^2))
//              * exp(j*(beta*(x^2+y^2) + w0*(x*cos(theta) + y*sin(theta))))
//
// with alpha = 1/(4*sigma^2) and beta = pi/(wavelength*z). carrier_w0 = 0
// selects the pure-chirp form; the default carrier 2*pi/wavelength shifts the
// spectral bump to (w0*cos(theta), w0*sin(theta)) and is what makes the
// zero-mean / vanishing-moment / zero-at-origin properties hold numerically.
struct ChirpletParams {
  double sigma = 1.0;       // mm
  double wavelength = 1.0;  // mm
  double z = kPi;           // mm
  double carrier_w0 = 0.0;  // rad/mm
  double carrier_theta = kPi / 4.0;

  double alpha() const { return 1.0 / (4.0 * sigma * sigma); }
  double beta() const { return kPi / (wavelength * z); }
};

inline ChirpletParams make_chirplet(double sigma, double wavelength, double z,
                                    std::optional<double> carrier_w0 = std::nullopt,
                                    double carrier_theta = kPi / 4.0) {
  if (!std::isfinite(sigma) || sigma <= 0.0)
    throw std::invalid_argument(strf("make_chirplet: sigma must be > 0 mm, got %g", sigma));
  if (!std::isfinite(wavelength) || wavelength <= 0.0)
    throw std::invalid_argument(strf("make_chirplet: wavelength must be > 0 mm, got %g", wavelength));
  if (!std::isfinite(z) || z <= 0.0)
    throw std::invalid_argument(strf("make_chirplet: z must be > 0 mm, got %g", z));
  const double w0 = carrier_w0.value_or(2.0 * kPi / wavelength);
  if (!std::isfinite(w0) || w0 < 0.0)
    throw std::invalid_argument(strf("make_chirplet: carrier_w0 must be >= 0 rad/mm, got %g", w0));
  return ChirpletParams{sigma, wavelength, z, w0, carrier_theta};
}

inline double chirplet_modulus(const ChirpletParams& p, double x, double y) {
  const double r2 = x * x + y * y;
  return std::exp(-r2 / (4.0 * p.sigma * p.sigma)) / (std::sqrt(2.0 * kPi) * p.sigma);
}

inline cplx chirplet_value(const ChirpletParams& p, double x, double y) {
  const double r2 = x * x + y * y;
  const double phase = p.beta() * r2 +
                       p.carrier_w0 * (x * std::cos(p.carrier_theta) + y * std::sin(p.carrier_theta));
  return std::polar(chirplet_modulus(p, x, y), phase);
}

// Analytic spectrum under this library's FT convention:
//   Psi(u,v) = (1/(sqrt(2*pi)*sigma)) * (pi/(alpha - j*beta))
//              * exp(-((u-w0*cos(theta))^2 + (v-w0*sin(theta))^2) / (4*(alpha - j*beta)))
inline cplx chirplet_spectrum_value(const ChirpletParams& p, double u, double v) {
  const cplx q{p.alpha(), -p.beta()};
  const cplx pref = kPi / (std::sqrt(2.0 * kPi) * p.sigma * q);
  const double du = u - p.carrier_w0 * std::cos(p.carrier_theta);
  const double dv = v - p.carrier_w0 * std::sin(p.carrier_theta);
  return pref * std::exp(-(du * du + dv * dv) / (4.0 * q));
}

// Highest instantaneous spatial frequency of psi inside radius r_max; the
// sampler refuses when one pitch step would advance the phase by more than pi.
inline double chirplet_nyquist_pitch(const ChirpletParams& p, double r_max) {
  return kPi / (2.0 * p.beta() * r_max + p.carrier_w0);
}

inline ComplexField chirplet_sample(const ChirpletParams& p, const Grid2D& grid,
                                    std::vector<std::string>* warnings = nullptr) {
  const double r_max = grid.half_window() * std::sqrt(2.0);
  const double pitch_bound = chirplet_nyquist_pitch(p, r_max);
  if (grid.pitch > pitch_bound)
    throw aliasing_error(strf(
        "chirplet_sample: pitch %g violates pitch <= pi/(2*beta*r_max + w0) = %g "
        "(beta=%g, r_max=%g, w0=%g)",
        grid.pitch, pitch_bound, p.beta(), r_max, p.carrier_w0));
  if (grid.window() < 6.0 * p.sigma && warnings)
    warnings->push_back(strf(
        "chirplet_sample: window %g mm < 6*sigma = %g mm; tails are truncated",
        grid.window(), 6.0 * p.sigma));
  ComplexField f = make_field(grid, p.wavelength, 0.0);
  for (int j = 0; j < grid.n; ++j) {
    const double y = grid.coord(j);
    for (int i = 0; i < grid.n; ++i)
      f.at(j, i) = chirplet_value(p, grid.coord(i), y);
  }
  return f;
}

// Analytic evaluation on the dual lattice; no transform is performed.
inline Spectrum chirplet_spectrum(const ChirpletParams& p, const Grid2D& grid) {
  Spectrum s;
  s.grid = grid;
  s.wavelength = p.wavelength;
  s.samples.resize(grid.count());
  for (int l = 0; l < grid.n; ++l) {
    const double v = grid.freq(l);
    for (int k = 0; k < grid.n; ++k)
      s.at(l, k) = chirplet_spectrum_value(p, grid.freq(k), v);
  }
  return s;
}

namespace detail {

inline void require_coverage(const ChirpletParams& p, const Grid2D& grid, const char* where) {
  if (grid.window() < 8.0 * p.sigma)
    throw coverage_error(strf("%s: window %g mm violates window >= 8*sigma = %g mm",
                              where, grid.window(), 8.0 * p.sigma));
}

}  // namespace detail

// Quadrature of the unit-energy condition, pitch^2 * sum |psi|^2. The exact
// value is 1 for every parameter set: chirp and carrier phases cancel in the
// modulus. The verification quadratures sample psi directly; their only
// precondition is coverage (window >= 8*sigma) — the oscillatory phase needs
// no pointwise Nyquist margin because the quadrature error cancels between
// aliased replicas.
inline double verify_energy(const ChirpletParams& p, const Grid2D& grid) {
  detail::require_coverage(p, grid, "verify_energy");
  KahanSum s;
  for (int j = 0; j < grid.n; ++j) {
    const double y = grid.coord(j);
    for (int i = 0; i < grid.n; ++i) {
      const double a = chirplet_modulus(p, grid.coord(i), y);
      s.add(a * a);
    }
  }
  return grid.pitch * grid.pitch * s.value();
}

// |pitch^2 * sum psi|. Near zero only in carrier mode; the pure-chirp mean is
// the finite Gaussian-chirp integral (1/(sqrt(2*pi)*sigma)) * pi/sqrt(alpha^2+beta^2).
inline double verify_mean(const ChirpletParams& p, const Grid2D& grid) {
  detail::require_coverage(p, grid, "verify_mean");
  KahanComplex s;
  for (int j = 0; j < grid.n; ++j) {
    const double y = grid.coord(j);
    for (int i = 0; i < grid.n; ++i)
      s.add(chirplet_value(p, grid.coord(i), y));
  }
  return std::abs(s.value()) * grid.pitch * grid.pitch;
}

struct MomentResidual {
  int order = 0;
  double residual = 0.0;
};

// residual_n = |integral psi * x^n y^n| / integral |psi| * |x|^n |y|^n,
// for n = 1..n_max (n_max <= 35).
inline std::vector<MomentResidual> verify_moments(const ChirpletParams& p, const Grid2D& grid,
                                                  int n_max) {
  if (n_max < 1 || n_max > 35)
    throw std::invalid_argument(strf("verify_moments: n_max must be in [1,35], got %d", n_max));
  detail::require_coverage(p, grid, "verify_moments");
  const double r_edge = grid.half_window();
  if (r_edge > 1.0 && 2.0 * n_max * std::log10(r_edge) > 307.0)
    throw range_error(strf(
        "verify_moments: weight |x|^n|y|^n overflows float64 (half-window %g mm, n_max %d)",
        r_edge, n_max));

  const int n = grid.n;
  std::vector<cplx> psi(grid.count());
  for (int j = 0; j < n; ++j) {
    const double y = grid.coord(j);
    for (int i = 0; i < n; ++i)
      psi[std::size_t(j) * n + i] = chirplet_value(p, grid.coord(i), y);
  }

  std::vector<MomentResidual> out;
  out.reserve(n_max);
  std::vector<double> cn(n), an(n);
  for (int order = 1; order <= n_max; ++order) {
    for (int i = 0; i < n; ++i) {
      const double x = grid.coord(i);
      cn[i] = std::pow(x, double(order));
      an[i] = std::pow(std::abs(x), double(order));
    }
    KahanComplex num;
    KahanSum den;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const cplx& v = psi[std::size_t(j) * n + i];
        const double w = cn[i] * cn[j];
        num.add(v * w);
        den.add(std::abs(v) * an[i] * an[j]);
      }
    }
    out.push_back({order, std::abs(num.value()) / den.value()});
  }
  return out;
}

// C = du^2 * sum |Psi(u,v)|^2 / |u*v| over the dual lattice, excluding every
// bin with u=0 or v=0 (the integrand is singular there). The first off-axis
// ring (|u| or |v| equal to one frequency step) is monitored: when it carries
// more than 10% of C the quadrature is flagged as divergence-dominated, which
// happens whenever the carrier sits on or near a frequency axis.
inline double admissibility_constant(const ChirpletParams& p, const Grid2D& grid,
                                     std::vector<std::string>* warnings = nullptr) {
  if (p.carrier_w0 <= 0.0)
    throw admissibility_error(
        "admissibility_constant: undefined for carrier_w0 = 0 (pure-chirp spectrum is "
        "nonzero on the frequency axes; the |u*v| integral log-diverges)");
  const int n = grid.n;
  const int h = n / 2;
  KahanSum total, near_ring;
  for (int l = 0; l < n; ++l) {
    if (l == h) continue;
    const double v = grid.freq(l);
    for (int k = 0; k < n; ++k) {
      if (k == h) continue;
      const double u = grid.freq(k);
      const double w2 = std::norm(chirplet_spectrum_value(p, u, v));
      const double term = w2 / std::abs(u * v);
      total.add(term);
      if (std::abs(k - h) == 1 || std::abs(l - h) == 1) near_ring.add(term);
    }
  }
  const double du = grid.freq_step();
  const double c = du * du * total.value();
  if (c <= 0.0)
    throw admissibility_error(strf(
        "admissibility_constant: quadrature is zero; spectral bump at |w0|=%g rad/mm is not "
        "resolved by the dual lattice (max |u| = %g rad/mm)",
        p.carrier_w0, kPi / grid.pitch));
  const double frac = du * du * near_ring.value() / c;
  if (frac > 0.10 && warnings)
    warnings->push_back(strf(
        "admissibility_constant: excluded-axis neighborhood carries %.1f%% of C (> 10%%); "
        "the quadrature is divergence-dominated (carrier too close to a frequency axis)",
        100.0 * frac));
  return c;
}

inline double spectrum_at_origin(const ChirpletParams& p) {
  return std::abs(chirplet_spectrum_value(p, 0.0, 0.0));
}

// Summary of every numerically checked wavelet condition.
struct WaveletReport {
  ChirpletParams params;
  Grid2D grid;
  double energy = 0.0;
  double mean_abs = 0.0;
  std::vector<MomentResidual> moments;
  double admissibility_c = 0.0;  // 0 when undefined / unresolved (see notes)
  double spectrum_origin_abs = 0.0;
  std::vector<std::string> notes;
};

inline WaveletReport make_wavelet_report(const ChirpletParams& p, const Grid2D& grid,
                                         int n_max = 35) {
  WaveletReport r;
  r.params = p;
  r.grid = grid;
  r.energy = verify_energy(p, grid);
  r.mean_abs = verify_mean(p, grid);
  r.moments = verify_moments(p, grid, n_max);
  try {
    r.admissibility_c = admissibility_constant(p, grid, &r.notes);
  } catch (const admissibility_error& e) {
    r.admissibility_c = 0.0;
    r.notes.push_back(e.what());
  }
  r.spectrum_origin_abs = spectrum_at_origin(p);
  return r;
}

}  // namespace chirpopt

#endif
