#ifndef CHIRPOPT_GRID_HPP
#define CHIRPOPT_GRID_HPP

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "chirpopt/errors.hpp"

namespace chirpopt {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

using cplx = std::complex<double>;

// Centered uniform lattice. Sample i lives at x_i = (i - n/2)*pitch, so index
// n/2 is the origin and there is one extra negative sample. The dual lattice
// in angular frequency is u_k = 2*pi*(k - n/2)/(n*pitch). n is even so the
// center sample is unambiguous.
struct Grid2D {
  int n = 0;           // samples per axis
  double pitch = 0.0;  // mm

  double coord(int i) const { return (i - n / 2) * pitch; }
  double freq(int k) const { return 2.0 * kPi * (k - n / 2) / (n * pitch); }
  double window() const { return n * pitch; }
  double half_window() const { return 0.5 * n * pitch; }
  double freq_step() const { return 2.0 * kPi / (n * pitch); }
  std::size_t count() const { return std::size_t(n) * std::size_t(n); }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

inline Grid2D make_grid(int n, double pitch) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument(strf("make_grid: n must be even and >= 4, got %d", n));
  if (!std::isfinite(pitch) || pitch <= 0.0)
    throw std::invalid_argument(strf("make_grid: pitch must be > 0 mm, got %g", pitch));
  return Grid2D{n, pitch};
}

// Complex samples on a Grid2D; row-major, row index runs over y.
struct ComplexField {
  Grid2D grid;
  std::vector<cplx> samples;
  double wavelength = 5.5e-4;  // mm
  double plane_z = 0.0;        // mm

  cplx& at(int row, int col) { return samples[std::size_t(row) * grid.n + col]; }
  const cplx& at(int row, int col) const { return samples[std::size_t(row) * grid.n + col]; }
};

// Complex samples on the angular-frequency lattice dual to `grid`; row index
// runs over v, column index over u. Wavelength/plane_z ride along so
// transform round trips preserve field metadata.
struct Spectrum {
  Grid2D grid;
  std::vector<cplx> samples;
  double wavelength = 5.5e-4;
  double plane_z = 0.0;

  cplx& at(int row, int col) { return samples[std::size_t(row) * grid.n + col]; }
  const cplx& at(int row, int col) const { return samples[std::size_t(row) * grid.n + col]; }
};

inline ComplexField make_field(const Grid2D& grid, double wavelength = 5.5e-4,
                               double plane_z = 0.0) {
  if (!std::isfinite(wavelength) || wavelength <= 0.0)
    throw std::invalid_argument(strf("make_field: wavelength must be > 0 mm, got %g", wavelength));
  ComplexField f;
  f.grid = grid;
  f.samples.assign(grid.count(), cplx{0.0, 0.0});
  f.wavelength = wavelength;
  f.plane_z = plane_z;
  return f;
}

namespace detail {

inline void require_finite(const std::vector<cplx>& v, const char* where) {
  for (const cplx& c : v)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument(std::string(where) + ": non-finite sample");
}

inline void require_same_grid(const Grid2D& a, const Grid2D& b, const char* where) {
  if (!(a == b))
    throw std::invalid_argument(strf("%s: grid mismatch (n=%d pitch=%g vs n=%d pitch=%g)",
                                     where, a.n, a.pitch, b.n, b.pitch));
}

// FFTW plan creation/destruction is not thread safe; execution on distinct
// arrays is. All operations stay deterministic: FFTW_ESTIMATE plans depend
// only on the transform size.
inline std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

inline void fft2_inplace(std::vector<cplx>& a, int n, int sign) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan = fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(a.data()),
                            reinterpret_cast<fftw_complex*>(a.data()), sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace detail

// Discrete approximation of F(u,v) = integral f(x,y) exp(-j(ux+vy)) dx dy on
// the centered lattices:
//
//   F[k,l] = pitch^2 * sum_{i,j} f[i,j] exp(-j(u_k x_i + v_l y_j))
//
// realized as an index-reordered FFT: the centering phases reduce to
// (-1)^(i+j) pre- and (-1)^(k+l) post-multiplication (their leftover factor
// exp(-j*pi*n) is 1 for even n), plus the pitch^2 quadrature weight.
inline Spectrum ft_forward(const ComplexField& field) {
  detail::require_finite(field.samples, "ft_forward");
  const int n = field.grid.n;
  Spectrum spec;
  spec.grid = field.grid;
  spec.wavelength = field.wavelength;
  spec.plane_z = field.plane_z;
  spec.samples = field.samples;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if ((i + j) & 1) spec.samples[std::size_t(j) * n + i] *= -1.0;
  detail::fft2_inplace(spec.samples, n, FFTW_FORWARD);
  const double w = field.grid.pitch * field.grid.pitch;
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      spec.samples[std::size_t(l) * n + k] *= ((k + l) & 1) ? -w : w;
  return spec;
}

// Inverse of ft_forward under the same convention,
// f(x,y) = (2*pi)^-2 * integral F(u,v) exp(+j(ux+vy)) du dv; on the lattice
// the (2*pi)^-2 du dv weight collapses to 1/(n*pitch)^2.
inline ComplexField ft_inverse(const Spectrum& spec) {
  detail::require_finite(spec.samples, "ft_inverse");
  const int n = spec.grid.n;
  ComplexField field;
  field.grid = spec.grid;
  field.wavelength = spec.wavelength;
  field.plane_z = spec.plane_z;
  field.samples = spec.samples;
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      if ((k + l) & 1) field.samples[std::size_t(l) * n + k] *= -1.0;
  detail::fft2_inplace(field.samples, n, FFTW_BACKWARD);
  const double w = 1.0 / (spec.grid.pitch * spec.grid.pitch * double(n) * double(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      field.samples[std::size_t(j) * n + i] *= ((i + j) & 1) ? -w : w;
  return field;
}

}  // namespace chirpopt

#endif
