#ifndef CHIRPOPT_SCENE_HPP
#define CHIRPOPT_SCENE_HPP

#include <cmath>

#include "chirpopt/errors.hpp"
#include "chirpopt/grid.hpp"

namespace chirpopt {

// Hard-mask test objects. All generators emit exactly 0 or 1+0j and use the
// closed boundary rule (<=), so sample counts are reproducible bit for bit.

inline ComplexField rect_aperture(double width, double height, const Grid2D& grid,
                                  double wavelength = 5.5e-4) {
  if (!(width > 0.0) || !(height > 0.0))
    throw std::invalid_argument(strf("rect_aperture: width/height must be > 0 mm, got %g x %g",
                                     width, height));
  if (width > grid.window() || height > grid.window())
    throw geometry_error(strf(
        "rect_aperture: aperture %g x %g mm exceeds the grid window %g mm",
        width, height, grid.window()));
  ComplexField f = make_field(grid, wavelength, 0.0);
  for (int j = 0; j < grid.n; ++j) {
    const double y = grid.coord(j);
    if (std::abs(y) > height / 2.0) continue;
    for (int i = 0; i < grid.n; ++i)
      if (std::abs(grid.coord(i)) <= width / 2.0) f.at(j, i) = cplx{1.0, 0.0};
  }
  return f;
}

inline ComplexField circ_aperture(double radius, const Grid2D& grid,
                                  double wavelength = 5.5e-4) {
  if (!(radius >= 0.0))
    throw std::invalid_argument(strf("circ_aperture: radius must be >= 0 mm, got %g", radius));
  if (2.0 * radius > grid.window())
    throw geometry_error(strf("circ_aperture: diameter %g mm exceeds the grid window %g mm",
                              2.0 * radius, grid.window()));
  ComplexField f = make_field(grid, wavelength, 0.0);
  const double r2 = radius * radius;
  for (int j = 0; j < grid.n; ++j) {
    const double y = grid.coord(j);
    for (int i = 0; i < grid.n; ++i) {
      const double x = grid.coord(i);
      if (x * x + y * y <= r2) f.at(j, i) = cplx{1.0, 0.0};
    }
  }
  return f;
}

// Two slit_width x height rectangles centered at x = +-separation/2.
inline ComplexField double_slit(double slit_width, double separation, double height,
                                const Grid2D& grid, double wavelength = 5.5e-4) {
  if (!(slit_width > 0.0) || !(separation > 0.0) || !(height > 0.0))
    throw std::invalid_argument(strf(
        "double_slit: slit_width/separation/height must be > 0 mm, got %g/%g/%g",
        slit_width, separation, height));
  if (separation < slit_width)
    throw geometry_error(strf(
        "double_slit: slits overlap, separation %g mm < slit_width %g mm",
        separation, slit_width));
  if (separation + slit_width > grid.window() || height > grid.window())
    throw geometry_error(strf(
        "double_slit: extent (separation %g + slit_width %g) x height %g mm exceeds the "
        "grid window %g mm", separation, slit_width, height, grid.window()));
  ComplexField f = make_field(grid, wavelength, 0.0);
  const double c = separation / 2.0;
  const double hw = slit_width / 2.0;
  for (int j = 0; j < grid.n; ++j) {
    const double y = grid.coord(j);
    if (std::abs(y) > height / 2.0) continue;
    for (int i = 0; i < grid.n; ++i) {
      const double x = grid.coord(i);
      if (std::abs(x - c) <= hw || std::abs(x + c) <= hw) f.at(j, i) = cplx{1.0, 0.0};
    }
  }
  return f;
}

}  // namespace chirpopt

#endif
