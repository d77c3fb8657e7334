#ifndef CHIRPOPT_ERRORS_HPP
#define CHIRPOPT_ERRORS_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace chirpopt {

template <class... Args>
std::string strf(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return std::string(buf);
}

// Refusals of numeric preconditions (aliasing, coverage, sampling validity,
// admissibility, geometry, cost guards). Kept distinct from
// std::invalid_argument so the CLI can map argument mistakes and numeric
// refusals to different exit codes. Messages name the violated inequality
// together with its operands.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Sampling too coarse for an oscillatory kernel.
class aliasing_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

// Grid window too small to cover the integrand.
class coverage_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

// Validity condition of a fast path violated (e.g. transfer-function bound).
class sampling_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

// Admissibility constant undefined or not resolvable on the lattice.
class admissibility_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

// Geometric request outside the lattice (aperture, disc, output window).
class geometry_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

// O(N^4) path requested on a grid above its size guard.
class cost_guard_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

// Quadrature weight overflow (huge windows at high moment orders).
class range_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

}  // namespace chirpopt

#endif
