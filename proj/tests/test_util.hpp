#ifndef CHIRPOPT_TEST_UTIL_HPP
#define CHIRPOPT_TEST_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "chirpopt/grid.hpp"

namespace testutil {

// mt19937 raw draws mapped to doubles by hand. The standard <random>
// distributions are implementation-defined, and several regression thresholds
// are pinned against specific random fields, so the mapping must be ours.
class Rng {
 public:
  explicit Rng(std::uint32_t seed) : eng_(seed) {}

  double uniform() { return (double(eng_()) + 0.5) / 4294967296.0; }  // (0,1)

  double gaussian() {
    if (have_) {
      have_ = false;
      return cached_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(2.0 * chirpopt::kPi * u2);
    have_ = true;
    return r * std::cos(2.0 * chirpopt::kPi * u2);
  }

  chirpopt::cplx complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

 private:
  std::mt19937 eng_;
  bool have_ = false;
  double cached_ = 0.0;
};

inline chirpopt::ComplexField random_field(const chirpopt::Grid2D& grid, std::uint32_t seed,
                                           double wavelength = 5.5e-4) {
  chirpopt::ComplexField f = chirpopt::make_field(grid, wavelength, 0.0);
  Rng rng(seed);
  for (chirpopt::cplx& z : f.samples) z = rng.complex_gaussian();
  return f;
}

}  // namespace testutil

#endif
