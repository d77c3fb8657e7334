#ifndef CHIRPOPT_PGM_HPP
#define CHIRPOPT_PGM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <vector>

#include "chirpopt/errors.hpp"
#include "chirpopt/grid.hpp"

namespace chirpopt {

enum class ImageMode { amplitude, phase, log_amplitude };

// 16-bit binary PGM ("P5", maxval 65535, big-endian samples per the format).
//  - amplitude: |f| mapped linearly min..max -> 0..65535; a constant nonzero
//    field maps to full scale, an all-zero field to 0.
//  - phase: arg(f) in [-pi, pi] -> 0..65535.
//  - log_amplitude: 20*log10(|f|/max|f|) clipped at -80 dB, then linear.
inline void export_image(const ComplexField& field, ImageMode mode,
                         const std::filesystem::path& path) {
  detail::require_finite(field.samples, "export_image");
  const int n = field.grid.n;
  std::vector<double> value(field.samples.size());
  double lo = 0.0, hi = 65535.0;  // domain of `value` mapped onto 0..65535

  switch (mode) {
    case ImageMode::amplitude: {
      double vmin = std::abs(field.samples[0]), vmax = vmin;
      for (std::size_t i = 0; i < value.size(); ++i) {
        value[i] = std::abs(field.samples[i]);
        vmin = std::min(vmin, value[i]);
        vmax = std::max(vmax, value[i]);
      }
      if (vmax == vmin) {
        const double flat = vmax == 0.0 ? 0.0 : 65535.0;
        std::fill(value.begin(), value.end(), flat);
      } else {
        lo = vmin;
        hi = vmax;
      }
      break;
    }
    case ImageMode::phase: {
      for (std::size_t i = 0; i < value.size(); ++i) value[i] = std::arg(field.samples[i]);
      lo = -kPi;
      hi = kPi;
      break;
    }
    case ImageMode::log_amplitude: {
      double vmax = 0.0;
      for (const cplx& z : field.samples) vmax = std::max(vmax, std::abs(z));
      for (std::size_t i = 0; i < value.size(); ++i) {
        const double a = std::abs(field.samples[i]);
        const double db = (vmax == 0.0 || a == 0.0) ? -80.0
                                                    : std::max(-80.0, 20.0 * std::log10(a / vmax));
        value[i] = db;
      }
      lo = -80.0;
      hi = 0.0;
      break;
    }
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("export_image: cannot open " + path.string());
  out << "P5\n" << n << " " << n << "\n65535\n";
  std::vector<std::uint8_t> row(std::size_t(n) * 2);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double x = value[std::size_t(j) * n + i];
      const double t = (x - lo) / (hi - lo) * 65535.0;
      const long p = std::clamp(std::lround(t), 0L, 65535L);
      row[std::size_t(i) * 2] = std::uint8_t(p >> 8);
      row[std::size_t(i) * 2 + 1] = std::uint8_t(p & 0xff);
    }
    out.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size()));
  }
  if (!out) throw std::runtime_error("export_image: write failed for " + path.string());
}

}  // namespace chirpopt

#endif
