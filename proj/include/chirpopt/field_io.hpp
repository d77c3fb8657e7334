#ifndef CHIRPOPT_FIELD_IO_HPP
#define CHIRPOPT_FIELD_IO_HPP

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chirpopt/errors.hpp"
#include "chirpopt/grid.hpp"

namespace chirpopt {

// .cfield container: one UTF-8 JSON header line
//   {"n": <int>, "pitch_mm": <float>, "wavelength_mm": <float>, "plane_z_mm": <float>}
// terminated by '\n', followed by n*n*2 little-endian float64 values
// interleaved (re, im), row-major. Raw doubles are written directly; this
// library targets little-endian hosts.

inline void write_cfield(const std::filesystem::path& path, const ComplexField& field) {
  nlohmann::json header = {{"n", field.grid.n},
                           {"pitch_mm", field.grid.pitch},
                           {"wavelength_mm", field.wavelength},
                           {"plane_z_mm", field.plane_z}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_cfield: cannot open " + path.string());
  out << header.dump() << '\n';
  out.write(reinterpret_cast<const char*>(field.samples.data()),
            std::streamsize(field.samples.size() * sizeof(cplx)));
  if (!out) throw std::runtime_error("write_cfield: write failed for " + path.string());
}

inline ComplexField read_cfield(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_cfield: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("read_cfield: missing header line in " + path.string());
  nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
  if (header.is_discarded() || !header.contains("n") || !header.contains("pitch_mm") ||
      !header.contains("wavelength_mm") || !header.contains("plane_z_mm"))
    throw std::runtime_error("read_cfield: malformed header in " + path.string());
  const int n = header.at("n").get<int>();
  const double pitch = header.at("pitch_mm").get<double>();
  ComplexField field = make_field(make_grid(n, pitch), header.at("wavelength_mm").get<double>(),
                                  header.at("plane_z_mm").get<double>());
  in.read(reinterpret_cast<char*>(field.samples.data()),
          std::streamsize(field.samples.size() * sizeof(cplx)));
  if (std::size_t(in.gcount()) != field.samples.size() * sizeof(cplx))
    throw std::runtime_error("read_cfield: truncated payload in " + path.string());
  return field;
}

}  // namespace chirpopt

#endif
