#ifndef CHIRPOPT_METRICS_HPP
#define CHIRPOPT_METRICS_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "chirpopt/grid.hpp"

namespace chirpopt {

// Compensated (Kahan) accumulator; long quadratures at 1024^2 with moment
// weights need it to hold the advertised 1e-10 residual bounds.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

class KahanComplex {
 public:
  void add(const cplx& z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

inline double l2_norm(const std::vector<cplx>& a) {
  KahanSum s;
  for (const cplx& z : a) s.add(std::norm(z));
  return std::sqrt(s.value());
}

// ||a - b|| / ||b||
inline double rel_l2(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("rel_l2: size mismatch");
  KahanSum num, den;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num.add(std::norm(a[i] - b[i]));
    den.add(std::norm(b[i]));
  }
  if (den.value() == 0.0) return std::sqrt(num.value());
  return std::sqrt(num.value() / den.value());
}

// Normalized cross-correlation of the magnitude patterns.
inline double ncc_modulus(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("ncc_modulus: size mismatch");
  KahanSum dot, na, nb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ma = std::abs(a[i]);
    const double mb = std::abs(b[i]);
    dot.add(ma * mb);
    na.add(ma * ma);
    nb.add(mb * mb);
  }
  const double d = std::sqrt(na.value() * nb.value());
  return d == 0.0 ? 0.0 : dot.value() / d;
}

// |<a,b>| / (||a|| ||b||); sensitive to phase structure, unlike ncc_modulus.
inline double ncc_complex(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("ncc_complex: size mismatch");
  KahanComplex dot;
  KahanSum na, nb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot.add(a[i] * std::conj(b[i]));
    na.add(std::norm(a[i]));
    nb.add(std::norm(b[i]));
  }
  const double d = std::sqrt(na.value() * nb.value());
  return d == 0.0 ? 0.0 : std::abs(dot.value()) / d;
}

// L2 distance between the unit-normalized magnitude patterns; 0 when the
// patterns agree up to a scale factor.
inline double normalized_modulus_gap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("normalized_modulus_gap: size mismatch");
  KahanSum na, nb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na.add(std::norm(a[i]));
    nb.add(std::norm(b[i]));
  }
  const double sa = std::sqrt(na.value());
  const double sb = std::sqrt(nb.value());
  KahanSum gap;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = (sa == 0.0 ? 0.0 : std::abs(a[i]) / sa) -
                     (sb == 0.0 ? 0.0 : std::abs(b[i]) / sb);
    gap.add(d * d);
  }
  return std::sqrt(gap.value());
}

// pitch^2 * sum |f|^2
inline double field_energy(const ComplexField& f) {
  KahanSum s;
  for (const cplx& z : f.samples) s.add(std::norm(z));
  return f.grid.pitch * f.grid.pitch * s.value();
}

}  // namespace chirpopt

#endif
