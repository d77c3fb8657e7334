#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "chirpopt/grid.hpp"
#include "chirpopt/metrics.hpp"
#include "test_util.hpp"

using namespace chirpopt;

TEST(MakeGrid, RejectsBadShapes) {
  EXPECT_THROW(make_grid(2, 0.1), std::invalid_argument);
  EXPECT_THROW(make_grid(33, 0.1), std::invalid_argument);
  EXPECT_THROW(make_grid(64, 0.0), std::invalid_argument);
  EXPECT_THROW(make_grid(64, -0.25), std::invalid_argument);
}

TEST(MakeGrid, CenteredCoordinates) {
  const Grid2D g = make_grid(512, 0.25);
  EXPECT_DOUBLE_EQ(g.coord(0), -64.0);
  EXPECT_DOUBLE_EQ(g.coord(256), 0.0);
  EXPECT_DOUBLE_EQ(g.coord(511), 63.75);
  EXPECT_DOUBLE_EQ(g.freq(256), 0.0);
  EXPECT_DOUBLE_EQ(g.freq_step(), 0.04908738521234052);
  EXPECT_DOUBLE_EQ(g.freq(257), g.freq_step());
  EXPECT_DOUBLE_EQ(g.window(), 128.0);
  EXPECT_DOUBLE_EQ(g.half_window(), 64.0);
  EXPECT_EQ(g.count(), std::size_t(512) * 512);
}

TEST(MakeField, RejectsNonPositiveWavelength) {
  const Grid2D g = make_grid(8, 0.5);
  EXPECT_THROW(make_field(g, 0.0), std::invalid_argument);
  EXPECT_THROW(make_field(g, -5.5e-4), std::invalid_argument);
}

TEST(FtForward, ImpulseAtCenterHasFlatSpectrum) {
  const Grid2D g = make_grid(8, 0.37);
  ComplexField f = make_field(g);
  f.at(4, 4) = cplx{1.0, 0.0};
  const Spectrum s = ft_forward(f);
  for (const cplx& v : s.samples) {
    EXPECT_NEAR(v.real(), 0.37 * 0.37, 1e-15);
    EXPECT_NEAR(v.imag(), 0.0, 1e-15);
  }
}

TEST(FtForward, MatchesAnalyticGaussianPair) {
  const double sigma = 1.0;
  const Grid2D g = make_grid(256, 0.125);
  ComplexField f = make_field(g);
  for (int j = 0; j < g.n; ++j) {
    const double y = g.coord(j);
    for (int i = 0; i < g.n; ++i) {
      const double x = g.coord(i);
      f.at(j, i) = std::exp(-(x * x + y * y) / (4.0 * sigma * sigma));
    }
  }
  const Spectrum s = ft_forward(f);
  std::vector<cplx> ref(g.count());
  for (int l = 0; l < g.n; ++l) {
    const double v = g.freq(l);
    for (int k = 0; k < g.n; ++k) {
      const double u = g.freq(k);
      ref[std::size_t(l) * g.n + k] =
          4.0 * kPi * sigma * sigma * std::exp(-sigma * sigma * (u * u + v * v));
    }
  }
  EXPECT_LE(rel_l2(s.samples, ref), 1e-12);
}

TEST(FtInverse, RoundTripRestoresRandomField) {
  const Grid2D g = make_grid(64, 0.37);
  const ComplexField f = testutil::random_field(g, 7);
  const ComplexField back = ft_inverse(ft_forward(f));
  EXPECT_LE(rel_l2(back.samples, f.samples), 1e-13);
  EXPECT_DOUBLE_EQ(back.wavelength, f.wavelength);
  EXPECT_DOUBLE_EQ(back.plane_z, f.plane_z);
}

TEST(FtForward, ParsevalOnRandomField) {
  const Grid2D g = make_grid(64, 0.37);
  const ComplexField f = testutil::random_field(g, 19);
  const Spectrum s = ft_forward(f);
  KahanSum space, dual;
  for (const cplx& z : f.samples) space.add(std::norm(z));
  for (const cplx& z : s.samples) dual.add(std::norm(z));
  const double lhs = g.pitch * g.pitch * space.value();
  const double rhs = dual.value() / (g.window() * g.window());
  EXPECT_NEAR(lhs, rhs, 1e-12 * lhs);
}

TEST(FtForward, MetadataRidesThrough) {
  const Grid2D g = make_grid(16, 0.5);
  ComplexField f = make_field(g, 6.33e-4, 12.5);
  f.at(8, 8) = cplx{1.0, 0.0};
  const Spectrum s = ft_forward(f);
  EXPECT_DOUBLE_EQ(s.wavelength, 6.33e-4);
  EXPECT_DOUBLE_EQ(s.plane_z, 12.5);
  const ComplexField back = ft_inverse(s);
  EXPECT_DOUBLE_EQ(back.wavelength, 6.33e-4);
  EXPECT_DOUBLE_EQ(back.plane_z, 12.5);
}

TEST(FtForward, RejectsNonFiniteSamples) {
  const Grid2D g = make_grid(8, 0.5);
  ComplexField f = make_field(g);
  f.at(3, 5) = cplx{std::numeric_limits<double>::quiet_NaN(), 0.0};
  EXPECT_THROW(ft_forward(f), std::invalid_argument);
}
