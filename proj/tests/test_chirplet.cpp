#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "chirpopt/chirplet.hpp"
#include "chirpopt/grid.hpp"
#include "chirpopt/metrics.hpp"

using namespace chirpopt;

namespace {

// beta = pi/(lambda*z) = 1 mother-wavelet parameterization
ChirpletParams mother(double sigma, double w0, double theta = kPi / 4.0) {
  return make_chirplet(sigma, 1.0, kPi, w0, theta);
}

// fig2 demo optics: lambda*z = 29.7 mm^2
ChirpletParams physical(double sigma, std::optional<double> w0) {
  return make_chirplet(sigma, 5.5e-4, 54000.0, w0);
}

}  // namespace

TEST(MakeChirplet, ValidatesParameters) {
  EXPECT_THROW(make_chirplet(0.0, 1.0, kPi), std::invalid_argument);
  EXPECT_THROW(make_chirplet(-1.0, 1.0, kPi), std::invalid_argument);
  EXPECT_THROW(make_chirplet(1.0, 0.0, kPi), std::invalid_argument);
  EXPECT_THROW(make_chirplet(1.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(make_chirplet(1.0, 1.0, kPi, -2.0), std::invalid_argument);
}

TEST(MakeChirplet, DefaultCarrierIsTwoPiOverLambda) {
  const ChirpletParams p = physical(1.0, std::nullopt);
  EXPECT_DOUBLE_EQ(p.carrier_w0, 11423.973285781065);
  EXPECT_DOUBLE_EQ(p.beta(), 0.10577753042389874);
  EXPECT_DOUBLE_EQ(p.alpha(), 0.25);
  EXPECT_DOUBLE_EQ(p.carrier_theta, kPi / 4.0);

  const ChirpletParams q = physical(1.0, 0.0);
  EXPECT_DOUBLE_EQ(q.carrier_w0, 0.0);
}

TEST(ChirpletValue, PrefactorAtOrigin) {
  const ChirpletParams p = physical(1.0, 0.0);
  EXPECT_DOUBLE_EQ(chirplet_modulus(p, 0.0, 0.0), 0.3989422804014327);
  const cplx v = chirplet_value(p, 0.0, 0.0);
  EXPECT_DOUBLE_EQ(v.real(), 0.3989422804014327);
  EXPECT_DOUBLE_EQ(v.imag(), 0.0);
}

TEST(ChirpletValue, ModulusIsCarrierInvariant) {
  const ChirpletParams bare = mother(0.7, 0.0);
  const ChirpletParams loaded = mother(0.7, 9.0, 1.1);
  for (double x : {-2.0, 0.25, 1.7})
    for (double y : {-0.5, 0.0, 3.0}) {
      EXPECT_DOUBLE_EQ(chirplet_modulus(bare, x, y), chirplet_modulus(loaded, x, y));
      EXPECT_DOUBLE_EQ(std::abs(chirplet_value(loaded, x, y)), chirplet_modulus(loaded, x, y));
    }
}

TEST(ChirpletSpectrum, MatchesLatticeTransformPureChirp) {
  const ChirpletParams p = physical(0.5, 0.0);
  const Grid2D g = make_grid(512, 0.02);
  const Spectrum lattice = ft_forward(chirplet_sample(p, g));
  const Spectrum analytic = chirplet_spectrum(p, g);
  EXPECT_LE(rel_l2(lattice.samples, analytic.samples), 1e-9);
}

TEST(ChirpletSpectrum, MatchesLatticeTransformCarrier) {
  const ChirpletParams p = make_chirplet(0.5, 2.0, 50.0);  // carrier w0 = pi
  EXPECT_DOUBLE_EQ(p.carrier_w0, kPi);
  const Grid2D g = make_grid(512, 0.02);
  const Spectrum lattice = ft_forward(chirplet_sample(p, g));
  const Spectrum analytic = chirplet_spectrum(p, g);
  EXPECT_LE(rel_l2(lattice.samples, analytic.samples), 1e-9);
}

TEST(ChirpletSample, RefusesAliasedPitch) {
  const ChirpletParams p = mother(0.5, 4.0);
  EXPECT_THROW(chirplet_sample(p, make_grid(64, 0.5)), aliasing_error);
  // same window, fine pitch: pi/(2*beta*r_max + w0) = 0.0638 mm
  std::vector<std::string> warnings;
  const ComplexField f = chirplet_sample(p, make_grid(512, 0.0625), &warnings);
  EXPECT_TRUE(warnings.empty());
  EXPECT_DOUBLE_EQ(std::abs(f.at(256, 256)), chirplet_modulus(p, 0.0, 0.0));
}

TEST(ChirpletSample, WarnsOnTruncatedWindow) {
  const ChirpletParams p = make_chirplet(10.0, 1.0, 1e6, 0.0);  // beta ~ 3e-6
  std::vector<std::string> warnings;
  chirplet_sample(p, make_grid(64, 0.5), &warnings);  // window 32 < 6*sigma = 60
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("6*sigma"), std::string::npos);
}

TEST(VerifyEnergy, UnityForPureChirp) {
  const ChirpletParams p = physical(1.0, 0.0);
  const double e = verify_energy(p, make_grid(256, 0.125));
  EXPECT_NEAR(e, 1.0, 1e-9);
}

TEST(VerifyEnergy, EnforcesCoverage) {
  const ChirpletParams p = physical(1.0, 0.0);
  EXPECT_THROW(verify_energy(p, make_grid(32, 0.125)), coverage_error);  // window 4 < 8*sigma
}

TEST(VerifyMean, PureChirpMatchesAnalyticOrigin) {
  const ChirpletParams p = physical(2.0, 0.0);
  const double quadrature = verify_mean(p, make_grid(256, 0.125));
  EXPECT_NEAR(quadrature, spectrum_at_origin(p), 1e-4);
}

TEST(SpectrumAtOrigin, PureChirpPinnedValues) {
  const double v2 = spectrum_at_origin(physical(2.0, 0.0));
  const double v4 = spectrum_at_origin(physical(4.0, 0.0));
  const double v8 = spectrum_at_origin(physical(8.0, 0.0));
  EXPECT_NEAR(v2, 5.100484458674539, 1e-12);
  EXPECT_NEAR(v4, 2.9303489569015344, 1e-12);
  EXPECT_NEAR(v8, 1.4800643445400143, 1e-12);
  EXPECT_GT(v2, v4);
  EXPECT_GT(v4, v8);
}

TEST(SpectrumAtOrigin, CarrierSuppressesOrigin) {
  const double s05 = spectrum_at_origin(physical(0.5, 3.0));
  const double s1 = spectrum_at_origin(physical(1.0, 3.0));
  const double s2 = spectrum_at_origin(physical(2.0, 3.0));
  EXPECT_NEAR(s05, 0.2693540985736745, 1e-12);
  EXPECT_NEAR(s1, 0.0022345817282061835, 1e-14);
  EXPECT_NEAR(s2, 0.00045894542687952824, 1e-14);
  EXPECT_GT(s05, s1);
  EXPECT_GT(s1, s2);
}

TEST(VerifyMoments, OddOrdersVanishForPureChirp) {
  const ChirpletParams p = physical(1.0, 0.0);
  const Grid2D g = make_grid(1024, 0.03125);  // window 32
  const std::vector<MomentResidual> res = verify_moments(p, g, 35);
  ASSERT_EQ(res.size(), 35u);
  for (const MomentResidual& m : res) {
    EXPECT_EQ(m.order, int(&m - res.data()) + 1);
    if (m.order % 2 == 1) EXPECT_LE(m.residual, 1e-12) << "order " << m.order;
  }
}

TEST(VerifyMoments, ValidatesOrderRange) {
  const ChirpletParams p = physical(1.0, 0.0);
  const Grid2D g = make_grid(256, 0.125);
  EXPECT_THROW(verify_moments(p, g, 0), std::invalid_argument);
  EXPECT_THROW(verify_moments(p, g, 36), std::invalid_argument);
}

TEST(VerifyMoments, RefusesOverflowingWeights) {
  const ChirpletParams p = physical(1.0, 0.0);
  EXPECT_THROW(verify_moments(p, make_grid(4, 20000.0), 35), chirpopt::range_error);
}

TEST(Admissibility, PinnedQuadratureConverges) {
  const ChirpletParams p = mother(0.5, 8.0);
  std::vector<std::string> warnings;
  const double c256 = admissibility_constant(p, make_grid(256, 0.125), &warnings);
  const double c512 = admissibility_constant(p, make_grid(512, 0.125), &warnings);
  EXPECT_TRUE(warnings.empty());
  EXPECT_NEAR(c256, 1.4447798538135777, 1.5e-12);
  EXPECT_NEAR(c512, 1.4467878779004968, 1.5e-12);
  EXPECT_LE(std::abs(c512 - c256) / c512, 0.01);
}

TEST(Admissibility, CarrierAnchorValue) {
  const ChirpletParams p = physical(1.0, std::nullopt);
  const Grid2D g = make_grid(1024, 3.8283203075177927e-4);
  std::vector<std::string> warnings;
  const double c = admissibility_constant(p, g, &warnings);
  EXPECT_TRUE(warnings.empty());
  EXPECT_NEAR(c, 8.391832627452944e-05, 8.4e-14);
}

TEST(Admissibility, WarnsWhenCarrierHugsAxis) {
  const ChirpletParams p = mother(0.5, 8.0, 0.0);  // carrier on the u axis
  std::vector<std::string> warnings;
  const double c = admissibility_constant(p, make_grid(256, 0.125), &warnings);
  EXPECT_GT(c, 0.0);
  ASSERT_FALSE(warnings.empty());
  EXPECT_NE(warnings[0].find("divergence-dominated"), std::string::npos);
}

TEST(Admissibility, UndefinedWithoutCarrier) {
  const ChirpletParams p = mother(0.5, 0.0);
  EXPECT_THROW(admissibility_constant(p, make_grid(256, 0.125)), admissibility_error);
}

TEST(WaveletReport, PureChirpGetsSentinelAndNote) {
  const ChirpletParams p = physical(1.0, 0.0);
  const WaveletReport r = make_wavelet_report(p, make_grid(256, 0.125), 3);
  EXPECT_NEAR(r.energy, 1.0, 1e-9);
  EXPECT_EQ(r.admissibility_c, 0.0);
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes[0].find("admissibility"), std::string::npos);
  EXPECT_EQ(r.moments.size(), 3u);
}
