#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "chirpopt/metrics.hpp"
#include "chirpopt/propagate.hpp"
#include "chirpopt/scene.hpp"
#include "test_util.hpp"

using namespace chirpopt;

namespace {

constexpr double kLambda = 5.5e-4;  // mm
constexpr double kZ = 54000.0;      // mm

PropagationParams tf_params() { return {kLambda, kZ, PropagationMethod::transfer_function}; }
PropagationParams dq_params() { return {kLambda, kZ, PropagationMethod::direct_quadrature}; }

}  // namespace

TEST(ScaleFromDistance, MatchesClosedForm) {
  EXPECT_DOUBLE_EQ(scale_from_distance(kLambda, kZ), 3.0747038263316653);
  EXPECT_THROW(scale_from_distance(kLambda, 0.0), std::invalid_argument);
  EXPECT_THROW(scale_from_distance(0.0, kZ), std::invalid_argument);
}

TEST(PropagatorConstant, ModulusAndPhase) {
  const cplx k = propagator_constant(kLambda, kZ);
  EXPECT_NEAR(std::abs(k), 1.0 / (kLambda * kZ), 1e-15);
  EXPECT_NEAR(std::abs(k), 0.033670033670033669, 1e-15);
  // K * lambda*z * e^{-j*2*pi*z/lambda} must be exactly -j
  const cplx unit = k * (kLambda * kZ) * std::polar(1.0, -2.0 * kPi * kZ / kLambda);
  EXPECT_NEAR(unit.real(), 0.0, 1e-12);
  EXPECT_NEAR(unit.imag(), -1.0, 1e-12);
}

TEST(FresnelForward, TransferMatchesQuadratureAtCriticalSampling) {
  const int n = 64;
  const double pitch = std::sqrt(kLambda * kZ / n);
  const Grid2D g = make_grid(n, pitch);
  const ComplexField f = testutil::random_field(g, 3);
  const ComplexField tf = fresnel_forward(f, tf_params());
  const ComplexField dq = fresnel_forward(f, dq_params());
  EXPECT_LE(rel_l2(tf.samples, dq.samples), 1e-12);
  EXPECT_DOUBLE_EQ(tf.plane_z, kZ);
  EXPECT_DOUBLE_EQ(tf.wavelength, kLambda);
}

TEST(FresnelForward, TransferConservesEnergy) {
  const int n = 64;
  const Grid2D g = make_grid(n, std::sqrt(kLambda * kZ / n));
  const ComplexField f = testutil::random_field(g, 5);
  const ComplexField out = fresnel_forward(f, tf_params());
  const double e0 = field_energy(f);
  EXPECT_NEAR(field_energy(out), e0, 1e-12 * e0);
}

TEST(FresnelForward, TransferRefusesSubCriticalPitch) {
  const int n = 64;
  const double crit = std::sqrt(kLambda * kZ / n);
  const ComplexField f = testutil::random_field(make_grid(n, 0.9 * crit), 1);
  EXPECT_THROW(fresnel_forward(f, tf_params()), sampling_error);
}

TEST(FresnelForward, QuadratureCostGuard) {
  const ComplexField f = make_field(make_grid(256, 1.0));
  EXPECT_THROW(fresnel_forward(f, dq_params()), cost_guard_error);
}

TEST(FresnelForward, ValidatesLambdaAndZ) {
  const ComplexField f = make_field(make_grid(16, 1.0));
  EXPECT_THROW(fresnel_forward(f, {kLambda, 0.0, PropagationMethod::transfer_function}),
               std::invalid_argument);
  EXPECT_THROW(fresnel_forward(f, {kLambda, -5.0, PropagationMethod::transfer_function}),
               std::invalid_argument);
  EXPECT_THROW(fresnel_forward(f, {0.0, kZ, PropagationMethod::transfer_function}),
               std::invalid_argument);
}

TEST(FresnelImpulseResponse, ConstantModulusWhenResolved) {
  const Grid2D g = make_grid(128, 0.2);
  const ComplexField h = fresnel_impulse_response(tf_params(), g);
  const double expected = 1.0 / (kLambda * kZ);
  for (const cplx& v : h.samples) EXPECT_NEAR(std::abs(v), expected, 1e-12 * expected);
}

TEST(FresnelImpulseResponse, RefusesCriticallySampledChirp) {
  const int n = 128;
  const Grid2D g = make_grid(n, std::sqrt(kLambda * kZ / n));
  EXPECT_THROW(fresnel_impulse_response(tf_params(), g), aliasing_error);
}

// At critical sampling the lattice transfer function is the exact DFT of the
// sampled impulse response, so propagating a unit impulse through the
// transfer-function path must reproduce h_z sample for sample.
TEST(FresnelForward, TransferAgreesWithSampledImpulseResponse) {
  const int n = 128;
  const double pitch = std::sqrt(kLambda * kZ / n);
  const Grid2D g = make_grid(n, pitch);
  ComplexField delta = make_field(g, kLambda, 0.0);
  delta.at(n / 2, n / 2) = cplx{1.0 / (pitch * pitch), 0.0};
  const ComplexField out = fresnel_forward(delta, tf_params());

  const cplx k = propagator_constant(kLambda, kZ);
  const double beta = kPi / (kLambda * kZ);
  std::vector<cplx> h(g.count());
  for (int j = 0; j < n; ++j) {
    const double y = g.coord(j);
    for (int i = 0; i < n; ++i) {
      const double x = g.coord(i);
      h[std::size_t(j) * n + i] = k * std::polar(1.0, beta * (x * x + y * y));
    }
  }
  EXPECT_LE(rel_l2(out.samples, h), 1e-12);
}

TEST(FresnelInverse, RoundTripAtCriticalSampling) {
  const int n = 512;
  const double pitch = std::sqrt(kLambda * kZ / n);
  const Grid2D g = make_grid(n, pitch);
  const ComplexField object = rect_aperture(6.0, 2.0, g, kLambda);
  const ComplexField far = fresnel_forward(object, tf_params());
  const ComplexField back = fresnel_inverse(far, tf_params());
  EXPECT_GE(ncc_complex(back.samples, object.samples), 0.999);
  EXPECT_NEAR(back.grid.pitch, pitch, 1e-12);
  EXPECT_DOUBLE_EQ(back.plane_z, 0.0);
}

TEST(FraunhoferInverse, RoundTripKeepsEnvelope) {
  const int n = 512;
  const double pitch = std::sqrt(kLambda * kZ / n);
  const Grid2D g = make_grid(n, pitch);
  const ComplexField object = rect_aperture(6.0, 2.0, g, kLambda);
  const ComplexField far = fresnel_forward(object, tf_params());
  const ComplexField back = fraunhofer_inverse(far, tf_params());
  EXPECT_GE(ncc_complex(back.samples, object.samples), 0.9);
}

TEST(FraunhoferInverse, NativeWindowAndGuard) {
  const Grid2D g = make_grid(512, 0.25);
  const ComplexField object = rect_aperture(6.0, 2.0, g, kLambda);
  const ComplexField out = fraunhofer_inverse(object, tf_params());
  EXPECT_NEAR(out.grid.pitch, 0.23203125, 1e-12);
  EXPECT_NEAR(out.grid.window(), 118.8, 1e-9);
  EXPECT_THROW(fraunhofer_inverse(object, tf_params(), 100.0), geometry_error);
  const ComplexField ok = fraunhofer_inverse(object, tf_params(), 120.0);
  EXPECT_EQ(ok.grid.n, 512);
}

TEST(AngularSpectrum, SelfInverseOnPropagatingBand) {
  const int n = 512;
  const double pitch = std::sqrt(kLambda * kZ / n);
  const Grid2D g = make_grid(n, pitch);
  const ComplexField object = rect_aperture(6.0, 2.0, g, kLambda);
  const ComplexField there = angular_spectrum_apply(object, kLambda, kZ);
  const ComplexField back = angular_spectrum_inverse(there, tf_params());
  EXPECT_LE(rel_l2(back.samples, object.samples), 1e-12);
  EXPECT_DOUBLE_EQ(back.plane_z, 0.0);
}

TEST(AngularSpectrum, EvanescentBandIsProjectedOut) {
  // 2 mm "wavelength": the lattice reaches far beyond the propagating disc
  const Grid2D g = make_grid(64, 0.125);
  const ComplexField f = testutil::random_field(g, 23, 2.0);
  const ComplexField once =
      angular_spectrum_apply(angular_spectrum_apply(f, 2.0, 0.7), 2.0, -0.7);
  const ComplexField twice =
      angular_spectrum_apply(angular_spectrum_apply(once, 2.0, 0.7), 2.0, -0.7);
  EXPECT_LE(rel_l2(twice.samples, once.samples), 1e-13);
  EXPECT_LT(field_energy(once), 0.99 * field_energy(f));
}
