#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "nshyp/errors.hpp"
#include "nshyp/waves/waves.hpp"

using namespace nshyp;
using namespace testing_support;

namespace {
int count_real(const std::vector<std::complex<double>>& zs) {
  return static_cast<int>(
      std::count_if(zs.begin(), zs.end(), [](auto z) { return z.imag() == 0.0; }));
}
}  // namespace

TEST(PolynomialRoots, KnownPolynomials) {
  // (l - 1)(l - 2)(l + 3) = l^3 - 7 l + 6
  auto r = polynomial_roots({1, 0, -7, 6});
  ASSERT_EQ(r.size(), 3u);
  std::vector<double> re;
  for (auto z : r) re.push_back(z.real());
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], -3, 1e-13);
  EXPECT_NEAR(re[1], 1, 1e-13);
  EXPECT_NEAR(re[2], 2, 1e-13);
  // Leading zeros are dropped: 4 l^2 + 1.
  r = polynomial_roots({0, 0, 4, 0, 1});
  ASSERT_EQ(r.size(), 2u);
  for (auto z : r) {
    EXPECT_EQ(z.real(), 0.0);
    EXPECT_NEAR(std::abs(z.imag()), 0.5, 1e-15);
  }
  EXPECT_TRUE(polynomial_roots({0, 3}).empty());
}

TEST(Classification, EigenvaluePatterns) {
  using C = std::complex<double>;
  EXPECT_EQ(classify_eigenvalues({C(0, 1), C(0, -1)}).kind, EquilibriumKind::center);
  EXPECT_EQ(classify_eigenvalues({C(1, 0), C(-2, 0)}).kind, EquilibriumKind::saddle);
  EXPECT_EQ(classify_eigenvalues({C(-1, 0), C(-2, 0)}).kind, EquilibriumKind::node);
  EXPECT_EQ(classify_eigenvalues({C(-0.1, 1), C(-0.1, -1)}).kind, EquilibriumKind::focus);
  EXPECT_EQ(classify_eigenvalues({C(0, 0), C(0, 1)}).kind, EquilibriumKind::degenerate);
  EXPECT_TRUE(classify_eigenvalues({C(1e-14, 1), C(1e-14, -1)}).periodic());
}

TEST(LinearizedRoots, InviscidColdPlasmaIsPureImaginary) {
  // w^2 l^2 + 1 = 0 gives l = +-i / w.
  for (double w : {0.5, 2.0, 3.0}) {
    const auto c = linearized_tw_roots(LinearizedModel::cold_plasma_viscous, 0.0, 0.0, w);
    EXPECT_EQ(c.kind, EquilibriumKind::center);
    ASSERT_EQ(c.eigenvalues.size(), 2u);
    for (auto z : c.eigenvalues) {
      EXPECT_EQ(z.real(), 0.0);
      EXPECT_NEAR(std::abs(z.imag()), 1.0 / w, 1e-12);
    }
  }
}

TEST(LinearizedRoots, ViscousColdPlasmaHasOneRealRoot) {
  const auto c = linearized_tw_roots(LinearizedModel::cold_plasma_viscous, 0.2, 0.0, 2.0);
  ASSERT_EQ(c.eigenvalues.size(), 3u);
  EXPECT_EQ(count_real(c.eigenvalues), 1);
  for (auto z : c.eigenvalues) {
    const auto p = 0.4 * z * z * z + 4.0 * z * z + 1.0;
    EXPECT_LT(std::abs(p), 1e-12);
  }
  EXPECT_FALSE(c.periodic());
}

TEST(LinearizedRoots, StratifiedQuartic) {
  const auto inviscid = linearized_tw_roots(LinearizedModel::stratified, 0.0, 0.0, 1.5);
  ASSERT_EQ(inviscid.eigenvalues.size(), 2u);
  for (auto z : inviscid.eigenvalues) EXPECT_NEAR(std::abs(z.imag()), 1.0 / 1.5, 1e-12);
  const auto viscous = linearized_tw_roots(LinearizedModel::stratified, 0.1, 0.2, 2.0);
  ASSERT_EQ(viscous.eigenvalues.size(), 4u);
  for (auto z : viscous.eigenvalues) {
    const auto p = 0.02 * std::pow(z, 4) + 0.6 * std::pow(z, 3) + 4.0 * z * z + 1.0;
    EXPECT_LT(std::abs(p), 1e-10);
  }
  // Reduces to the cold-plasma cubic when kappa = 0.
  const auto k0 = linearized_tw_roots(LinearizedModel::stratified, 0.2, 0.0, 2.0);
  EXPECT_EQ(k0.eigenvalues.size(), 3u);
  EXPECT_EQ(count_real(k0.eigenvalues), 1);
}

TEST(SimpleWave, RotationSystemStaysOnCircle) {
  // dU/dV = V / (-U): V^2 + U^2 is constant along the curve.
  IntegrationOptions opts;
  opts.rtol = 1e-11;
  opts.atol = 1e-13;
  const auto traj = simple_wave_curve(rotation_system(), {-0.5, 0.5}, vec2(-0.5, -1.0), opts);
  EXPECT_EQ(traj.termination, Termination::reached_end);
  for (std::size_t i = 0; i < traj.params.size(); ++i) {
    const double V = traj.params[i], U = traj.states[i][0];
    EXPECT_NEAR(V * V + U * U, 1.25, 1e-9);
  }
  const auto back = simple_wave_curve(rotation_system(), {-0.5, 0.5}, vec2(0.5, -1.0), opts);
  EXPECT_NEAR(back.params.front(), -0.5, 1e-15);
  EXPECT_NEAR(back.states.front()[0], -1.0, 1e-8);
}

TEST(SimpleWave, StopsWhereDenominatorVanishes) {
  // Q_1 . V = -U reaches zero at V = 1 on the unit circle.
  const auto traj = simple_wave_curve(rotation_system(), {0.0, 2.0}, vec2(0.0, -1.0));
  EXPECT_TRUE(traj.stopped_early());
  EXPECT_NEAR(traj.end_param(), 1.0, 1e-3);
  EXPECT_THROW(simple_wave_curve(rotation_system(), {0.0, 2.0}, vec2(0.0, 0.0)), DomainError);
  EXPECT_THROW(simple_wave_curve(rotation_system(), {0.0, 2.0}, vec2(1.0, 1.0)), DomainError);
}

TEST(TravelingWave, InviscidColdPlasmaOrbitCloses) {
  IntegrationOptions opts;
  opts.rtol = 1e-11;
  opts.atol = 1e-13;
  const auto sys = rotation_system();
  const auto traj = tw_inviscid(sys, 2.0, vec2(1.0, 0.0), {0.0, 30.0}, opts);
  EXPECT_EQ(traj.termination, Termination::reached_end);
  for (const auto& s : traj.states) EXPECT_NEAR(s.squaredNorm(), 1.0, 1e-9);

  const Matrix Q = sys.Q();
  VectorField rhs = [Q](double, const Vector& y) -> Vector { return Q * y / (y[0] - 2.0); };
  const auto orbit = first_return(rhs, vec2(1.0, 0.0), 1, 100.0, opts);
  EXPECT_TRUE(orbit.closed);
  EXPECT_LT(orbit.closure_error, 1e-5);
  // On the unit circle V = cos th, dth/dxi = 1 / (2 - cos th): period 2 pi * 2.
  EXPECT_NEAR(orbit.period, 4 * pi, 1e-8);
}

TEST(TravelingWave, InviscidHitsSingularLine) {
  // Radius 3 circle crosses V = w = 2.
  const auto traj = tw_inviscid(rotation_system(), 2.0, vec2(0.0, -3.0), {0.0, 50.0});
  EXPECT_EQ(traj.termination, Termination::singularity_detected);
  EXPECT_NEAR(traj.final_state()[0], 2.0, 1e-3);
}

TEST(TravelingWave, ViscousColdPlasmaEndsAtFiniteXi) {
  IntegrationOptions opts;
  opts.rtol = 1e-10;
  opts.atol = 1e-12;
  const auto traj = tw_viscous_coldplasma(0.2, 2.0, 1.0, 0.0, 0.0, {0.0, 200.0}, opts);
  EXPECT_EQ(traj.termination, Termination::singularity_detected);
  EXPECT_LT(traj.end_param(), 200.0);
  EXPECT_NEAR(traj.final_state()[0], 2.0, 1e-5);
  EXPECT_THROW(tw_viscous_coldplasma(0.0, 2.0, 1.0, 0.0, 0.0, {0, 1}), DomainError);
  EXPECT_THROW(tw_viscous_coldplasma(0.2, 2.0, 2.0, 0.0, 0.0, {0, 1}), DomainError);
}

TEST(FirstReturn, HarmonicPeriod) {
  VectorField rhs = [](double, const Vector& y) -> Vector { return vec2(y[1], -4 * y[0]); };
  IntegrationOptions opts;
  opts.rtol = 1e-12;
  opts.atol = 1e-14;
  const auto r = first_return(rhs, vec2(0.0, 1.0), 0, 10.0, opts);
  EXPECT_TRUE(r.closed);
  EXPECT_NEAR(r.period, pi, 1e-9);
  const auto open = first_return(rhs, vec2(0.0, 1.0), 0, 2.0, opts);
  EXPECT_FALSE(open.closed);
  EXPECT_THROW(first_return(rhs, vec2(1.0, 0.0), 0, 10.0), DomainError);
}
