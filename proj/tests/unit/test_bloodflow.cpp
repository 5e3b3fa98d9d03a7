#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nshyp/errors.hpp"
#include "nshyp/waves/bloodflow.hpp"

using namespace nshyp;
constexpr double pi = std::numbers::pi;

namespace {
const BloodFlowWave kFig{1.0, 1.0, 2.0};  // mu = S0 = 1, w = 2
}

TEST(BloodFlow, FirstIntegralValues) {
  // Psi = E^2 + S0 V^2 - w mu S0^2 (2V - w) / (V - w)^2.
  EXPECT_DOUBLE_EQ(bloodflow_psi(kFig, {0.0, 0.0}), 1.0);
  EXPECT_NEAR(bloodflow_psi(kFig, {0.0, 0.5}), 41.0 / 36.0, 1e-15);
  EXPECT_NEAR(bloodflow_psi(kFig, {0.3, 0.5}), 41.0 / 36.0 + 0.09, 1e-15);
  EXPECT_THROW(bloodflow_psi(kFig, {0.0, 2.0}), DomainError);
}

TEST(BloodFlow, VectorField) {
  // E' = -S0 V / (V - w), V' = E (V - w)^2 / ((V - w)^3 + mu w S0).
  const auto d = bloodflow_rhs(kFig, {1.0, 0.0});
  EXPECT_DOUBLE_EQ(d.E, 0.0);
  EXPECT_NEAR(d.V, -2.0 / 3.0, 1e-15);
  const auto d2 = bloodflow_rhs(kFig, {0.0, 0.5});
  EXPECT_NEAR(d2.E, 1.0 / 3.0, 1e-15);
  EXPECT_THROW(bloodflow_rhs(kFig, {0.0, 2.0}), DomainError);
  // (V - w)^3 + mu w S0 = 0 at V = w - (mu S0 w)^(1/3).
  EXPECT_THROW(bloodflow_rhs(kFig, {1.0, 2.0 - std::cbrt(2.0)}), DomainError);
}

TEST(BloodFlow, FirstIntegralIsConservedByTheField) {
  // dPsi/dxi = 2 E E' + Psi_V V' must vanish.
  for (double E : {-0.4, 0.2, 0.7})
    for (double V : {-0.5, 0.1, 0.4}) {
      const auto d = bloodflow_rhs(kFig, {E, V});
      const double h = 1e-6;
      const double dpsi_dV =
          (bloodflow_potential(kFig, V + h) - bloodflow_potential(kFig, V - h)) / (2 * h);
      EXPECT_NEAR(2 * E * d.E + dpsi_dV * d.V, 0.0, 1e-8);
    }
}

TEST(BloodFlow, Classification) {
  const auto c = bloodflow_classify(kFig);
  EXPECT_EQ(c.kind, EquilibriumKind::center);
  // omega^2 = S0 / (w^2 - mu S0) = 1/3.
  for (auto z : c.eigenvalues) EXPECT_NEAR(std::abs(z.imag()), 1.0 / std::sqrt(3.0), 1e-14);
  EXPECT_EQ(bloodflow_classify({1.0, 1.0, 0.5}).kind, EquilibriumKind::saddle);
  EXPECT_EQ(bloodflow_classify({1.0, 1.0, 1.0}).kind, EquilibriumKind::degenerate);
  EXPECT_THROW(bloodflow_classify({0.0, 1.0, 2.0}), DomainError);
}

TEST(BloodFlow, BandAndTurningPoints) {
  EXPECT_NEAR(bloodflow_band(kFig), 2.0 - std::cbrt(2.0), 1e-15);
  const double psi0 = bloodflow_psi(kFig, {0.0, 0.5});
  const auto [lo, hi] = bloodflow_turning_points(kFig, psi0);
  EXPECT_NEAR(hi, 0.5, 1e-12);
  EXPECT_LT(lo, 0.0);
  EXPECT_NEAR(bloodflow_potential(kFig, lo), psi0, 1e-12);
  EXPECT_THROW(bloodflow_turning_points(kFig, 0.5), DomainError);
}

TEST(BloodFlow, PeriodQuadratureMatchesOrbit) {
  const PhasePoint p0{0.0, 0.5};
  const double L = bloodflow_period(kFig, p0);
  const auto orbit = bloodflow_orbit(kFig, p0);
  ASSERT_TRUE(orbit.closed);
  EXPECT_NEAR(orbit.period / L, 1.0, 1e-8);
  EXPECT_LT(orbit.closure_error, 1e-8);
}

TEST(BloodFlow, SmallAmplitudePeriodIsLinear) {
  const double L = bloodflow_period(kFig, {0.0, 1e-3});
  EXPECT_NEAR(L / (2 * pi * std::sqrt(3.0)), 1.0, 1e-4);
}

TEST(BloodFlow, PeriodRejectsOutsideTheBand) {
  const double band = bloodflow_band(kFig);
  EXPECT_NO_THROW(bloodflow_period(kFig, {0.0, 0.9 * band}));
  EXPECT_THROW(bloodflow_period(kFig, {0.0, 1.1 * band}), DomainError);
  EXPECT_THROW(bloodflow_period({1.0, 1.0, 0.5}, {0.0, 0.1}), DomainError);
}

TEST(BloodFlow, SpeedForPerimeterRoundTrip) {
  const double L = bloodflow_period({1.0, 1.0, 2.5}, {0.0, 0.5 * bloodflow_band({1.0, 1.0, 2.5})});
  const double w = bloodflow_speed_for_perimeter(1.0, 1.0, L, 0.5, {1.5, 4.0});
  EXPECT_NEAR(w, 2.5, 1e-8);
  EXPECT_THROW(bloodflow_speed_for_perimeter(1.0, 1.0, 1e-3, 0.5, {1.5, 4.0}), DomainError);
}
