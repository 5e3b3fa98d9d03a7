#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "nshyp/core/blowup.hpp"
#include "nshyp/core/characteristics.hpp"
#include "nshyp/core/criteria.hpp"
#include "nshyp/core/grid_solution.hpp"
#include "nshyp/errors.hpp"

using namespace nshyp;
using namespace testing_support;

// Along a characteristic of the rotation system with foot data (V0, U0) and
// derivatives (a, b) = (V0', U0'):
//   V = V0 cos t - U0 sin t,  U = V0 sin t + U0 cos t,
//   x = x0 + V0 sin t + U0 (cos t - 1),
//   q = (1 - b) + a sin t + b cos t.
namespace oracle {
double q(double a, double b, double t) { return (1 - b) + a * std::sin(t) + b * std::cos(t); }
}  // namespace oracle

TEST(SystemSpec, Validation) {
  EXPECT_THROW(SystemSpec(Matrix::Zero(2, 3)), DomainError);
  EXPECT_THROW(SystemSpec(Matrix::Zero(0, 0)), DomainError);
  EXPECT_THROW(SystemSpec(Matrix::Zero(2, 2), Matrix::Zero(3, 3)), DomainError);
  Matrix bad = Matrix::Zero(2, 2);
  bad(1, 0) = INFINITY;
  EXPECT_THROW(SystemSpec{bad}, DomainError);
  const SystemSpec s(Matrix::Zero(2, 2), Matrix::Identity(2, 2), "x");
  EXPECT_FALSE(s.inviscid().B().has_value());
  EXPECT_EQ(s.inviscid().label(), "x");
}

TEST(Profile, Validation) {
  EXPECT_THROW(linear_profile(0, 0, 0, 1).value(1.5), DomainError);
  EXPECT_NEAR(trig_profile(1, 1).value(2 * pi + 0.3)[0], std::sin(0.3), 1e-14);
  // Periodic tables must close up.
  std::vector<double> x = {0, 1, 2, 3, 4};
  Matrix Y(1, 5);
  Y << 0, 1, 0, -1, 0.5;
  EXPECT_THROW(InitialProfile::sampled(x, Y, std::nullopt, true), DomainError);
  Y(0, 4) = 0.0;
  EXPECT_NO_THROW(InitialProfile::sampled(x, Y, std::nullopt, true));
}

TEST(Profile, SampledDerivativesAreChecked) {
  const int m = 65;
  std::vector<double> x(m);
  Matrix Y(1, m), dY(1, m);
  for (int i = 0; i < m; ++i) {
    x[i] = 2.0 * i / (m - 1);
    Y(0, i) = x[i] * x[i];
    dY(0, i) = 2 * x[i];
  }
  const auto p = InitialProfile::sampled(x, Y, dY, false);
  EXPECT_NEAR(p.derivative(1.3)[0], 2.6, 1e-6);
  EXPECT_THROW(InitialProfile::sampled(x, Y, Matrix(-dY), false), DomainError);
  const auto q = InitialProfile::sampled(x, Y, std::nullopt, false);
  EXPECT_NEAR(q.derivative(1.3)[0], 2.6, 1e-3);
}

TEST(Characteristics, AugmentedMatrixStructure) {
  const Matrix M = augmented_matrix(rotation_system());
  Matrix expected(3, 3);
  expected << 0, 1, 0,  //
      0, 0, -1,         //
      0, 1, 0;
  EXPECT_EQ(M, expected);
}

TEST(Characteristics, RotationClosedForm) {
  const auto sys = rotation_system();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    const double V0 = u(rng), U0 = u(rng), a = u(rng), b = u(rng), t = 3 * (u(rng) + 2);
    const auto s = CharacteristicFlow(sys, t).shoot(0.25, vec2(V0, U0), vec2(a, b));
    EXPECT_NEAR(s.V[0], V0 * std::cos(t) - U0 * std::sin(t), 1e-12);
    EXPECT_NEAR(s.V[1], V0 * std::sin(t) + U0 * std::cos(t), 1e-12);
    EXPECT_NEAR(s.x, 0.25 + V0 * std::sin(t) + U0 * (std::cos(t) - 1), 1e-12);
    EXPECT_NEAR(s.q, oracle::q(a, b, t), 1e-12);
    // u = q V_x stays a rotation of the foot gradient.
    EXPECT_NEAR(s.u[0], a * std::cos(t) - b * std::sin(t), 1e-12);
  }
}

TEST(Characteristics, RadiusIsConserved) {
  const auto sys = rotation_system();
  const auto prof = trig_profile(0.8, -1.3, 2.0, 0.4);
  for (double x0 : {0.0, 0.5, 2.0, 3.0}) {
    const double r0 = conserved_radius(characteristic_solve(sys, prof, x0, 0.0));
    for (double t : {0.7, 5.0, 20.0})
      EXPECT_NEAR(conserved_radius(characteristic_solve(sys, prof, x0, t)), r0, 1e-12);
  }
  Matrix Q3 = Matrix::Zero(3, 3);
  const auto three = InitialProfile::analytic(
      3, [](double) { return Vector(Vector::Zero(3)); },
      [](double) { return Vector(Vector::Zero(3)); }, {0, 1}, false);
  EXPECT_THROW(conserved_radius(characteristic_solve(SystemSpec(Q3), three, 0.5, 1.0)),
               DomainError);
}

TEST(Blowup, ExactBlowupTimeForLinearData) {
  // V0 = 0, U0 = x: q = cos t, T* = pi / 2 at every point.
  const auto sys = rotation_system();
  const auto prof = linear_profile(0, 0, 0, 1);
  const auto root = q_first_root(sys, prof, 0.3);
  ASSERT_TRUE(root);
  EXPECT_EQ(root->kind, RootKind::crossing);
  EXPECT_NEAR(root->t, pi / 2, 1e-9);
  const auto report = blowup_report(sys, prof, uniform_grid(prof, 33));
  EXPECT_EQ(report.verdict, Verdict::blows_up);
  EXPECT_NEAR(*report.t_star, pi / 2, 1e-9);
  EXPECT_EQ(report.per_point.size(), 33u);
}

TEST(Blowup, TouchingZeroIsReportedAsTouch) {
  // V0' = 0, U0' = 1/2: q = (1 + cos t) / 2 touches zero at t = pi.
  const auto root = q_first_root(rotation_system(), linear_profile(0, 0, 0, 0.5), 0.0);
  ASSERT_TRUE(root);
  EXPECT_EQ(root->kind, RootKind::touch);
  EXPECT_NEAR(root->t, pi, 1e-4);
}

TEST(Blowup, SubcriticalProfileIsSmoothUpToHorizon) {
  const auto prof = trig_profile(0.5, 0.3);
  const auto report = blowup_report(rotation_system(), prof, uniform_grid(prof, 128));
  EXPECT_EQ(report.verdict, Verdict::globally_smooth);
  EXPECT_FALSE(report.t_star);
  EXPECT_EQ(report.horizon, 100.0);
}

TEST(Blowup, EarliestPointWins) {
  // V0 = x^2 / 2, U0 = 0: q = 1 + x0 sin t.
  const auto prof = InitialProfile::analytic(
      2, [](double x) { return vec2(0.5 * x * x, 0.0); },
      [](double x) { return vec2(x, 0.0); }, {-3.0, 3.0}, false);
  const auto report = blowup_report(rotation_system(), prof, uniform_grid(prof, 61));
  ASSERT_EQ(report.verdict, Verdict::blows_up);
  // Earliest root at x0 = -3 where sin t = 1/3.
  EXPECT_NEAR(*report.t_star, std::asin(1.0 / 3.0), 1e-9);
  EXPECT_DOUBLE_EQ(*report.x_star, -3.0);
}

TEST(Blowup, QTableMatchesClosedForm) {
  ScanSettings scan;
  scan.horizon = 10.0;
  const QFunctionTable table(rotation_system(), scan);
  for (double t : {0.0, 0.001, 3.3333, 10.0})
    EXPECT_NEAR(table.q(vec2(0.4, -0.9), t), oracle::q(0.4, -0.9, t), 1e-12);
}

TEST(Criteria, ColdPlasmaValues) {
  const auto prof = trig_profile(0.5, 0.3);
  const auto x = uniform_grid(prof, 512);
  const auto c = criterion_cold_plasma(prof, x);
  EXPECT_EQ(c.verdict, Verdict::globally_smooth);
  // D = 0.25 cos^2 x - 0.6 sin x - 1 peaks at x = 3 pi / 2 with -0.4.
  EXPECT_NEAR(c.max_value, -0.4, 1e-12);
  EXPECT_FALSE(c.violating_x);
  const auto bad = criterion_cold_plasma(linear_profile(0, 0, 0, 1), {0.0});
  EXPECT_EQ(bad.verdict, Verdict::blows_up);
  EXPECT_DOUBLE_EQ(bad.values[0], 1.0);
}

TEST(Criteria, ClosedFormMatchesScanOnRandomProfiles) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  const auto sys = rotation_system();
  for (int trial = 0; trial < 10; ++trial) {
    const auto prof = trig_profile(u(rng), u(rng), 1.0, u(rng));
    const auto x = uniform_grid(prof, 32);
    const auto c = criterion_cold_plasma(prof, x);
    const auto r = blowup_report(sys, prof, x);
    for (std::size_t i = 0; i < x.size(); ++i)
      EXPECT_EQ(c.values[i] >= 0, r.per_point[i].root.has_value()) << "x0=" << x[i];
  }
}

TEST(Criteria, DavidsonReducesToColdPlasmaAtZeroField) {
  const auto three = InitialProfile::analytic(
      3,
      [](double x) {
        Vector v(3);
        v << 0.9 * std::sin(x), 0.4 * std::cos(x), 0.7 * std::cos(2 * x);
        return v;
      },
      [](double x) {
        Vector v(3);
        v << 0.9 * std::cos(x), -0.4 * std::sin(x), -1.4 * std::sin(2 * x);
        return v;
      },
      {0, 2 * pi}, true);
  const auto two = InitialProfile::analytic(
      2, [](double x) { return vec2(0.9 * std::sin(x), 0.7 * std::cos(2 * x)); },
      [](double x) { return vec2(0.9 * std::cos(x), -1.4 * std::sin(2 * x)); }, {0, 2 * pi},
      true);
  const auto x = uniform_grid(two, 100);
  const auto d = criterion_davidson(three, 0.0, x);
  const auto c = criterion_cold_plasma(two, x);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(d.values[i], c.values[i]);
  EXPECT_THROW(criterion_davidson(two, 0.0, x), DomainError);
  EXPECT_THROW(criterion_cold_plasma(three, x), DomainError);
}

TEST(GridSolution, TimeZeroIsTheProfile) {
  const auto prof = trig_profile(0.5, 0.3);
  const auto x = uniform_grid(prof, 64);
  const auto sol = grid_solution(rotation_system(), prof, 0.0, x);
  for (std::size_t j = 0; j < x.size(); ++j) {
    EXPECT_EQ(sol.values(0, j), prof.value(x[j])[0]);
    EXPECT_EQ(sol.jacobian[j], 1.0);
  }
}

TEST(GridSolution, PeriodicInTime) {
  const auto prof = trig_profile(0.5, 0.3);
  const auto x = uniform_grid(prof, 128);
  const auto s0 = grid_solution(rotation_system(), prof, 0.0, x);
  const auto s1 = grid_solution(rotation_system(), prof, 2 * pi, x);
  EXPECT_LT((s1.values - s0.values).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(GridSolution, LinearDataMatchesClosedForm) {
  // V0 = 0.2 x, U0 = 0.1 x: every characteristic is a straight-line map
  // x = x0 q(t) with q = 0.9 + 0.2 sin t + 0.1 cos t, so V = (0.2 cos t - 0.1 sin t) x / q.
  const auto prof = linear_profile(0, 0.2, 0, 0.1, -2.0, 2.0);
  const double t = 1.3, q = oracle::q(0.2, 0.1, t);
  std::vector<double> x = {-0.5, -0.1, 0.0, 0.3, 0.7};
  const auto sol = grid_solution(rotation_system(), prof, t, x);
  for (std::size_t j = 0; j < x.size(); ++j) {
    EXPECT_NEAR(sol.values(0, j), (0.2 * std::cos(t) - 0.1 * std::sin(t)) * x[j] / q, 1e-10);
    EXPECT_NEAR(sol.jacobian[j], q, 1e-10);
  }
}

TEST(GridSolution, RefusesAfterBlowup) {
  const auto prof = linear_profile(0, 0, 0, 1);
  EXPECT_THROW(grid_solution(rotation_system(), prof, 2.0, {0.0}), NumericalError);
  EXPECT_THROW(grid_solution(rotation_system(), prof, 1.0, {5.0}), DomainError);
}
