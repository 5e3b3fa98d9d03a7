#include <gtest/gtest.h>

#include "nshyp/core/characteristics.hpp"
#include "nshyp/core/profile.hpp"
#include "nshyp/errors.hpp"
#include "nshyp/models/models.hpp"

using namespace nshyp;

namespace {
bool same_system(const SystemSpec& a, const SystemSpec& b) {
  if (a.Q() != b.Q()) return false;
  const Matrix Ba = a.B().value_or(Matrix::Zero(a.dim(), a.dim()));
  const Matrix Bb = b.B().value_or(Matrix::Zero(b.dim(), b.dim()));
  return Ba == Bb;
}
}  // namespace

TEST(Models, ColdPlasma) {
  const auto m = build("cold_plasma");
  Matrix Q(2, 2);
  Q << 0, -1, 1, 0;
  EXPECT_EQ(m.spec.Q(), Q);
  EXPECT_FALSE(m.spec.B());
  const auto v = build("cold_plasma", {{"nu", 0.2}});
  ASSERT_TRUE(v.spec.B());
  EXPECT_EQ((*v.spec.B())(0, 0), 0.2);
  EXPECT_EQ((*v.spec.B())(1, 1), 0.0);
}

TEST(Models, ReductionChains) {
  const auto cold = build(ModelName::cold_plasma);
  EXPECT_TRUE(same_system(build("euler_poisson", {{"k", 1}, {"n0", 1}, {"q", 0}}).spec, cold.spec));
  EXPECT_TRUE(same_system(build("rayleigh_benard", {{"nu", 0}, {"kappa", 0}}).spec, cold.spec));
  EXPECT_TRUE(same_system(build("stratified_fluid").spec, cold.spec));
  // Blood flow with S0 = 1 has the cold-plasma Q; mu -> 0 removes B.
  const auto blood = build("blood_flow", {{"mu", 0.0}, {"S0", 1.0}});
  EXPECT_EQ(blood.spec.Q(), cold.spec.Q());
  EXPECT_FALSE(blood.spec.B());
}

TEST(Models, EulerPoissonRegimes) {
  const auto ep = build("euler_poisson", {{"k", -2}, {"n0", 0}, {"q", 0.5}, {"nu", 0.1}});
  Matrix Q(2, 2);
  Q << -0.5, 2, 0, 0;
  EXPECT_EQ(ep.spec.Q(), Q);
  EXPECT_TRUE(ep.criteria.empty());
  EXPECT_EQ(build("euler_poisson").criteria, std::vector<std::string>{"cold_plasma"});
}

TEST(Models, BloodFlowHasOffDiagonalDiffusion) {
  const auto m = build("blood_flow", {{"mu", 0.3}, {"S0", 2.0}});
  Matrix Q(2, 2), B(2, 2);
  Q << 0, -1, 2, 0;
  B << 0, 0.3, 0, 0;
  EXPECT_EQ(m.spec.Q(), Q);
  EXPECT_EQ(*m.spec.B(), B);
}

TEST(Models, Davidson) {
  const auto m = build("davidson", {{"B0", 0.7}, {"q", 0.1}});
  Matrix Q(3, 3);
  Q << -0.1, -0.7, -1, 0.7, -0.1, 0, 1, 0, 0;
  EXPECT_EQ(m.spec.Q(), Q);
  EXPECT_TRUE(m.criteria.empty());
  // B0 = q = 0: V2 is decoupled from (V1, E).
  const auto z = build("davidson");
  EXPECT_EQ(z.spec.Q().row(1).norm(), 0.0);
  EXPECT_EQ(z.spec.Q().col(1).norm(), 0.0);
  EXPECT_EQ(z.criteria, std::vector<std::string>{"davidson"});
}

TEST(Models, ParameterValidation) {
  EXPECT_THROW(build("plasma"), DomainError);
  EXPECT_THROW(build("cold_plasma", {{"nu", -0.1}}), DomainError);
  EXPECT_THROW(build("cold_plasma", {{"kappa", 0.1}}), DomainError);
  EXPECT_THROW(build("euler_poisson", {{"n0", -1}}), DomainError);
  EXPECT_THROW(build("euler_poisson", {{"q", -1}}), DomainError);
  EXPECT_THROW(build("blood_flow", {{"S0", -1}}), DomainError);
  EXPECT_NO_THROW(build("euler_poisson", {{"k", -1}}));
  EXPECT_EQ(all_models().size(), 6u);
  for (ModelName m : all_models()) EXPECT_EQ(parse_model_name(to_string(m)), m);
}

TEST(Models, PressureFromE) {
  const auto m = build("blood_flow", {{"P0", 100}, {"D", 2}});
  EXPECT_DOUBLE_EQ(pressure_from_E(m, 3.0), 94.0);
  EXPECT_DOUBLE_EQ(pressure_from_E(m, 0.0), 100.0);
  EXPECT_DOUBLE_EQ(pressure_from_E(build("blood_flow", {{"P0", 7}, {"D", 0}}), 55.0), 7.0);
  EXPECT_THROW(pressure_from_E(build("cold_plasma"), 1.0), DomainError);
  EXPECT_THROW(pressure_from_E(build("blood_flow"), 1.0), DomainError);
}

TEST(Models, ZeroDataStaysZeroForEveryEntry) {
  for (ModelName name : all_models()) {
    const auto m = build(name, name == ModelName::davidson ? ParamMap{{"B0", 1.0}} : ParamMap{});
    const int n = m.spec.dim();
    const auto zero = InitialProfile::analytic(
        n, [n](double) { return Vector(Vector::Zero(n)); },
        [n](double) { return Vector(Vector::Zero(n)); }, {-1, 1}, false);
    for (double t : {0.5, 3.0}) {
      const auto s = characteristic_solve(m.spec.inviscid(), zero, 0.2, t);
      EXPECT_EQ(s.V.norm(), 0.0) << to_string(name);
      EXPECT_EQ(s.x, 0.2);
      EXPECT_DOUBLE_EQ(s.q, 1.0);
    }
  }
}
