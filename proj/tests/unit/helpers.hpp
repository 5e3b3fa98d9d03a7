#pragma once

#include <cmath>
#include <numbers>

#include "nshyp/core/profile.hpp"
#include "nshyp/core/system.hpp"

namespace testing_support {

using nshyp::InitialProfile;
using nshyp::Matrix;
using nshyp::Vector;

inline constexpr double pi = std::numbers::pi;

inline nshyp::SystemSpec rotation_system() {
  Matrix Q(2, 2);
  Q << 0, -1, 1, 0;
  return nshyp::SystemSpec(Q, std::nullopt, "cold_plasma");
}

inline Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

/// (a sin(k x + p), b cos(k x + p)) on [0, 2 pi / k), periodic.
inline InitialProfile trig_profile(double a, double b, double k = 1.0, double p = 0.0) {
  return InitialProfile::analytic(
      2, [=](double x) { return vec2(a * std::sin(k * x + p), b * std::cos(k * x + p)); },
      [=](double x) {
        return vec2(a * k * std::cos(k * x + p), -b * k * std::sin(k * x + p));
      },
      {0.0, 2 * pi / k}, true);
}

/// V_0 = v0 + dv * x, U_0 = u0 + du * x on [lo, hi].
inline InitialProfile linear_profile(double v0, double dv, double u0, double du,
                                     double lo = -1.0, double hi = 1.0) {
  return InitialProfile::analytic(
      2, [=](double x) { return vec2(v0 + dv * x, u0 + du * x); },
      [=](double) { return vec2(dv, du); }, {lo, hi}, false);
}

}  // namespace testing_support
