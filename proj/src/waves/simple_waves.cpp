#include <algorithm>
#include <cmath>

#include "nshyp/errors.hpp"
#include "nshyp/waves/waves.hpp"

namespace nshyp {

Trajectory simple_wave_curve(const SystemSpec& sys, Interval v1_span,
                             const Vector& seed, IntegrationOptions opts) {
  const int n = sys.dim();
  if (n < 2) throw DomainError("simple_wave_curve: needs at least 2 components");
  if (seed.size() != n) throw DomainError("simple_wave_curve: seed dimension");
  if (!(v1_span.lo < v1_span.hi))
    throw DomainError("simple_wave_curve: empty V1 span");

  const bool forward = seed[0] == v1_span.lo;
  if (!forward && seed[0] != v1_span.hi)
    throw DomainError("simple_wave_curve: seed V1 must be an end of the span");

  const Matrix& Q = sys.Q();
  const double row_scale = std::max(1.0, Q.row(0).cwiseAbs().maxCoeff());
  auto denominator = [&](const Vector& V) { return Q.row(0).dot(V); };
  auto threshold = [&](const Vector& V) {
    return 1e-9 * row_scale * std::max(1.0, V.cwiseAbs().maxCoeff());
  };
  if (std::abs(denominator(seed)) <= threshold(seed))
    throw DomainError("simple_wave_curve: zero denominator Q_1.V at the seed");

  // Forward: s = V1. Backward: s = -V1 so the integrator still runs upward.
  const double sign = forward ? 1.0 : -1.0;
  auto full = [&, sign](double s, const Vector& rest) {
    Vector V(n);
    V << sign * s, rest;
    return V;
  };
  auto rhs = [&, sign](double s, const Vector& rest) -> Vector {
    const Vector V = full(s, rest);
    const double den = denominator(V);
    return sign * (Q.bottomRows(n - 1) * V) / den;
  };
  opts.guard = [&, sign](double s, const Vector& rest) {
    const Vector V = full(s, rest);
    return std::abs(denominator(V)) <= threshold(V);
  };

  const double a = forward ? v1_span.lo : -v1_span.hi;
  const double b = forward ? v1_span.hi : -v1_span.lo;
  Trajectory traj = integrate_ode<double>(rhs, Vector(seed.tail(n - 1)), a, b, opts);
  if (!forward) {
    // Report in increasing V1 with derivatives taken with respect to V1.
    std::reverse(traj.params.begin(), traj.params.end());
    std::reverse(traj.states.begin(), traj.states.end());
    std::reverse(traj.slopes.begin(), traj.slopes.end());
    for (auto& p : traj.params) p = -p;
    for (auto& s : traj.slopes) s = -s;
  }
  return traj;
}

}  // namespace nshyp
