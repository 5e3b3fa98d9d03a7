#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nshyp/errors.hpp"
#include "nshyp/numkit/types.hpp"

namespace nshyp {

enum class Termination {
  reached_end,
  singularity_detected,
  step_underflow,
  event_reached,
};

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::reached_end: return "reached_end";
    case Termination::singularity_detected: return "singularity_detected";
    case Termination::step_underflow: return "step_underflow";
    case Termination::event_reached: return "event_reached";
  }
  return "unknown";
}

/// Accepted steps of an adaptive integration. `slopes[i]` is the right-hand
/// side evaluated at (params[i], states[i]), kept for Hermite interpolation.
template <typename Scalar>
struct OdeTrajectory {
  std::vector<Scalar> params;
  std::vector<VectorX<Scalar>> states;
  std::vector<VectorX<Scalar>> slopes;
  Termination termination = Termination::reached_end;
  std::size_t rejected_steps = 0;

  Scalar end_param() const { return params.back(); }
  const VectorX<Scalar>& final_state() const { return states.back(); }
  bool stopped_early() const {
    return termination == Termination::singularity_detected ||
           termination == Termination::step_underflow;
  }
};

/// Zero crossing of g(t, y) that stops the integration on its
/// `occurrence`-th detection. direction: +1 upward only, -1 downward only,
/// 0 either. A trajectory that starts exactly on g = 0 does not count that
/// start as a crossing.
template <typename Scalar>
struct OdeEvent {
  std::function<Scalar(Scalar, const VectorX<Scalar>&)> g;
  int direction = 0;
  int occurrence = 1;
};

template <typename Scalar>
struct OdeOptions {
  Scalar rtol = Scalar(1e-8);
  Scalar atol = Scalar(1e-10);
  // Returns true when the state has reached a singular configuration.
  std::function<bool(Scalar, const VectorX<Scalar>&)> guard;
  std::optional<OdeEvent<Scalar>> event;
  Scalar initial_step = 0;  // 0: heuristic
  Scalar max_step = 0;      // 0: span length
  std::size_t max_steps = 2'000'000;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
struct DormandPrince {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                          b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
};

template <typename Scalar, typename Rhs>
bool dp_step(Rhs& rhs, Scalar t, const VectorX<Scalar>& y,
             const VectorX<Scalar>& k1, Scalar h, VectorX<Scalar>& y_new,
             VectorX<Scalar>& k7, VectorX<Scalar>& err) {
  using T = DormandPrince;
  const VectorX<Scalar> k2 = rhs(t + T::c2 * h, VectorX<Scalar>(y + h * T::a21 * k1));
  const VectorX<Scalar> k3 =
      rhs(t + T::c3 * h, VectorX<Scalar>(y + h * (T::a31 * k1 + T::a32 * k2)));
  const VectorX<Scalar> k4 = rhs(
      t + T::c4 * h,
      VectorX<Scalar>(y + h * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3)));
  const VectorX<Scalar> k5 =
      rhs(t + T::c5 * h,
          VectorX<Scalar>(y + h * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 +
                                   T::a54 * k4)));
  const VectorX<Scalar> k6 =
      rhs(t + h, VectorX<Scalar>(y + h * (T::a61 * k1 + T::a62 * k2 +
                                          T::a63 * k3 + T::a64 * k4 +
                                          T::a65 * k5)));
  y_new = y + h * (T::b1 * k1 + T::b3 * k3 + T::b4 * k4 + T::b5 * k5 +
                   T::b6 * k6);
  if (!y_new.allFinite()) return false;
  k7 = rhs(t + h, y_new);
  if (!k7.allFinite()) return false;
  err = h * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 +
             T::e7 * k7);
  return err.allFinite();
}

template <typename Scalar>
Scalar error_norm(const VectorX<Scalar>& err, const VectorX<Scalar>& y0,
                  const VectorX<Scalar>& y1, Scalar rtol, Scalar atol) {
  Scalar worst = 0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const Scalar scale =
        atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    worst = std::max(worst, std::abs(err[i]) / scale);
  }
  return worst;
}

}  // namespace detail

/// Adaptive explicit Dormand-Prince 5(4) integration of y' = rhs(t, y) over
/// [a, b]. Every accepted step keeps its local error estimate below
/// rtol*|y| + atol componentwise. Integration stops early when the guard
/// fires (singularity_detected), when the step size drops below
/// 1e-12*(b - a) before reaching b (step_underflow), or when the configured
/// event occurs (event_reached; the event point is the last sample).
template <typename Scalar, typename Rhs>
OdeTrajectory<Scalar> integrate_ode(Rhs rhs, const VectorX<Scalar>& y0,
                                    Scalar a, Scalar b,
                                    const OdeOptions<Scalar>& opts = {}) {
  if (!(a < b)) throw DomainError("integrate_ode: span must satisfy a < b");
  if (!(opts.rtol > 0) || !(opts.atol > 0))
    throw DomainError("integrate_ode: tolerances must be positive");
  if (!y0.allFinite()) throw DomainError("integrate_ode: non-finite y0");

  OdeTrajectory<Scalar> traj;
  VectorX<Scalar> k1 = rhs(a, y0);
  if (!k1.allFinite())
    throw NumericalError("integrate_ode: right-hand side is non-finite at y0");

  traj.params.push_back(a);
  traj.states.push_back(y0);
  traj.slopes.push_back(k1);
  if (opts.guard && opts.guard(a, y0)) {
    traj.termination = Termination::singularity_detected;
    return traj;
  }

  const Scalar span = b - a;
  const Scalar h_min = Scalar(1e-12) * span;
  const Scalar h_max = opts.max_step > 0 ? std::min(opts.max_step, span) : span;
  Scalar h = opts.initial_step;
  if (!(h > 0)) {
    const Scalar d0 = y0.cwiseAbs().maxCoeff();
    const Scalar d1 = k1.cwiseAbs().maxCoeff();
    h = (d0 < Scalar(1e-5) || d1 < Scalar(1e-5)) ? Scalar(1e-6) * span
                                                 : Scalar(0.01) * d0 / d1;
  }
  h = std::clamp(h, 10 * h_min, h_max);

  Scalar t = a;
  VectorX<Scalar> y = y0;
  VectorX<Scalar> y_new, k7, err;
  int events_seen = 0;
  std::size_t steps = 0;

  while (t < b) {
    if (++steps > opts.max_steps)
      throw NumericalError("integrate_ode: step budget exhausted at t=" +
                           std::to_string(static_cast<double>(t)));
    const Scalar remaining = b - t;
    if (h < h_min && remaining > h_min) {
      traj.termination = Termination::step_underflow;
      return traj;
    }
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }

    if (!detail::dp_step(rhs, t, y, k1, h, y_new, k7, err)) {
      ++traj.rejected_steps;
      h *= Scalar(0.25);
      continue;
    }
    const Scalar e = detail::error_norm(err, y, y_new, opts.rtol, opts.atol);
    if (e > 1) {
      ++traj.rejected_steps;
      h *= std::max(Scalar(0.2), Scalar(0.9) * std::pow(e, Scalar(-0.2)));
      continue;
    }

    const Scalar t_new = last ? b : t + h;

    if (opts.event) {
      const auto& ev = *opts.event;
      const Scalar g0 = ev.g(t, y);
      const Scalar g1 = ev.g(t_new, y_new);
      const bool up = g0 < 0 && g1 >= 0;
      const bool down = g0 > 0 && g1 <= 0;
      if ((up && ev.direction >= 0) || (down && ev.direction <= 0)) {
        if (++events_seen == ev.occurrence) {
          // Locate the crossing by bisection on the length of a single
          // step taken from (t, y).
          Scalar lo = 0, hi = t_new - t;
          VectorX<Scalar> y_ev = y_new, k_ev = k7, scratch_k, scratch_e;
          VectorX<Scalar> y_try;
          for (int it = 0; it < 200; ++it) {
            const Scalar mid = Scalar(0.5) * (lo + hi);
            if (!(mid > lo && mid < hi)) break;
            if (!detail::dp_step(rhs, t, y, k1, mid, y_try, scratch_k,
                                 scratch_e))
              break;
            const Scalar gm = ev.g(t + mid, y_try);
            const bool crossed = up ? gm >= 0 : gm <= 0;
            if (crossed) {
              hi = mid;
              y_ev = y_try;
              k_ev = scratch_k;
            } else {
              lo = mid;
            }
          }
          traj.params.push_back(t + hi);
          traj.states.push_back(y_ev);
          traj.slopes.push_back(k_ev);
          traj.termination = Termination::event_reached;
          return traj;
        }
      }
    }

    t = t_new;
    y = y_new;
    k1 = k7;
    traj.params.push_back(t);
    traj.states.push_back(y);
    traj.slopes.push_back(k1);

    if (opts.guard && opts.guard(t, y)) {
      traj.termination = Termination::singularity_detected;
      return traj;
    }

    const Scalar growth =
        e == 0 ? Scalar(5)
               : std::min(Scalar(5), std::max(Scalar(0.2),
                                              Scalar(0.9) *
                                                  std::pow(e, Scalar(-0.2))));
    h = std::min(h * growth, h_max);
  }
  traj.termination = Termination::reached_end;
  return traj;
}

/// Cubic Hermite interpolation of a trajectory at parameter s, which must lie
/// within [params.front(), params.back()].
template <typename Scalar>
VectorX<Scalar> interpolate(const OdeTrajectory<Scalar>& traj, Scalar s) {
  const auto& p = traj.params;
  if (s < p.front() || s > p.back())
    throw DomainError("interpolate: parameter outside trajectory range");
  auto it = std::upper_bound(p.begin(), p.end(), s);
  std::size_t i1 = static_cast<std::size_t>(it - p.begin());
  if (i1 >= p.size()) i1 = p.size() - 1;
  if (i1 == 0) return traj.states.front();
  const std::size_t i0 = i1 - 1;
  const Scalar h = p[i1] - p[i0];
  if (h <= 0) return traj.states[i1];
  const Scalar u = (s - p[i0]) / h;
  const Scalar u2 = u * u, u3 = u2 * u;
  const Scalar h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
  const Scalar h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
  return h00 * traj.states[i0] + h10 * h * traj.slopes[i0] +
         h01 * traj.states[i1] + h11 * h * traj.slopes[i1];
}

/// Resamples a trajectory at params.front() + k*step up to its end.
template <typename Scalar>
std::vector<std::pair<Scalar, VectorX<Scalar>>> sample_uniform(
    const OdeTrajectory<Scalar>& traj, Scalar step) {
  if (!(step > 0)) throw DomainError("sample_uniform: step must be positive");
  std::vector<std::pair<Scalar, VectorX<Scalar>>> out;
  const Scalar a = traj.params.front(), b = traj.params.back();
  for (std::size_t k = 0;; ++k) {
    const Scalar s = a + static_cast<Scalar>(k) * step;
    if (s > b) break;
    out.emplace_back(s, interpolate(traj, s));
  }
  return out;
}

}  // namespace nshyp
