#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "nshyp/errors.hpp"
#include "nshyp/numkit/types.hpp"

namespace nshyp {

enum class RootKind {
  crossing,  // f changes sign
  touch,     // |f| <= tol without a sign change (tangential zero)
};

inline const char* to_string(RootKind k) {
  return k == RootKind::crossing ? "crossing" : "touch";
}

struct Root {
  double t = 0.0;
  RootKind kind = RootKind::crossing;
};

namespace detail {

template <typename F>
double checked_eval(F& f, double t) {
  const double v = f(t);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "find_first_root: function is non-finite at t=" << t;
    throw NumericalError(msg.str());
  }
  return v;
}

// First sign change of f in [lo, hi] given f(lo)*f(hi) < 0, to width tol.
template <typename F>
double bisect(F& f, double lo, double hi, double f_lo, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double fm = checked_eval(f, mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section minimisation of s*f over [lo, hi], where s is the common
// sign of the bracketing samples. Returns the minimiser.
template <typename F>
double golden_min(F& f, double lo, double hi, double sign, double tol) {
  constexpr double r = 0.6180339887498949;
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double f1 = sign * checked_eval(f, x1), f2 = sign * checked_eval(f, x2);
  while (hi - lo > tol) {
    if (f1 < 0 || f2 < 0) return f1 < f2 ? x1 : x2;
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = sign * checked_eval(f, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = sign * checked_eval(f, x2);
    }
    if (!(x1 > lo && x2 < hi && x1 < x2)) break;
  }
  return f1 < f2 ? x1 : x2;
}

// Parabola through (s0, a), (0, b), (s2, c) with s0 < 0 < s2 and b < a, c.
// The fitted minimum is compared against the second difference, which
// bounds the fit error for functions resolved by the scan step.
inline bool dip_may_reach_zero(double s0, double a, double b, double s2,
                               double c, double tol) {
  const double den = s0 * s2 * (s0 - s2);
  const double A = ((a - b) * s2 - (c - b) * s0) / den;
  const double B = ((c - b) * s0 * s0 - (a - b) * s2 * s2) / den;
  if (!(A > 0)) return true;
  const double p_min = b - B * B / (4 * A);
  const double curvature = (a - b) + (c - b);
  return p_min < std::max(tol, curvature);
}

}  // namespace detail

/// Scans f on span at lo + k*scan_step and returns the smallest root:
/// the first sign change (refined by bisection to width tol), or a point
/// where |f| <= tol without a sign change (a tangential zero, reported as
/// RootKind::touch). Local minima of |f| between samples are refined by
/// golden-section search so that narrow dips through zero are not missed.
/// f(lo) itself counts as a root only when |f(lo)| <= tol.
template <typename F>
std::optional<Root> find_first_root(F&& f, Interval span, double scan_step,
                                    double tol) {
  if (!(span.lo < span.hi))
    throw DomainError("find_first_root: empty span");
  if (!(scan_step > 0) || !(tol > 0))
    throw DomainError("find_first_root: scan_step and tol must be positive");

  const double lo = span.lo;
  double t_prev = lo, f_prev = detail::checked_eval(f, lo);
  if (std::abs(f_prev) <= tol) return Root{lo, RootKind::touch};

  // Samples (t_pp, f_pp), (t_prev, f_prev), (t, v) for local-min detection.
  double t_pp = lo, f_pp = f_prev;
  bool have_pp = false;

  // Handles a |f| <= tol sample at index k by looking one sample ahead.
  auto classify_small = [&](double t_k, double t_before,
                            double f_before) -> Root {
    const double step = std::min(scan_step, span.hi - t_k);
    if (step > 0) {
      const double t_next = t_k + step;
      const double f_next = detail::checked_eval(f, t_next);
      if ((f_next < 0) != (f_before < 0) && std::abs(f_next) > tol) {
        return Root{detail::bisect(f, t_before, t_next, f_before, tol),
                    RootKind::crossing};
      }
    }
    return Root{t_k, RootKind::touch};
  };

  for (long k = 1;; ++k) {
    double t = lo + static_cast<double>(k) * scan_step;
    if (t > span.hi) t = span.hi;
    const double v = detail::checked_eval(f, t);

    if ((v < 0) != (f_prev < 0) && std::abs(v) > tol) {
      return Root{detail::bisect(f, t_prev, t, f_prev, tol),
                  RootKind::crossing};
    }
    if (std::abs(v) <= tol) return classify_small(t, t_prev, f_prev);

    // Same-sign samples with an interior minimum of |f|: look between.
    if (have_pp && std::abs(f_prev) < std::abs(f_pp) &&
        std::abs(f_prev) < std::abs(v) &&
        detail::dip_may_reach_zero(t_pp - t_prev, std::abs(f_pp),
                                   std::abs(f_prev), t - t_prev, std::abs(v),
                                   tol)) {
      const double sign = v < 0 ? -1.0 : 1.0;
      const double t_min = detail::golden_min(f, t_pp, t, sign, tol);
      const double f_min = detail::checked_eval(f, t_min);
      if ((f_min < 0) != (v < 0) && std::abs(f_min) > tol) {
        return Root{detail::bisect(f, t_pp, t_min, f_pp, tol),
                    RootKind::crossing};
      }
      if (std::abs(f_min) <= tol) return Root{t_min, RootKind::touch};
    }

    if (t >= span.hi) break;
    t_pp = t_prev;
    f_pp = f_prev;
    have_pp = true;
    t_prev = t;
    f_prev = v;
  }
  return std::nullopt;
}

}  // namespace nshyp
