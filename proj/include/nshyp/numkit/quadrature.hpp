#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "nshyp/errors.hpp"

namespace nshyp {

namespace detail {

struct KronrodSegment {
  double lo, hi, value, error;
  bool operator<(const KronrodSegment& o) const { return error < o.error; }
};

// 7-point Gauss / 15-point Kronrod rule on [lo, hi].
template <typename G>
KronrodSegment gauss_kronrod15(G& g, double lo, double hi) {
  static constexpr std::array<double, 8> xk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
  const double fc = g(c);
  double kronrod = wk[7] * fc, gauss = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double f1 = g(c - r * xk[j]), f2 = g(c + r * xk[j]);
    kronrod += wk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += wg[j / 2] * (f1 + f2);
  }
  return {lo, hi, kronrod * r, std::abs((kronrod - gauss) * r)};
}

}  // namespace detail

/// Adaptive integral of f over [a, b] where f may carry inverse-square-root
/// singularities at either endpoint. The substitution
/// x = a + (b - a)(1 - cos θ)/2 maps [0, π] onto [a, b] and its Jacobian
/// (b - a) sin θ / 2 cancels both endpoint singularities; the resulting
/// smooth integrand is handled by globally adaptive Gauss-Kronrod bisection.
/// Nodes that round onto an endpoint contribute nothing.
template <typename F>
double quad_sqrt_singular(F&& f, double a, double b, double tol,
                          int max_subdivisions = 2000) {
  if (!(a < b)) throw DomainError("quad_sqrt_singular: requires a < b");
  if (!(tol > 0)) throw DomainError("quad_sqrt_singular: tol must be positive");

  const double half = 0.5 * (b - a);
  auto g = [&](double theta) {
    const double x = a + half * (1.0 - std::cos(theta));
    if (!(x > a && x < b)) return 0.0;
    const double v = f(x) * half * std::sin(theta);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "quad_sqrt_singular: integrand non-finite at x=" << x;
      throw NumericalError(msg.str());
    }
    return v;
  };

  std::priority_queue<detail::KronrodSegment> heap;
  auto first = detail::gauss_kronrod15(g, 0.0, std::numbers::pi);
  double total = first.value, total_err = first.error;
  heap.push(first);
  constexpr double abs_floor = 1e-300;

  for (int it = 0; it < max_subdivisions; ++it) {
    if (total_err <= std::max(tol * std::abs(total), abs_floor))
      return total;
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const auto left = detail::gauss_kronrod15(g, worst.lo, mid);
    const auto right = detail::gauss_kronrod15(g, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Recompute sums to drop accumulated round-off before the final check.
  total = 0.0;
  total_err = 0.0;
  for (auto h = heap; !h.empty(); h.pop()) {
    total += h.top().value;
    total_err += h.top().error;
  }
  if (total_err <= std::max(tol * std::abs(total), abs_floor)) return total;
  std::ostringstream msg;
  msg.precision(17);
  msg << "quad_sqrt_singular: no convergence after " << max_subdivisions
      << " subdivisions; estimate " << total << " +/- " << total_err;
  throw NumericalError(msg.str());
}

}  // namespace nshyp
