#include "nshyp/waves/bloodflow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "nshyp/errors.hpp"
#include "nshyp/numkit/quadrature.hpp"

namespace nshyp {

namespace {

void require_params(const BloodFlowWave& p) {
  if (!(p.mu > 0) || !(p.S0 > 0))
    throw DomainError("bloodflow: mu and S0 must be positive");
  if (p.w == 0.0 || !std::isfinite(p.w))
    throw DomainError("bloodflow: wave speed must be nonzero");
}

double cubic_term(const BloodFlowWave& p, double V) {
  const double s = V - p.w;
  return s * s * s + p.mu * p.w * p.S0;
}

// potential(V) - potential(0) = S0 V^2 (1 - mu S0 / (V - w)^2), free of the
// cancellation that the difference of two O(1) values suffers for small V.
double reduced(const BloodFlowWave& p, double V) {
  const double s = V - p.w;
  return p.S0 * V * V * (1.0 - p.mu * p.S0 / (s * s));
}

// Turning points of the level reduced(V) = level > 0, scanning outward from 0.
std::pair<double, double> turning_points(const BloodFlowWave& p, double level) {
  auto gap = [&](double V) { return reduced(p, V) - level; };
  auto search = [&](double dir) -> double {
    double v_prev = 0.0, g_prev = gap(0.0);
    for (int k = 0; k < 20000; ++k) {
      const double step = (p.w - std::abs(v_prev)) / 256.0;
      if (step < 1e-14 * p.w) break;
      const double v = v_prev + dir * step;
      const double g = gap(v);
      if (g >= 0 && g_prev < 0) {
        double lo = v_prev, hi = v;  // gap(lo) < 0 <= gap(hi)
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (mid == lo || mid == hi) break;
          (gap(mid) < 0 ? lo : hi) = mid;
        }
        return lo;  // keep level - reduced >= 0 at the turning point
      }
      v_prev = v;
      g_prev = g;
    }
    std::ostringstream msg;
    msg.precision(17);
    msg << "bloodflow_turning_points: no turning point on the "
        << (dir > 0 ? "positive" : "negative")
        << " side inside (-w, w); the orbit at level " << level
        << " above the equilibrium is not closed";
    throw NumericalError(msg.str());
  };
  return {search(-1.0), search(1.0)};
}

}  // namespace

PhasePoint bloodflow_rhs(const BloodFlowWave& p, PhasePoint s) {
  const double shift = s.V - p.w;
  const double cubic = cubic_term(p, s.V);
  if (std::abs(shift) < 1e-12 || std::abs(cubic) < 1e-12)
    throw DomainError("bloodflow_rhs: state is on a singular line");
  return {-p.S0 * s.V / shift, s.E * shift * shift / cubic};
}

double bloodflow_potential(const BloodFlowWave& p, double V) {
  const double shift = V - p.w;
  if (shift == 0.0) throw DomainError("bloodflow_psi: V equals w");
  return p.S0 * V * V -
         p.w * p.mu * p.S0 * p.S0 * (2 * V - p.w) / (shift * shift);
}

double bloodflow_psi(const BloodFlowWave& p, PhasePoint s) {
  return s.E * s.E + bloodflow_potential(p, s.V);
}

EquilibriumClass bloodflow_classify(const BloodFlowWave& p) {
  require_params(p);
  const double w2 = p.w * p.w, muS0 = p.mu * p.S0;
  if (std::abs(w2 - muS0) <= 1e-12 * std::max(w2, muS0)) {
    EquilibriumClass c;
    c.kind = EquilibriumKind::degenerate;
    return c;
  }
  Eigen::Matrix2d J;
  J << 0.0, p.S0 / p.w,  //
      p.w / (muS0 - w2), 0.0;
  Eigen::EigenSolver<Eigen::Matrix2d> solver(J, false);
  std::vector<std::complex<double>> eigs = {solver.eigenvalues()[0],
                                            solver.eigenvalues()[1]};
  return classify_eigenvalues(eigs);
}

double bloodflow_band(const BloodFlowWave& p) {
  require_params(p);
  if (!(p.w > 0)) throw DomainError("bloodflow_band: requires w > 0");
  return p.w - std::cbrt(p.mu * p.S0 * p.w);
}

std::pair<double, double> bloodflow_turning_points(const BloodFlowWave& p,
                                                   double psi0) {
  require_params(p);
  if (!(p.w > 0)) throw DomainError("bloodflow_turning_points: requires w > 0");
  const double base = bloodflow_potential(p, 0.0);
  const double level = psi0 - base;
  if (level < -1e-13 * std::max(1.0, std::abs(base)))
    throw DomainError("bloodflow_turning_points: level below the equilibrium");
  if (level <= 1e-15 * std::max(1.0, std::abs(base))) return {0.0, 0.0};
  return turning_points(p, level);
}

double bloodflow_period(const BloodFlowWave& p, PhasePoint p0, double tol) {
  const auto kind = bloodflow_classify(p).kind;
  if (kind != EquilibriumKind::center)
    throw DomainError("bloodflow_period: origin is not a center (w^2 <= mu S0)");
  const double band = bloodflow_band(p);
  if (!(p0.V < band)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "bloodflow_period: V(0)=" << p0.V
        << " is outside the periodic band V < w - (mu S0 w)^(1/3) = " << band;
    throw DomainError(msg.str());
  }
  const double psi0 = bloodflow_psi(p, p0);
  if (!(psi0 < bloodflow_potential(p, band)))
    throw DomainError("bloodflow_period: level set through p0 is not closed");

  const double level = p0.E * p0.E + reduced(p, p0.V);
  if (!(level > 0))
    throw DomainError("bloodflow_period: degenerate orbit at the equilibrium");
  const auto [v_minus, v_plus] = turning_points(p, level);

  auto integrand = [&](double V) {
    const double e2 = level - reduced(p, V);
    if (!(e2 > 0)) return 0.0;  // only at rounding distance from an end
    const double shift = V - p.w;
    return std::abs(cubic_term(p, V)) / (shift * shift * std::sqrt(e2));
  };
  return 2.0 * quad_sqrt_singular(integrand, v_minus, v_plus, tol);
}

OrbitReturn bloodflow_orbit(const BloodFlowWave& p, PhasePoint p0,
                            double rtol) {
  require_params(p);
  VectorField rhs = [p](double, const Vector& y) -> Vector {
    const PhasePoint d = bloodflow_rhs(p, {y[0], y[1]});
    Vector out(2);
    out << d.E, d.V;
    return out;
  };
  Vector y0(2);
  y0 << p0.E, p0.V;
  const Vector d0 = rhs(0.0, y0);
  // Use the component that is moving at the start as the section.
  const int section = std::abs(d0[1]) >= std::abs(d0[0]) ? 1 : 0;
  IntegrationOptions opts;
  opts.rtol = rtol;
  opts.atol = rtol * 1e-2;
  double bound = 1e3;
  const auto cls = bloodflow_classify(p);
  if (cls.kind == EquilibriumKind::center)
    bound = std::max(bound, 100.0 * 2.0 * std::numbers::pi /
                                std::abs(cls.eigenvalues.front().imag()));
  return first_return(rhs, y0, section, bound, opts);
}

double bloodflow_speed_for_perimeter(double mu, double S0, double L_target,
                                     double fraction, Interval w_bracket) {
  if (!(L_target > 0))
    throw DomainError("bloodflow_speed_for_perimeter: L_target must be > 0");
  if (!(fraction > 0 && fraction < 1))
    throw DomainError("bloodflow_speed_for_perimeter: fraction must be in (0,1)");
  if (!(w_bracket.lo < w_bracket.hi))
    throw DomainError("bloodflow_speed_for_perimeter: empty bracket");
  auto residual = [&](double w) {
    const BloodFlowWave p{mu, S0, w};
    return bloodflow_period(p, {0.0, fraction * bloodflow_band(p)}) - L_target;
  };
  double lo = w_bracket.lo, hi = w_bracket.hi;
  double f_lo = residual(lo);
  const double f_hi = residual(hi);
  if ((f_lo < 0) == (f_hi < 0))
    throw DomainError(
        "bloodflow_speed_for_perimeter: no sign change over the bracket");
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = residual(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace nshyp
