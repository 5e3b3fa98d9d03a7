#pragma once

#include <utility>

#include "nshyp/waves/waves.hpp"

namespace nshyp {

/// Traveling waves xi = x - w t of the blood-flow model reduce to the planar
/// system
///   E' = -S0 V / (V - w),   V' = E (V - w)^2 / ((V - w)^3 + mu w S0)
/// with first integral
///   Psi = E^2 + S0 V^2 - w mu S0^2 (2V - w) / (V - w)^2.
struct BloodFlowWave {
  double mu = 1.0;
  double S0 = 1.0;
  double w = 2.0;
};

struct PhasePoint {
  double E = 0.0;
  double V = 0.0;
};

PhasePoint bloodflow_rhs(const BloodFlowWave& p, PhasePoint s);

double bloodflow_psi(const BloodFlowWave& p, PhasePoint s);

/// Psi restricted to E = 0.
double bloodflow_potential(const BloodFlowWave& p, double V);

/// Linearisation at the origin: center for w^2 > mu S0, saddle for
/// w^2 < mu S0, degenerate at equality.
EquilibriumClass bloodflow_classify(const BloodFlowWave& p);

/// Upper end w - (mu S0 w)^(1/3) of the band of V(0) (with E(0) = 0) that
/// yields periodic waves; also where (V - w)^3 + mu w S0 changes sign.
double bloodflow_band(const BloodFlowWave& p);

/// Turning points V_- < 0 < V_+ of the orbit on level Psi0: the roots of
/// bloodflow_potential(V) = Psi0 closest to zero, found by scanning outward
/// from 0 inside (-w, w) with step (w - |V|)/256 and bisecting.
std::pair<double, double> bloodflow_turning_points(const BloodFlowWave& p,
                                                   double psi0);

/// Period in xi of the closed orbit through p0,
///   L = 2 * int_{V_-}^{V_+} |(V-w)^3 + mu w S0| / ((V-w)^2 E(V)) dV,
///   E(V) = sqrt(Psi0 - bloodflow_potential(V)),
/// by quadrature that absorbs the inverse-square-root endpoint behaviour.
double bloodflow_period(const BloodFlowWave& p, PhasePoint p0,
                        double tol = 1e-10);

/// Period of the same orbit from direct integration of the phase-plane
/// system up to its first return to the section V = V(0) (or E = E(0) when
/// the start is a turning point).
OrbitReturn bloodflow_orbit(const BloodFlowWave& p, PhasePoint p0,
                            double rtol = 1e-11);

/// Speed w for which the orbit with E(0) = 0, V(0) = fraction * band(w) has
/// period L_target; bisection over w_bracket, which must lie in the center
/// regime and bracket a sign change.
double bloodflow_speed_for_perimeter(double mu, double S0, double L_target,
                                     double fraction, Interval w_bracket);

}  // namespace nshyp
