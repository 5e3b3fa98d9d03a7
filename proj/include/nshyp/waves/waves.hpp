#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "nshyp/core/system.hpp"
#include "nshyp/numkit/ode.hpp"
#include "nshyp/numkit/types.hpp"

namespace nshyp {

using Trajectory = OdeTrajectory<double>;
using IntegrationOptions = OdeOptions<double>;
using VectorField = std::function<Vector(double, const Vector&)>;

enum class EquilibriumKind { center, saddle, focus, node, degenerate };

const char* to_string(EquilibriumKind k);

struct EquilibriumClass {
  EquilibriumKind kind = EquilibriumKind::degenerate;
  std::vector<std::complex<double>> eigenvalues;

  // Small perturbations are periodic exactly when the spectrum is purely
  // imaginary.
  bool periodic() const { return kind == EquilibriumKind::center; }
};

/// Classifies a linearisation from its eigenvalues. Real and imaginary
/// parts below rel_tol * max|lambda| are treated as zero.
EquilibriumClass classify_eigenvalues(std::vector<std::complex<double>> eigs,
                                      double rel_tol = 1e-10);

/// Roots of a real polynomial, coefficients in descending order. Leading
/// zero coefficients are dropped.
std::vector<std::complex<double>> polynomial_roots(std::vector<double> coeffs);

/// Simple wave V_i = V_i(V_1): integrates
///   dV_i/dV_1 = (Q_i . V) / (Q_1 . V),  i = 2..n,
/// from the seed across v1_span. The seed's V_1 must be one end of the span;
/// params of the result are V_1 values in increasing order and states hold
/// (V_2, ..., V_n). Terminates with singularity_detected when Q_1 . V
/// approaches zero.
Trajectory simple_wave_curve(const SystemSpec& sys, Interval v1_span,
                             const Vector& seed,
                             IntegrationOptions opts = {});

/// Inviscid traveling wave V(xi), xi = x - w t: dV/dxi = Q V / (V_1 - w).
/// Terminates with singularity_detected when |V_1 - w| < 1e-6 max(1, |w|),
/// or when step control underflows within 1e-3 max(1, |w|) of that line.
Trajectory tw_inviscid(const SystemSpec& sys, double w, const Vector& start,
                       Interval xi_span, IntegrationOptions opts = {});

/// Viscous cold-plasma traveling wave as a first-order system in
/// (V, V', V''):  nu V''' = (V - w) V'' + (V')^2 + V / (V - w).
/// Requires nu > 0; the inviscid case is tw_inviscid. Stops with
/// singularity_detected near V = w under the same rule as tw_inviscid.
Trajectory tw_viscous_coldplasma(double nu, double w, double v0, double dv0,
                                 double ddv0, Interval xi_span,
                                 IntegrationOptions opts = {});

enum class LinearizedModel { cold_plasma_viscous, stratified };

/// Linearisation of the traveling-wave equation about the zero state:
///   cold_plasma_viscous:  nu w l^3 + w^2 l^2 + 1 = 0
///   stratified:           nu kappa l^4 + (nu + kappa) w l^3 + w^2 l^2 + 1 = 0
/// (kappa is ignored for the cold-plasma model).
EquilibriumClass linearized_tw_roots(LinearizedModel model, double nu,
                                     double kappa, double w);

/// First return of an autonomous orbit to the section through its start:
/// the event g = y_k - y0_k crossed in the direction of the initial motion.
struct OrbitReturn {
  bool closed = false;
  double period = 0.0;
  Vector state;                 // state at the return (or where it stopped)
  double closure_error = 0.0;   // max-norm distance to the start
  Trajectory trajectory;
};

OrbitReturn first_return(const VectorField& rhs, const Vector& y0,
                         int section_component, double max_length,
                         IntegrationOptions opts = {});

}  // namespace nshyp
