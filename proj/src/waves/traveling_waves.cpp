#include <algorithm>
#include <cmath>

#include "nshyp/errors.hpp"
#include "nshyp/waves/waves.hpp"

namespace nshyp {

namespace {

// Width of the band around the singular line V_1 = w where integration
// stops. Closer in, step control underflows before the guard can fire.
bool near_wave_speed(double v1, double w) {
  return std::abs(v1 - w) < 1e-6 * std::max(1.0, std::abs(w));
}

// Step control gives out before the guard band when the slope grows like
// 1 / (V_1 - w); an underflow this close to the line is the same singularity.
void relabel_underflow(Trajectory& traj, double w) {
  if (traj.termination == Termination::step_underflow &&
      std::abs(traj.final_state()[0] - w) < 1e-3 * std::max(1.0, std::abs(w)))
    traj.termination = Termination::singularity_detected;
}

}  // namespace

Trajectory tw_inviscid(const SystemSpec& sys, double w, const Vector& start,
                       Interval xi_span, IntegrationOptions opts) {
  if (start.size() != sys.dim())
    throw DomainError("tw_inviscid: start has the wrong dimension");
  if (!std::isfinite(w)) throw DomainError("tw_inviscid: non-finite w");
  if (near_wave_speed(start[0], w))
    throw DomainError("tw_inviscid: V1 equals the wave speed at the start");
  const Matrix Q = sys.Q();
  auto rhs = [Q, w](double, const Vector& V) -> Vector {
    return Q * V / (V[0] - w);
  };
  opts.guard = [w](double, const Vector& V) { return near_wave_speed(V[0], w); };
  Trajectory traj = integrate_ode<double>(rhs, start, xi_span.lo, xi_span.hi, opts);
  relabel_underflow(traj, w);
  return traj;
}

Trajectory tw_viscous_coldplasma(double nu, double w, double v0, double dv0,
                                 double ddv0, Interval xi_span,
                                 IntegrationOptions opts) {
  if (!(nu > 0))
    throw DomainError(
        "tw_viscous_coldplasma: nu must be positive (nu = 0 is the inviscid "
        "traveling wave)");
  if (near_wave_speed(v0, w))
    throw DomainError("tw_viscous_coldplasma: V equals the wave speed at start");
  auto rhs = [nu, w](double, const Vector& y) -> Vector {
    const double shift = y[0] - w;
    Vector d(3);
    d << y[1], y[2], (shift * y[2] + y[1] * y[1] + y[0] / shift) / nu;
    return d;
  };
  opts.guard = [w](double, const Vector& y) { return near_wave_speed(y[0], w); };
  Vector start(3);
  start << v0, dv0, ddv0;
  Trajectory traj = integrate_ode<double>(rhs, start, xi_span.lo, xi_span.hi, opts);
  relabel_underflow(traj, w);
  return traj;
}

OrbitReturn first_return(const VectorField& rhs, const Vector& y0,
                         int section_component, double max_length,
                         IntegrationOptions opts) {
  if (section_component < 0 || section_component >= y0.size())
    throw DomainError("first_return: section component out of range");
  const Vector d0 = rhs(0.0, y0);
  const double speed = d0[section_component];
  if (speed == 0.0)
    throw DomainError("first_return: orbit is tangent to the section at start");
  const double level = y0[section_component];
  OdeEvent<double> ev;
  ev.g = [section_component, level](double, const Vector& y) {
    return y[section_component] - level;
  };
  ev.direction = speed > 0 ? 1 : -1;
  ev.occurrence = 1;
  opts.event = ev;

  OrbitReturn out;
  out.trajectory = integrate_ode<double>(rhs, y0, 0.0, max_length, opts);
  out.state = out.trajectory.final_state();
  out.closed = out.trajectory.termination == Termination::event_reached;
  out.period = out.trajectory.end_param();
  out.closure_error = (out.state - y0).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace nshyp
