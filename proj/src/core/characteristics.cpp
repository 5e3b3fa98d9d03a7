#include "nshyp/core/characteristics.hpp"

#include <sstream>

#include "nshyp/errors.hpp"
#include "nshyp/numkit/expm.hpp"

namespace nshyp {

Matrix augmented_matrix(const SystemSpec& sys) {
  const int n = sys.dim();
  Matrix M = Matrix::Zero(n + 1, n + 1);
  M(0, 1) = 1.0;
  M.bottomRightCorner(n, n) = sys.Q();
  return M;
}

CharacteristicFlow::CharacteristicFlow(const SystemSpec& sys, double t)
    : n_(sys.dim()), t_(t), E_(expm(augmented_matrix(sys), t)) {}

CharacteristicState CharacteristicFlow::shoot(const InitialProfile& prof,
                                              double x0) const {
  if (!prof.periodic() && !prof.domain().contains(x0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "characteristic: x0=" << x0 << " outside the profile domain";
    throw DomainError(msg.str());
  }
  return shoot(x0, prof.value(x0), prof.derivative(x0));
}

CharacteristicState CharacteristicFlow::shoot(double x0, const Vector& v0,
                                              const Vector& dv0) const {
  if (v0.size() != n_ || dv0.size() != n_)
    throw DomainError("characteristic: initial data has the wrong dimension");
  Vector pos(n_ + 1), jac(n_ + 1);
  pos << 0.0, v0;
  jac << 1.0, dv0;
  const Vector moved = E_ * pos;
  const Vector lin = E_ * jac;
  CharacteristicState s;
  s.t = t_;
  s.x = x0 + moved[0];
  s.V = moved.tail(n_);
  s.q = lin[0];
  s.u = lin.tail(n_);
  return s;
}

CharacteristicState characteristic_solve(const SystemSpec& sys,
                                         const InitialProfile& prof,
                                         double x0, double t) {
  if (prof.dim() != sys.dim())
    throw DomainError("characteristic_solve: profile/system dimension mismatch");
  return CharacteristicFlow(sys, t).shoot(prof, x0);
}

double conserved_radius(const CharacteristicState& state) {
  if (state.V.size() != 2)
    throw DomainError("conserved_radius: requires a two-component state");
  return state.V.squaredNorm();
}

}  // namespace nshyp
