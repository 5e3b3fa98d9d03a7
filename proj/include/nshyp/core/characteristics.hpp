#pragma once

#include <vector>

#include "nshyp/core/profile.hpp"
#include "nshyp/core/system.hpp"
#include "nshyp/numkit/types.hpp"

namespace nshyp {

/// (n+1)x(n+1) coefficient matrix of the linearised derivative system:
/// first row (0, 1, 0, ..., 0), first column otherwise zero, Q in the
/// lower-right block. Acting on (q, u) it gives q' = u_1, u' = Q u; acting on
/// (X, V) it gives X' = V_1, V' = Q V, so the same propagator also carries
/// the characteristic's displacement.
Matrix augmented_matrix(const SystemSpec& sys);

/// Solution data carried along the characteristic issued from x0.
struct CharacteristicState {
  double t = 0.0;
  double x = 0.0;  // x(t)
  Vector V;        // V(t, x(t))
  double q = 1.0;  // dx(t)/dx0
  Vector u;        // q * V_x(t, x(t))

  /// V_x along the characteristic; meaningful while q > 0.
  Vector gradient() const { return u / q; }
};

/// Propagator exp(M t) of the augmented matrix for a fixed t, reusable for
/// any number of starting points.
class CharacteristicFlow {
 public:
  CharacteristicFlow(const SystemSpec& sys, double t);

  CharacteristicState shoot(const InitialProfile& prof, double x0) const;
  CharacteristicState shoot(double x0, const Vector& v0,
                            const Vector& dv0) const;

  const Matrix& propagator() const { return E_; }

 private:
  int n_;
  double t_;
  Matrix E_;
};

CharacteristicState characteristic_solve(const SystemSpec& sys,
                                         const InitialProfile& prof,
                                         double x0, double t);

/// V^2 + U^2 for two-component states.
double conserved_radius(const CharacteristicState& state);

}  // namespace nshyp
