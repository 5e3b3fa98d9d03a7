#pragma once

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "nshyp/errors.hpp"
#include "nshyp/numkit/types.hpp"

namespace nshyp {

/// Matrix exponential exp(M t) by scaling and squaring around a [13/13] Padé
/// approximant (Higham's 2005 parameter choice). Intended for the small dense
/// matrices of this library; the error stays at a few ulps times the number
/// of squarings for ||M t||_1 up to a few hundred.
template <typename Derived>
MatrixX<typename Derived::Scalar> expm(const Eigen::MatrixBase<Derived>& M,
                                       typename Derived::Scalar t) {
  using Scalar = typename Derived::Scalar;
  using Mat = MatrixX<Scalar>;
  if (M.rows() != M.cols()) throw DomainError("expm: matrix is not square");
  if (!std::isfinite(static_cast<double>(t)))
    throw DomainError("expm: non-finite time");
  if (!M.allFinite()) throw DomainError("expm: matrix has non-finite entries");

  const Eigen::Index n = M.rows();
  Mat A = M * t;
  const Mat I = Mat::Identity(n, n);
  if (n == 0) return A;

  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double norm1 =
      static_cast<double>(A.cwiseAbs().colwise().sum().maxCoeff());
  int squarings = 0;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    A /= std::ldexp(Scalar(1), squarings);
  }

  const Mat A2 = A * A;
  const Mat A4 = A2 * A2;
  const Mat A6 = A4 * A2;
  const Mat U =
      A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 +
           b[5] * A4 + b[3] * A2 + b[1] * I);
  const Mat V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 +
                b[4] * A4 + b[2] * A2 + b[0] * I;
  Mat R = (V - U).partialPivLu().solve(V + U);
  for (int k = 0; k < squarings; ++k) R = (R * R).eval();
  return R;
}

}  // namespace nshyp
