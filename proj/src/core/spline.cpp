#include "nshyp/numkit/spline.hpp"

#include <algorithm>
#include <utility>

#include <Eigen/Sparse>

#include "nshyp/errors.hpp"

namespace nshyp {

CubicSpline::CubicSpline(std::vector<double> x, Matrix Y, bool periodic)
    : x_(std::move(x)), Y_(std::move(Y)) {
  const std::size_t m = x_.size();
  if (m < 4) throw DomainError("CubicSpline: need at least 4 samples");
  if (static_cast<std::size_t>(Y_.cols()) != m)
    throw DomainError("CubicSpline: sample count mismatch");
  for (std::size_t i = 1; i < m; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw DomainError("CubicSpline: abscissae must be strictly increasing");
  if (!Y_.allFinite()) throw DomainError("CubicSpline: non-finite samples");

  const Eigen::Index d = Y_.rows();
  std::vector<double> h(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) h[i] = x_[i + 1] - x_[i];
  auto slope = [&](std::size_t i) -> Vector {
    return (Y_.col(static_cast<Eigen::Index>(i + 1)) -
            Y_.col(static_cast<Eigen::Index>(i))) /
           h[i];
  };

  M2_ = Matrix::Zero(d, static_cast<Eigen::Index>(m));
  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> triplets;

  if (periodic) {
    const std::size_t k = m - 1;  // unknowns M_0..M_{m-2}
    Matrix rhs(static_cast<Eigen::Index>(k), d);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t prev = (i + k - 1) % k;
      const std::size_t next = (i + 1) % k;
      const double hp = h[prev], hn = h[i];
      triplets.emplace_back(i, prev, hp);
      triplets.emplace_back(i, i, 2.0 * (hp + hn));
      triplets.emplace_back(i, next, hn);
      rhs.row(static_cast<Eigen::Index>(i)) =
          6.0 * (slope(i) - slope(prev)).transpose();
    }
    Eigen::SparseMatrix<double> A(static_cast<Eigen::Index>(k),
                                  static_cast<Eigen::Index>(k));
    A.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
    if (lu.info() != Eigen::Success)
      throw NumericalError("CubicSpline: periodic system is singular");
    const Matrix sol = lu.solve(rhs);
    M2_.leftCols(static_cast<Eigen::Index>(k)) = sol.transpose();
    M2_.col(static_cast<Eigen::Index>(k)) = M2_.col(0);
  } else {
    const std::size_t k = m - 2;  // interior unknowns
    Matrix rhs(static_cast<Eigen::Index>(k), d);
    for (std::size_t r = 0; r < k; ++r) {
      const std::size_t i = r + 1;
      if (r > 0) triplets.emplace_back(r, r - 1, h[i - 1]);
      triplets.emplace_back(r, r, 2.0 * (h[i - 1] + h[i]));
      if (r + 1 < k) triplets.emplace_back(r, r + 1, h[i]);
      rhs.row(static_cast<Eigen::Index>(r)) =
          6.0 * (slope(i) - slope(i - 1)).transpose();
    }
    Eigen::SparseMatrix<double> A(static_cast<Eigen::Index>(k),
                                  static_cast<Eigen::Index>(k));
    A.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
    if (lu.info() != Eigen::Success)
      throw NumericalError("CubicSpline: system is singular");
    const Matrix sol = lu.solve(rhs);
    M2_.middleCols(1, static_cast<Eigen::Index>(k)) = sol.transpose();
  }
}

std::size_t CubicSpline::locate(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) i = 1;
  if (i >= x_.size()) i = x_.size() - 1;
  return i - 1;
}

Vector CubicSpline::value(double x) const {
  const std::size_t i = locate(x);
  const auto c0 = static_cast<Eigen::Index>(i), c1 = c0 + 1;
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
  return a * Y_.col(c0) + b * Y_.col(c1) +
         ((a * a * a - a) * M2_.col(c0) + (b * b * b - b) * M2_.col(c1)) *
             (h * h / 6.0);
}

Vector CubicSpline::derivative(double x) const {
  const std::size_t i = locate(x);
  const auto c0 = static_cast<Eigen::Index>(i), c1 = c0 + 1;
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
  return (Y_.col(c1) - Y_.col(c0)) / h +
         (-(3 * a * a - 1) * M2_.col(c0) + (3 * b * b - 1) * M2_.col(c1)) *
             (h / 6.0);
}

}  // namespace nshyp
