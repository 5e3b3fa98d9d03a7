#pragma once

#include <vector>

#include "nshyp/numkit/types.hpp"

namespace nshyp {

/// Vector-valued cubic interpolating spline through (x_i, Y.col(i)).
/// Natural end conditions, or periodic ones when the first and last samples
/// describe the same point of a periodic function.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, Matrix Y, bool periodic);

  Vector value(double x) const;
  Vector derivative(double x) const;

  int dim() const { return static_cast<int>(Y_.rows()); }
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  std::size_t locate(double x) const;

  std::vector<double> x_;
  Matrix Y_;    // dim x m samples
  Matrix M2_;   // dim x m second derivatives
};

}  // namespace nshyp
