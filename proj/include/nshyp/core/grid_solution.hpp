#pragma once

#include <vector>

#include "nshyp/core/profile.hpp"
#include "nshyp/core/system.hpp"
#include "nshyp/numkit/types.hpp"

namespace nshyp {

/// Classical solution V(t, x) sampled on a grid, with V_x and the
/// characteristic Jacobian q interpolated alongside.
struct GridSolution {
  double t = 0.0;
  std::vector<double> x;
  Matrix values;     // n x m
  Matrix gradients;  // n x m
  std::vector<double> jacobian;
};

/// Shoots characteristics from a refinement of the grid (`refine` feet per
/// grid cell), checks that their positions at time t are strictly increasing
/// and interpolates (x(t; x0), V(t; x0)) back onto x_grid with cubic Hermite
/// interpolation using the exact gradients u/q. Periodic profiles are shot
/// from a padded range so that every grid point is covered.
GridSolution grid_solution(const SystemSpec& sys, const InitialProfile& prof,
                           double t, const std::vector<double>& x_grid,
                           int refine = 4);

}  // namespace nshyp
