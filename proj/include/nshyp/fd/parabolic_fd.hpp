#pragma once

#include <vector>

#include "nshyp/core/profile.hpp"
#include "nshyp/core/system.hpp"
#include "nshyp/numkit/types.hpp"

namespace nshyp {

/// Fields on the uniform periodic grid x_j = lo + j dx, j = 0..m-1.
struct GridState {
  std::vector<double> x;
  Matrix fields;  // n x m
  double t = 0.0;
};

/// Largest stable step of the explicit scheme,
///   min(dx / max|V_1|, dx^2 / (2 max_i sum_j |B_ij|), 1 / (2 ||Q||_inf)),
/// where a term whose coefficient vanishes is left out. Returns +infinity
/// when every term is absent.
double cfl_limits(const SystemSpec& sys, const GridState& state, double dx);

struct FdSettings {
  double dx = 0.01;
  double dt = 0.005;
  double safety = 0.9;        // in (0, 1]
  int max_reductions = 30;    // halvings of dt allowed per step
};

/// Explicit scheme for V_t + V_1 V_x = Q V + B V_xx on the profile's
/// periodic domain: first-order upwind advection by the local sign of V_1,
/// dt Q V, and dt B times the central second difference. The CFL bound is
/// re-evaluated every step and dt is halved when it is exceeded. Returns one
/// state per requested output time (sorted, non-negative).
std::vector<GridState> fd_solve(const SystemSpec& sys,
                                const InitialProfile& prof,
                                const FdSettings& settings,
                                std::vector<double> output_times);

}  // namespace nshyp
