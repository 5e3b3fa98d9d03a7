#pragma once

#include <optional>
#include <vector>

#include "nshyp/core/blowup.hpp"
#include "nshyp/core/profile.hpp"

namespace nshyp {

/// Pointwise closed-form smoothness criterion: the solution stays smooth iff
/// every value is strictly negative.
struct CriterionResult {
  std::vector<double> x;
  std::vector<double> values;
  Verdict verdict = Verdict::globally_smooth;
  double max_value = 0.0;
  std::optional<double> violating_x;  // arg max when max_value >= 0
};

/// D(x) = (V_0')^2 + 2 U_0' - 1 for the two-component rotation system.
CriterionResult criterion_cold_plasma(const InitialProfile& prof,
                                      const std::vector<double>& x_grid);

/// ((V_1^0)')^2 + 2 (E^0)' + 2 B_0 (V_2^0)' - B_0^2 - 1 for the
/// collisionless magnetised model with components ordered (V_1, V_2, E).
CriterionResult criterion_davidson(const InitialProfile& prof, double B0,
                                   const std::vector<double>& x_grid);

}  // namespace nshyp
