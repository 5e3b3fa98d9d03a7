#include "nshyp/core/criteria.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "nshyp/errors.hpp"

namespace nshyp {

namespace {

CriterionResult evaluate(const InitialProfile& prof,
                         const std::vector<double>& x_grid,
                         const std::function<double(const Vector&)>& value) {
  if (x_grid.empty()) throw DomainError("criterion: empty grid");
  CriterionResult r;
  r.x = x_grid;
  r.values.reserve(x_grid.size());
  r.max_value = -std::numeric_limits<double>::infinity();
  double arg = x_grid.front();
  for (double x : x_grid) {
    const double v = value(prof.derivative(x));
    r.values.push_back(v);
    if (v > r.max_value) {
      r.max_value = v;
      arg = x;
    }
  }
  if (r.max_value >= 0) {
    r.verdict = Verdict::blows_up;
    r.violating_x = arg;
  }
  return r;
}

}  // namespace

CriterionResult criterion_cold_plasma(const InitialProfile& prof,
                                      const std::vector<double>& x_grid) {
  if (prof.dim() != 2)
    throw DomainError("criterion_cold_plasma: profile must have 2 components");
  return evaluate(prof, x_grid, [](const Vector& d) {
    return d[0] * d[0] + 2.0 * d[1] - 1.0;
  });
}

CriterionResult criterion_davidson(const InitialProfile& prof, double B0,
                                   const std::vector<double>& x_grid) {
  if (prof.dim() != 3)
    throw DomainError("criterion_davidson: profile must have 3 components");
  return evaluate(prof, x_grid, [B0](const Vector& d) {
    return d[0] * d[0] + 2.0 * d[2] + 2.0 * B0 * d[1] - B0 * B0 - 1.0;
  });
}

}  // namespace nshyp
