#include "nshyp/core/grid_solution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nshyp/core/characteristics.hpp"
#include "nshyp/errors.hpp"

namespace nshyp {

namespace {

struct Shot {
  double x0, x, q;
  Vector V, G;
};

}  // namespace

GridSolution grid_solution(const SystemSpec& sys, const InitialProfile& prof,
                           double t, const std::vector<double>& x_grid,
                           int refine) {
  if (prof.dim() != sys.dim())
    throw DomainError("grid_solution: profile/system dimension mismatch");
  if (x_grid.empty()) throw DomainError("grid_solution: empty grid");
  if (refine < 1) throw DomainError("grid_solution: refine must be >= 1");
  if (!(t >= 0) || !std::isfinite(t))
    throw DomainError("grid_solution: t must be finite and non-negative");
  for (std::size_t i = 1; i < x_grid.size(); ++i)
    if (!(x_grid[i] > x_grid[i - 1]))
      throw DomainError("grid_solution: grid must be strictly increasing");

  const int n = sys.dim();
  const auto m = static_cast<Eigen::Index>(x_grid.size());
  GridSolution out;
  out.t = t;
  out.x = x_grid;
  out.values.resize(n, m);
  out.gradients.resize(n, m);
  out.jacobian.assign(x_grid.size(), 1.0);

  if (t == 0.0) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double xj = x_grid[static_cast<std::size_t>(j)];
      out.values.col(j) = prof.value(xj);
      out.gradients.col(j) = prof.derivative(xj);
    }
    return out;
  }

  const CharacteristicFlow flow(sys, t);
  const Interval dom = prof.domain();
  double spacing = dom.length() / 64.0;
  for (std::size_t i = 1; i < x_grid.size(); ++i)
    spacing = std::min(spacing, x_grid[i] - x_grid[i - 1]);
  spacing /= refine;

  double lo = dom.lo, hi = dom.hi;
  if (prof.periodic()) {
    // Displacements are periodic in x0; bound them over one period.
    double pad = 0.0;
    const int probes = std::max(64, static_cast<int>(dom.length() / spacing));
    for (int k = 0; k < probes; ++k) {
      const double x0 = dom.lo + dom.length() * k / probes;
      pad = std::max(pad, std::abs(flow.shoot(prof, x0).x - x0));
    }
    pad += 2.0 * spacing;
    lo = x_grid.front() - pad;
    hi = x_grid.back() + pad;
  }

  const auto count =
      static_cast<std::size_t>(std::ceil((hi - lo) / spacing)) + 1;
  if (count > 20'000'000)
    throw DomainError("grid_solution: refinement too fine for the domain");
  const double h = (hi - lo) / static_cast<double>(count - 1);

  std::vector<Shot> shots;
  shots.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x0 = i + 1 == count ? hi : lo + h * static_cast<double>(i);
    const auto s = flow.shoot(prof, x0);
    if (!(s.q > 0)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "grid_solution: characteristic from x0=" << x0
          << " has q=" << s.q << " <= 0 at t=" << t
          << " (time is at or past the blow-up time)";
      throw NumericalError(msg.str());
    }
    shots.push_back({x0, s.x, s.q, s.V, s.gradient()});
  }
  for (std::size_t i = 1; i < shots.size(); ++i) {
    if (!(shots[i].x > shots[i - 1].x)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "grid_solution: characteristics from x0=" << shots[i - 1].x0
          << " and x0=" << shots[i].x0 << " cross by t=" << t;
      throw NumericalError(msg.str());
    }
  }

  for (Eigen::Index j = 0; j < m; ++j) {
    const double X = x_grid[static_cast<std::size_t>(j)];
    auto it = std::lower_bound(
        shots.begin(), shots.end(), X,
        [](const Shot& s, double v) { return s.x < v; });
    if (it == shots.end() || (it == shots.begin() && it->x > X)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "grid_solution: grid point x=" << X
          << " is not reached by characteristics from the profile domain";
      throw DomainError(msg.str());
    }
    if (it->x == X) {
      out.values.col(j) = it->V;
      out.gradients.col(j) = it->G;
      out.jacobian[static_cast<std::size_t>(j)] = it->q;
      continue;
    }
    const Shot& b = *it;
    const Shot& a = *(it - 1);
    const double dx = b.x - a.x;
    const double s = (X - a.x) / dx;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    out.values.col(j) =
        h00 * a.V + h10 * dx * a.G + h01 * b.V + h11 * dx * b.G;
    const double d00 = (6 * s2 - 6 * s) / dx, d10 = 3 * s2 - 4 * s + 1;
    const double d01 = (-6 * s2 + 6 * s) / dx, d11 = 3 * s2 - 2 * s;
    out.gradients.col(j) = d00 * a.V + d10 * a.G + d01 * b.V + d11 * b.G;
    out.jacobian[static_cast<std::size_t>(j)] = (1 - s) * a.q + s * b.q;
  }
  return out;
}

}  // namespace nshyp
