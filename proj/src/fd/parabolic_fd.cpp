#include "nshyp/fd/parabolic_fd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nshyp/errors.hpp"

namespace nshyp {

double cfl_limits(const SystemSpec& sys, const GridState& state, double dx) {
  if (!(dx > 0)) throw DomainError("cfl_limits: dx must be positive");
  double limit = std::numeric_limits<double>::infinity();
  if (state.fields.cols() > 0) {
    const double vmax = state.fields.row(0).cwiseAbs().maxCoeff();
    if (vmax > 0) limit = std::min(limit, dx / vmax);
  }
  if (sys.B()) {
    const double bmax = sys.B()->cwiseAbs().rowwise().sum().maxCoeff();
    if (bmax > 0) limit = std::min(limit, dx * dx / (2 * bmax));
  }
  const double qnorm = sys.Q().cwiseAbs().rowwise().sum().maxCoeff();
  if (qnorm > 0) limit = std::min(limit, 1.0 / (2 * qnorm));
  return limit;
}

namespace {

void check_finite(const GridState& s, long step) {
  for (Eigen::Index j = 0; j < s.fields.cols(); ++j)
    for (Eigen::Index i = 0; i < s.fields.rows(); ++i)
      if (!std::isfinite(s.fields(i, j))) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "fd_solve: non-finite V_" << i + 1 << " at step " << step
            << ", t=" << s.t << ", x=" << s.x[j]
            << " (under-resolved or singular solution)";
        throw NumericalError(msg.str());
      }
}

}  // namespace

std::vector<GridState> fd_solve(const SystemSpec& sys,
                                const InitialProfile& prof,
                                const FdSettings& settings,
                                std::vector<double> output_times) {
  if (!prof.periodic())
    throw DomainError("fd_solve: the profile must be periodic");
  if (prof.dim() != sys.dim())
    throw DomainError("fd_solve: profile/system dimension mismatch");
  if (!(settings.dx > 0) || !(settings.dt > 0))
    throw DomainError("fd_solve: dx and dt must be positive");
  if (!(settings.safety > 0 && settings.safety <= 1))
    throw DomainError("fd_solve: safety must lie in (0, 1]");
  if (output_times.empty()) throw DomainError("fd_solve: no output times");
  std::sort(output_times.begin(), output_times.end());
  if (!(output_times.front() >= 0) || !std::isfinite(output_times.back()))
    throw DomainError("fd_solve: output times must be finite and >= 0");

  const double L = prof.period();
  const double cells = L / settings.dx;
  const long m = std::lround(cells);
  if (m < 3 || std::abs(cells - static_cast<double>(m)) > 1e-9 * cells)
    throw DomainError("fd_solve: dx must divide the period into >= 3 cells");
  const double dx = L / static_cast<double>(m);

  const int n = sys.dim();
  GridState state;
  state.x.resize(m);
  state.fields.resize(n, m);
  for (long j = 0; j < m; ++j) {
    state.x[j] = prof.domain().lo + static_cast<double>(j) * dx;
    state.fields.col(j) = prof.value(state.x[j]);
  }
  check_finite(state, 0);

  const Matrix& Q = sys.Q();
  const bool diffusive = sys.B().has_value() && !sys.B()->isZero(0.0);
  const Matrix B = diffusive ? *sys.B() : Matrix::Zero(n, n);

  std::vector<GridState> out;
  Matrix next(n, m);
  long step = 0;
  for (double t_out : output_times) {
    while (state.t < t_out) {
      const double cfl = settings.safety * cfl_limits(sys, state, dx);
      double h = std::min(settings.dt, t_out - state.t);
      int reductions = 0;
      while (h > cfl) {
        if (++reductions > settings.max_reductions) {
          std::ostringstream msg;
          msg.precision(17);
          msg << "fd_solve: CFL bound " << cfl << " still exceeded after "
              << settings.max_reductions << " reductions at t=" << state.t;
          throw NumericalError(msg.str());
        }
        h *= 0.5;
      }
      const double a = h / dx, d = h / (dx * dx);
      for (long j = 0; j < m; ++j) {
        const long jl = j == 0 ? m - 1 : j - 1;
        const long jr = j == m - 1 ? 0 : j + 1;
        const auto v = state.fields.col(j);
        const double c = v[0];
        auto col = next.col(j);
        if (c > 0)
          col = v - a * c * (v - state.fields.col(jl));
        else
          col = v - a * c * (state.fields.col(jr) - v);
        col.noalias() += h * (Q * v);
        if (diffusive)
          col.noalias() +=
              d * (B * (state.fields.col(jr) - 2 * v + state.fields.col(jl)));
      }
      state.fields.swap(next);
      // Land exactly on the output time despite rounding in the sum.
      state.t = (t_out - (state.t + h) <= 1e-12 * std::max(1.0, t_out))
                    ? t_out
                    : state.t + h;
      ++step;
      check_finite(state, step);
    }
    out.push_back(state);
  }
  return out;
}

}  // namespace nshyp
