#include "nshyp/core/blowup.hpp"

#include <cmath>
#include <sstream>

#include "nshyp/core/characteristics.hpp"
#include "nshyp/errors.hpp"
#include "nshyp/numkit/expm.hpp"

namespace nshyp {

QFunctionTable::QFunctionTable(const SystemSpec& sys, const ScanSettings& scan)
    : M_(augmented_matrix(sys)), scan_(scan), step_(scan.step()) {
  if (!(scan_.horizon > 0)) throw DomainError("q scan: horizon must be positive");
  if (!(step_ > 0) || !(scan_.tol > 0))
    throw DomainError("q scan: scan_step and tol must be positive");
  const auto count = static_cast<Eigen::Index>(std::floor(scan_.horizon / step_));
  rows_.resize(count + 1, M_.cols());
  for (Eigen::Index k = 0; k <= count; ++k)
    rows_.row(k) = expm(M_, static_cast<double>(k) * step_).row(0);
  end_row_ = expm(M_, scan_.horizon).row(0);
}

double QFunctionTable::eval(const Vector& jac, double t) const {
  if (t == scan_.horizon) return end_row_.dot(jac);
  const double kk = std::round(t / step_);
  if (kk >= 0 && kk < static_cast<double>(rows_.rows()) && kk * step_ == t)
    return rows_.row(static_cast<Eigen::Index>(kk)).dot(jac);
  return expm(M_, t).row(0).dot(jac);
}

double QFunctionTable::q(const Vector& dv0, double t) const {
  if (dv0.size() + 1 != M_.cols())
    throw DomainError("q scan: derivative has the wrong dimension");
  Vector jac(dv0.size() + 1);
  jac << 1.0, dv0;
  return eval(jac, t);
}

std::optional<Root> QFunctionTable::first_root(const Vector& dv0) const {
  if (dv0.size() + 1 != M_.cols())
    throw DomainError("q scan: derivative has the wrong dimension");
  Vector jac(dv0.size() + 1);
  jac << 1.0, dv0;
  auto f = [&](double t) { return eval(jac, t); };
  // q(0) = 1 by construction, so a root at t = 0 cannot occur.
  return find_first_root(f, Interval{0.0, scan_.horizon}, step_, scan_.tol);
}

std::optional<Root> q_first_root(const SystemSpec& sys,
                                 const InitialProfile& prof, double x0,
                                 const ScanSettings& scan) {
  if (prof.dim() != sys.dim())
    throw DomainError("q_first_root: profile/system dimension mismatch");
  if (!prof.periodic() && !prof.domain().contains(x0))
    throw DomainError("q_first_root: x0 outside the profile domain");
  return QFunctionTable(sys, scan).first_root(prof.derivative(x0));
}

BlowupReport blowup_report(const SystemSpec& sys, const InitialProfile& prof,
                           const std::vector<double>& x0_grid,
                           const ScanSettings& scan) {
  if (x0_grid.empty()) throw DomainError("blowup_report: empty x0 grid");
  if (prof.dim() != sys.dim())
    throw DomainError("blowup_report: profile/system dimension mismatch");
  const QFunctionTable table(sys, scan);

  BlowupReport report;
  report.horizon = scan.horizon;
  report.per_point.reserve(x0_grid.size());
  for (double x0 : x0_grid) {
    if (!prof.periodic() && !prof.domain().contains(x0)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "blowup_report: grid point " << x0 << " outside the domain";
      throw DomainError(msg.str());
    }
    report.per_point.push_back({x0, table.first_root(prof.derivative(x0))});
  }
  for (const auto& p : report.per_point) {
    if (p.root && (!report.t_star || p.root->t < *report.t_star)) {
      report.t_star = p.root->t;
      report.x_star = p.x0;
    }
  }
  report.verdict = report.t_star ? Verdict::blows_up : Verdict::globally_smooth;
  return report;
}

std::vector<double> uniform_grid(const InitialProfile& prof, int points) {
  if (points < 1) throw DomainError("uniform_grid: need at least one point");
  const Interval d = prof.domain();
  std::vector<double> grid(static_cast<std::size_t>(points));
  if (points == 1) {
    grid[0] = 0.5 * (d.lo + d.hi);
    return grid;
  }
  const double h = prof.periodic() ? d.length() / points
                                   : d.length() / (points - 1);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = d.lo + h * i;
  return grid;
}

}  // namespace nshyp
