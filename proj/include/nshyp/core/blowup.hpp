#pragma once

#include <optional>
#include <vector>

#include "nshyp/core/profile.hpp"
#include "nshyp/core/system.hpp"
#include "nshyp/numkit/roots.hpp"
#include "nshyp/numkit/types.hpp"

namespace nshyp {

enum class Verdict { globally_smooth, blows_up };

inline const char* to_string(Verdict v) {
  return v == Verdict::blows_up ? "blows_up" : "globally_smooth";
}

/// Horizon and resolution of the q(t) root scan.
struct ScanSettings {
  double horizon = 100.0;
  double scan_step = 0.0;  // 0: horizon / 1e4
  double tol = 1e-10;

  double step() const { return scan_step > 0 ? scan_step : horizon / 1e4; }
};

/// q(t; x0) = first component of exp(M t) (1, V_0'(x0)), with the first rows
/// of exp(M t_k) tabulated on the scan grid t_k = k * scan_step so that the
/// scan costs one dot product per sample. Off-grid times (bisection) fall
/// back to a direct matrix exponential.
class QFunctionTable {
 public:
  QFunctionTable(const SystemSpec& sys, const ScanSettings& scan);

  double q(const Vector& dv0, double t) const;
  std::optional<Root> first_root(const Vector& dv0) const;

  const ScanSettings& settings() const { return scan_; }

 private:
  double eval(const Vector& jac, double t) const;

  Matrix M_;
  ScanSettings scan_;
  double step_;
  Matrix rows_;  // (K+1) x (n+1): row k belongs to t = k * step_
  Eigen::RowVectorXd end_row_;  // row at t = horizon
};

std::optional<Root> q_first_root(const SystemSpec& sys,
                                 const InitialProfile& prof, double x0,
                                 const ScanSettings& scan = {});

struct PointRoot {
  double x0 = 0.0;
  std::optional<Root> root;
};

/// Blow-up analysis of the Cauchy problem on a grid of characteristic feet.
/// A globally_smooth verdict holds up to `horizon` only.
struct BlowupReport {
  Verdict verdict = Verdict::globally_smooth;
  std::optional<double> t_star;
  std::optional<double> x_star;
  std::vector<PointRoot> per_point;
  double horizon = 0.0;
};

BlowupReport blowup_report(const SystemSpec& sys, const InitialProfile& prof,
                           const std::vector<double>& x0_grid,
                           const ScanSettings& scan = {});

/// `points` equally spaced points covering the profile domain; for periodic
/// profiles the right end point (a copy of the left one) is omitted.
std::vector<double> uniform_grid(const InitialProfile& prof, int points = 512);

}  // namespace nshyp
