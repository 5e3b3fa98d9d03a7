#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nshyp/numkit/spline.hpp"
#include "nshyp/numkit/types.hpp"

namespace nshyp {

/// Initial data V_0 and its derivative V_0' on a domain, optionally periodic
/// with period equal to the domain length. Immutable and cheap to copy.
class InitialProfile {
 public:
  using Field = std::function<Vector(double)>;

  /// Analytic data: `value` and `derivative` must agree; they are trusted.
  static InitialProfile analytic(int n, Field value, Field derivative,
                                 Interval domain, bool periodic);

  /// Tabulated data on strictly increasing abscissae spanning the domain.
  /// Without explicit derivatives, V_0' is the spline derivative. Supplied
  /// derivatives are checked against central differences of the value
  /// spline at 16 probe points, to 1e-2 of the largest derivative magnitude
  /// seen at the probes.
  static InitialProfile sampled(std::vector<double> x, Matrix values,
                                std::optional<Matrix> derivatives,
                                bool periodic);

  int dim() const { return n_; }
  const Interval& domain() const { return domain_; }
  bool periodic() const { return periodic_; }
  double period() const { return domain_.length(); }

  Vector value(double x) const { return value_(reduce(x)); }
  Vector derivative(double x) const { return derivative_(reduce(x)); }

  /// Maps x into the domain for periodic profiles; throws DomainError for a
  /// non-periodic profile when x lies outside the domain.
  double reduce(double x) const;

 private:
  InitialProfile(int n, Field value, Field derivative, Interval domain,
                 bool periodic);

  int n_ = 0;
  Field value_;
  Field derivative_;
  Interval domain_;
  bool periodic_ = false;
};

}  // namespace nshyp
