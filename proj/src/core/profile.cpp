#include "nshyp/core/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "nshyp/errors.hpp"

namespace nshyp {

InitialProfile::InitialProfile(int n, Field value, Field derivative,
                               Interval domain, bool periodic)
    : n_(n),
      value_(std::move(value)),
      derivative_(std::move(derivative)),
      domain_(domain),
      periodic_(periodic) {
  if (n_ <= 0) throw DomainError("InitialProfile: dimension must be positive");
  if (!value_ || !derivative_)
    throw DomainError("InitialProfile: value and derivative are required");
  if (!(domain_.lo < domain_.hi) || !std::isfinite(domain_.lo) ||
      !std::isfinite(domain_.hi))
    throw DomainError("InitialProfile: domain must be a finite interval");
}

InitialProfile InitialProfile::analytic(int n, Field value, Field derivative,
                                        Interval domain, bool periodic) {
  InitialProfile p(n, std::move(value), std::move(derivative), domain,
                   periodic);
  for (double x : {domain.lo, 0.5 * (domain.lo + domain.hi), domain.hi}) {
    const Vector v = p.value_(x), d = p.derivative_(x);
    if (v.size() != n || d.size() != n)
      throw DomainError("InitialProfile: field returns wrong dimension");
    if (!v.allFinite() || !d.allFinite())
      throw DomainError("InitialProfile: non-finite initial data");
  }
  return p;
}

InitialProfile InitialProfile::sampled(std::vector<double> x, Matrix values,
                                       std::optional<Matrix> derivatives,
                                       bool periodic) {
  if (x.size() < 4) throw DomainError("InitialProfile: need >= 4 samples");
  const int n = static_cast<int>(values.rows());
  const Interval domain{x.front(), x.back()};
  if (periodic) {
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    if ((values.col(0) - values.col(values.cols() - 1)).cwiseAbs().maxCoeff() >
        1e-9 * scale)
      throw DomainError(
          "InitialProfile: periodic table must repeat its first sample at "
          "the end");
  }

  auto value_spline =
      std::make_shared<const CubicSpline>(x, values, periodic);
  Field value = [value_spline](double s) { return value_spline->value(s); };
  Field derivative;

  if (derivatives) {
    if (derivatives->rows() != n || derivatives->cols() != values.cols())
      throw DomainError("InitialProfile: derivative table shape mismatch");
    auto deriv_spline =
        std::make_shared<const CubicSpline>(x, *derivatives, periodic);
    derivative = [deriv_spline](double s) { return deriv_spline->value(s); };

    // Consistency of the supplied derivative with the value data.
    const double len = domain.length();
    const double h = 1e-4 * len;
    double scale = 0.0;
    std::vector<double> probes;
    for (int k = 0; k < 16; ++k)
      probes.push_back(domain.lo + len * (k + 0.5) / 16.0);
    for (double s : probes)
      scale = std::max(scale, derivative(s).cwiseAbs().maxCoeff());
    for (double s : probes) {
      const Vector fd = (value(s + h) - value(s - h)) / (2 * h);
      const Vector d = derivative(s);
      for (int i = 0; i < n; ++i) {
        // Natural end conditions degrade the value spline's slope near the
        // ends, so the mismatch is measured against the overall scale.
        const double ref = std::max({std::abs(d[i]), scale, 1e-12});
        if (std::abs(fd[i] - d[i]) > 1e-2 * ref) {
          std::ostringstream msg;
          msg << "InitialProfile: derivative column " << i + 1
              << " disagrees with the value data near x=" << s;
          throw DomainError(msg.str());
        }
      }
    }
  } else {
    derivative = [value_spline](double s) {
      return value_spline->derivative(s);
    };
  }
  return InitialProfile(n, std::move(value), std::move(derivative), domain,
                        periodic);
}

double InitialProfile::reduce(double x) const {
  if (domain_.contains(x)) return x;
  if (!periodic_) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "InitialProfile: x=" << x << " outside domain [" << domain_.lo
        << ", " << domain_.hi << "]";
    throw DomainError(msg.str());
  }
  const double L = period();
  double r = std::fmod(x - domain_.lo, L);
  if (r < 0) r += L;
  return domain_.lo + r;
}

}  // namespace nshyp
