#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "nshyp/errors.hpp"
#include "nshyp/waves/waves.hpp"

namespace nshyp {

const char* to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::center: return "center";
    case EquilibriumKind::saddle: return "saddle";
    case EquilibriumKind::focus: return "focus";
    case EquilibriumKind::node: return "node";
    case EquilibriumKind::degenerate: return "degenerate";
  }
  return "unknown";
}

EquilibriumClass classify_eigenvalues(std::vector<std::complex<double>> eigs,
                                      double rel_tol) {
  EquilibriumClass c;
  std::sort(eigs.begin(), eigs.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  c.eigenvalues = eigs;
  if (eigs.empty()) return c;

  double scale = 0.0;
  for (auto e : eigs) scale = std::max(scale, std::abs(e));
  const double tiny = rel_tol * std::max(scale, 1e-300);

  bool any_zero = false, all_imag = true, all_real = true;
  bool any_pos = false, any_neg = false;
  for (auto e : eigs) {
    if (std::abs(e) <= tiny) any_zero = true;
    if (std::abs(e.real()) > tiny) all_imag = false;
    if (std::abs(e.imag()) > tiny) all_real = false;
    if (e.real() > tiny) any_pos = true;
    if (e.real() < -tiny) any_neg = true;
  }
  if (any_zero || scale == 0.0) {
    c.kind = EquilibriumKind::degenerate;
  } else if (all_imag) {
    c.kind = EquilibriumKind::center;
  } else if (all_real) {
    c.kind = (any_pos && any_neg) ? EquilibriumKind::saddle
                                  : EquilibriumKind::node;
  } else {
    c.kind = EquilibriumKind::focus;
  }
  return c;
}

std::vector<std::complex<double>> polynomial_roots(std::vector<double> coeffs) {
  while (!coeffs.empty() && coeffs.front() == 0.0) coeffs.erase(coeffs.begin());
  if (coeffs.size() < 2) return {};
  for (double c : coeffs)
    if (!std::isfinite(c)) throw DomainError("polynomial_roots: non-finite coefficient");

  const int deg = static_cast<int>(coeffs.size()) - 1;
  Matrix companion = Matrix::Zero(deg, deg);
  for (int j = 0; j < deg; ++j)
    companion(0, j) = -coeffs[static_cast<std::size_t>(j + 1)] / coeffs[0];
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;

  Eigen::EigenSolver<Matrix> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("polynomial_roots: eigenvalue iteration failed");

  using C = std::complex<double>;
  std::vector<C> roots;
  for (int i = 0; i < deg; ++i) {
    C z = solver.eigenvalues()[i];
    // Newton polish against the original coefficients.
    for (int it = 0; it < 4; ++it) {
      C p = coeffs[0], dp = 0.0;
      for (std::size_t k = 1; k < coeffs.size(); ++k) {
        dp = dp * z + p;
        p = p * z + coeffs[k];
      }
      if (std::abs(dp) == 0.0) break;
      const C next = z - p / dp;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
      z = next;
    }
    // Conjugate pairs of a real polynomial: snap tiny imaginary parts.
    if (std::abs(z.imag()) <= 1e-14 * std::abs(z)) z = C(z.real(), 0.0);
    if (std::abs(z.real()) <= 1e-14 * std::abs(z)) z = C(0.0, z.imag());
    roots.push_back(z);
  }
  return roots;
}

EquilibriumClass linearized_tw_roots(LinearizedModel model, double nu,
                                     double kappa, double w) {
  if (w == 0.0 || !std::isfinite(w))
    throw DomainError("linearized_tw_roots: wave speed must be nonzero");
  if (!(nu >= 0) || !(kappa >= 0))
    throw DomainError("linearized_tw_roots: viscosities must be >= 0");
  std::vector<double> coeffs;
  if (model == LinearizedModel::cold_plasma_viscous) {
    coeffs = {nu * w, w * w, 0.0, 1.0};
  } else {
    coeffs = {nu * kappa, (nu + kappa) * w, w * w, 0.0, 1.0};
  }
  return classify_eigenvalues(polynomial_roots(coeffs));
}

}  // namespace nshyp
