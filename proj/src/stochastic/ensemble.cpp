#include "nshyp/stochastic/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nshyp/core/blowup.hpp"
#include "nshyp/core/grid_solution.hpp"
#include "nshyp/errors.hpp"
#include "nshyp/numkit/expm.hpp"

namespace nshyp {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double quantile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  return v[i] + (pos - static_cast<double>(i)) * (v[i + 1] - v[i]);
}

}  // namespace

PositionSampler uniform_sampler(Interval domain) {
  if (!(domain.lo < domain.hi))
    throw DomainError("uniform_sampler: empty domain");
  return [domain](std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(domain.lo, domain.hi)(rng);
  };
}

std::mt19937_64 particle_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ index));
}

ParticleEnsemble evolve_ensemble(const SystemSpec& sys,
                                 const InitialProfile& prof,
                                 const PositionSampler& f0, double sigma,
                                 std::size_t N, double t_end, double dt,
                                 std::uint64_t seed) {
  if (N < 1) throw DomainError("evolve_ensemble: N must be at least 1");
  if (!(dt > 0)) throw DomainError("evolve_ensemble: dt must be positive");
  if (!(sigma >= 0)) throw DomainError("evolve_ensemble: sigma must be >= 0");
  if (!(t_end >= 0) || !std::isfinite(t_end))
    throw DomainError("evolve_ensemble: t_end must be finite and >= 0");
  if (prof.dim() != sys.dim())
    throw DomainError("evolve_ensemble: profile/system dimension mismatch");

  const int n = sys.dim();
  const long steps = t_end > 0 ? static_cast<long>(std::ceil(t_end / dt)) : 0;
  const double h = steps > 0 ? t_end / static_cast<double>(steps) : 0.0;
  const Matrix E = expm(sys.Q(), h);
  const double kick = sigma * std::sqrt(h);

  ParticleEnsemble ens;
  ens.positions.resize(N);
  ens.states.resize(n, static_cast<Eigen::Index>(N));
  ens.t = t_end;
  ens.sigma = sigma;
  ens.seed = seed;

  Vector v(n), next(n);
  for (std::size_t i = 0; i < N; ++i) {
    auto rng = particle_rng(seed, i);
    std::normal_distribution<double> normal;
    double x = f0(rng);
    v = prof.value(x);
    for (long k = 0; k < steps; ++k) {
      const double drift = v[0];
      if (!std::isfinite(drift)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "evolve_ensemble: non-finite drift for particle " << i
            << " at step " << k;
        throw NumericalError(msg.str());
      }
      x += drift * h;
      if (kick > 0) x += kick * normal(rng);
      next.noalias() = E * v;
      v.swap(next);
    }
    ens.positions[i] = x;
    ens.states.col(static_cast<Eigen::Index>(i)) = v;
  }
  return ens;
}

FieldEstimate estimate_fields(const ParticleEnsemble& ens,
                              const std::vector<double>& x_grid,
                              double bandwidth, std::optional<double> period) {
  if (ens.size() == 0) throw DomainError("estimate_fields: empty ensemble");
  if (!(bandwidth > 0))
    throw DomainError("estimate_fields: bandwidth must be positive");
  if (period && !(*period > 0))
    throw DomainError("estimate_fields: period must be positive");

  const int n = static_cast<int>(ens.states.rows());
  const auto m = static_cast<Eigen::Index>(x_grid.size());
  FieldEstimate out;
  out.x_grid = x_grid;
  out.bandwidth = bandwidth;
  out.rho.assign(x_grid.size(), 0.0);
  out.v_hat = Matrix::Zero(n, m);

  // Kernel contributions beyond 8 bandwidths are below 1e-14 and skipped.
  const double cutoff = 8.0 * bandwidth;
  const double inv_h = 1.0 / bandwidth;
  const double norm = inv_h / (std::sqrt(2.0 * std::numbers::pi) *
                               static_cast<double>(ens.size()));
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const double xi = ens.positions[i];
    for (Eigen::Index j = 0; j < m; ++j) {
      double d = x_grid[j] - xi;
      if (period) d -= *period * std::round(d / *period);
      if (std::abs(d) > cutoff) continue;
      const double z = d * inv_h;
      const double k = std::exp(-0.5 * z * z);
      out.rho[j] += k;
      out.v_hat.col(j) += k * ens.states.col(static_cast<Eigen::Index>(i));
    }
  }

  double rho_max = 0.0;
  for (double r : out.rho) rho_max = std::max(rho_max, r);
  const double floor = 1e-8 * rho_max;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (out.rho[j] > 0 && out.rho[j] >= floor)
      out.v_hat.col(j) /= out.rho[j];
    else
      out.v_hat.col(j).setConstant(std::numeric_limits<double>::quiet_NaN());
    out.rho[j] *= norm;
  }
  return out;
}

double silverman_bandwidth(const std::vector<double>& positions) {
  if (positions.size() < 2)
    throw DomainError("silverman_bandwidth: need at least two samples");
  const double N = static_cast<double>(positions.size());
  double mean = 0.0;
  for (double x : positions) mean += x;
  mean /= N;
  double var = 0.0;
  for (double x : positions) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / (N - 1));
  const double iqr = quantile(positions, 0.75) - quantile(positions, 0.25);
  double spread = sd;
  if (iqr > 0) spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0))
    throw DomainError("silverman_bandwidth: samples have no spread");
  return 1.06 * spread * std::pow(N, -0.2);
}

std::vector<ConvergenceRow> convergence_study(const SystemSpec& sys,
                                              const InitialProfile& prof,
                                              const ConvergenceSettings& cfg) {
  if (cfg.sigmas.empty())
    throw DomainError("convergence_study: empty sigma list");
  if (cfg.x_grid.empty()) throw DomainError("convergence_study: empty grid");
  if (!(cfg.t_end > 0))
    throw DomainError("convergence_study: t_end must be positive");
  if (cfg.bandwidth < 0)
    throw DomainError("convergence_study: bandwidth must be >= 0");

  ScanSettings scan;
  scan.horizon = cfg.t_end;
  const auto report = blowup_report(sys.inviscid(), prof, uniform_grid(prof), scan);
  if (report.verdict == Verdict::blows_up) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "convergence_study: initial data lose smoothness at T*="
        << *report.t_star << " <= t_end=" << cfg.t_end
        << "; V_hat -> V is only expected for a continuous solution";
    throw DomainError(msg.str());
  }

  const auto exact = grid_solution(sys.inviscid(), prof, cfg.t_end, cfg.x_grid);
  const std::optional<double> period =
      prof.periodic() ? std::optional<double>(prof.period()) : std::nullopt;
  const auto f0 = uniform_sampler(prof.domain());

  std::vector<ConvergenceRow> rows;
  for (double sigma : cfg.sigmas) {
    const auto ens = evolve_ensemble(sys.inviscid(), prof, f0, sigma,
                                     cfg.particles, cfg.t_end, cfg.dt, cfg.seed);
    double h = cfg.bandwidth;
    if (h == 0.0) {
      std::vector<double> reduced(ens.positions);
      if (period)
        for (double& x : reduced) x = prof.reduce(x);
      h = silverman_bandwidth(reduced);
    }
    ConvergenceRow row;
    row.sigma = sigma;
    row.fields = estimate_fields(ens, cfg.x_grid, h, period);
    const auto& dom = prof.domain();
    for (std::size_t j = 0; j < cfg.x_grid.size(); ++j) {
      const double x = cfg.x_grid[j];
      if (!period && (x < dom.lo + 3 * h || x > dom.hi - 3 * h)) continue;
      if (!row.fields.defined(j)) continue;
      const auto col = static_cast<Eigen::Index>(j);
      const double err =
          (row.fields.v_hat.col(col) - exact.values.col(col)).lpNorm<Eigen::Infinity>();
      row.error = std::max(row.error, err);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace nshyp
