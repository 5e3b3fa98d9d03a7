#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "nshyp/core/profile.hpp"
#include "nshyp/core/system.hpp"
#include "nshyp/numkit/types.hpp"

namespace nshyp {

/// Particles (X_i, 𝔙_i) of the noisy characteristic system
///   dX = 𝔙_1 dt + sigma dW,   d𝔙 = Q 𝔙 dt.
struct ParticleEnsemble {
  std::vector<double> positions;
  Matrix states;  // n x N, column i belongs to positions[i]
  double t = 0.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;

  std::size_t size() const { return positions.size(); }
};

/// Draws an initial position. Each particle owns its own generator.
using PositionSampler = std::function<double(std::mt19937_64&)>;

PositionSampler uniform_sampler(Interval domain);

/// Generator of particle `index`, seeded from a splitmix64 hash of
/// (seed, index) so that particle paths do not depend on how the ensemble
/// is split into batches.
std::mt19937_64 particle_rng(std::uint64_t seed, std::uint64_t index);

/// Euler-Maruyama for positions and exp(Q dt) for the states. The step is
/// shortened to t_end / ceil(t_end / dt).
ParticleEnsemble evolve_ensemble(const SystemSpec& sys,
                                 const InitialProfile& prof,
                                 const PositionSampler& f0, double sigma,
                                 std::size_t N, double t_end, double dt,
                                 std::uint64_t seed);

struct FieldEstimate {
  std::vector<double> x_grid;
  std::vector<double> rho;
  // n x m; columns are NaN where rho < 1e-8 max(rho).
  Matrix v_hat;
  double bandwidth = 0.0;

  bool defined(std::size_t j) const { return !std::isnan(v_hat(0, j)); }
};

/// Gaussian kernel estimates of the density and of the conditional mean
/// state. With `period` set, distances use the nearest periodic image.
FieldEstimate estimate_fields(const ParticleEnsemble& ens,
                              const std::vector<double>& x_grid,
                              double bandwidth,
                              std::optional<double> period = std::nullopt);

/// 1.06 * min(std, IQR / 1.34) * N^(-1/5).
double silverman_bandwidth(const std::vector<double>& positions);

struct ConvergenceRow {
  double sigma = 0.0;
  double error = 0.0;  // sup over interior grid points of |V_hat - V|
  FieldEstimate fields;
};

struct ConvergenceSettings {
  std::vector<double> sigmas;
  std::size_t particles = 100000;
  double t_end = 1.0;
  double dt = 0.005;
  std::vector<double> x_grid;
  double bandwidth = 0.0;  // 0: Silverman bandwidth of each ensemble
  std::uint64_t seed = 0;
};

/// Compares V_hat with the deterministic solution for each sigma. Every row
/// reuses the same seed, so rows differ only through sigma. Points within
/// three bandwidths of a non-periodic boundary are excluded. Refuses data
/// that loses smoothness before t_end.
std::vector<ConvergenceRow> convergence_study(const SystemSpec& sys,
                                              const InitialProfile& prof,
                                              const ConvergenceSettings& cfg);

}  // namespace nshyp
