#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "prreg/grid.hpp"
#include "prreg/parallel.hpp"

namespace prreg {

// Configuration of one predictive-recursion sweep family. The permutation
// set is a pure function of (permutation_seed, n, n_permutations), so a
// config evaluated twice on the same data gives bit-identical results.
struct PrConfig {
  GridPtr grid;
  MixingDensity psi0;
  // Step weight for the observation processed at (1-based) position i.
  std::function<double(std::size_t)> weight_schedule =
      [](std::size_t i) { return 1.0 / static_cast<double>(i + 1); };
  std::size_t n_permutations = 25;
  std::uint64_t permutation_seed = 0;

  PrConfig(GridPtr g, MixingDensity p0) : grid(std::move(g)), psi0(std::move(p0)) {}
  static PrConfig with_uniform_psi0(const GridPtr& grid) {
    return PrConfig(grid, MixingDensity::uniform(grid));
  }
};

struct PrPassOutput {
  MixingDensity psi;
  double log_marginal = 0.0;
  std::vector<double> weights;  // original observation order
};

struct PrResult {
  MixingDensity psi_n;
  double log_marginal = 0.0;
  std::vector<double> per_obs_weights;
  std::vector<double> per_perm_log_marginals;
};

// The n_permutations orderings of 0..n-1 used by pr_averaged, deterministic
// in (seed, n, count).
std::vector<std::vector<std::uint32_t>> make_permutations(std::uint64_t seed,
                                                          std::size_t n,
                                                          std::size_t count);

// Single-sequence sweep: recursive mixing-density updates, accumulation of
// the log marginal sum of log f_{i-1}(r_i), and the expected-precision weight
// of each observation computed from the density in force when it is visited.
PrPassOutput pr_pass(std::span<const double> residuals, const PrConfig& config,
                     std::span<const std::uint32_t> permutation);

// Averages pr_pass over the fixed permutation set: mixing densities pointwise
// (then re-normalized), log marginals arithmetically, weights per original
// index. Parallel execution is bit-identical to serial.
PrResult pr_averaged(std::span<const double> residuals, const PrConfig& config,
                     ExecMode mode = ExecMode::Parallel);

// Expected precision E[u^-2] under the one-observation Bayes posterior
// proportional to normal_kernel(r, u) psi_prev(u).
double expected_precision(const MixingDensity& psi_prev, double r);

}  // namespace prreg
