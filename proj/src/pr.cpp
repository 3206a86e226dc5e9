#include "prreg/pr.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "prreg/rng.hpp"

namespace prreg {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

// Mixture value and expected precision from one kernel row, sharing the
// quadrature pass. Returns {raw mixture value, E[u^-2 | posterior]}.
std::pair<double, double> mixture_and_precision(const ScaleGrid& g,
                                                std::span<const double> psi,
                                                std::span<const double> kern) {
  const auto& qw = g.quadrature_weights();
  const auto& u = g.points();
  double f = 0.0;
  double num = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double t = qw[i] * kern[i] * psi[i];
    f += t;
    num += t / (u[i] * u[i]);
  }
  // Zero mass everywhere means the residual sits beyond the representable
  // tails; the posterior limit is a point mass at u_max.
  const double omega = f > 0.0 ? num / f : 1.0 / (g.u_max() * g.u_max());
  return {f, omega};
}

void check_residuals(std::span<const double> residuals) {
  for (double r : residuals)
    if (!std::isfinite(r))
      throw std::domain_error("pr_pass: residuals must be finite");
}

void check_permutation(std::span<const std::uint32_t> permutation,
                       std::size_t n) {
  if (permutation.size() != n)
    throw std::domain_error("pr_pass: permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (std::uint32_t j : permutation) {
    if (j >= n || seen[j])
      throw std::domain_error("pr_pass: permutation is not a bijection");
    seen[j] = true;
  }
}

}  // namespace

std::vector<std::vector<std::uint32_t>> make_permutations(std::uint64_t seed,
                                                          std::size_t n,
                                                          std::size_t count) {
  if (count < 1) throw std::domain_error("make_permutations: count must be >= 1");
  RngStream rng = RngStream::from(seed, 0, RngPurpose::Permutations);
  std::vector<std::vector<std::uint32_t>> perms;
  perms.reserve(count);
  for (std::size_t k = 0; k < count; ++k) perms.push_back(rng.permutation(n));
  return perms;
}

PrPassOutput pr_pass(std::span<const double> residuals, const PrConfig& config,
                     std::span<const std::uint32_t> permutation) {
  const std::size_t n = residuals.size();
  check_residuals(residuals);
  check_permutation(permutation, n);
  if (n == 0) return {config.psi0, 0.0, {}};

  const ScaleGrid& g = *config.grid;
  const std::size_t m = g.size();
  const auto& qw = g.quadrature_weights();
  std::vector<double> psi = config.psi0.values();
  std::vector<double> kern(m);
  std::vector<double> weights(n, 0.0);
  double log_marginal = 0.0;

  for (std::size_t step = 1; step <= n; ++step) {
    const std::uint32_t j = permutation[step - 1];
    const double r = residuals[j];
    normal_kernel_row(g, r, kern);

    const auto [raw, omega] = mixture_and_precision(g, psi, kern);
    const double f = raw < kDensityFloor ? kDensityFloor : raw;
    log_marginal += std::log(f);
    weights[j] = omega;

    const double w = config.weight_schedule(step);
    detail::check_step_weight(w);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      psi[i] = (1.0 - w) * psi[i] + w * kern[i] * psi[i] / f;
      total += qw[i] * psi[i];
    }
    for (std::size_t i = 0; i < m; ++i) psi[i] /= total;
  }

  return {MixingDensity(config.grid, std::move(psi)), log_marginal,
          std::move(weights)};
}

PrResult pr_averaged(std::span<const double> residuals, const PrConfig& config,
                     ExecMode mode) {
  const std::size_t n = residuals.size();
  check_residuals(residuals);
  const std::size_t k = config.n_permutations;
  if (k < 1) throw std::domain_error("pr_averaged: n_permutations must be >= 1");
  const auto perms = make_permutations(config.permutation_seed, n, k);

  std::vector<PrPassOutput> slots(k, PrPassOutput{config.psi0, 0.0, {}});
  std::exception_ptr failure;
  if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long p = 0; p < static_cast<long>(k); ++p) {
      try {
        slots[p] = pr_pass(residuals, config, perms[p]);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
  } else {
    for (std::size_t p = 0; p < k; ++p)
      slots[p] = pr_pass(residuals, config, perms[p]);
  }
  if (failure) std::rethrow_exception(failure);

  // Fixed-order reduction over slots so parallel == serial bitwise.
  const std::size_t m = config.grid->size();
  std::vector<double> psi_sum(m, 0.0);
  std::vector<double> weight_sum(n, 0.0);
  std::vector<double> per_perm_logs(k);
  double log_sum = 0.0;
  for (std::size_t p = 0; p < k; ++p) {
    const auto& s = slots[p];
    for (std::size_t i = 0; i < m; ++i) psi_sum[i] += s.psi.values()[i];
    for (std::size_t i = 0; i < n; ++i) weight_sum[i] += s.weights[i];
    per_perm_logs[p] = s.log_marginal;
    log_sum += s.log_marginal;
  }
  const double inv_k = 1.0 / static_cast<double>(k);
  for (double& v : psi_sum) v *= inv_k;
  for (double& v : weight_sum) v *= inv_k;

  PrResult out{MixingDensity::normalized(config.grid, std::move(psi_sum)),
               log_sum * inv_k, std::move(weight_sum), std::move(per_perm_logs)};
  return out;
}

double expected_precision(const MixingDensity& psi_prev, double r) {
  if (!std::isfinite(r))
    throw std::domain_error("expected_precision: r not finite");
  const ScaleGrid& g = psi_prev.grid();
  std::vector<double> kern(g.size());
  normal_kernel_row(g, r, kern);
  return mixture_and_precision(g, psi_prev.values(), kern).second;
}

}  // namespace prreg
