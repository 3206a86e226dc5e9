#include "prreg/prem.hpp"

#include <cmath>
#include <stdexcept>

#include "prreg/errors.hpp"
#include "prreg/linalg.hpp"

namespace prreg {

void RegressionData::validate() const {
  if (X.rows() != y.size())
    throw std::domain_error("RegressionData: X rows != y length");
  if (X.cols() < 1 || X.rows() < X.cols())
    throw std::domain_error("RegressionData: need n >= p >= 1");
  if (!X.allFinite() || !y.allFinite())
    throw std::domain_error("RegressionData: non-finite entries");
  if (!column_names.empty() &&
      column_names.size() != static_cast<std::size_t>(X.cols()))
    throw std::domain_error("RegressionData: column_names size mismatch");
}

Eigen::VectorXd RegressionData::residuals(const Eigen::VectorXd& beta) const {
  if (beta.size() != X.cols())
    throw std::domain_error("RegressionData: beta dimension mismatch");
  return y - X * beta;
}

double default_umax(double sigma_hat_ls) {
  if (!(sigma_hat_ls > 0.0) || !std::isfinite(sigma_hat_ls))
    throw std::domain_error("default_umax: sigma must be positive");
  return std::max(50.0, 3.0 * sigma_hat_ls);
}

namespace {

MixingDensity make_psi0(const GridPtr& grid, Psi0Kind kind, double sigma) {
  if (kind == Psi0Kind::Uniform) return MixingDensity::uniform(grid);
  // Gamma with shape 2 and scale sigma has its mode at sigma; truncate to
  // the grid support by normalizing the sampled values.
  const double scale = std::max(sigma, 1e-12);
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double u = grid->points()[i];
    v[i] = u * std::exp(-u / scale);
  }
  return MixingDensity::normalized(grid, std::move(v));
}

}  // namespace

PremObjective::PremObjective(const RegressionData& data,
                             const PremConfig& config)
    : data_(&data),
      config_(config),
      sigma_ls_(0.0),
      pr_(nullptr, MixingDensity::uniform(ScaleGrid::uniform(1.0, 2.0, 2))) {
  data.validate();
  require_full_column_rank(data.X, data.column_names);
  beta_ols_ = solve_ols(data.X, data.y, data.column_names);
  const Eigen::VectorXd resid = data.y - data.X * beta_ols_;
  const Eigen::Index dof = data.n() - data.p();
  sigma_ls_ = dof > 0 ? std::sqrt(resid.squaredNorm() / static_cast<double>(dof))
                      : 0.0;

  const double umax =
      config.u_max.value_or(default_umax(std::max(sigma_ls_, 1e-12)));
  if (!(umax > config.u_min))
    throw std::domain_error("PremConfig: u_max must exceed u_min");
  GridPtr grid = ScaleGrid::uniform(config.u_min, umax, config.grid_size);
  pr_ = PrConfig(grid, make_psi0(grid, config.psi0, sigma_ls_));
  pr_.n_permutations = config.n_permutations;
  pr_.permutation_seed = config.permutation_seed;
}

double PremObjective::loglik(const Eigen::VectorXd& beta) const {
  const Eigen::VectorXd r = data_->residuals(beta);
  return pr_averaged(std::span<const double>(r.data(), r.size()), pr_,
                     config_.exec)
      .log_marginal;
}

PremObjective::EStep PremObjective::e_step(const Eigen::VectorXd& beta) const {
  const Eigen::VectorXd r = data_->residuals(beta);
  PrResult res = pr_averaged(std::span<const double>(r.data(), r.size()), pr_,
                             config_.exec);
  Eigen::VectorXd w =
      Eigen::Map<const Eigen::VectorXd>(res.per_obs_weights.data(),
                                        static_cast<Eigen::Index>(res.per_obs_weights.size()));
  return {std::move(w), res.log_marginal, std::move(res.psi_n)};
}

double pr_loglik(const Eigen::VectorXd& beta, const RegressionData& data,
                 const PremConfig& config) {
  return PremObjective(data, config).loglik(beta);
}

PremObjective::EStep e_step(const Eigen::VectorXd& beta,
                            const RegressionData& data,
                            const PremConfig& config) {
  return PremObjective(data, config).e_step(beta);
}

Eigen::VectorXd m_step(const RegressionData& data,
                       const Eigen::VectorXd& weights) {
  data.validate();
  return solve_wls(data.X, data.y, weights, data.column_names);
}

PremFit prem_fit(const RegressionData& data, const PremConfig& config) {
  PremObjective obj(data, config);

  Eigen::VectorXd beta = config.beta_init.value_or(obj.beta_ols());
  if (beta.size() != data.p())
    throw std::domain_error("prem_fit: beta_init dimension mismatch");

  std::vector<double> path;
  path.reserve(config.max_iterations + 1);
  std::size_t violations = 0;
  auto record = [&](double ll) {
    if (!path.empty() && ll < path.back() - 1e-6 * std::abs(path.back()))
      ++violations;
    path.push_back(ll);
  };

  bool converged = false;
  std::size_t iterations = 0;
  for (std::size_t t = 0; t < config.max_iterations; ++t) {
    const auto es = obj.e_step(beta);
    record(es.loglik);
    Eigen::VectorXd beta_next = m_step(data, es.weights);
    ++iterations;
    const double delta = (beta_next - beta).lpNorm<1>();
    beta = std::move(beta_next);
    if (delta < config.tol_delta) {
      converged = true;
      break;
    }
  }

  // Concluding E-step so weights, psi, and the last path entry refer to the
  // returned beta.
  auto last = obj.e_step(beta);
  record(last.loglik);

  return {std::move(beta),      std::move(last.psi),
          std::move(last.weights), std::move(path),
          iterations,           converged,
          obj.sigma_hat_ls(),   violations};
}

}  // namespace prreg
