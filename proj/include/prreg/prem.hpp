#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prreg/pr.hpp"

namespace prreg {

struct RegressionData {
  Eigen::MatrixXd X;  // n x p, rows are observations
  Eigen::VectorXd y;  // n
  std::vector<std::string> column_names;
  bool has_intercept = false;

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index p() const { return X.cols(); }
  // Shape and finiteness; full column rank is checked at fit time.
  void validate() const;
  Eigen::VectorXd residuals(const Eigen::VectorXd& beta) const;
};

enum class Psi0Kind {
  Uniform,          // flat on the support
  TruncatedGamma,   // gamma with mode at the least-squares scale, truncated
};

struct PremConfig {
  std::size_t grid_size = 100;
  double u_min = 1e-5;
  std::optional<double> u_max;  // defaults to default_umax(sigma_hat_ls)
  std::size_t n_permutations = 25;
  std::uint64_t permutation_seed = 0;
  Psi0Kind psi0 = Psi0Kind::Uniform;
  double tol_delta = 1e-4;          // L1 norm on successive beta iterates
  std::size_t max_iterations = 200;
  std::optional<Eigen::VectorXd> beta_init;  // defaults to OLS
  ExecMode exec = ExecMode::Parallel;
};

struct PremFit {
  Eigen::VectorXd beta_hat;
  MixingDensity psi_hat;
  Eigen::VectorXd obs_weights;
  std::vector<double> loglik_path;  // one entry per E-step, final included
  std::size_t iterations = 0;       // M-steps taken
  bool converged = false;
  double sigma_hat_ls = 0.0;        // OLS RMSE used for the support rule
  std::size_t ascent_violations = 0;  // E-steps where the path dropped
};

// Support upper endpoint rule: max(50, 3 sigma).
double default_umax(double sigma_hat_ls);

// Residual sweep objective and E-step, with the scale grid, psi0, and
// permutations fixed once from the data. All evaluations with the same
// data/config are deterministic, so the objective is noise-free.
class PremObjective {
 public:
  PremObjective(const RegressionData& data, const PremConfig& config);

  double loglik(const Eigen::VectorXd& beta) const;

  struct EStep {
    Eigen::VectorXd weights;
    double loglik = 0.0;
    MixingDensity psi;
  };
  EStep e_step(const Eigen::VectorXd& beta) const;

  double sigma_hat_ls() const { return sigma_ls_; }
  const Eigen::VectorXd& beta_ols() const { return beta_ols_; }
  const PrConfig& pr_config() const { return pr_; }

 private:
  const RegressionData* data_;
  PremConfig config_;
  Eigen::VectorXd beta_ols_;
  double sigma_ls_;
  PrConfig pr_;
};

// Permutation-averaged PR marginal log-likelihood at beta.
double pr_loglik(const Eigen::VectorXd& beta, const RegressionData& data,
                 const PremConfig& config);

// One E-step at beta: per-observation expected-precision weights, the
// objective value, and the averaged mixing density.
PremObjective::EStep e_step(const Eigen::VectorXd& beta,
                            const RegressionData& data,
                            const PremConfig& config);

// Weighted least squares M-step.
Eigen::VectorXd m_step(const RegressionData& data,
                       const Eigen::VectorXd& weights);

// Full PR-EM fit: alternate e_step/m_step from the OLS start until the L1
// change in beta falls below tol_delta or max_iterations is reached. The
// reported weights and mixing density come from a concluding E-step at the
// final beta so all outputs are mutually consistent.
PremFit prem_fit(const RegressionData& data, const PremConfig& config = {});

}  // namespace prreg
