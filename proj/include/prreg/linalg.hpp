#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace prreg {

// Weighted least squares min_b || W^(1/2) (y - X b) ||^2 via column-pivoted
// QR on the scaled system. Throws numerical_error naming the deficient
// columns when rank(W^(1/2) X) < p.
Eigen::VectorXd solve_wls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& weights,
                          const std::vector<std::string>& column_names);

// Unweighted special case.
Eigen::VectorXd solve_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const std::vector<std::string>& column_names);

// Throws numerical_error naming the deficient columns if X lacks full
// column rank.
void require_full_column_rank(const Eigen::MatrixXd& X,
                              const std::vector<std::string>& column_names);

}  // namespace prreg
