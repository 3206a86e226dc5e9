#include "prreg/linalg.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "prreg/errors.hpp"

namespace prreg {

namespace {

std::string deficient_column_message(
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr,
    const std::vector<std::string>& column_names, const char* what) {
  const auto perm = qr.colsPermutation().indices();
  std::ostringstream out;
  out << what << ": rank " << qr.rank() << " < " << perm.size()
      << "; deficient columns:";
  for (Eigen::Index i = qr.rank(); i < perm.size(); ++i) {
    const Eigen::Index col = perm[i];
    out << ' ';
    if (col < static_cast<Eigen::Index>(column_names.size()))
      out << column_names[col];
    else
      out << "column " << col;
  }
  return out.str();
}

}  // namespace

Eigen::VectorXd solve_wls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& weights,
                          const std::vector<std::string>& column_names) {
  if (X.rows() != y.size() || X.rows() != weights.size())
    throw std::domain_error("solve_wls: dimension mismatch");
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw std::domain_error("solve_wls: weights must be positive and finite");

  const Eigen::VectorXd sqw = weights.array().sqrt();
  const Eigen::MatrixXd A = sqw.asDiagonal() * X;
  const Eigen::VectorXd b = sqw.asDiagonal() * y;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < X.cols())
    throw numerical_error(
        deficient_column_message(qr, column_names, "solve_wls: singular system"));
  return qr.solve(b);
}

Eigen::VectorXd solve_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const std::vector<std::string>& column_names) {
  if (X.rows() != y.size()) throw std::domain_error("solve_ols: dimension mismatch");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < X.cols())
    throw numerical_error(
        deficient_column_message(qr, column_names, "solve_ols: rank-deficient design"));
  return qr.solve(y);
}

void require_full_column_rank(const Eigen::MatrixXd& X,
                              const std::vector<std::string>& column_names) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < X.cols())
    throw numerical_error(
        deficient_column_message(qr, column_names, "design matrix is rank-deficient"));
}

}  // namespace prreg
