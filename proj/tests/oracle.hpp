#pragma once

// Reference computations for tests, written against Eigen so they share no
// code with the library under test.

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "sparsehard/dense.hpp"

namespace oracle {

inline Eigen::MatrixXd to_eigen(const sparsehard::DenseMatrix& b) {
  Eigen::MatrixXd m(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) = b(i, j);
  return m;
}

inline Eigen::VectorXd to_eigen(std::span<const double> v) {
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out(i) = v[i];
  return out;
}

// min_c ||A c - y||^2 by complete orthogonal decomposition (handles rank
// deficiency).
inline double min_residual_sq(const Eigen::MatrixXd& a, const Eigen::VectorXd& y) {
  if (a.cols() == 0) return y.squaredNorm();
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  const Eigen::VectorXd c = cod.solve(y);
  return (a * c - y).squaredNorm();
}

inline double min_residual_sq(const sparsehard::DenseMatrix& b,
                              std::span<const double> y,
                              const std::vector<std::size_t>& support) {
  const Eigen::MatrixXd full = to_eigen(b);
  Eigen::MatrixXd sub(b.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k) sub.col(k) = full.col(support[k]);
  return min_residual_sq(sub, to_eigen(y));
}

inline double projection_sq(const std::vector<std::vector<double>>& vectors,
                            std::span<const double> target) {
  const Eigen::VectorXd t = to_eigen(target);
  Eigen::MatrixXd a(t.size(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) a.col(k) = to_eigen(vectors[k]);
  return t.squaredNorm() - min_residual_sq(a, t);
}

}  // namespace oracle
