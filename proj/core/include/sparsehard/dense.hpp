#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sparsehard/tolerances.hpp"

namespace sparsehard {

using Vector = std::vector<double>;

// Row-major dense matrix of finite doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  // Zero-filled rows x cols matrix.
  DenseMatrix(std::size_t rows, std::size_t cols);
  // Takes ownership of row-major entries; throws InvalidArgument if the
  // length is wrong or any entry is non-finite.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static DenseMatrix Identity(std::size_t n);
  // Builds a matrix whose j-th column is columns[j].
  static DenseMatrix FromColumns(std::span<const Vector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  Vector column(std::size_t j) const;
  std::span<const double> entries() const { return entries_; }

  // B * x; x.size() must equal cols().
  Vector multiply(std::span<const double> x) const;
  // B^T * y; y.size() must equal rows().
  Vector multiply_transpose(std::span<const double> y) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

// Sparse coefficient vector over the columns of some matrix.
struct SparseSolution {
  std::vector<std::size_t> support;  // sorted, distinct
  std::vector<double> coeffs;        // aligned with support
  double residual_sq = 0.0;

  // Number of coefficients with |c| > nonzero_threshold.
  std::size_t nnz(double nonzero_threshold = kDefaultTolerances.nonzero) const;
  // Expands to a length-p dense vector.
  Vector dense(std::size_t p) const;
  // Keeps the entries of x with |x_j| > nonzero_threshold; residual_sq is
  // left at zero for the caller to fill in.
  static SparseSolution FromDense(std::span<const double> x,
                                  double nonzero_threshold =
                                      kDefaultTolerances.nonzero);
};

double dot(std::span<const double> a, std::span<const double> b);
double norm_sq(std::span<const double> a);
// ||B x - y||^2.
double residual_sq(const DenseMatrix& b, std::span<const double> x,
                   std::span<const double> y);
Vector ones(std::size_t n);

}  // namespace sparsehard
