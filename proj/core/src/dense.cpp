#include "sparsehard/dense.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "sparsehard/errors.hpp"

namespace sparsehard {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw InvalidArgument("matrix entry count " +
                          std::to_string(entries_.size()) + " != " +
                          std::to_string(rows) + "x" + std::to_string(cols));
  }
  for (double v : entries_) {
    if (!std::isfinite(v)) throw InvalidArgument("matrix entry not finite");
  }
}

DenseMatrix DenseMatrix::Identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::FromColumns(std::span<const Vector> columns) {
  if (columns.empty()) return {};
  const std::size_t rows = columns.front().size();
  DenseMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) {
      throw InvalidArgument("columns have different lengths");
    }
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Vector DenseMatrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Vector DenseMatrix::multiply(std::span<const double> x) const {
  if (x.size() != cols_) {
    throw InvalidArgument("multiply: vector length " +
                          std::to_string(x.size()) + " != cols " +
                          std::to_string(cols_));
  }
  Vector out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = dot(row(i), x);
  return out;
}

Vector DenseMatrix::multiply_transpose(std::span<const double> y) const {
  if (y.size() != rows_) {
    throw InvalidArgument("multiply_transpose: vector length " +
                          std::to_string(y.size()) + " != rows " +
                          std::to_string(rows_));
  }
  Vector out(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double yi = y[i];
    if (yi == 0.0) continue;
    auto r = row(i);
    for (std::size_t j = 0; j < cols_; ++j) out[j] += r[j] * yi;
  }
  return out;
}

std::size_t SparseSolution::nnz(double nonzero_threshold) const {
  std::size_t n = 0;
  for (double c : coeffs) {
    if (std::abs(c) > nonzero_threshold) ++n;
  }
  return n;
}

Vector SparseSolution::dense(std::size_t p) const {
  Vector x(p, 0.0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] >= p) throw InvalidArgument("support index out of range");
    x[support[i]] = coeffs[i];
  }
  return x;
}

SparseSolution SparseSolution::FromDense(std::span<const double> x,
                                         double nonzero_threshold) {
  SparseSolution s;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (std::abs(x[j]) > nonzero_threshold) {
      s.support.push_back(j);
      s.coeffs.push_back(x[j]);
    }
  }
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(std::span<const double> a) { return dot(a, a); }

double residual_sq(const DenseMatrix& b, std::span<const double> x,
                   std::span<const double> y) {
  if (y.size() != b.rows()) {
    throw InvalidArgument("residual: target length " +
                          std::to_string(y.size()) + " != rows " +
                          std::to_string(b.rows()));
  }
  const Vector bx = b.multiply(x);
  double s = 0.0;
  for (std::size_t i = 0; i < bx.size(); ++i) {
    const double d = bx[i] - y[i];
    s += d * d;
  }
  return s;
}

Vector ones(std::size_t n) { return Vector(n, 1.0); }

}  // namespace sparsehard
