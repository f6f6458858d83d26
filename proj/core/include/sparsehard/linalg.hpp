#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sparsehard/dense.hpp"
#include "sparsehard/tolerances.hpp"

namespace sparsehard {

// Incrementally built orthonormal basis (modified Gram-Schmidt with one
// reorthogonalization pass). Vectors whose orthogonal remainder has norm at
// or below the pivot threshold are rejected as dependent.
class OrthonormalBasis {
 public:
  explicit OrthonormalBasis(std::size_t dim,
                            const Tolerances& tol = kDefaultTolerances);

  // Returns true if v was independent of the current span and was added.
  bool add(std::span<const double> v);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return basis_.size(); }
  const Vector& vector(std::size_t i) const { return basis_[i]; }

  // Component of v orthogonal to the span.
  Vector remainder(std::span<const double> v) const;
  // ||Pi(v)||^2 computed as ||v||^2 - ||remainder||^2, clamped at 0.
  double projection_sq_norm(std::span<const double> v) const;

 private:
  void orthogonalize(Vector& w) const;

  std::size_t dim_;
  Tolerances tol_;
  std::vector<Vector> basis_;
};

// Minimum-residual coefficients for y over the columns of B listed in
// support. Columns dependent on earlier ones in the (sorted) support get
// coefficient 0. The returned support is sorted.
SparseSolution least_squares_on_support(
    const DenseMatrix& b, std::span<const double> y,
    std::span<const std::size_t> support,
    const Tolerances& tol = kDefaultTolerances);

// ||Pi_T(target)||^2 with T = span(vectors). An empty list gives 0.
double projection_sq_norm(std::span<const Vector> vectors,
                          std::span<const double> target,
                          const Tolerances& tol = kDefaultTolerances);

// Full-column-rank least squares via Householder QR. Throws RankDeficient
// naming how many columns fall below the pivot threshold.
Vector ordinary_least_squares(const DenseMatrix& x, std::span<const double> y,
                              const Tolerances& tol = kDefaultTolerances);

}  // namespace sparsehard
