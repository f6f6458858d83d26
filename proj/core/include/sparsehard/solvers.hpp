#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sparsehard/dense.hpp"
#include "sparsehard/tolerances.hpp"

namespace sparsehard {

struct ExhaustiveOptions {
  std::uint64_t subset_cap = 10'000'000;
  unsigned workers = 1;
  Tolerances tol = kDefaultTolerances;
};

struct ExhaustiveResult {
  SparseSolution solution;  // best support of size <= k
  // False when the best residual exceeds eps^2 ("none" in the decision
  // sense); the solution is still reported.
  bool within_eps = false;
  std::uint64_t subsets_examined = 0;
};

// Tries every support of size min(k, p) (lexicographic), then every smaller
// size, and keeps the smallest residual; ties go to the first support seen.
// Throws LimitExceeded if the total number of supports exceeds the cap.
ExhaustiveResult exhaustive_sparse_solve(const DenseMatrix& b,
                                         std::span<const double> y,
                                         std::size_t k, double eps,
                                         const ExhaustiveOptions& options = {});

struct StepwiseIteration {
  std::size_t selected = 0;
  double score = 0.0;
  double residual_norm = 0.0;  // ||b'|| after the update
  Vector residual;             // b' after the update
  // Score of every column at this iteration; NaN for columns already
  // selected or whose orthogonalized norm is <= tol.nonzero.
  std::vector<double> scores;
};

struct StepwiseTrace {
  std::vector<StepwiseIteration> iterations;
  double initial_residual_norm = 0.0;
  bool converged = false;     // ||b'|| <= eps on exit
  bool hit_max_iter = false;  // stopped by max_iter with ||b'|| > eps
  bool exhausted = false;     // no scorable column left with ||b'|| > eps
};

struct StepwiseResult {
  SparseSolution solution;  // least squares over the selected columns
  StepwiseTrace trace;
  Vector residual;          // final b'
  // Orthogonalized selected columns v*, in selection order.
  std::vector<Vector> directions;
  // Final state of every column after all orthogonalization steps.
  std::vector<Vector> orthogonalized_columns;
};

// Forward stepwise selection (orthogonal least squares): repeatedly picks
// the unselected column maximizing (b' . v') / ||v'|| over the current
// orthogonalized columns (ties to the lowest index), then removes the
// picked direction from b' and every remaining column. Stops once
// ||b'|| <= eps or after max_iter selections.
StepwiseResult forward_stepwise(const DenseMatrix& b,
                                std::span<const double> y, double eps,
                                std::size_t max_iter,
                                const Tolerances& tol = kDefaultTolerances);

struct LassoResult {
  SparseSolution solution;
  Vector coefficients;  // dense, length p
  bool converged = false;
  std::size_t iterations = 0;  // full sweeps
};

// Cyclic coordinate descent with soft thresholding on
// 0.5 ||y - B x||^2 + lambda ||x||_1. Converged when the largest
// coordinate change in a sweep is <= tol.
LassoResult lasso_coordinate_descent(const DenseMatrix& b,
                                     std::span<const double> y, double lambda,
                                     double tol, std::size_t max_iter,
                                     const Tolerances& tols =
                                         kDefaultTolerances);

// Accepts iff ||x||_0 <= k * g and ||B x - e||^2 <= h (+ tol.abs), with the
// residual recomputed from B.
bool certificate_check(const DenseMatrix& b, const SparseSolution& x,
                       std::size_t k, double g, double h,
                       const Tolerances& tol = kDefaultTolerances);

}  // namespace sparsehard
