#include "sparsehard/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "parallel.hpp"
#include "sparsehard/errors.hpp"
#include "sparsehard/linalg.hpp"

namespace sparsehard {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = n - k + i;
    if (result > kSaturated / factor) return kSaturated;
    result = result * factor / i;
  }
  return result;
}

// The rank-th k-combination of {0..n-1} in lexicographic order.
std::vector<std::size_t> unrank_combination(std::uint64_t rank, std::size_t n,
                                            std::size_t k) {
  std::vector<std::size_t> c;
  c.reserve(k);
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    for (std::size_t v = next;; ++v) {
      const std::uint64_t block = binomial(n - v - 1, k - slot - 1);
      if (rank < block) {
        c.push_back(v);
        next = v + 1;
        break;
      }
      rank -= block;
    }
  }
  return c;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

void check_target(const DenseMatrix& b, std::span<const double> y) {
  if (y.size() != b.rows()) {
    throw InvalidArgument("target length " + std::to_string(y.size()) +
                          " != rows " + std::to_string(b.rows()));
  }
}

}  // namespace

ExhaustiveResult exhaustive_sparse_solve(const DenseMatrix& b,
                                         std::span<const double> y,
                                         std::size_t k, double eps,
                                         const ExhaustiveOptions& options) {
  check_target(b, y);
  if (eps < 0) throw InvalidArgument("eps must be >= 0");
  const std::size_t p = b.cols();
  const std::size_t top = std::min(k, p);
  std::uint64_t total = 0;
  for (std::size_t j = 0; j <= top; ++j) {
    const std::uint64_t c = binomial(p, j);
    total = (c > kSaturated - total) ? kSaturated : total + c;
  }
  if (total > options.subset_cap) {
    throw LimitExceeded("exhaustive search over " + std::to_string(total) +
                        " supports exceeds the cap " +
                        std::to_string(options.subset_cap));
  }

  struct Best {
    bool found = false;
    SparseSolution solution;
  };
  ExhaustiveResult result;
  Best best;
  for (std::size_t size = top + 1; size-- > 0;) {
    const std::uint64_t count = binomial(p, size);
    auto partial = internal::map_chunks<Best>(
        count, options.workers, [&](std::size_t lo, std::size_t hi) {
          Best local;
          if (lo >= hi) return local;
          auto c = unrank_combination(lo, p, size);
          for (std::size_t rank = lo; rank < hi; ++rank) {
            auto sol = least_squares_on_support(b, y, c, options.tol);
            if (!local.found ||
                sol.residual_sq < local.solution.residual_sq) {
              local.found = true;
              local.solution = std::move(sol);
            }
            next_combination(c, p);
          }
          return local;
        });
    for (auto& part : partial) {
      if (part.found && (!best.found || part.solution.residual_sq <
                                            best.solution.residual_sq)) {
        best = std::move(part);
      }
    }
    result.subsets_examined += count;
  }
  result.solution = std::move(best.solution);
  result.within_eps = result.solution.residual_sq <= eps * eps + options.tol.abs;
  return result;
}

StepwiseResult forward_stepwise(const DenseMatrix& b,
                                std::span<const double> y, double eps,
                                std::size_t max_iter, const Tolerances& tol) {
  check_target(b, y);
  if (eps < 0) throw InvalidArgument("eps must be >= 0");
  const std::size_t m = b.rows();
  const std::size_t p = b.cols();

  std::vector<Vector> cols(p);
  bool any_nonzero = false;
  for (std::size_t j = 0; j < p; ++j) {
    cols[j] = b.column(j);
    if (norm_sq(cols[j]) > 0.0) any_nonzero = true;
  }
  if (!any_nonzero) throw InvalidArgument("every column of B is zero");

  StepwiseResult out;
  Vector residual(y.begin(), y.end());
  std::vector<bool> selected(p, false);
  std::vector<std::size_t> order;
  out.trace.initial_residual_norm = std::sqrt(norm_sq(residual));
  const double nan = std::numeric_limits<double>::quiet_NaN();

  double rnorm = out.trace.initial_residual_norm;
  while (rnorm > eps) {
    if (out.trace.iterations.size() >= max_iter) {
      out.trace.hit_max_iter = true;
      break;
    }
    StepwiseIteration it;
    it.scores.assign(p, nan);
    std::size_t pick = p;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < p; ++j) {
      if (selected[j]) continue;
      const double norm = std::sqrt(norm_sq(cols[j]));
      if (norm <= tol.nonzero) continue;
      const double score = dot(residual, cols[j]) / norm;
      it.scores[j] = score;
      // Scan in index order and require a strict improvement beyond
      // rounding noise, so exact and near-exact ties keep the lowest index.
      if (pick == p || score > best + 1e-12 * std::max(1.0, std::abs(best))) {
        pick = j;
        best = score;
      }
    }
    if (pick == p) {
      out.trace.exhausted = true;
      break;
    }

    const Vector dir = cols[pick];
    const double dir_sq = norm_sq(dir);
    auto remove_dir = [&](Vector& u) {
      const double c = dot(u, dir) / dir_sq;
      if (c == 0.0) return;
      for (std::size_t i = 0; i < m; ++i) u[i] -= c * dir[i];
    };
    remove_dir(residual);
    for (std::size_t j = 0; j < p; ++j) {
      if (!selected[j] && j != pick) remove_dir(cols[j]);
    }
    selected[pick] = true;
    order.push_back(pick);
    out.directions.push_back(dir);

    rnorm = std::sqrt(norm_sq(residual));
    it.selected = pick;
    it.score = best;
    it.residual_norm = rnorm;
    it.residual = residual;
    out.trace.iterations.push_back(std::move(it));
  }
  out.trace.converged = rnorm <= eps;

  out.solution = least_squares_on_support(b, y, order, tol);
  out.residual = std::move(residual);
  out.orthogonalized_columns = std::move(cols);
  return out;
}

LassoResult lasso_coordinate_descent(const DenseMatrix& b,
                                     std::span<const double> y, double lambda,
                                     double tol, std::size_t max_iter,
                                     const Tolerances& tols) {
  check_target(b, y);
  if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be >= 0");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be > 0");
  const std::size_t m = b.rows();
  const std::size_t p = b.cols();
  std::vector<Vector> cols(p);
  Vector col_sq(p);
  for (std::size_t j = 0; j < p; ++j) {
    cols[j] = b.column(j);
    col_sq[j] = norm_sq(cols[j]);
  }

  LassoResult out;
  out.coefficients.assign(p, 0.0);
  Vector& x = out.coefficients;
  Vector r(y.begin(), y.end());
  for (std::size_t sweep = 0; sweep < max_iter; ++sweep) {
    double max_change = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (col_sq[j] == 0.0) continue;
      const double rho = dot(cols[j], r) + col_sq[j] * x[j];
      double next = 0.0;
      if (rho > lambda) {
        next = (rho - lambda) / col_sq[j];
      } else if (rho < -lambda) {
        next = (rho + lambda) / col_sq[j];
      }
      const double change = next - x[j];
      if (change != 0.0) {
        for (std::size_t i = 0; i < m; ++i) r[i] -= cols[j][i] * change;
        x[j] = next;
        max_change = std::max(max_change, std::abs(change));
      }
    }
    out.iterations = sweep + 1;
    if (max_change <= tol) {
      out.converged = true;
      break;
    }
  }
  out.solution = SparseSolution::FromDense(x, tols.nonzero);
  out.solution.residual_sq = norm_sq(r);
  return out;
}

bool certificate_check(const DenseMatrix& b, const SparseSolution& x,
                       std::size_t k, double g, double h,
                       const Tolerances& tol) {
  const double budget = static_cast<double>(k) * g;
  if (static_cast<double>(x.nnz(tol.nonzero)) > budget) return false;
  const Vector dense = x.dense(b.cols());
  return residual_sq(b, dense, ones(b.rows())) <= h + tol.abs;
}

}  // namespace sparsehard
