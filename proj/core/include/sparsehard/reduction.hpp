#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sparsehard/dense.hpp"
#include "sparsehard/mip.hpp"
#include "sparsehard/setsystem.hpp"
#include "sparsehard/tolerances.hpp"

namespace sparsehard {

inline constexpr std::size_t kDefaultMaxRows = 10'000'000;

// Row and column indexing of the reduction matrix.
//   row (r, s)     -> r * |S| + s
//   column (q1,a1) -> q1 * |A1| + a1
//   column (q2,a2) -> |Q1| * |A1| + q2 * |A2| + a2
struct ReductionLayout {
  std::size_t num_r = 0, universe_size = 0;
  std::size_t q1_size = 0, q2_size = 0, a1_size = 0, a2_size = 0;

  static ReductionLayout For(const MipDescription& mip,
                             std::size_t universe_size);

  std::size_t rows() const { return num_r * universe_size; }
  std::size_t cols() const { return q1_size * a1_size + q2_size * a2_size; }
  std::size_t row(std::size_t r, std::size_t s) const {
    return r * universe_size + s;
  }
  std::size_t column1(std::size_t q1, std::size_t a1) const {
    return q1 * a1_size + a1;
  }
  std::size_t column2(std::size_t q2, std::size_t a2) const {
    return q1_size * a1_size + q2 * a2_size + a2;
  }
};

// Instance-level parameters of the soundness analysis.
struct ReductionParams {
  int ell = 3;
  std::size_t k = 0;     // |Q1| + |Q2|
  double sigma = 0.0;    // (1 - eps_sound * ell^2) * ell / 2
  double delta = 0.0;    // usefulness radius of the set system

  // Requires ell >= 3 and a soundness error recorded on the MIP.
  static ReductionParams For(const MipDescription& mip, int ell,
                             double delta);
};

struct BuildOptions {
  std::size_t max_rows = kDefaultMaxRows;
};

// 0/1 matrix with |R||S| rows and |Q1||A1| + |Q2||A2| columns. Column
// (q1, a1) is the indicator of {(r, s) : q[r,1] = q1, UA[r,a1] defined,
// s not in V_UA[r,a1]}; column (q2, a2) the indicator of
// {(r, s) : q[r,2] = q2, s in V_a2}. Requires sys.num_sets() == |A2|.
DenseMatrix build_matrix(const MipDescription& mip, const SetSystem& sys,
                         const BuildOptions& options = {});

// The 0/1 vector selecting column (q_i, P_i(q_i)) for every question of
// both provers. Checks first that the strategy wins every seed (throws
// VerificationFailed naming the first losing r), then checks B x = e
// exactly.
SparseSolution completeness_certificate(const MipDescription& mip,
                                        const ProverStrategy& strategy,
                                        const DenseMatrix& b);

struct CostReport {
  std::vector<std::size_t> cost_q1;  // active answers per Q1 question
  std::vector<std::size_t> cost_q2;
  std::vector<std::size_t> cost_r;   // cost(q[r,1]) + cost(q[r,2])
  std::vector<bool> good;            // cost_r <= ell
  double gamma = 0.0;                // fraction of good seeds
  std::size_t nnz = 0;               // ||x||_0
  double lower_bound = 0.0;          // (1 - gamma) * ell/2 * (|Q1| + |Q2|)
};

// x is indexed against ReductionLayout columns; membership uses
// tol.nonzero. Throws InvalidArgument on a layout mismatch.
CostReport sparsity_cost_report(std::span<const double> x,
                                const MipDescription& mip, int ell,
                                const Tolerances& tol = kDefaultTolerances);

struct StrategyExtraction {
  double value = 0.0;
  ProverStrategy strategy;
  std::size_t j1 = 0, j2 = 0;  // 0-based ranks of the winning pair
};

// Builds ell strategies per prover: strategy j answers question q with the
// j-th active answer of q in ascending index order, or answer 0 if q has
// fewer than j+1 active answers. Evaluates all ell^2 pairs and returns the
// best (lowest (j1, j2) among ties).
StrategyExtraction extract_strategies(
    std::span<const double> x, const MipDescription& mip, int ell,
    const Tolerances& tol = kDefaultTolerances);

}  // namespace sparsehard
