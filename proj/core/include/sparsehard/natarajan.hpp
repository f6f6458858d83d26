#pragma once

#include <cstddef>
#include <string>

#include "sparsehard/dense.hpp"
#include "sparsehard/solvers.hpp"

namespace sparsehard {

// The bad instance for forward stepwise selection. Columns, in order:
// v_1..v_{m/2} (v_i has ones at 1-based positions 2i-1 and 2i), then
// v+ = gamma + delta e and v- = -gamma + delta e with
// gamma = (1,-1,1,-1,...) and delta = 1/sqrt(m). Target b = e, eps = sqrt(2)/2.
// Since (v+ + v-) / (2 delta) = e, two columns suffice; stepwise needs m/2.
struct NatarajanInstance {
  std::size_t m = 0;
  DenseMatrix b;
  Vector target;
  double eps = 0.0;
  double delta = 0.0;

  std::size_t plus_column() const { return m / 2; }
  std::size_t minus_column() const { return m / 2 + 1; }
};

NatarajanInstance build_natarajan_instance(std::size_t m);

// Score of an unselected paired column at iteration h (always sqrt 2).
double natarajan_paired_score();
// Score of v+' (and v-') at iteration h, when b' = p_{m-2h} and
// v+-' = +-gamma + delta p_{m-2h}:
//   (m-2h) delta / sqrt(m + (m-2h) delta^2).
double natarajan_plus_minus_score(std::size_t m, std::size_t h);

struct NatarajanReport {
  bool passed = false;
  std::string first_failure;  // empty when passed
  StepwiseResult stepwise;
  ExhaustiveResult exhaustive;
  std::size_t iterations = 0;
  std::size_t opt = 2;             // sparsity of the exhaustive solution
  double iteration_ratio = 0.0;    // iterations / opt = m/4
  double log_ratio = 0.0;          // ln(||b|| / eps) = ln(2 sqrt m)
  double log_ratio_bound = 0.0;    // 1 + 0.5 ln m
  double pinv_norm_sq = 0.0;       // ||Bbar^+||^2, Bbar = column-normalized B
};

// Runs forward stepwise (eps = sqrt 2 / 2, lowest-index ties) and exhaustive
// search (k = 2, eps/2) and checks the proven trace: selections v_1..v_{m/2}
// in order, b' = p_{m-2h} after each step, m/2 iterations, the closed-form
// scores at each step, and an exact 2-sparse solution.
NatarajanReport verify_natarajan_trace(const NatarajanInstance& inst,
                                       double tolerance = 1e-9);

}  // namespace sparsehard
