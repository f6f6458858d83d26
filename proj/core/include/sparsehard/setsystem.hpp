#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sparsehard/dense.hpp"
#include "sparsehard/tolerances.hpp"

namespace sparsehard {

// Fixed-length bit vector; the indicator of a subset of {0, ..., size-1}.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size);
  // Parses a string over {0,1}; throws InvalidArgument on other characters.
  static BitVector FromString(std::string_view bits);

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool value = true);
  std::size_t count() const;
  BitVector complement() const;
  std::string to_string() const;
  // 0/1 doubles.
  Vector to_vector() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// M distinct subsets V_1..V_M of a universe S, with the sparsity parameter
// ell and usefulness radius delta they were built for.
class SetSystem {
 public:
  // Throws InvalidArgument unless sets is non-empty, all sets have the same
  // positive size, all sets are distinct and delta >= 0.
  SetSystem(std::vector<BitVector> sets, int ell, double delta);

  std::size_t num_sets() const { return sets_.size(); }
  std::size_t universe_size() const { return universe_size_; }
  int ell() const { return ell_; }
  double delta() const { return delta_; }
  const BitVector& set(std::size_t i) const { return sets_[i]; }
  const std::vector<BitVector>& sets() const { return sets_; }

  // v_i and its complement as 0/1 vectors of length |S|.
  Vector indicator(std::size_t i) const { return sets_[i].to_vector(); }
  Vector complement_indicator(std::size_t i) const {
    return sets_[i].complement().to_vector();
  }

 private:
  std::vector<BitVector> sets_;
  std::size_t universe_size_;
  int ell_;
  double delta_;
};

// ceil(256 * ell^2 * ln M). Requires M >= 2 and ell >= 1.
std::size_t required_universe_size(std::size_t num_sets, int ell);

// |S| / 32.
double usefulness_delta(std::size_t universe_size);

// M distinct uniformly random subsets. With no override the universe has
// required_universe_size(M, ell) elements and delta = |S|/32; with an
// override delta is 0 (no guarantee). Deterministic in seed.
SetSystem generate_set_system(std::size_t num_sets, int ell,
                              std::uint64_t seed,
                              std::optional<std::size_t> universe_override =
                                  std::nullopt);

// Number of subsets of {v_i, vbar_i} with at most ell members and no
// complementary pair: sum_{j <= ell} C(M, j) 2^j. Saturates at UINT64_MAX.
std::uint64_t admissible_subset_count(std::size_t num_sets, int ell);

struct MarginOptions {
  std::uint64_t enumeration_cap = 1'000'000;
  unsigned workers = 1;
  Tolerances tol = kDefaultTolerances;
};

// Exact brute force: min over admissible Z of ||e - Pi_Z(e)||^2. The system
// is Delta-useful for every Delta strictly below the returned value. Throws
// LimitExceeded if the admissible count exceeds the cap.
double usefulness_margin(const SetSystem& sys, int ell,
                         const MarginOptions& options = {});

struct ProjectionStats {
  std::size_t trials = 0;
  std::size_t dimension = 0;
  double max_proj_sq = 0.0;
  double mean_proj_sq = 0.0;
  double bound = 0.0;  // 128 * ell^2 * ln M
  std::size_t violations = 0;
};

// Per trial: ell independent uniform +-1 vectors in dimension
// required_universe_size(M, max(ell, 1)); measures ||Pi_T(t)||^2 for the
// all-ones target (fixed_target) or a fresh uniform +-1 target.
ProjectionStats montecarlo_projection(std::size_t num_sets, int ell,
                                      std::size_t trials, std::uint64_t seed,
                                      bool fixed_target, unsigned workers = 1);

}  // namespace sparsehard
