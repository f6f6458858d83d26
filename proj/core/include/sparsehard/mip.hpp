#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sparsehard {

// A two-prover one-round proof system given by its tables:
//   R      verifier seeds 0..num_r-1
//   Q1, Q2 question sets, A1, A2 answer sets (separate index families, so
//          question and answer spaces of the two provers never overlap)
//   q[r,i] the question seed r sends to prover i
//   UA     partial map (r, a1) -> the unique accepted a2
// The verifier accepts (r, a1, a2) iff UA[r, a1] is defined and equals a2.
class MipDescription {
 public:
  MipDescription(std::size_t num_r, std::size_t q1_size, std::size_t q2_size,
                 std::size_t a1_size, std::size_t a2_size);

  std::size_t num_r() const { return num_r_; }
  std::size_t q1_size() const { return q1_size_; }
  std::size_t q2_size() const { return q2_size_; }
  std::size_t a1_size() const { return a1_size_; }
  std::size_t a2_size() const { return a2_size_; }

  void set_queries(std::size_t r, std::size_t q1, std::size_t q2);
  std::size_t query(std::size_t r, int prover) const {
    return queries_[r][prover - 1];
  }

  // Defines UA[r, a1] = a2. Redefining a key to a different a2 throws:
  // at most one a2 may be accepted per (r, a1).
  void set_accepted(std::size_t r, std::size_t a1, std::size_t a2);
  std::optional<std::size_t> accepted(std::size_t r, std::size_t a1) const;
  std::size_t accepted_count() const;

  std::optional<double> soundness_error() const { return soundness_error_; }
  void set_soundness_error(double eps) { soundness_error_ = eps; }

  bool accepts(std::size_t r, std::size_t a1, std::size_t a2) const {
    auto a = accepted(r, a1);
    return a && *a == a2;
  }

  friend bool operator==(const MipDescription&,
                         const MipDescription&) = default;

 private:
  std::size_t num_r_, q1_size_, q2_size_, a1_size_, a2_size_;
  std::vector<std::array<std::size_t, 2>> queries_;
  std::vector<std::int64_t> ua_;  // num_r * a1_size, -1 = undefined
  std::optional<double> soundness_error_;
};

struct ProverStrategy {
  std::vector<std::size_t> p1;  // Q1 -> A1
  std::vector<std::size_t> p2;  // Q2 -> A2
};

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const;
  const ValidationCheck* find(const std::string& name) const;
};

// Reports the four canonical properties: "uniformity",
// "equal_question_sizes", "disjointness", "functionality".
ValidationReport validate_canonical(const MipDescription& mip);

// R = Q1 x Q2 with r = q1 * nq + q2; UA[r, a] = a for every r.
MipDescription toy_equality_mip(std::size_t nq, std::size_t na);
// Every prover answers 0; wins every round of toy_equality_mip.
ProverStrategy constant_strategy(const MipDescription& mip,
                                 std::size_t answer = 0);

// Two questions and two answers per prover; the four seeds are the edges of
// the 4-cycle Q1 x Q2. Three edges demand equal answers, one demands
// different answers, so no strategy wins more than 3 of 4 rounds.
MipDescription toy_xor_mip();

// Throws InvalidArgument if the strategy is not total on Q1 / Q2 or
// answers out of range.
void check_strategy(const MipDescription& mip, const ProverStrategy& s);

// Fraction of seeds r with UA[r, P1(q[r,1])] == P2(q[r,2]).
double strategy_value(const MipDescription& mip, const ProverStrategy& s);

struct BestStrategy {
  double value = 0.0;
  ProverStrategy strategy;
};

// Exact optimum. Enumerates every P1 (|A1|^|Q1| of them) and answers each
// Q2 question with its best response. Throws LimitExceeded if
// |A1|^|Q1| > cap.
BestStrategy best_strategy(const MipDescription& mip,
                           std::uint64_t cap = 10'000'000);

// Bipartite multigraph (Q1, Q2, R) with a partial projection pi_r: A1 -> A2
// on every edge.
struct ProjectionGame {
  std::size_t q1_size = 0, q2_size = 0, a1_size = 0, a2_size = 0;
  struct Edge {
    std::size_t q1 = 0, q2 = 0;
    std::vector<std::int64_t> pi;  // length a1_size, -1 = undefined

    friend bool operator==(const Edge&, const Edge&) = default;
  };
  std::vector<Edge> edges;

  friend bool operator==(const ProjectionGame&,
                         const ProjectionGame&) = default;
};

ProjectionGame mip_to_projection_game(const MipDescription& mip);
MipDescription projection_game_to_mip(const ProjectionGame& game);
// Fraction of edges with pi_r(P1(q1)) defined and equal to P2(q2).
double projection_game_value(const ProjectionGame& game,
                             const ProverStrategy& s);

}  // namespace sparsehard
