#include "sparsehard/mip.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparsehard/errors.hpp"

namespace sparsehard {

MipDescription::MipDescription(std::size_t num_r, std::size_t q1_size,
                               std::size_t q2_size, std::size_t a1_size,
                               std::size_t a2_size)
    : num_r_(num_r),
      q1_size_(q1_size),
      q2_size_(q2_size),
      a1_size_(a1_size),
      a2_size_(a2_size),
      queries_(num_r, {0, 0}),
      ua_(num_r * a1_size, -1) {
  if (num_r == 0 || q1_size == 0 || q2_size == 0 || a1_size == 0 ||
      a2_size == 0) {
    throw InvalidArgument("MIP sizes must all be positive");
  }
}

void MipDescription::set_queries(std::size_t r, std::size_t q1,
                                 std::size_t q2) {
  if (r >= num_r_) throw InvalidArgument("seed " + std::to_string(r) +
                                         " out of range");
  if (q1 >= q1_size_) throw InvalidArgument("q1 " + std::to_string(q1) +
                                            " out of range");
  if (q2 >= q2_size_) throw InvalidArgument("q2 " + std::to_string(q2) +
                                            " out of range");
  queries_[r] = {q1, q2};
}

void MipDescription::set_accepted(std::size_t r, std::size_t a1,
                                  std::size_t a2) {
  if (r >= num_r_) throw InvalidArgument("seed " + std::to_string(r) +
                                         " out of range");
  if (a1 >= a1_size_) throw InvalidArgument("a1 " + std::to_string(a1) +
                                            " out of range");
  if (a2 >= a2_size_) throw InvalidArgument("a2 " + std::to_string(a2) +
                                            " out of range");
  auto& slot = ua_[r * a1_size_ + a1];
  if (slot >= 0 && static_cast<std::size_t>(slot) != a2) {
    throw InvalidArgument("UA[" + std::to_string(r) + ", " +
                          std::to_string(a1) +
                          "] already maps to a different answer");
  }
  slot = static_cast<std::int64_t>(a2);
}

std::optional<std::size_t> MipDescription::accepted(std::size_t r,
                                                    std::size_t a1) const {
  const auto v = ua_[r * a1_size_ + a1];
  if (v < 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

std::size_t MipDescription::accepted_count() const {
  std::size_t n = 0;
  for (auto v : ua_) {
    if (v >= 0) ++n;
  }
  return n;
}

bool ValidationReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ValidationReport validate_canonical(const MipDescription& mip) {
  ValidationReport report;

  ValidationCheck uniform{"uniformity", true, ""};
  for (int prover = 1; prover <= 2; ++prover) {
    const std::size_t qs = prover == 1 ? mip.q1_size() : mip.q2_size();
    std::vector<std::size_t> hits(qs, 0);
    for (std::size_t r = 0; r < mip.num_r(); ++r) ++hits[mip.query(r, prover)];
    if (mip.num_r() % qs != 0) {
      uniform.pass = false;
      uniform.detail += "prover " + std::to_string(prover) + ": |R| = " +
                        std::to_string(mip.num_r()) +
                        " not divisible by |Q| = " + std::to_string(qs) + "; ";
      continue;
    }
    const std::size_t expected = mip.num_r() / qs;
    for (std::size_t q = 0; q < qs; ++q) {
      if (hits[q] != expected) {
        uniform.pass = false;
        uniform.detail += "prover " + std::to_string(prover) + " question " +
                          std::to_string(q) + " asked " +
                          std::to_string(hits[q]) + " times, expected " +
                          std::to_string(expected) + "; ";
        break;
      }
    }
  }
  report.checks.push_back(uniform);

  ValidationCheck equal{"equal_question_sizes",
                        mip.q1_size() == mip.q2_size(), ""};
  if (!equal.pass) {
    equal.detail = "|Q1| = " + std::to_string(mip.q1_size()) +
                   ", |Q2| = " + std::to_string(mip.q2_size());
  }
  report.checks.push_back(equal);

  report.checks.push_back(
      {"disjointness", true, "separate index families per prover"});
  report.checks.push_back(
      {"functionality", true, "UA stores one answer per (r, a1)"});
  return report;
}

MipDescription toy_equality_mip(std::size_t nq, std::size_t na) {
  if (nq < 1 || na < 1) throw InvalidArgument("nq and na must be >= 1");
  MipDescription mip(nq * nq, nq, nq, na, na);
  for (std::size_t q1 = 0; q1 < nq; ++q1) {
    for (std::size_t q2 = 0; q2 < nq; ++q2) {
      const std::size_t r = q1 * nq + q2;
      mip.set_queries(r, q1, q2);
      for (std::size_t a = 0; a < na; ++a) mip.set_accepted(r, a, a);
    }
  }
  return mip;
}

ProverStrategy constant_strategy(const MipDescription& mip,
                                 std::size_t answer) {
  return {std::vector<std::size_t>(mip.q1_size(), answer),
          std::vector<std::size_t>(mip.q2_size(), answer)};
}

MipDescription toy_xor_mip() {
  MipDescription mip(4, 2, 2, 2, 2);
  for (std::size_t q1 = 0; q1 < 2; ++q1) {
    for (std::size_t q2 = 0; q2 < 2; ++q2) {
      const std::size_t r = q1 * 2 + q2;
      mip.set_queries(r, q1, q2);
      const bool flip = (r == 3);
      for (std::size_t a = 0; a < 2; ++a) {
        mip.set_accepted(r, a, flip ? 1 - a : a);
      }
    }
  }
  return mip;
}

void check_strategy(const MipDescription& mip, const ProverStrategy& s) {
  if (s.p1.size() != mip.q1_size() || s.p2.size() != mip.q2_size()) {
    throw InvalidArgument("strategy is not total on Q1 / Q2");
  }
  for (auto a : s.p1) {
    if (a >= mip.a1_size()) throw InvalidArgument("P1 answer out of range");
  }
  for (auto a : s.p2) {
    if (a >= mip.a2_size()) throw InvalidArgument("P2 answer out of range");
  }
}

double strategy_value(const MipDescription& mip, const ProverStrategy& s) {
  check_strategy(mip, s);
  std::size_t wins = 0;
  for (std::size_t r = 0; r < mip.num_r(); ++r) {
    if (mip.accepts(r, s.p1[mip.query(r, 1)], s.p2[mip.query(r, 2)])) ++wins;
  }
  return static_cast<double>(wins) / static_cast<double>(mip.num_r());
}

BestStrategy best_strategy(const MipDescription& mip, std::uint64_t cap) {
  const long double total = std::pow(static_cast<long double>(mip.a1_size()),
                                     static_cast<long double>(mip.q1_size()));
  if (total > static_cast<long double>(cap)) {
    throw LimitExceeded("best_strategy: |A1|^|Q1| exceeds cap " +
                        std::to_string(cap));
  }
  // Seeds grouped by their Q2 question.
  std::vector<std::vector<std::size_t>> by_q2(mip.q2_size());
  for (std::size_t r = 0; r < mip.num_r(); ++r) {
    by_q2[mip.query(r, 2)].push_back(r);
  }

  BestStrategy best;
  best.value = -1.0;
  std::vector<std::size_t> p1(mip.q1_size(), 0);
  std::vector<std::size_t> votes(mip.a2_size());
  while (true) {
    ProverStrategy s{p1, std::vector<std::size_t>(mip.q2_size(), 0)};
    std::size_t wins = 0;
    for (std::size_t q2 = 0; q2 < mip.q2_size(); ++q2) {
      std::fill(votes.begin(), votes.end(), 0);
      for (auto r : by_q2[q2]) {
        if (auto a2 = mip.accepted(r, p1[mip.query(r, 1)])) ++votes[*a2];
      }
      std::size_t arg = 0;
      for (std::size_t a = 1; a < votes.size(); ++a) {
        if (votes[a] > votes[arg]) arg = a;
      }
      s.p2[q2] = arg;
      wins += votes[arg];
    }
    const double value =
        static_cast<double>(wins) / static_cast<double>(mip.num_r());
    if (value > best.value) best = {value, s};

    // Odometer increment over P1.
    std::size_t i = 0;
    while (i < p1.size() && ++p1[i] == mip.a1_size()) p1[i++] = 0;
    if (i == p1.size()) break;
  }
  return best;
}

ProjectionGame mip_to_projection_game(const MipDescription& mip) {
  ProjectionGame game;
  game.q1_size = mip.q1_size();
  game.q2_size = mip.q2_size();
  game.a1_size = mip.a1_size();
  game.a2_size = mip.a2_size();
  game.edges.reserve(mip.num_r());
  for (std::size_t r = 0; r < mip.num_r(); ++r) {
    ProjectionGame::Edge edge{mip.query(r, 1), mip.query(r, 2),
                              std::vector<std::int64_t>(mip.a1_size(), -1)};
    for (std::size_t a1 = 0; a1 < mip.a1_size(); ++a1) {
      if (auto a2 = mip.accepted(r, a1)) {
        edge.pi[a1] = static_cast<std::int64_t>(*a2);
      }
    }
    game.edges.push_back(std::move(edge));
  }
  return game;
}

MipDescription projection_game_to_mip(const ProjectionGame& game) {
  MipDescription mip(game.edges.size(), game.q1_size, game.q2_size,
                     game.a1_size, game.a2_size);
  for (std::size_t r = 0; r < game.edges.size(); ++r) {
    const auto& edge = game.edges[r];
    if (edge.pi.size() != game.a1_size) {
      throw InvalidArgument("edge " + std::to_string(r) +
                            " projection has the wrong domain size");
    }
    mip.set_queries(r, edge.q1, edge.q2);
    for (std::size_t a1 = 0; a1 < game.a1_size; ++a1) {
      if (edge.pi[a1] >= 0) {
        mip.set_accepted(r, a1, static_cast<std::size_t>(edge.pi[a1]));
      }
    }
  }
  return mip;
}

double projection_game_value(const ProjectionGame& game,
                             const ProverStrategy& s) {
  if (s.p1.size() != game.q1_size || s.p2.size() != game.q2_size) {
    throw InvalidArgument("strategy is not total on Q1 / Q2");
  }
  if (game.edges.empty()) return 0.0;
  std::size_t satisfied = 0;
  for (const auto& edge : game.edges) {
    const std::size_t a1 = s.p1[edge.q1];
    if (a1 >= game.a1_size) throw InvalidArgument("P1 answer out of range");
    const auto image = edge.pi[a1];
    if (image >= 0 && static_cast<std::size_t>(image) == s.p2[edge.q2]) {
      ++satisfied;
    }
  }
  return static_cast<double>(satisfied) /
         static_cast<double>(game.edges.size());
}

}  // namespace sparsehard
