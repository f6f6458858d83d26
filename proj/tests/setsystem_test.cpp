#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "oracle.hpp"
#include "sparsehard/errors.hpp"
#include "sparsehard/setsystem.hpp"

using namespace sparsehard;

namespace {

SetSystem from_strings(std::vector<std::string> rows, int ell, double delta = 0) {
  std::vector<BitVector> sets;
  for (const auto& r : rows) sets.push_back(BitVector::FromString(r));
  return SetSystem(std::move(sets), ell, delta);
}

// Brute-force margin written independently: recursive choice over
// indicators, complements, or neither for each set, at most ell picks.
double oracle_margin(const SetSystem& sys, int ell) {
  const std::size_t n = sys.universe_size();
  const Vector e = ones(n);
  double best = static_cast<double>(n);
  std::vector<Vector> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == sys.num_sets()) {
      if (!chosen.empty()) {
        best = std::min(best, static_cast<double>(n) - oracle::projection_sq(chosen, e));
      }
      return;
    }
    rec(i + 1);
    if (static_cast<int>(chosen.size()) < ell) {
      chosen.push_back(sys.indicator(i));
      rec(i + 1);
      chosen.back() = sys.complement_indicator(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return best;
}

}  // namespace

TEST(BitVector, ComplementAndRoundTrip) {
  const auto b = BitVector::FromString("0110010");
  EXPECT_EQ(b.count(), 3u);
  EXPECT_EQ(b.complement().to_string(), "1001101");
  EXPECT_EQ(b.complement().complement(), b);
  EXPECT_THROW(BitVector::FromString("01x"), InvalidArgument);
}

TEST(BitVector, ComplementIdentityIsExact) {
  const auto sys = generate_set_system(5, 1, 3);
  for (std::size_t i = 0; i < sys.num_sets(); ++i) {
    const auto v = sys.indicator(i);
    const auto w = sys.complement_indicator(i);
    for (std::size_t s = 0; s < v.size(); ++s) {
      EXPECT_EQ(static_cast<int>(v[s]) + static_cast<int>(w[s]), 1);
    }
  }
}

TEST(SetSystem, ValidatesConstruction) {
  EXPECT_THROW(from_strings({}, 1), InvalidArgument);
  EXPECT_THROW(from_strings({"01", "011"}, 1), InvalidArgument);
  EXPECT_THROW(from_strings({"01", "01"}, 1), InvalidArgument);
  EXPECT_THROW(from_strings({"01", "10"}, 1, -1.0), InvalidArgument);
}

TEST(RequiredUniverseSize, MatchesDirectEvaluation) {
  EXPECT_EQ(required_universe_size(2, 1), 178u);
  EXPECT_EQ(required_universe_size(4, 2), 1420u);
  EXPECT_EQ(required_universe_size(8, 2), 2130u);
  for (std::size_t m = 2; m < 40; ++m) {
    for (int ell = 1; ell < 5; ++ell) {
      const double raw = 256.0 * ell * ell * std::log(static_cast<double>(m));
      EXPECT_EQ(required_universe_size(m, ell), static_cast<std::size_t>(std::ceil(raw)));
    }
  }
  EXPECT_THROW(required_universe_size(1, 1), InvalidArgument);
  EXPECT_THROW(required_universe_size(4, 0), InvalidArgument);
}

TEST(UsefulnessDelta, Examples) {
  EXPECT_DOUBLE_EQ(usefulness_delta(32), 1.0);
  EXPECT_DOUBLE_EQ(usefulness_delta(1420), 44.375);
  EXPECT_DOUBLE_EQ(usefulness_delta(178), 5.5625);
}

TEST(GenerateSetSystem, SizesAndDeterminism) {
  const auto a = generate_set_system(4, 2, 7);
  EXPECT_EQ(a.universe_size(), 1420u);
  EXPECT_DOUBLE_EQ(a.delta(), 44.375);
  EXPECT_EQ(a.num_sets(), 4u);
  const auto b = generate_set_system(4, 2, 7);
  EXPECT_EQ(a.sets(), b.sets());
  const auto c = generate_set_system(4, 2, 8);
  EXPECT_NE(a.sets(), c.sets());

  const auto small = generate_set_system(2, 1, 0, 8);
  EXPECT_EQ(small.universe_size(), 8u);
  EXPECT_EQ(small.delta(), 0.0);
  EXPECT_NE(small.set(0), small.set(1));
}

TEST(GenerateSetSystem, ImpossibleDistinctnessIsRefused) {
  // Only two subsets of a 1-element universe exist.
  EXPECT_THROW(generate_set_system(3, 1, 0, 1), LimitExceeded);
}

TEST(AdmissibleCount, SmallCases) {
  // 1 + 2M + 4 C(M,2) at ell = 2: 1 + 8 + 24 for M = 4.
  EXPECT_EQ(admissible_subset_count(4, 2), 33u);
  EXPECT_EQ(admissible_subset_count(3, 1), 7u);
}

TEST(UsefulnessMargin, HandExamples) {
  EXPECT_NEAR(usefulness_margin(from_strings({"00", "11"}, 1), 1), 0.0, 1e-9);
  EXPECT_NEAR(usefulness_margin(from_strings({"10", "01"}, 1), 1), 1.0, 1e-9);
}

TEST(UsefulnessMargin, ComplementPairMakesItZero) {
  const auto sys = from_strings({"1100", "0011", "1010"}, 2);
  EXPECT_NEAR(usefulness_margin(sys, 2), 0.0, 1e-9);
}

TEST(UsefulnessMargin, GeneratedSystemBeatsDelta) {
  const auto sys = generate_set_system(4, 2, 7);
  EXPECT_GT(usefulness_margin(sys, 2), 44.375);
}

TEST(UsefulnessMargin, MatchesOracleAndIsMonotone) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto sys = generate_set_system(3 + seed % 3, 1, seed, 6 + seed % 5);
    double prev = 1e300;
    for (int ell = 1; ell <= 3; ++ell) {
      const double got = usefulness_margin(sys, ell);
      EXPECT_NEAR(got, oracle_margin(sys, ell), 1e-8) << "seed " << seed << " ell " << ell;
      EXPECT_LE(got, prev + 1e-9);
      prev = got;
    }
  }
}

TEST(UsefulnessMargin, WorkerCountDoesNotChangeResult) {
  const auto sys = generate_set_system(6, 2, 4, 40);
  MarginOptions one, many;
  many.workers = 4;
  EXPECT_EQ(usefulness_margin(sys, 2, one), usefulness_margin(sys, 2, many));
}

TEST(UsefulnessMargin, CapIsARefusal) {
  const auto sys = generate_set_system(6, 2, 4, 40);
  MarginOptions opts;
  opts.enumeration_cap = 10;
  EXPECT_THROW(usefulness_margin(sys, 2, opts), LimitExceeded);
}

TEST(MonteCarlo, FixedTargetHasNoViolations) {
  const auto s = montecarlo_projection(4, 2, 1000, 1, true);
  EXPECT_EQ(s.violations, 0u);
  EXPECT_EQ(s.dimension, 1420u);
  EXPECT_NEAR(s.bound, 128 * 4 * std::log(4.0), 1e-9);
  EXPECT_LE(s.mean_proj_sq, s.max_proj_sq);
}

TEST(MonteCarlo, RandomTargetMeanNearSpanDimension) {
  const auto s = montecarlo_projection(4, 2, 1000, 1, false);
  EXPECT_GE(s.mean_proj_sq, 1.0);
  EXPECT_LE(s.mean_proj_sq, 4.0);
}

TEST(MonteCarlo, EmptySpanProjectsToZero) {
  const auto s = montecarlo_projection(4, 0, 50, 1, true);
  EXPECT_EQ(s.max_proj_sq, 0.0);
  EXPECT_EQ(s.bound, 0.0);
  EXPECT_EQ(s.violations, 0u);
}

TEST(MonteCarlo, WorkerCountDoesNotChangeResult) {
  const auto a = montecarlo_projection(4, 2, 200, 9, true, 1);
  const auto b = montecarlo_projection(4, 2, 200, 9, true, 3);
  EXPECT_EQ(a.max_proj_sq, b.max_proj_sq);
  EXPECT_EQ(a.violations, b.violations);
  EXPECT_NEAR(a.mean_proj_sq, b.mean_proj_sq, 1e-12);
}
