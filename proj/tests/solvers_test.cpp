#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "oracle.hpp"
#include "sparsehard/errors.hpp"
#include "sparsehard/linalg.hpp"
#include "sparsehard/mip.hpp"
#include "sparsehard/natarajan.hpp"
#include "sparsehard/reduction.hpp"
#include "sparsehard/rng.hpp"
#include "sparsehard/solvers.hpp"

using namespace sparsehard;

namespace {

DenseMatrix random_matrix(std::size_t m, std::size_t p, Rng& rng) {
  std::vector<double> e(m * p);
  for (auto& v : e) v = rng.normal();
  return DenseMatrix(m, p, std::move(e));
}

Vector random_vector(std::size_t n, Rng& rng) {
  Vector v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

// Minimum residual over all supports of size <= k, by recursion.
double oracle_best_residual(const DenseMatrix& b, const Vector& y, std::size_t k) {
  double best = norm_sq(y);
  std::vector<std::size_t> sup;
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (!sup.empty()) best = std::min(best, oracle::min_residual_sq(b, y, sup));
    if (sup.size() == k) return;
    for (std::size_t c = j; c < b.cols(); ++c) {
      sup.push_back(c);
      rec(c + 1);
      sup.pop_back();
    }
  };
  rec(0);
  return best;
}

}  // namespace

TEST(Exhaustive, BadInstancePair) {
  const auto inst = build_natarajan_instance(8);
  const auto r = exhaustive_sparse_solve(inst.b, inst.target, 2, 0.0);
  EXPECT_EQ(r.solution.support,
            (std::vector<std::size_t>{inst.plus_column(), inst.minus_column()}));
  EXPECT_LE(r.solution.residual_sq, 1e-9);
  EXPECT_TRUE(r.within_eps);
}

TEST(Exhaustive, IdentityLeavesOneCoordinate) {
  const auto r = exhaustive_sparse_solve(DenseMatrix::Identity(3), ones(3), 2, 0.0);
  EXPECT_NEAR(r.solution.residual_sq, 1.0, 1e-12);
  EXPECT_FALSE(r.within_eps);
  EXPECT_EQ(r.solution.support, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.subsets_examined, 3u + 3u + 1u);
}

TEST(Exhaustive, PlantedRecovery) {
  const auto mip = toy_equality_mip(2, 2);
  const auto b = build_matrix(mip, generate_set_system(2, 1, 4, 10));
  const auto r = exhaustive_sparse_solve(b, ones(b.rows()), 4, 0.0);
  EXPECT_LE(r.solution.residual_sq, 1e-9);
  EXPECT_TRUE(r.within_eps);
}

TEST(Exhaustive, MatchesOracleAndWorkerCount) {
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    const auto b = random_matrix(7, 6, rng);
    const auto y = random_vector(7, rng);
    const std::size_t k = 1 + rng.below(3);
    const auto one = exhaustive_sparse_solve(b, y, k, 0.0);
    ExhaustiveOptions opts;
    opts.workers = 3;
    const auto many = exhaustive_sparse_solve(b, y, k, 0.0, opts);
    const double want = oracle_best_residual(b, y, k);
    EXPECT_NEAR(one.solution.residual_sq, want, 1e-8 * std::max(1.0, want));
    EXPECT_EQ(one.solution.support, many.solution.support);
    EXPECT_EQ(one.solution.residual_sq, many.solution.residual_sq);
  }
}

TEST(Exhaustive, CapIsARefusal) {
  ExhaustiveOptions opts;
  opts.subset_cap = 100;
  EXPECT_THROW(exhaustive_sparse_solve(DenseMatrix(3, 20), ones(3), 3, 0.0, opts), LimitExceeded);
}

TEST(Stepwise, OrthonormalSelectsOneColumn) {
  const auto b = DenseMatrix::Identity(3);
  const auto r = forward_stepwise(b, Vector{3, 0, 0}, 1e-9, 3);
  ASSERT_EQ(r.trace.iterations.size(), 1u);
  EXPECT_EQ(r.trace.iterations[0].selected, 0u);
  EXPECT_TRUE(r.trace.converged);
  EXPECT_NEAR(r.solution.coeffs[0], 3.0, 1e-12);
}

TEST(Stepwise, BadInstanceScoresAtStart) {
  const auto inst = build_natarajan_instance(8);
  const auto r = forward_stepwise(inst.b, inst.target, inst.eps, inst.b.cols());
  ASSERT_EQ(r.trace.iterations.size(), 4u);
  for (std::size_t h = 0; h < 4; ++h) EXPECT_EQ(r.trace.iterations[h].selected, h);
  const auto& s = r.trace.iterations[0].scores;
  for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(s[j], std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(s[4], 1.0 / std::sqrt(1.0 + 1.0 / 8), 1e-6);
  EXPECT_NEAR(s[4], 0.942809, 1e-6);
  EXPECT_NEAR(s[5], 0.942809, 1e-6);
  EXPECT_NEAR(std::sqrt(norm_sq(r.residual)), 0.0, 1e-12);
}

TEST(Stepwise, MaxIterAndPreconditions) {
  const auto inst = build_natarajan_instance(8);
  const auto r = forward_stepwise(inst.b, inst.target, inst.eps, 2);
  EXPECT_EQ(r.trace.iterations.size(), 2u);
  EXPECT_TRUE(r.trace.hit_max_iter);
  EXPECT_FALSE(r.trace.converged);
  EXPECT_EQ(r.solution.support.size(), 2u);
  EXPECT_THROW(forward_stepwise(DenseMatrix(3, 2), ones(3), 0.0, 2), InvalidArgument);
  EXPECT_THROW(forward_stepwise(inst.b, inst.target, -1.0, 2), InvalidArgument);
}

TEST(Stepwise, TraceInvariantsOnRandomInstances) {
  Rng rng(77);
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = 8 + rng.below(6), p = 4 + rng.below(10);
    const auto b = random_matrix(m, p, rng);
    const auto y = random_vector(m, rng);
    const auto r = forward_stepwise(b, y, 1e-6, std::min(m, p));
    double prev = r.trace.initial_residual_norm;
    for (std::size_t h = 0; h < r.trace.iterations.size(); ++h) {
      const auto& it = r.trace.iterations[h];
      EXPECT_LE(it.residual_norm, prev + 1e-12);
      prev = it.residual_norm;
      for (double s : it.scores) {
        if (!std::isnan(s)) EXPECT_LE(s, it.score + 1e-12);
      }
    }
    // Orthogonality of b' and remaining columns to every selected direction.
    std::vector<bool> selected(p, false);
    for (const auto& it : r.trace.iterations) selected[it.selected] = true;
    for (const auto& d : r.directions) {
      EXPECT_NEAR(dot(r.residual, d), 0.0, 1e-8);
      for (std::size_t j = 0; j < p; ++j) {
        if (!selected[j]) EXPECT_NEAR(dot(r.orthogonalized_columns[j], d), 0.0, 1e-8);
      }
    }
    // Span preservation: B x = y - b'.
    const Vector fit = b.multiply(r.solution.dense(p));
    for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(fit[i], y[i] - r.residual[i], 1e-8);
  }
}

TEST(Stepwise, ExhaustiveNeverWorseAtEqualBudget) {
  Rng rng(5);
  for (int t = 0; t < 40; ++t) {
    const auto b = random_matrix(10, 8, rng);
    const auto y = random_vector(10, rng);
    const std::size_t k = 1 + rng.below(3);
    const auto sw = forward_stepwise(b, y, 0.0, k);
    const auto ex = exhaustive_sparse_solve(b, y, k, 0.0);
    EXPECT_LE(ex.solution.residual_sq, sw.solution.residual_sq + 1e-9);
  }
}

TEST(Lasso, SoftThresholdClosedForm) {
  const auto r = lasso_coordinate_descent(DenseMatrix::Identity(2), Vector{3, 0.5}, 1.0, 1e-12, 100);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.coefficients[0], 2.0, 1e-12);
  EXPECT_EQ(r.coefficients[1], 0.0);
  EXPECT_EQ(r.solution.support, (std::vector<std::size_t>{0}));
}

TEST(Lasso, ZeroPenaltyMatchesOls) {
  // Orthonormal columns from a rotation.
  const double c = std::cos(0.3), s = std::sin(0.3);
  DenseMatrix b(3, 2, {c, -s, s, c, 0, 0});
  const Vector y{1, 2, 3};
  const auto r = lasso_coordinate_descent(b, y, 0.0, 1e-12, 100);
  const auto ols = ordinary_least_squares(b, y);
  EXPECT_NEAR(r.coefficients[0], ols[0], 1e-10);
  EXPECT_NEAR(r.coefficients[1], ols[1], 1e-10);
}

TEST(Lasso, LargePenaltyKillsEverything) {
  Rng rng(4);
  const auto b = random_matrix(10, 5, rng);
  const auto y = random_vector(10, rng);
  double inf = 0;
  for (double v : b.multiply_transpose(y)) inf = std::max(inf, std::abs(v));
  const auto r = lasso_coordinate_descent(b, y, inf, 1e-10, 1000);
  for (double v : r.coefficients) EXPECT_EQ(v, 0.0);
}

TEST(Lasso, SubgradientConditions) {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const auto b = random_matrix(15, 6, rng);
    const auto y = random_vector(15, rng);
    const double lambda = 0.5 + rng.uniform01();
    const double tol = 1e-10;
    const auto r = lasso_coordinate_descent(b, y, lambda, tol, 100000);
    ASSERT_TRUE(r.converged);
    Vector res = b.multiply(r.coefficients);
    for (std::size_t i = 0; i < res.size(); ++i) res[i] = y[i] - res[i];
    for (std::size_t j = 0; j < 6; ++j) {
      const double g = dot(b.column(j), res);
      const double slack = 10 * tol * norm_sq(b.column(j));
      if (r.coefficients[j] != 0.0) {
        EXPECT_NEAR(g, lambda * (r.coefficients[j] > 0 ? 1 : -1), slack + 1e-9);
      } else {
        EXPECT_LE(std::abs(g), lambda + slack + 1e-9);
      }
    }
  }
}

TEST(Certificate, Examples) {
  const auto mip = toy_equality_mip(2, 2);
  const auto b = build_matrix(mip, generate_set_system(2, 1, 4, 10));
  const auto x = completeness_certificate(mip, constant_strategy(mip), b);
  EXPECT_TRUE(certificate_check(b, x, 4, 1.0, 0.0));
  EXPECT_TRUE(certificate_check(b, SparseSolution{}, 4, 1.0, static_cast<double>(b.rows())));
  EXPECT_FALSE(certificate_check(b, SparseSolution{}, 4, 1.0, b.rows() - 1.0));
  EXPECT_FALSE(certificate_check(b, x, 3, 1.0, 0.0));
  // The residual is recomputed, not trusted.
  auto lying = x;
  lying.coeffs[0] = 0.5;
  EXPECT_FALSE(certificate_check(b, lying, 4, 1.0, 0.0));
}
