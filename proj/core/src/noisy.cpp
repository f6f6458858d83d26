#include "sparsehard/noisy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sparsehard/errors.hpp"
#include "sparsehard/linalg.hpp"
#include "sparsehard/rng.hpp"
#include "sparsehard/solvers.hpp"

namespace sparsehard {

Vector sample_noise(std::size_t m, std::uint64_t seed, double sd) {
  if (!(sd >= 0.0) || !std::isfinite(sd)) {
    throw InvalidArgument("noise standard deviation must be finite and >= 0");
  }
  Rng rng = Rng::Substream(seed, 0);
  Vector out(m);
  for (auto& v : out) v = sd * rng.normal();
  return out;
}

NoisyInstance make_noisy_target(const DenseMatrix& b,
                                std::span<const double> x_star,
                                std::uint64_t seed, double noise_sd) {
  if (x_star.size() != b.cols()) {
    throw InvalidArgument("x* length " + std::to_string(x_star.size()) +
                          " != columns " + std::to_string(b.cols()));
  }
  NoisyInstance inst;
  inst.x = b;
  inst.theta.assign(x_star.begin(), x_star.end());
  inst.y = b.multiply(x_star);
  const Vector noise = sample_noise(b.rows(), seed, noise_sd);
  for (std::size_t i = 0; i < inst.y.size(); ++i) inst.y[i] += noise[i];
  inst.seed = seed;
  inst.k = SparseSolution::FromDense(x_star).support.size();
  return inst;
}

RiskEstimate empirical_risk(const Estimator& estimator, const DenseMatrix& x,
                            std::span<const double> theta, std::size_t trials,
                            std::uint64_t seed) {
  if (theta.size() != x.cols()) {
    throw InvalidArgument("theta length " + std::to_string(theta.size()) +
                          " != columns " + std::to_string(x.cols()));
  }
  if (trials < 2) throw InvalidArgument("need at least 2 trials");
  const Vector signal = x.multiply(theta);
  const std::uint64_t base = splitmix64(seed);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const Vector noise = sample_noise(x.rows(), base ^ t);
    Vector y = signal;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += noise[i];
    Vector est;
    try {
      est = estimator(x, y);
    } catch (const std::exception& e) {
      throw std::runtime_error("estimator failed on trial " +
                               std::to_string(t) + ": " + e.what());
    }
    if (est.size() != x.cols()) {
      throw std::runtime_error("estimator returned " +
                               std::to_string(est.size()) +
                               " coefficients on trial " + std::to_string(t));
    }
    Vector diff(theta.size());
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = est[j] - theta[j];
    const double loss = norm_sq(x.multiply(diff));
    // Welford update.
    const double d = loss - mean;
    mean += d / static_cast<double>(t + 1);
    m2 += d * (loss - mean);
  }
  RiskEstimate r;
  r.trials = trials;
  r.mean_loss = mean;
  const double var = m2 / static_cast<double>(trials - 1);
  r.std_err = std::sqrt(var / static_cast<double>(trials));
  return r;
}

Estimator ols_estimator() {
  return [](const DenseMatrix& x, const Vector& y) {
    return ordinary_least_squares(x, y);
  };
}

Estimator zero_estimator() {
  return [](const DenseMatrix& x, const Vector&) { return Vector(x.cols()); };
}

Estimator exhaustive_estimator(std::size_t k) {
  return [k](const DenseMatrix& x, const Vector& y) {
    return exhaustive_sparse_solve(x, y, k, 0.0).solution.dense(x.cols());
  };
}

Estimator stepwise_estimator(std::size_t max_iter) {
  return [max_iter](const DenseMatrix& x, const Vector& y) {
    return forward_stepwise(x, y, 0.0, max_iter).solution.dense(x.cols());
  };
}

Estimator lasso_estimator(double lambda) {
  return [lambda](const DenseMatrix& x, const Vector& y) {
    return lasso_coordinate_descent(x, y, lambda, 1e-10, 10'000).coefficients;
  };
}

std::size_t noisy_reduction_repetitions(double delta_fail) {
  if (!(delta_fail > 0.0 && delta_fail < 1.0)) {
    throw InvalidArgument("delta_fail must lie in (0, 1)");
  }
  const double reps = std::ceil(std::log2(1.0 / delta_fail) - 1e-12);
  return static_cast<std::size_t>(std::max(1.0, reps));
}

NoisyReductionResult noisy_reduction(const NoisyAlgorithm& algorithm,
                          const DenseMatrix& b, std::size_t k, double h,
                          double g, double delta_fail, std::uint64_t seed) {
  NoisyReductionResult out;
  out.budget = noisy_reduction_repetitions(delta_fail);
  const Vector e = ones(b.rows());
  const std::uint64_t base = splitmix64(seed);
  const double sparsity_budget = static_cast<double>(k) * g;
  for (std::size_t i = 0; i < out.budget; ++i) {
    ++out.iterations;
    const Vector noise = sample_noise(b.rows(), base ^ i);
    Vector y = e;
    for (std::size_t r = 0; r < y.size(); ++r) y[r] += noise[r];
    const Vector x = algorithm(b, k, y);
    if (x.size() != b.cols()) {
      throw InvalidArgument("algorithm returned " + std::to_string(x.size()) +
                            " coefficients for " + std::to_string(b.cols()) +
                            " columns");
    }
    SparseSolution sol = SparseSolution::FromDense(x);
    sol.residual_sq = residual_sq(b, x, e);
    if (static_cast<double>(sol.support.size()) <= sparsity_budget &&
        sol.residual_sq <= h) {
      out.solution = std::move(sol);
      break;
    }
  }
  return out;
}

}  // namespace sparsehard
