#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "sparsehard/dense.hpp"

namespace sparsehard {

struct NoisyInstance {
  DenseMatrix x;
  Vector theta;  // planted coefficients
  Vector y;      // X theta + noise
  std::uint64_t seed = 0;
  std::size_t k = 0;  // ||theta||_0
};

// m i.i.d. N(0, sd^2) draws from Rng::Substream(seed, 0). See rng.hpp for
// the exact uniform-to-normal transform.
Vector sample_noise(std::size_t m, std::uint64_t seed, double sd = 1.0);

// y = B x* + eps with eps = sample_noise(B.rows(), seed, noise_sd).
NoisyInstance make_noisy_target(const DenseMatrix& b,
                                std::span<const double> x_star,
                                std::uint64_t seed, double noise_sd = 1.0);

using Estimator = std::function<Vector(const DenseMatrix&, const Vector&)>;

struct RiskEstimate {
  std::size_t trials = 0;
  double mean_loss = 0.0;
  double std_err = 0.0;

  double ci_low(double z = 1.96) const { return mean_loss - z * std_err; }
  double ci_high(double z = 1.96) const { return mean_loss + z * std_err; }
};

// Mean of ||X (theta_hat - theta)||^2 over trials; trial t draws its noise
// with sample_noise(m, splitmix64(seed) ^ t). An exception thrown by the
// estimator is rethrown as std::runtime_error naming the trial.
RiskEstimate empirical_risk(const Estimator& estimator, const DenseMatrix& x,
                            std::span<const double> theta, std::size_t trials,
                            std::uint64_t seed);

Estimator ols_estimator();
Estimator zero_estimator();
// Best k-subset least squares.
Estimator exhaustive_estimator(std::size_t k);
Estimator stepwise_estimator(std::size_t max_iter);
Estimator lasso_estimator(double lambda);

// An algorithm for the noisy problem: (B, k, y) -> x.
using NoisyAlgorithm =
    std::function<Vector(const DenseMatrix&, std::size_t, const Vector&)>;

struct NoisyReductionResult {
  std::optional<SparseSolution> solution;  // nullopt = failure symbol
  std::size_t iterations = 0;              // attempts actually made
  std::size_t budget = 0;                  // ceil(log2(1/delta_fail))
};

inline constexpr double kDefaultDeltaFail = 1.0 / 16.0;

// ceil(log2(1/delta_fail)); requires 0 < delta_fail < 1.
std::size_t noisy_reduction_repetitions(double delta_fail);

// Turns a noisy-regression algorithm into one for the exact problem: up to
// noisy_reduction_repetitions(delta_fail) times, draw y = e + eps, run the algorithm,
// and return the first x with ||x||_0 <= k g and ||B x - e||^2 <= h (both
// recomputed here). Attempt i uses noise seed splitmix64(seed) ^ i.
NoisyReductionResult noisy_reduction(const NoisyAlgorithm& algorithm,
                          const DenseMatrix& b, std::size_t k, double h,
                          double g, double delta_fail, std::uint64_t seed);

}  // namespace sparsehard
