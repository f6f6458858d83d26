#include <benchmark/benchmark.h>

#include <numeric>

#include "sparsehard/linalg.hpp"
#include "sparsehard/rng.hpp"

namespace {

sparsehard::DenseMatrix gaussian(std::size_t m, std::size_t p, std::uint64_t seed) {
  sparsehard::Rng rng(seed);
  std::vector<double> entries(m * p);
  for (auto& v : entries) v = rng.normal();
  return sparsehard::DenseMatrix(m, p, std::move(entries));
}

void BM_LeastSquaresOnSupport(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto b = gaussian(m, 2 * k, 1);
  const auto y = sparsehard::ones(m);
  std::vector<std::size_t> support(k);
  std::iota(support.begin(), support.end(), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sparsehard::least_squares_on_support(b, y, support));
  }
}
BENCHMARK(BM_LeastSquaresOnSupport)->Args({64, 4})->Args({256, 16})->Args({1024, 32});

void BM_OrdinaryLeastSquares(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto p = static_cast<std::size_t>(state.range(1));
  const auto b = gaussian(m, p, 2);
  const auto y = sparsehard::ones(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sparsehard::ordinary_least_squares(b, y));
  }
}
BENCHMARK(BM_OrdinaryLeastSquares)->Args({20, 5})->Args({200, 5})->Args({500, 50});

}  // namespace
