#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sparsehard::internal {

// Splits [0, n) into `workers` contiguous chunks and runs fn(begin, end) on
// each, returning the per-chunk results in chunk order. Callers reduce the
// results in that order, so output never depends on the worker count as long
// as the reduction is order-independent (min with index tie-break, sums of
// integers, or per-index writes).
template <typename Result, typename Fn>
std::vector<Result> map_chunks(std::size_t n, unsigned workers, Fn fn) {
  const std::size_t chunks =
      std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
  std::vector<Result> results(chunks);
  if (chunks == 1) {
    results[0] = fn(std::size_t{0}, n);
    return results;
  }
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> threads;
    threads.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t begin = n * c / chunks;
      const std::size_t end = n * (c + 1) / chunks;
      threads.emplace_back([&, c, begin, end] {
        try {
          results[c] = fn(begin, end);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace sparsehard::internal
