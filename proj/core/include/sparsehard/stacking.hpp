#pragma once

#include <cstddef>
#include <cstdint>

#include "sparsehard/dense.hpp"
#include "sparsehard/reduction.hpp"

namespace sparsehard {

// r vertically stacked copies of B. Throws LimitExceeded (reporting r) if
// r * rows exceeds max_rows.
DenseMatrix stack_rows(const DenseMatrix& b, std::uint64_t r,
                       std::size_t max_rows = kDefaultMaxRows);

// r = ceil(m^(1/delta - 1)) + 1, the copy count that makes r > (r m)^(1-delta).
// Returned as long double so astronomically large values can be reported.
long double gap_amplifying_copies(std::size_t m, double delta);

// r = ceil((p^c1 * m^(1 - c2))^(1/c2)), the copy count that turns an
// h = p^c1 m^(1-c2) guarantee into squared error at most 1.
long double unit_residual_copies(std::size_t m, std::size_t p, double c1, double c2);

DenseMatrix stack_gap_amplifying(const DenseMatrix& b, double delta,
                           std::size_t max_rows = kDefaultMaxRows);
DenseMatrix stack_unit_residual(const DenseMatrix& b, double c1, double c2,
                        std::size_t max_rows = kDefaultMaxRows);

}  // namespace sparsehard
