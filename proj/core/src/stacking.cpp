#include "sparsehard/stacking.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "sparsehard/errors.hpp"

namespace sparsehard {

namespace {

// pow() can land a hair above an exact integer (4^1 -> 4.0000000000000001);
// snap those back before taking the ceiling.
long double snapped_ceil(long double v) {
  const long double nearest = std::round(v);
  if (std::fabs(v - nearest) <= 1e-12L * std::fmax(1.0L, std::fabs(v))) {
    return nearest;
  }
  return std::ceil(v);
}

std::string describe(long double r) {
  std::ostringstream os;
  os.precision(21);
  os << r;
  return os.str();
}

DenseMatrix stack_checked(const DenseMatrix& b, long double r,
                          std::size_t max_rows) {
  const long double rows = r * static_cast<long double>(b.rows());
  if (!std::isfinite(r) || rows > static_cast<long double>(max_rows)) {
    throw LimitExceeded("stacking needs r = " + describe(r) + " copies (" +
                        describe(rows) + " rows), cap is " +
                        std::to_string(max_rows) + " rows");
  }
  return stack_rows(b, static_cast<std::uint64_t>(r), max_rows);
}

}  // namespace

DenseMatrix stack_rows(const DenseMatrix& b, std::uint64_t r,
                       std::size_t max_rows) {
  if (r < 1) throw InvalidArgument("stack count r must be >= 1");
  if (b.rows() != 0 && r > max_rows / b.rows()) {
    throw LimitExceeded("stacking needs r = " + std::to_string(r) +
                        " copies, cap is " + std::to_string(max_rows) +
                        " rows");
  }
  const auto src = b.entries();
  std::vector<double> out;
  out.reserve(src.size() * r);
  for (std::uint64_t copy = 0; copy < r; ++copy) {
    out.insert(out.end(), src.begin(), src.end());
  }
  return DenseMatrix(b.rows() * r, b.cols(), std::move(out));
}

long double gap_amplifying_copies(std::size_t m, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgument("delta must lie in (0, 1)");
  }
  if (m < 1) throw InvalidArgument("m must be >= 1");
  const long double exponent = 1.0L / static_cast<long double>(delta) - 1.0L;
  return snapped_ceil(std::pow(static_cast<long double>(m), exponent)) + 1.0L;
}

long double unit_residual_copies(std::size_t m, std::size_t p, double c1, double c2) {
  if (!(c1 > 0.0)) throw InvalidArgument("C1 must be > 0");
  if (!(c2 > 0.0)) throw InvalidArgument("C2 must be > 0");
  if (m < 1 || p < 1) throw InvalidArgument("m and p must be >= 1");
  const long double h = std::pow(static_cast<long double>(p), c1) *
                        std::pow(static_cast<long double>(m), 1.0L - c2);
  const long double r = snapped_ceil(std::pow(h, 1.0L / c2));
  return std::fmax(r, 1.0L);
}

DenseMatrix stack_gap_amplifying(const DenseMatrix& b, double delta,
                           std::size_t max_rows) {
  return stack_checked(b, gap_amplifying_copies(b.rows(), delta), max_rows);
}

DenseMatrix stack_unit_residual(const DenseMatrix& b, double c1, double c2,
                        std::size_t max_rows) {
  return stack_checked(b, unit_residual_copies(b.rows(), b.cols(), c1, c2), max_rows);
}

}  // namespace sparsehard
