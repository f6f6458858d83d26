#include "sparsehard/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparsehard/errors.hpp"

namespace sparsehard {

OrthonormalBasis::OrthonormalBasis(std::size_t dim, const Tolerances& tol)
    : dim_(dim), tol_(tol) {}

void OrthonormalBasis::orthogonalize(Vector& w) const {
  // Two MGS passes ("twice is enough") keep the basis orthogonal to working
  // precision even for nearly parallel inputs.
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vector& q : basis_) {
      const double c = dot(q, w);
      for (std::size_t i = 0; i < dim_; ++i) w[i] -= c * q[i];
    }
  }
}

bool OrthonormalBasis::add(std::span<const double> v) {
  if (v.size() != dim_) {
    throw InvalidArgument("basis vector length " + std::to_string(v.size()) +
                          " != " + std::to_string(dim_));
  }
  Vector w(v.begin(), v.end());
  orthogonalize(w);
  const double norm = std::sqrt(norm_sq(w));
  if (norm <= tol_.pivot) return false;
  for (double& x : w) x /= norm;
  basis_.push_back(std::move(w));
  return true;
}

Vector OrthonormalBasis::remainder(std::span<const double> v) const {
  if (v.size() != dim_) {
    throw InvalidArgument("vector length " + std::to_string(v.size()) +
                          " != " + std::to_string(dim_));
  }
  Vector w(v.begin(), v.end());
  orthogonalize(w);
  return w;
}

double OrthonormalBasis::projection_sq_norm(std::span<const double> v) const {
  const Vector w = remainder(v);
  return std::max(0.0, norm_sq(v) - norm_sq(w));
}

SparseSolution least_squares_on_support(const DenseMatrix& b,
                                        std::span<const double> y,
                                        std::span<const std::size_t> support,
                                        const Tolerances& tol) {
  if (y.size() != b.rows()) {
    throw InvalidArgument("least squares: target length " +
                          std::to_string(y.size()) + " != rows " +
                          std::to_string(b.rows()));
  }
  std::vector<std::size_t> sorted(support.begin(), support.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= b.cols()) {
      throw InvalidArgument("support index " + std::to_string(sorted[i]) +
                            " out of range (cols = " +
                            std::to_string(b.cols()) + ")");
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw InvalidArgument("support index " + std::to_string(sorted[i]) +
                            " repeated");
    }
  }

  const std::size_t m = b.rows();
  // Thin QR of the selected columns by MGS with reorthogonalization; r holds
  // the upper-triangular factor for the independent columns only.
  std::vector<Vector> q;
  std::vector<std::vector<double>> r;  // r[k] = column k of R (length k+1)
  std::vector<std::size_t> independent;
  for (std::size_t idx = 0; idx < sorted.size(); ++idx) {
    Vector w = b.column(sorted[idx]);
    std::vector<double> rc(q.size() + 1, 0.0);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < q.size(); ++k) {
        const double c = dot(q[k], w);
        rc[k] += c;
        for (std::size_t i = 0; i < m; ++i) w[i] -= c * q[k][i];
      }
    }
    const double norm = std::sqrt(norm_sq(w));
    if (norm <= tol.pivot) continue;
    for (double& x : w) x /= norm;
    rc.back() = norm;
    q.push_back(std::move(w));
    r.push_back(std::move(rc));
    independent.push_back(idx);
  }

  // z = Q^T y, accumulated in MGS order.
  Vector yr(y.begin(), y.end());
  Vector z(q.size(), 0.0);
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < q.size(); ++k) {
      const double c = dot(q[k], yr);
      z[k] += c;
      for (std::size_t i = 0; i < m; ++i) yr[i] -= c * q[k][i];
    }
  }

  // Back substitution R c = z.
  const std::size_t n = q.size();
  Vector c(n, 0.0);
  for (std::size_t kk = n; kk-- > 0;) {
    double s = z[kk];
    for (std::size_t j = kk + 1; j < n; ++j) s -= r[j][kk] * c[j];
    c[kk] = s / r[kk][kk];
  }

  SparseSolution sol;
  sol.support = sorted;
  sol.coeffs.assign(sorted.size(), 0.0);
  for (std::size_t k = 0; k < n; ++k) sol.coeffs[independent[k]] = c[k];

  Vector fit(m, 0.0);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double ci = sol.coeffs[i];
    if (ci == 0.0) continue;
    const std::size_t j = sorted[i];
    for (std::size_t row = 0; row < m; ++row) fit[row] += b(row, j) * ci;
  }
  double res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double d = y[i] - fit[i];
    res += d * d;
  }
  sol.residual_sq = res;
  return sol;
}

double projection_sq_norm(std::span<const Vector> vectors,
                          std::span<const double> target,
                          const Tolerances& tol) {
  if (vectors.empty()) return 0.0;
  OrthonormalBasis basis(target.size(), tol);
  for (const Vector& v : vectors) {
    if (v.size() != target.size()) {
      throw InvalidArgument("projection: vector length " +
                            std::to_string(v.size()) + " != target length " +
                            std::to_string(target.size()));
    }
    basis.add(v);
  }
  return basis.projection_sq_norm(target);
}

Vector ordinary_least_squares(const DenseMatrix& x, std::span<const double> y,
                              const Tolerances& tol) {
  const std::size_t m = x.rows();
  const std::size_t p = x.cols();
  if (y.size() != m) {
    throw InvalidArgument("OLS: response length " + std::to_string(y.size()) +
                          " != rows " + std::to_string(m));
  }
  if (p > m) {
    throw RankDeficient(p - m, "OLS: rank deficient, " +
                                   std::to_string(p - m) +
                                   " deficient column(s) (more columns than "
                                   "rows)");
  }
  // Householder QR on a column-major copy.
  std::vector<Vector> a(p, Vector(m));
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < m; ++i) a[j][i] = x(i, j);
  }
  Vector rhs(y.begin(), y.end());
  Vector diag(p, 0.0);
  std::size_t deficient = 0;
  for (std::size_t k = 0; k < p; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k; i < m; ++i) alpha += a[k][i] * a[k][i];
    alpha = std::sqrt(alpha);
    if (alpha <= tol.pivot) {
      ++deficient;
      diag[k] = 0.0;
      continue;
    }
    if (a[k][k] > 0) alpha = -alpha;
    // v = a_k - alpha e_k, stored in place.
    a[k][k] -= alpha;
    double vnorm_sq = 0.0;
    for (std::size_t i = k; i < m; ++i) vnorm_sq += a[k][i] * a[k][i];
    auto reflect = [&](Vector& col) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += a[k][i] * col[i];
      s = 2.0 * s / vnorm_sq;
      for (std::size_t i = k; i < m; ++i) col[i] -= s * a[k][i];
    };
    for (std::size_t j = k + 1; j < p; ++j) reflect(a[j]);
    reflect(rhs);
    diag[k] = alpha;
  }
  if (deficient > 0) {
    throw RankDeficient(deficient,
                        "OLS: rank deficient, " + std::to_string(deficient) +
                            " deficient column(s) at pivot threshold");
  }
  Vector theta(p, 0.0);
  for (std::size_t k = p; k-- > 0;) {
    double s = rhs[k];
    for (std::size_t j = k + 1; j < p; ++j) s -= a[j][k] * theta[j];
    theta[k] = s / diag[k];
  }
  return theta;
}

}  // namespace sparsehard
