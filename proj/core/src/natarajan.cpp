#include "sparsehard/natarajan.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "sparsehard/errors.hpp"

namespace sparsehard {

namespace {

double pseudoinverse_norm_sq(const DenseMatrix& b) {
  Eigen::MatrixXd bar(b.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const Vector c = b.column(j);
    const double n = std::sqrt(norm_sq(c));
    for (std::size_t i = 0; i < b.rows(); ++i) bar(i, j) = n > 0 ? c[i] / n : 0;
  }
  const Eigen::MatrixXd gram = bar.transpose() * bar;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram,
                                                        Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double cutoff = 1e-10 * ev.maxCoeff();
  double smallest = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cutoff && (smallest == 0.0 || ev(i) < smallest)) {
      smallest = ev(i);
    }
  }
  return smallest > 0 ? 1.0 / smallest : 0.0;
}

}  // namespace

NatarajanInstance build_natarajan_instance(std::size_t m) {
  if (m < 4 || m % 2 != 0) {
    throw InvalidArgument("m must be even and >= 4, got " + std::to_string(m));
  }
  NatarajanInstance inst;
  inst.m = m;
  inst.delta = 1.0 / std::sqrt(static_cast<double>(m));
  inst.eps = std::sqrt(2.0) / 2.0;
  inst.target = ones(m);
  const std::size_t half = m / 2;
  DenseMatrix b(m, half + 2);
  for (std::size_t i = 0; i < half; ++i) {
    b(2 * i, i) = 1.0;
    b(2 * i + 1, i) = 1.0;
  }
  for (std::size_t r = 0; r < m; ++r) {
    const double gamma = (r % 2 == 0) ? 1.0 : -1.0;
    b(r, half) = gamma + inst.delta;
    b(r, half + 1) = -gamma + inst.delta;
  }
  inst.b = std::move(b);
  return inst;
}

double natarajan_paired_score() { return std::sqrt(2.0); }

double natarajan_plus_minus_score(std::size_t m, std::size_t h) {
  const double md = static_cast<double>(m);
  const double rest = static_cast<double>(m - 2 * h);
  const double delta = 1.0 / std::sqrt(md);
  return rest * delta / std::sqrt(md + rest * delta * delta);
}

NatarajanReport verify_natarajan_trace(const NatarajanInstance& inst,
                                       double tolerance) {
  NatarajanReport rep;
  const std::size_t m = inst.m;
  const std::size_t half = m / 2;
  rep.stepwise = forward_stepwise(inst.b, inst.target, inst.eps, inst.b.cols());
  rep.exhaustive = exhaustive_sparse_solve(inst.b, inst.target, 2, inst.eps / 2);
  const auto& its = rep.stepwise.trace.iterations;
  rep.iterations = its.size();
  rep.opt = rep.exhaustive.solution.nnz();
  rep.iteration_ratio =
      rep.opt > 0 ? static_cast<double>(rep.iterations) / rep.opt : 0.0;
  rep.log_ratio = std::log(std::sqrt(static_cast<double>(m)) / 0.5);
  rep.log_ratio_bound = 1.0 + 0.5 * std::log(static_cast<double>(m));
  rep.pinv_norm_sq = pseudoinverse_norm_sq(inst.b);

  auto fail = [&](const std::string& msg) {
    rep.passed = false;
    rep.first_failure = msg;
    return rep;
  };

  for (std::size_t h = 0; h < its.size(); ++h) {
    const auto& it = its[h];
    std::ostringstream at;
    at << "iteration " << h + 1 << ": ";
    if (it.selected != h) {
      return fail(at.str() + "selected column " + std::to_string(it.selected) +
                  ", expected " + std::to_string(h));
    }
    const double paired = natarajan_paired_score();
    const double pm = natarajan_plus_minus_score(m, h);
    for (std::size_t j = h; j < half; ++j) {
      if (std::abs(it.scores[j] - paired) > tolerance) {
        return fail(at.str() + "paired score of column " + std::to_string(j) +
                    " is " + std::to_string(it.scores[j]));
      }
    }
    for (std::size_t j : {inst.plus_column(), inst.minus_column()}) {
      if (std::abs(it.scores[j] - pm) > tolerance) {
        return fail(at.str() + "score of column " + std::to_string(j) +
                    " is " + std::to_string(it.scores[j]) + ", expected " +
                    std::to_string(pm));
      }
    }
  }
  if (rep.iterations != half) {
    return fail("iteration count " + std::to_string(rep.iterations) +
                " != m/2 = " + std::to_string(half));
  }
  for (std::size_t h = 0; h < its.size(); ++h) {
    const auto& res = its[h].residual;
    for (std::size_t i = 0; i < m; ++i) {
      const double expect = i < 2 * (h + 1) ? 0.0 : 1.0;
      if (std::abs(res[i] - expect) > tolerance) {
        return fail("iteration " + std::to_string(h + 1) + ": b'[" +
                    std::to_string(i) + "] = " + std::to_string(res[i]) +
                    ", expected " + std::to_string(expect));
      }
    }
  }
  for (double r : rep.stepwise.residual) {
    if (std::abs(r) > tolerance) return fail("final b' is not zero");
  }
  if (!rep.exhaustive.within_eps || rep.exhaustive.solution.residual_sq > tolerance) {
    return fail("exhaustive search found no exact 2-sparse solution");
  }
  rep.passed = true;
  return rep;
}

}  // namespace sparsehard
