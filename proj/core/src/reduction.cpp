#include "sparsehard/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparsehard/errors.hpp"

namespace sparsehard {

ReductionLayout ReductionLayout::For(const MipDescription& mip,
                                     std::size_t universe_size) {
  return {mip.num_r(),   universe_size,   mip.q1_size(),
          mip.q2_size(), mip.a1_size(),   mip.a2_size()};
}

ReductionParams ReductionParams::For(const MipDescription& mip, int ell,
                                     double delta) {
  if (ell < 3) {
    throw InvalidArgument("soundness analysis needs ell >= 3, got " +
                          std::to_string(ell));
  }
  if (!mip.soundness_error()) {
    throw InvalidArgument("MIP carries no soundness error");
  }
  const double eps = *mip.soundness_error();
  const double l = static_cast<double>(ell);
  ReductionParams p;
  p.ell = ell;
  p.k = mip.q1_size() + mip.q2_size();
  p.sigma = (1.0 - eps * l * l) * l / 2.0;
  p.delta = delta;
  return p;
}

DenseMatrix build_matrix(const MipDescription& mip, const SetSystem& sys,
                         const BuildOptions& options) {
  if (sys.num_sets() != mip.a2_size()) {
    throw InvalidArgument("set system has " + std::to_string(sys.num_sets()) +
                          " sets but |A2| = " +
                          std::to_string(mip.a2_size()));
  }
  const auto layout = ReductionLayout::For(mip, sys.universe_size());
  // Guard the multiplication itself against overflow.
  if (layout.num_r > options.max_rows / layout.universe_size ||
      layout.rows() > options.max_rows) {
    throw LimitExceeded("reduction needs " +
                        std::to_string(static_cast<long double>(layout.num_r) *
                                       layout.universe_size) +
                        " rows, cap is " + std::to_string(options.max_rows));
  }
  DenseMatrix b(layout.rows(), layout.cols());
  const std::size_t n = layout.universe_size;
  for (std::size_t r = 0; r < layout.num_r; ++r) {
    const std::size_t q1 = mip.query(r, 1);
    const std::size_t q2 = mip.query(r, 2);
    for (std::size_t a2 = 0; a2 < layout.a2_size; ++a2) {
      const auto& set = sys.set(a2);
      const std::size_t col = layout.column2(q2, a2);
      for (std::size_t s = 0; s < n; ++s) {
        if (set.test(s)) b(layout.row(r, s), col) = 1.0;
      }
    }
    for (std::size_t a1 = 0; a1 < layout.a1_size; ++a1) {
      const auto ua = mip.accepted(r, a1);
      if (!ua) continue;
      const auto& set = sys.set(*ua);
      const std::size_t col = layout.column1(q1, a1);
      for (std::size_t s = 0; s < n; ++s) {
        if (!set.test(s)) b(layout.row(r, s), col) = 1.0;
      }
    }
  }
  return b;
}

SparseSolution completeness_certificate(const MipDescription& mip,
                                        const ProverStrategy& strategy,
                                        const DenseMatrix& b) {
  check_strategy(mip, strategy);
  for (std::size_t r = 0; r < mip.num_r(); ++r) {
    const std::size_t a1 = strategy.p1[mip.query(r, 1)];
    const std::size_t a2 = strategy.p2[mip.query(r, 2)];
    if (!mip.accepts(r, a1, a2)) {
      throw VerificationFailed("strategy loses seed r = " + std::to_string(r) +
                               " (answers " + std::to_string(a1) + ", " +
                               std::to_string(a2) + ")");
    }
  }
  if (b.rows() % mip.num_r() != 0) {
    throw InvalidArgument("matrix rows are not a multiple of |R|");
  }
  const auto layout = ReductionLayout::For(mip, b.rows() / mip.num_r());
  if (layout.cols() != b.cols()) {
    throw InvalidArgument("matrix columns do not match the MIP layout");
  }

  SparseSolution x;
  for (std::size_t q1 = 0; q1 < mip.q1_size(); ++q1) {
    x.support.push_back(layout.column1(q1, strategy.p1[q1]));
  }
  for (std::size_t q2 = 0; q2 < mip.q2_size(); ++q2) {
    x.support.push_back(layout.column2(q2, strategy.p2[q2]));
  }
  std::sort(x.support.begin(), x.support.end());
  x.coeffs.assign(x.support.size(), 1.0);

  // B x = e, checked in integers on the 0/1 entries.
  for (std::size_t i = 0; i < b.rows(); ++i) {
    long long sum = 0;
    for (auto j : x.support) {
      const double v = b(i, j);
      if (v != 0.0 && v != 1.0) {
        throw InvalidArgument("matrix is not 0/1");
      }
      sum += static_cast<long long>(v);
    }
    if (sum != 1) {
      throw VerificationFailed("row " + std::to_string(i) + " sums to " +
                               std::to_string(sum) + ", expected 1");
    }
  }
  x.residual_sq = 0.0;
  return x;
}

namespace {

void check_layout(std::span<const double> x, const MipDescription& mip) {
  const std::size_t cols =
      mip.q1_size() * mip.a1_size() + mip.q2_size() * mip.a2_size();
  if (x.size() != cols) {
    throw InvalidArgument("x has " + std::to_string(x.size()) +
                          " entries, reduction layout has " +
                          std::to_string(cols) + " columns");
  }
}

// active[q] = ascending list of answers a with |x_(q,a)| > threshold.
std::vector<std::vector<std::size_t>> active_answers(
    std::span<const double> x, std::size_t offset, std::size_t qs,
    std::size_t as, double threshold) {
  std::vector<std::vector<std::size_t>> active(qs);
  for (std::size_t q = 0; q < qs; ++q) {
    for (std::size_t a = 0; a < as; ++a) {
      if (std::abs(x[offset + q * as + a]) > threshold) active[q].push_back(a);
    }
  }
  return active;
}

}  // namespace

CostReport sparsity_cost_report(std::span<const double> x,
                                const MipDescription& mip, int ell,
                                const Tolerances& tol) {
  check_layout(x, mip);
  if (ell < 1) throw InvalidArgument("ell must be >= 1");
  const auto act1 =
      active_answers(x, 0, mip.q1_size(), mip.a1_size(), tol.nonzero);
  const auto act2 = active_answers(x, mip.q1_size() * mip.a1_size(),
                                   mip.q2_size(), mip.a2_size(), tol.nonzero);
  CostReport rep;
  for (const auto& a : act1) {
    rep.cost_q1.push_back(a.size());
    rep.nnz += a.size();
  }
  for (const auto& a : act2) {
    rep.cost_q2.push_back(a.size());
    rep.nnz += a.size();
  }
  std::size_t good = 0;
  for (std::size_t r = 0; r < mip.num_r(); ++r) {
    const std::size_t c =
        rep.cost_q1[mip.query(r, 1)] + rep.cost_q2[mip.query(r, 2)];
    rep.cost_r.push_back(c);
    const bool is_good = c <= static_cast<std::size_t>(ell);
    rep.good.push_back(is_good);
    if (is_good) ++good;
  }
  rep.gamma = static_cast<double>(good) / static_cast<double>(mip.num_r());
  rep.lower_bound = (1.0 - rep.gamma) * (static_cast<double>(ell) / 2.0) *
                    static_cast<double>(mip.q1_size() + mip.q2_size());
  return rep;
}

StrategyExtraction extract_strategies(std::span<const double> x,
                                      const MipDescription& mip, int ell,
                                      const Tolerances& tol) {
  check_layout(x, mip);
  if (ell < 1) throw InvalidArgument("ell must be >= 1");
  const auto act1 =
      active_answers(x, 0, mip.q1_size(), mip.a1_size(), tol.nonzero);
  const auto act2 = active_answers(x, mip.q1_size() * mip.a1_size(),
                                   mip.q2_size(), mip.a2_size(), tol.nonzero);
  auto ranked = [](const std::vector<std::vector<std::size_t>>& act,
                   std::size_t j) {
    std::vector<std::size_t> s(act.size(), 0);
    for (std::size_t q = 0; q < act.size(); ++q) {
      if (j < act[q].size()) s[q] = act[q][j];
    }
    return s;
  };
  const auto l = static_cast<std::size_t>(ell);
  StrategyExtraction best;
  best.value = -1.0;
  for (std::size_t j1 = 0; j1 < l; ++j1) {
    const auto p1 = ranked(act1, j1);
    for (std::size_t j2 = 0; j2 < l; ++j2) {
      ProverStrategy s{p1, ranked(act2, j2)};
      const double v = strategy_value(mip, s);
      if (v > best.value) best = {v, std::move(s), j1, j2};
    }
  }
  return best;
}

}  // namespace sparsehard
