// One line per acceptance criterion:
//   PASS|FAIL  <name>  <runtime>s / <limit>s  <detail>
// Exit status is non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sparsehard/linalg.hpp"
#include "sparsehard/mip.hpp"
#include "sparsehard/natarajan.hpp"
#include "sparsehard/noisy.hpp"
#include "sparsehard/reduction.hpp"
#include "sparsehard/rng.hpp"
#include "sparsehard/setsystem.hpp"
#include "sparsehard/solvers.hpp"
#include "sparsehard/stacking.hpp"

using namespace sparsehard;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

DenseMatrix gaussian(std::size_t m, std::size_t p, Rng& rng) {
  std::vector<double> e(m * p);
  for (auto& v : e) v = rng.normal();
  return DenseMatrix(m, p, std::move(e));
}

Outcome natarajan_trace() {
  Outcome o;
  for (std::size_t m : {4, 8, 64, 256}) {
    const auto inst = build_natarajan_instance(m);
    const auto rep = verify_natarajan_trace(inst, 1e-9);
    const auto& its = rep.stepwise.trace.iterations;
    const std::string at = "m=" + std::to_string(m) + ": ";
    o.require(rep.passed, at + rep.first_failure);
    o.require(its.size() == m / 2, at + std::to_string(its.size()) + " iterations");
    for (std::size_t h = 0; h < its.size(); ++h) {
      o.require(its[h].selected == h, at + "out-of-order selection at step " + std::to_string(h));
    }
    o.require(std::sqrt(norm_sq(rep.stepwise.residual)) <= 1e-9, at + "final ||b'|| > 1e-9");
    o.require(rep.exhaustive.solution.nnz() == 2 && rep.exhaustive.solution.residual_sq <= 1e-9,
              at + "exhaustive search found no exact 2-sparse solution");
  }
  if (o.pass) o.detail = "m/2 iterations in index order for m = 4, 8, 64, 256; Opt = 2";
  return o;
}

Outcome reduction_completeness() {
  Outcome o;
  for (std::size_t nq = 1; nq <= 3; ++nq) {
    for (std::size_t na = 1; na <= 3; ++na) {
      const auto mip = toy_equality_mip(nq, na);
      SetSystem sys = na >= 2 ? generate_set_system(na, 3, 100 + na) : [] {
        BitVector b(64);
        Rng rng(5);
        for (std::size_t s = 0; s < 64; ++s) b.set(s, rng.coin());
        return SetSystem({b}, 3, 0.0);
      }();
      const auto b = build_matrix(mip, sys);
      const auto x = completeness_certificate(mip, constant_strategy(mip), b);
      const std::string at = "nq=" + std::to_string(nq) + " na=" + std::to_string(na) + ": ";
      o.require(x.nnz() == 2 * nq, at + "nnz " + std::to_string(x.nnz()));
      // Independent integer row sums over the support.
      for (std::size_t i = 0; i < b.rows(); ++i) {
        long long sum = 0;
        for (std::size_t k = 0; k < x.support.size(); ++k) {
          sum += static_cast<long long>(b(i, x.support[k])) * static_cast<long long>(x.coeffs[k]);
        }
        if (sum != 1) {
          o.require(false, at + "row " + std::to_string(i) + " sums to " + std::to_string(sum));
          break;
        }
      }
    }
  }
  if (o.pass) o.detail = "B x* = e exactly with ||x*||_0 = 2 nq for nq, na in {1,2,3}";
  return o;
}

Outcome soundness_diagnostics() {
  Outcome o;
  const auto mip = toy_xor_mip();
  const int ell = 3;
  const auto best = best_strategy(mip);
  o.require(best.value == 0.75, "best strategy value " + fmt("%.17g", best.value));
  // Independent brute force over all 16 strategy pairs.
  double brute = 0;
  for (std::size_t c = 0; c < 16; ++c) {
    ProverStrategy s{{c & 1, (c >> 1) & 1}, {(c >> 2) & 1, (c >> 3) & 1}};
    brute = std::max(brute, strategy_value(mip, s));
  }
  o.require(brute == 0.75, "brute-force value " + fmt("%.17g", brute));

  const std::size_t cols = ReductionLayout::For(mip, 1).cols();
  Rng rng(2024);
  int cost_violations = 0, value_violations = 0;
  for (int t = 0; t < 100; ++t) {
    const double density = rng.uniform01();
    Vector x(cols, 0.0);
    for (auto& v : x)
      if (rng.uniform01() < density) v = rng.normal();
    const auto rep = sparsity_cost_report(x, mip, ell);
    const auto ext = extract_strategies(x, mip, ell);
    if (static_cast<double>(rep.nnz) < rep.lower_bound) ++cost_violations;
    if (ext.value < rep.gamma / (ell * ell)) ++value_violations;
  }
  o.require(cost_violations == 0, std::to_string(cost_violations) + " cost-bound violations");
  o.require(value_violations == 0, std::to_string(value_violations) + " value-floor violations");
  if (o.pass) o.detail = "value 0.75; 100 random x, 0 violations of either bound";
  return o;
}

Outcome setsystem_usefulness() {
  Outcome o;
  double worst = 1e300;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto sys = generate_set_system(4, 2, seed);
    o.require(sys.universe_size() == 1420, "universe size " + std::to_string(sys.universe_size()));
    const double margin = usefulness_margin(sys, 2);
    worst = std::min(worst, margin);
    o.require(margin > 44.375, "seed " + std::to_string(seed) + " margin " + fmt("%.6g", margin));
  }
  if (o.pass) o.detail = "20 seeds, smallest margin " + fmt("%.6g", worst) + " > 44.375";
  return o;
}

Outcome projection_montecarlo() {
  Outcome o;
  const auto fixed = montecarlo_projection(4, 2, 1000, 1, true);
  o.require(std::abs(fixed.bound - 128 * 4 * std::log(4.0)) < 1e-9, "bound mismatch");
  o.require(fixed.violations == 0, std::to_string(fixed.violations) + " violations");
  const auto a = montecarlo_projection(4, 2, 10000, 2, true);
  const auto b = montecarlo_projection(4, 2, 10000, 3, false);
  const double diff = std::abs(a.mean_proj_sq - b.mean_proj_sq);
  o.require(diff <= 0.5, "mean difference " + fmt("%.6g", diff));
  if (o.pass) {
    o.detail = "0/1000 over " + fmt("%.1f", fixed.bound) + " (max " + fmt("%.3g", fixed.max_proj_sq) +
               "); fixed vs random mean diff " + fmt("%.3g", diff);
  }
  return o;
}

Outcome stacking_identity() {
  Outcome o;
  Rng rng(99);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 1 + rng.below(12), p = 1 + rng.below(6);
    std::vector<double> e(m * p);
    for (auto& v : e) v = rng.coin() ? 1.0 : 0.0;
    const DenseMatrix b(m, p, e);
    Vector x(p);
    for (auto& v : x) v = rng.normal();
    const std::uint64_t r = 1 + rng.below(8);
    const auto stacked = stack_rows(b, r);
    const double lhs = residual_sq(stacked, x, ones(r * m));
    const double rhs = static_cast<double>(r) * residual_sq(b, x, ones(m));
    const double rel = std::abs(lhs - rhs) / std::max(1e-300, std::abs(rhs));
    worst = std::max(worst, rel);
    o.require(rel <= 1e-9, "trial " + std::to_string(t) + " relative gap " + fmt("%.3g", rel));
  }
  o.require(gap_amplifying_copies(4, 0.5) == 5.0L, "gap-amplifying copies at m=4, delta=1/2");
  o.require(stack_gap_amplifying(DenseMatrix(4, 3), 0.5).rows() == 20, "20 rows expected");
  for (std::size_t p : {1, 3, 4, 9}) {
    o.require(unit_residual_copies(8, p, 1.0, 1.0) == static_cast<long double>(p),
              "unit-residual copies != p for p = " + std::to_string(p));
    o.require(stack_unit_residual(DenseMatrix(8, p), 1.0, 1.0).rows() == 8 * p,
              "unit-residual stacking rows for p = " + std::to_string(p));
  }
  if (o.pass) o.detail = "100 pairs, worst relative gap " + fmt("%.2g", worst) + "; r = 5 and r = p";
  return o;
}

Outcome ols_risk() {
  Outcome o;
  Rng rng(31337);
  std::vector<RiskEstimate> risks;
  for (std::size_t m : {20, 200}) {
    const auto x = gaussian(m, 5, rng);
    const Vector theta{1.0, -0.5, 2.0, 0.0, 3.0};
    const auto r = empirical_risk(ols_estimator(), x, theta, 2000, 7 + m);
    o.require(std::abs(r.mean_loss - 5.0) <= 0.5,
              "m=" + std::to_string(m) + " mean " + fmt("%.4g", r.mean_loss));
    risks.push_back(r);
  }
  const bool overlap =
      risks[0].ci_low() <= risks[1].ci_high() && risks[1].ci_low() <= risks[0].ci_high();
  o.require(overlap, "95% intervals do not overlap");
  if (o.pass) {
    o.detail = "(20,5): " + fmt("%.4g", risks[0].mean_loss) + " +- " + fmt("%.2g", risks[0].std_err) +
               ", (200,5): " + fmt("%.4g", risks[1].mean_loss) + " +- " + fmt("%.2g", risks[1].std_err);
  }
  return o;
}

Outcome noisy_reduction_wrapper() {
  Outcome o;
  const auto mip = toy_equality_mip(2, 2);
  const auto b = build_matrix(mip, generate_set_system(2, 1, 8, 24));
  const auto cert = completeness_certificate(mip, constant_strategy(mip), b);
  const std::size_t k = cert.support.size();
  // Least squares on the planted support: ||B x - e||^2 = ||P eps||^2 is
  // chi-square with k degrees of freedom, so its mean is k = h / 2.
  const double h = 2.0 * static_cast<double>(k);
  const NoisyAlgorithm oracle_support = [&](const DenseMatrix& m, std::size_t, const Vector& y) {
    return least_squares_on_support(m, y, cert.support).dense(m.cols());
  };
  const NoisyAlgorithm never = [](const DenseMatrix& m, std::size_t, const Vector&) {
    return Vector(m.cols(), 0.0);
  };
  const double delta = 1.0 / 8;
  int failures = 0;
  bool exhausted_exactly = true;
  for (std::uint64_t run = 0; run < 1000; ++run) {
    const auto r = noisy_reduction(oracle_support, b, k, h, 1.0, delta, run);
    if (!r.solution) ++failures;
    const auto n = noisy_reduction(never, b, k, h, 1.0, delta, run);
    if (n.solution || n.iterations != 3 || n.budget != 3) exhausted_exactly = false;
  }
  const double rate = failures / 1000.0;
  o.require(rate <= delta, "failure rate " + fmt("%.4g", rate));
  o.require(exhausted_exactly, "never-succeeding mock did not stop after exactly 3 attempts");
  if (o.pass) o.detail = "failure rate " + fmt("%.4g", rate) + " <= 0.125; 3 attempts per failing run";
  return o;
}

Outcome oracle_consistency() {
  Outcome o;
  Rng rng(4242);
  int violations = 0;
  for (int t = 0; t < 200; ++t) {
    const auto b = gaussian(10, 15, rng);
    Vector y(10);
    for (auto& v : y) v = rng.normal();
    const std::size_t k = 1 + rng.below(3);
    const auto sw = forward_stepwise(b, y, 0.0, k);
    const auto ex = exhaustive_sparse_solve(b, y, k, 0.0);
    if (ex.solution.residual_sq > sw.solution.residual_sq + kDefaultTolerances.abs) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  if (o.pass) o.detail = "200 instances, 0 violations";
  return o;
}

struct Criterion {
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"natarajan_trace", 30, natarajan_trace},
      {"reduction_completeness", 5, reduction_completeness},
      {"soundness_diagnostics", 10, soundness_diagnostics},
      {"setsystem_usefulness", 60, setsystem_usefulness},
      {"projection_montecarlo", 60, projection_montecarlo},
      {"stacking_identity", 5, stacking_identity},
      {"ols_risk", 30, ols_risk},
      {"noisy_reduction_wrapper", 30, noisy_reduction_wrapper},
      {"oracle_consistency", 60, oracle_consistency},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.pass && secs > c.limit_seconds) {
      out.pass = false;
      out.detail = "over the time limit";
    }
    failed += !out.pass;
    std::printf("%s  %-24s %7.3fs / %3.0fs  %s\n", out.pass ? "PASS" : "FAIL", c.name, secs,
                c.limit_seconds, out.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
