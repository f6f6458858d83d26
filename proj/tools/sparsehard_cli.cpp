// Batch driver for the sparsehard library.
//
// Exit codes: 0 success, 2 invalid input or refused limit, 3 a verification
// failed (certificate rejected, trace mismatch, usefulness below delta).

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "sparsehard/errors.hpp"
#include "sparsehard/linalg.hpp"
#include "sparsehard/mip.hpp"
#include "sparsehard/natarajan.hpp"
#include "sparsehard/noisy.hpp"
#include "sparsehard/reduction.hpp"
#include "sparsehard/setsystem.hpp"
#include "sparsehard/solvers.hpp"
#include "sparsehard/stacking.hpp"
#include "sparsehard/text_io.hpp"

namespace sh = sparsehard;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitVerification = 3;

struct Globals {
  std::uint64_t seed = 0;
  sh::Tolerances tol = sh::kDefaultTolerances;
  std::size_t max_rows = sh::kDefaultMaxRows;
  unsigned workers = 1;
};

// Exit code carried out of a subcommand without being an error.
struct Exit {
  int code;
};

template <typename Fn>
auto with_input(const std::string& path, Fn fn) {
  if (path.empty() || path == "-") return fn(std::cin);
  std::ifstream in(path);
  if (!in) throw sh::InvalidArgument("cannot open '" + path + "'");
  try {
    return fn(in);
  } catch (const sh::ParseError& e) {
    throw sh::InvalidArgument(path + ": " + e.what());
  }
}

template <typename Fn>
void with_output(const std::string& path, Fn fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw sh::InvalidArgument("cannot write '" + path + "'");
  fn(out);
}

sh::DenseMatrix load_matrix(const std::string& p) {
  return with_input(p, [](std::istream& in) { return sh::read_matrix(in); });
}
sh::Vector load_vector(const std::string& p) {
  return with_input(p, [](std::istream& in) { return sh::read_vector(in); });
}
sh::MipDescription load_mip(const std::string& p) {
  return with_input(p, [](std::istream& in) { return sh::read_mip(in); });
}
sh::ProverStrategy load_strategy(const std::string& p) {
  return with_input(p, [](std::istream& in) { return sh::read_strategy(in); });
}
sh::SetSystem load_set_system(const std::string& p) {
  return with_input(p, [](std::istream& in) { return sh::read_set_system(in); });
}

void kv(std::ostream& out, const char* key, double v) {
  out << key << ' ' << sh::format_double(v) << '\n';
}
void kv(std::ostream& out, const char* key, std::size_t v) {
  out << key << ' ' << v << '\n';
}

sh::Vector target_or_ones(const std::string& path, std::size_t rows) {
  if (path.empty()) return sh::ones(rows);
  sh::Vector y = load_vector(path);
  if (y.size() != rows) {
    throw sh::InvalidArgument("target length " + std::to_string(y.size()) +
                              " != rows " + std::to_string(rows));
  }
  return y;
}

void add_gen_setsystem(CLI::App& app, Globals& g) {
  auto* cmd = app.add_subcommand("gen-setsystem", "Generate a random set system");
  auto num = std::make_shared<std::size_t>(0);
  auto ell = std::make_shared<int>(1);
  auto universe = std::make_shared<std::size_t>(0);
  auto out = std::make_shared<std::string>();
  cmd->add_option("--M", *num, "Number of sets")->required();
  cmd->add_option("--ell", *ell, "Subset size bound")->required();
  cmd->add_option("--universe", *universe, "Override |S| (delta becomes 0)");
  cmd->add_option("-o,--output", *out, "Output .ssys (default stdout)");
  cmd->callback([=, &g] {
    std::optional<std::size_t> override;
    if (*universe > 0) override = *universe;
    const auto sys = sh::generate_set_system(*num, *ell, g.seed, override);
    with_output(*out, [&](std::ostream& os) { sh::write_set_system(os, sys); });
  });
}

void add_check_setsystem(CLI::App& app, Globals& g) {
  auto* cmd = app.add_subcommand("check-setsystem",
                                 "Brute-force usefulness margin of a set system");
  auto in = std::make_shared<std::string>();
  auto ell = std::make_shared<int>(0);
  auto cap = std::make_shared<std::uint64_t>(1'000'000);
  cmd->add_option("input", *in, "Input .ssys (default stdin)");
  cmd->add_option("--ell", *ell, "Subset size bound (default: from file)");
  cmd->add_option("--cap", *cap, "Enumeration cap");
  cmd->callback([=, &g] {
    const auto sys = load_set_system(*in);
    const int l = *ell > 0 ? *ell : sys.ell();
    sh::MarginOptions opts;
    opts.enumeration_cap = *cap;
    opts.workers = g.workers;
    opts.tol = g.tol;
    const double margin = sh::usefulness_margin(sys, l, opts);
    kv(std::cout, "margin", margin);
    kv(std::cout, "delta", sys.delta());
    const bool useful = sys.delta() <= 0.0 || margin > sys.delta();
    std::cout << "useful " << (useful ? "yes" : "no") << '\n';
    if (!useful) throw Exit{kExitVerification};
  });
}

void add_montecarlo(CLI::App& app, Globals& g) {
  auto* cmd = app.add_subcommand("montecarlo",
                                 "Projection of a target onto random +-1 vectors");
  auto num = std::make_shared<std::size_t>(0);
  auto ell = std::make_shared<int>(1);
  auto trials = std::make_shared<std::size_t>(1000);
  auto random_target = std::make_shared<bool>(false);
  cmd->add_option("--M", *num, "Number of sets")->required();
  cmd->add_option("--ell", *ell, "Number of random vectors")->required();
  cmd->add_option("--trials", *trials, "Trial count");
  cmd->add_flag("--random-target", *random_target,
                "Use a fresh random +-1 target instead of all ones");
  cmd->callback([=, &g] {
    const auto s = sh::montecarlo_projection(*num, *ell, *trials, g.seed,
                                             !*random_target, g.workers);
    kv(std::cout, "trials", s.trials);
    kv(std::cout, "dimension", s.dimension);
    kv(std::cout, "max_proj_sq", s.max_proj_sq);
    kv(std::cout, "mean_proj_sq", s.mean_proj_sq);
    kv(std::cout, "bound", s.bound);
    kv(std::cout, "violations", s.violations);
  });
}

void add_build_reduction(CLI::App& app, Globals& g) {
  auto* cmd = app.add_subcommand("build-reduction",
                                 "Build the reduction matrix of a MIP");
  auto mip_path = std::make_shared<std::string>();
  auto sys_path = std::make_shared<std::string>();
  auto strat_path = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto cert_out = std::make_shared<std::string>();
  cmd->add_option("--mip", *mip_path, "Input .mip")->required();
  cmd->add_option("--setsystem", *sys_path, "Input .ssys with M = |A2|")->required();
  cmd->add_option("--strategy", *strat_path,
                  "Strategy file; verifies the completeness certificate");
  cmd->add_option("-o,--output", *out, "Output .mtxt (default stdout)");
  cmd->add_option("--certificate", *cert_out, "Write the certificate vector here");
  cmd->callback([=, &g] {
    const auto mip = load_mip(*mip_path);
    const auto sys = load_set_system(*sys_path);
    const auto b = sh::build_matrix(mip, sys, sh::BuildOptions{g.max_rows});
    with_output(*out, [&](std::ostream& os) { sh::write_matrix(os, b); });
    if (!strat_path->empty()) {
      const auto cert =
          sh::completeness_certificate(mip, load_strategy(*strat_path), b);
      std::cerr << "certificate ok: nnz " << cert.support.size() << " = k "
                << mip.q1_size() + mip.q2_size() << '\n';
      if (!cert_out->empty()) {
        with_output(*cert_out, [&](std::ostream& os) {
          sh::write_vector(os, cert.dense(b.cols()));
        });
      }
    }
  });
}

void add_diagnose(CLI::App& app, Globals& g) {
  auto* cmd = app.add_subcommand(
      "diagnose", "Sparsity cost report and strategy extraction for a vector");
  auto mip_path = std::make_shared<std::string>();
  auto x_path = std::make_shared<std::string>();
  auto ell = std::make_shared<int>(3);
  cmd->add_option("--mip", *mip_path, "Input .mip")->required();
  cmd->add_option("--x", *x_path, "Coefficient vector")->required();
  cmd->add_option("--ell", *ell, "Cost threshold");
  cmd->callback([=, &g] {
    const auto mip = load_mip(*mip_path);
    const auto x = load_vector(*x_path);
    const auto rep = sh::sparsity_cost_report(x, mip, *ell, g.tol);
    const auto ext = sh::extract_strategies(x, mip, *ell, g.tol);
    kv(std::cout, "nnz", rep.nnz);
    kv(std::cout, "gamma", rep.gamma);
    kv(std::cout, "lower_bound", rep.lower_bound);
    kv(std::cout, "extracted_value", ext.value);
    kv(std::cout, "value_floor", rep.gamma / (static_cast<double>(*ell) * *ell));
    std::cout << "pair " << ext.j1 << ' ' << ext.j2 << '\n';
    sh::write_strategy(std::cout, ext.strategy);
  });
}

void add_stack(CLI::App& app, Globals& g) {
  auto* cmd = app.add_subcommand("stack", "Stack copies of a matrix");
  auto in = std::make_shared<std::string>();
  auto mode = std::make_shared<std::string>("rows");
  auto copies = std::make_shared<std::uint64_t>(1);
  auto delta = std::make_shared<double>(0.5);
  auto c1 = std::make_shared<double>(1.0);
  auto c2 = std::make_shared<double>(1.0);
  cmd->add_option("input", *in, "Input .mtxt (default stdin)");
  // "theorem1" and "prop7" are accepted as older names for the two
  // formula-driven modes.
  cmd->add_option("--mode", *mode, "rows | amplify | unit-residual")
      ->transform(CLI::Transformer(
          {{"theorem1", "amplify"}, {"prop7", "unit-residual"}}))
      ->check(CLI::IsMember({"rows", "amplify", "unit-residual"}));
  cmd->add_option("--copies", *copies, "Copy count for --mode rows");
  cmd->add_option("--delta", *delta, "Exponent gap for --mode amplify");
  cmd->add_option("--c1", *c1, "Exponent C1 for --mode unit-residual");
  cmd->add_option("--c2", *c2, "Exponent C2 for --mode unit-residual");
  cmd->callback([=, &g] {
    const auto b = load_matrix(*in);
    sh::DenseMatrix out;
    if (*mode == "rows") {
      out = sh::stack_rows(b, *copies, g.max_rows);
    } else if (*mode == "amplify") {
      out = sh::stack_gap_amplifying(b, *delta, g.max_rows);
    } else {
      out = sh::stack_unit_residual(b, *c1, *c2, g.max_rows);
    }
    sh::write_matrix(std::cout, out);
  });
}

void add_solve(CLI::App& app, Globals& g) {
  auto* cmd = app.add_subcommand("solve", "Sparse or least-squares solve");
  auto method = std::make_shared<std::string>("stepwise");
  auto in = std::make_shared<std::string>();
  auto target = std::make_shared<std::string>();
  auto k = std::make_shared<std::size_t>(1);
  auto eps = std::make_shared<double>(0.0);
  auto max_iter = std::make_shared<std::size_t>(0);
  auto lambda = std::make_shared<double>(0.1);
  auto trace = std::make_shared<std::string>();
  cmd->add_option("--method", *method, "exhaustive | stepwise | lasso | ols")
      ->check(CLI::IsMember({"exhaustive", "stepwise", "lasso", "ols"}));
  cmd->add_option("--matrix", *in, "Input .mtxt (default stdin)");
  cmd->add_option("--target", *target, "Target vector (default all ones)");
  cmd->add_option("--k", *k, "Sparsity for exhaustive search");
  cmd->add_option("--eps", *eps, "Residual norm threshold");
  cmd->add_option("--max-iter", *max_iter, "Stepwise iteration cap (default p)");
  cmd->add_option("--lambda", *lambda, "LASSO penalty");
  cmd->add_option("--trace", *trace, "Write the stepwise trace CSV here");
  cmd->callback([=, &g] {
    const auto b = load_matrix(*in);
    const auto y = target_or_ones(*target, b.rows());
    sh::Vector x;
    if (*method == "exhaustive") {
      sh::ExhaustiveOptions opts;
      opts.workers = g.workers;
      opts.tol = g.tol;
      const auto r = sh::exhaustive_sparse_solve(b, y, *k, *eps, opts);
      std::cerr << "within_eps " << (r.within_eps ? "yes" : "no") << '\n';
      x = r.solution.dense(b.cols());
    } else if (*method == "stepwise") {
      const std::size_t cap = *max_iter > 0 ? *max_iter : b.cols();
      const auto r = sh::forward_stepwise(b, y, *eps, cap, g.tol);
      if (!trace->empty()) {
        with_output(*trace, [&](std::ostream& os) { sh::write_trace_csv(os, r.trace); });
      }
      x = r.solution.dense(b.cols());
    } else if (*method == "lasso") {
      const std::size_t cap = *max_iter > 0 ? *max_iter : 10'000;
      x = sh::lasso_coordinate_descent(b, y, *lambda, 1e-10, cap, g.tol).coefficients;
    } else {
      x = sh::ordinary_least_squares(b, y, g.tol);
    }
    std::cerr << "residual_sq " << sh::format_double(sh::residual_sq(b, x, y)) << '\n';
    sh::write_vector(std::cout, x);
  });
}

void add_certify(CLI::App& app, Globals& g) {
  auto* cmd = app.add_subcommand("certify", "Check a (g, h) certificate");
  auto in = std::make_shared<std::string>();
  auto x_path = std::make_shared<std::string>();
  auto k = std::make_shared<std::size_t>(1);
  auto gv = std::make_shared<double>(1.0);
  auto h = std::make_shared<double>(0.0);
  cmd->add_option("--matrix", *in, "Input .mtxt")->required();
  cmd->add_option("--x", *x_path, "Candidate vector")->required();
  cmd->add_option("--k", *k, "Sparsity")->required();
  cmd->add_option("--g", *gv, "Sparsity slack factor");
  cmd->add_option("--h", *h, "Residual bound");
  cmd->callback([=, &g] {
    const auto b = load_matrix(*in);
    const auto x = load_vector(*x_path);
    if (x.size() != b.cols()) {
      throw sh::InvalidArgument("x length " + std::to_string(x.size()) +
                                " != columns " + std::to_string(b.cols()));
    }
    const auto sol = sh::SparseSolution::FromDense(x, g.tol.nonzero);
    const bool ok = sh::certificate_check(b, sol, *k, *gv, *h, g.tol);
    std::cout << (ok ? "accept" : "reject") << '\n';
    if (!ok) throw Exit{kExitVerification};
  });
}

void add_bad_example(CLI::App& app, Globals&) {
  auto* cmd = app.add_subcommand("bad-example",
                                 "Instance on which forward stepwise needs m/2 steps");
  auto m = std::make_shared<std::size_t>(8);
  auto verify = std::make_shared<bool>(false);
  auto inst_out = std::make_shared<std::string>();
  cmd->add_option("--m", *m, "Row count (even, >= 4)");
  cmd->add_flag("--verify", *verify, "Check the full trace; exit 3 on mismatch");
  cmd->add_option("--instance", *inst_out,
                  "Write the matrix here and 'm delta eps' to <path>.meta");
  cmd->callback([=] {
    const auto inst = sh::build_natarajan_instance(*m);
    if (!inst_out->empty()) {
      with_output(*inst_out, [&](std::ostream& os) { sh::write_matrix(os, inst.b); });
      with_output(*inst_out + ".meta", [&](std::ostream& os) {
        os << inst.m << ' ' << sh::format_double(inst.delta) << ' '
           << sh::format_double(inst.eps) << '\n';
      });
    }
    const auto rep = sh::verify_natarajan_trace(inst);
    sh::write_trace_csv(std::cout, rep.stepwise.trace);
    std::cerr << "iterations " << rep.iterations << " opt " << rep.opt
              << " ratio " << sh::format_double(rep.iteration_ratio)
              << " pinv_norm_sq " << sh::format_double(rep.pinv_norm_sq) << '\n';
    if (*verify) {
      if (!rep.passed) {
        std::cerr << "trace mismatch: " << rep.first_failure << '\n';
        throw Exit{kExitVerification};
      }
      std::cerr << "trace verified\n";
    }
  });
}

sh::Estimator make_estimator(const std::string& name, std::size_t k,
                             double lambda) {
  if (name == "ols") return sh::ols_estimator();
  if (name == "zero") return sh::zero_estimator();
  if (name == "exhaustive") return sh::exhaustive_estimator(k);
  if (name == "stepwise") return sh::stepwise_estimator(k);
  return sh::lasso_estimator(lambda);
}

void add_noisy(CLI::App& app, Globals& g) {
  auto* cmd = app.add_subcommand("noisy", "Noisy regression harness");
  cmd->require_subcommand(1);
  auto in = std::make_shared<std::string>();
  auto x_path = std::make_shared<std::string>();
  auto sd = std::make_shared<double>(1.0);
  auto estimator = std::make_shared<std::string>("ols");
  auto trials = std::make_shared<std::size_t>(1000);
  auto k = std::make_shared<std::size_t>(1);
  auto lambda = std::make_shared<double>(0.1);
  auto h = std::make_shared<double>(1.0);
  auto gv = std::make_shared<double>(1.0);
  auto delta_fail = std::make_shared<double>(sh::kDefaultDeltaFail);
  auto algorithm = std::make_shared<std::string>("stepwise");

  auto* target = cmd->add_subcommand("target", "y = B x* + noise");
  target->add_option("--matrix", *in, "Input .mtxt")->required();
  target->add_option("--x", *x_path, "Planted vector x*")->required();
  target->add_option("--sd", *sd, "Noise standard deviation");
  target->callback([=, &g] {
    const auto b = load_matrix(*in);
    const auto inst = sh::make_noisy_target(b, load_vector(*x_path), g.seed, *sd);
    sh::write_vector(std::cout, inst.y);
  });

  auto* risk = cmd->add_subcommand("risk", "Empirical prediction risk (CSV)");
  risk->add_option("--matrix", *in, "Design matrix X")->required();
  risk->add_option("--theta", *x_path, "True coefficients")->required();
  risk->add_option("--estimator", *estimator,
                   "ols | zero | exhaustive | stepwise | lasso")
      ->check(CLI::IsMember({"ols", "zero", "exhaustive", "stepwise", "lasso"}));
  risk->add_option("--trials", *trials, "Trial count");
  risk->add_option("--k", *k, "Sparsity for exhaustive / stepwise");
  risk->add_option("--lambda", *lambda, "LASSO penalty");
  risk->callback([=, &g] {
    const auto x = load_matrix(*in);
    const auto theta = load_vector(*x_path);
    const auto r = sh::empirical_risk(make_estimator(*estimator, *k, *lambda), x,
                                      theta, *trials, g.seed);
    sh::write_risk_csv_header(std::cout);
    sh::write_risk_csv_row(std::cout, *estimator, x.rows(), x.cols(), *k, r);
  });

  auto* reduce = cmd->add_subcommand(
      "reduce", "Solve the exact problem by repeated noisy runs");
  reduce->alias("prop9");
  reduce->add_option("--matrix", *in, "Input .mtxt")->required();
  reduce->add_option("--k", *k, "Sparsity")->required();
  reduce->add_option("--h", *h, "Residual bound");
  reduce->add_option("--g", *gv, "Sparsity slack factor");
  reduce->add_option("--delta-fail", *delta_fail, "Failure probability");
  reduce->add_option("--algorithm", *algorithm, "stepwise | exhaustive")
      ->check(CLI::IsMember({"stepwise", "exhaustive"}));
  reduce->callback([=, &g] {
    const auto b = load_matrix(*in);
    const bool stepwise = *algorithm == "stepwise";
    const sh::NoisyAlgorithm alg = [stepwise](const sh::DenseMatrix& m,
                                              std::size_t kk, const sh::Vector& y) {
      if (stepwise) return sh::forward_stepwise(m, y, 0.0, kk).solution.dense(m.cols());
      return sh::exhaustive_sparse_solve(m, y, kk, 0.0).solution.dense(m.cols());
    };
    const auto r = sh::noisy_reduction(alg, b, *k, *h, *gv, *delta_fail, g.seed);
    std::cerr << "attempts " << r.iterations << " of " << r.budget << '\n';
    if (!r.solution) {
      std::cout << "failure\n";
      throw Exit{kExitVerification};
    }
    sh::write_vector(std::cout, r.solution->dense(b.cols()));
  });
}

void add_togame(CLI::App& app, Globals&) {
  auto* cmd = app.add_subcommand("togame", "Convert a MIP to a projection game");
  auto mip_path = std::make_shared<std::string>();
  auto strat_path = std::make_shared<std::string>();
  cmd->add_option("input", *mip_path, "Input .mip (default stdin)");
  cmd->add_option("--strategy", *strat_path,
                  "Evaluate this strategy instead of the optimum");
  cmd->callback([=] {
    const auto mip = load_mip(*mip_path);
    const auto game = sh::mip_to_projection_game(mip);
    sh::write_projection_game(std::cout, game);
    sh::ProverStrategy s;
    if (strat_path->empty()) {
      s = sh::best_strategy(mip).strategy;
    } else {
      s = load_strategy(*strat_path);
      sh::check_strategy(mip, s);
    }
    const double mv = sh::strategy_value(mip, s);
    const double gv = sh::projection_game_value(game, s);
    std::cout << "VALUE " << sh::format_double(gv) << '\n';
    if (mv != gv) {
      std::cerr << "value mismatch: mip " << sh::format_double(mv) << '\n';
      throw Exit{kExitVerification};
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse regression hardness workbench"};
  app.require_subcommand(1);
  // Keep -h free so "--h" can name the residual bound.
  app.set_help_flag("--help", "Print this help message and exit");
  Globals g;
  if (const char* env = std::getenv("SPARSEHARD_MAX_ROWS")) {
    try {
      g.max_rows = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: SPARSEHARD_MAX_ROWS is not a number\n";
      return kExitInvalid;
    }
  }
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--tol-abs", g.tol.abs, "Absolute tolerance");
  app.add_option("--tol-rel", g.tol.rel, "Relative tolerance");
  app.add_option("--tol-nonzero", g.tol.nonzero, "Nonzero threshold");
  app.add_option("--tol-pivot", g.tol.pivot, "Pivot threshold");
  app.add_option("--max-rows", g.max_rows, "Row cap for built matrices");
  app.add_option("--workers", g.workers, "Worker threads (speed only)");
  app.fallthrough();

  add_gen_setsystem(app, g);
  add_check_setsystem(app, g);
  add_montecarlo(app, g);
  add_build_reduction(app, g);
  add_diagnose(app, g);
  add_stack(app, g);
  add_solve(app, g);
  add_certify(app, g);
  add_bad_example(app, g);
  add_noisy(app, g);
  add_togame(app, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  } catch (const Exit& e) {
    return e.code;
  } catch (const sh::VerificationFailed& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const sh::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const sh::LimitExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const sh::RankDeficient& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
