#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "sparsehard/dense.hpp"
#include "sparsehard/mip.hpp"
#include "sparsehard/noisy.hpp"
#include "sparsehard/setsystem.hpp"
#include "sparsehard/solvers.hpp"

namespace sparsehard {

// Shortest decimal form that reads back as exactly the same double.
std::string format_double(double v);

// .mtxt: "m p" then m lines of p numbers.
DenseMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const DenseMatrix& b);

// Vector: "n" then n numbers, one per line.
Vector read_vector(std::istream& in);
void write_vector(std::ostream& out, std::span<const double> v);

// .ssys: "M |S| ell delta" then M lines of |S| characters in {0,1}.
SetSystem read_set_system(std::istream& in);
void write_set_system(std::ostream& out, const SetSystem& sys);

// .mip: "|R| |Q1| |Q2| |A1| |A2|", then |R| lines "q1 q2", then
// "UA <count>" and count lines "r a1 a2". Zero-based. An optional trailing
// line "EPS <value>" records the soundness error.
MipDescription read_mip(std::istream& in);
void write_mip(std::ostream& out, const MipDescription& mip);

// Parsers throw ParseError carrying the 1-based line of the offending token.

// Strategy: line 1 lists P1(q1) for q1 = 0..|Q1|-1, line 2 lists P2(q2).
ProverStrategy read_strategy(std::istream& in);
void write_strategy(std::ostream& out, const ProverStrategy& s);

// CSV: iter,selected_index,selected_score,residual_norm
void write_trace_csv(std::ostream& out, const StepwiseTrace& trace);

// CSV: estimator,m,p,k,trials,mean_loss,std_err
void write_risk_csv_header(std::ostream& out);
void write_risk_csv_row(std::ostream& out, std::string_view estimator,
                        std::size_t m, std::size_t p, std::size_t k,
                        const RiskEstimate& risk);

void write_projection_game(std::ostream& out, const ProjectionGame& game);

}  // namespace sparsehard
