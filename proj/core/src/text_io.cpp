#include "sparsehard/text_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sparsehard/errors.hpp"

namespace sparsehard {

namespace {

// Whitespace tokenizer that remembers the line of each token.
class Tokens {
 public:
  explicit Tokens(std::istream& in) {
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      std::istringstream ss(line);
      std::string tok;
      while (ss >> tok) toks_.push_back({std::move(tok), n});
    }
    last_line_ = n;
  }

  bool done() const { return pos_ == toks_.size(); }
  std::size_t line() const {
    return done() ? last_line_ + 1 : toks_[pos_].line;
  }

  const std::string& word(const char* what) {
    if (done()) throw ParseError(line(), std::string("expected ") + what);
    return toks_[pos_++].text;
  }

  void expect(const std::string& keyword) {
    const std::size_t at = line();
    if (word(keyword.c_str()) != keyword) {
      throw ParseError(at, "expected '" + keyword + "'");
    }
  }

  std::size_t count(const char* what) {
    const std::size_t at = line();
    const std::string& w = word(what);
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || p != w.data() + w.size()) {
      throw ParseError(at, std::string("bad ") + what + " '" + w + "'");
    }
    return v;
  }

  double real(const char* what) {
    const std::size_t at = line();
    const std::string& w = word(what);
    double v = 0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || p != w.data() + w.size() || !std::isfinite(v)) {
      throw ParseError(at, std::string("bad ") + what + " '" + w + "'");
    }
    return v;
  }

  std::size_t index(const char* what, std::size_t bound) {
    const std::size_t at = line();
    const std::size_t v = count(what);
    if (v >= bound) {
      throw ParseError(at, std::string(what) + " " + std::to_string(v) +
                               " out of range [0, " + std::to_string(bound) +
                               ")");
    }
    return v;
  }

  void finish() {
    if (!done()) throw ParseError(line(), "unexpected trailing data");
  }

 private:
  struct Tok {
    std::string text;
    std::size_t line;
  };
  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  std::size_t last_line_ = 0;
};

template <typename Fn>
auto rethrow_with_line(std::size_t line, Fn fn) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ParseError(line, e.what());
  }
}

std::vector<std::size_t> read_index_line(std::istream& in, std::size_t line) {
  std::string text;
  if (!std::getline(in, text)) throw ParseError(line, "missing strategy line");
  std::istringstream ss(text);
  std::vector<std::size_t> out;
  std::string tok;
  while (ss >> tok) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
      throw ParseError(line, "bad answer '" + tok + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

DenseMatrix read_matrix(std::istream& in) {
  Tokens t(in);
  const std::size_t m = t.count("row count");
  const std::size_t p = t.count("column count");
  std::vector<double> entries;
  entries.reserve(m * p);
  for (std::size_t i = 0; i < m * p; ++i) entries.push_back(t.real("entry"));
  t.finish();
  return DenseMatrix(m, p, std::move(entries));
}

void write_matrix(std::ostream& out, const DenseMatrix& b) {
  out << b.rows() << ' ' << b.cols() << '\n';
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(b(i, j));
    }
    out << '\n';
  }
}

Vector read_vector(std::istream& in) {
  Tokens t(in);
  const std::size_t n = t.count("length");
  Vector v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(t.real("entry"));
  t.finish();
  return v;
}

void write_vector(std::ostream& out, std::span<const double> v) {
  out << v.size() << '\n';
  for (double x : v) out << format_double(x) << '\n';
}

SetSystem read_set_system(std::istream& in) {
  Tokens t(in);
  const std::size_t m = t.count("set count");
  const std::size_t s = t.count("universe size");
  const std::size_t ell = t.count("ell");
  const double delta = t.real("delta");
  std::vector<BitVector> sets;
  sets.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t at = t.line();
    const std::string& bits = t.word("set");
    if (bits.size() != s) {
      throw ParseError(at, "set has " + std::to_string(bits.size()) +
                               " characters, expected " + std::to_string(s));
    }
    sets.push_back(rethrow_with_line(at, [&] { return BitVector::FromString(bits); }));
  }
  t.finish();
  return rethrow_with_line(1, [&] {
    return SetSystem(std::move(sets), static_cast<int>(ell), delta);
  });
}

void write_set_system(std::ostream& out, const SetSystem& sys) {
  out << sys.num_sets() << ' ' << sys.universe_size() << ' ' << sys.ell()
      << ' ' << format_double(sys.delta()) << '\n';
  for (const auto& s : sys.sets()) out << s.to_string() << '\n';
}

MipDescription read_mip(std::istream& in) {
  Tokens t(in);
  const std::size_t nr = t.count("|R|");
  const std::size_t q1 = t.count("|Q1|");
  const std::size_t q2 = t.count("|Q2|");
  const std::size_t a1 = t.count("|A1|");
  const std::size_t a2 = t.count("|A2|");
  MipDescription mip =
      rethrow_with_line(1, [&] { return MipDescription(nr, q1, q2, a1, a2); });
  for (std::size_t r = 0; r < nr; ++r) {
    const std::size_t x = t.index("q1", q1);
    const std::size_t y = t.index("q2", q2);
    mip.set_queries(r, x, y);
  }
  t.expect("UA");
  const std::size_t count = t.count("UA count");
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t at = t.line();
    const std::size_t r = t.index("r", nr);
    const std::size_t x = t.index("a1", a1);
    const std::size_t y = t.index("a2", a2);
    rethrow_with_line(at, [&] {
      mip.set_accepted(r, x, y);
      return 0;
    });
  }
  if (!t.done()) {
    t.expect("EPS");
    const std::size_t at = t.line();
    const double eps = t.real("soundness error");
    if (eps < 0 || eps > 1) throw ParseError(at, "soundness error outside [0, 1]");
    mip.set_soundness_error(eps);
  }
  t.finish();
  return mip;
}

void write_mip(std::ostream& out, const MipDescription& mip) {
  out << mip.num_r() << ' ' << mip.q1_size() << ' ' << mip.q2_size() << ' '
      << mip.a1_size() << ' ' << mip.a2_size() << '\n';
  for (std::size_t r = 0; r < mip.num_r(); ++r) {
    out << mip.query(r, 1) << ' ' << mip.query(r, 2) << '\n';
  }
  out << "UA " << mip.accepted_count() << '\n';
  for (std::size_t r = 0; r < mip.num_r(); ++r) {
    for (std::size_t a = 0; a < mip.a1_size(); ++a) {
      if (auto b = mip.accepted(r, a)) out << r << ' ' << a << ' ' << *b << '\n';
    }
  }
  if (auto eps = mip.soundness_error()) {
    out << "EPS " << format_double(*eps) << '\n';
  }
}

ProverStrategy read_strategy(std::istream& in) {
  ProverStrategy s;
  s.p1 = read_index_line(in, 1);
  s.p2 = read_index_line(in, 2);
  return s;
}

void write_strategy(std::ostream& out, const ProverStrategy& s) {
  for (std::size_t i = 0; i < s.p1.size(); ++i) out << (i ? " " : "") << s.p1[i];
  out << '\n';
  for (std::size_t i = 0; i < s.p2.size(); ++i) out << (i ? " " : "") << s.p2[i];
  out << '\n';
}

void write_trace_csv(std::ostream& out, const StepwiseTrace& trace) {
  out << "iter,selected_index,selected_score,residual_norm\n";
  for (std::size_t h = 0; h < trace.iterations.size(); ++h) {
    const auto& it = trace.iterations[h];
    out << h + 1 << ',' << it.selected << ',' << format_double(it.score) << ','
        << format_double(it.residual_norm) << '\n';
  }
}

void write_risk_csv_header(std::ostream& out) {
  out << "estimator,m,p,k,trials,mean_loss,std_err\n";
}

void write_risk_csv_row(std::ostream& out, std::string_view estimator,
                        std::size_t m, std::size_t p, std::size_t k,
                        const RiskEstimate& risk) {
  out << estimator << ',' << m << ',' << p << ',' << k << ',' << risk.trials
      << ',' << format_double(risk.mean_loss) << ','
      << format_double(risk.std_err) << '\n';
}

void write_projection_game(std::ostream& out, const ProjectionGame& game) {
  out << game.q1_size << ' ' << game.q2_size << ' ' << game.a1_size << ' '
      << game.a2_size << '\n';
  out << "EDGES " << game.edges.size() << '\n';
  for (const auto& e : game.edges) {
    out << e.q1 << ' ' << e.q2;
    for (auto v : e.pi) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace sparsehard
