#include "sparsehard/setsystem.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "parallel.hpp"
#include "sparsehard/errors.hpp"
#include "sparsehard/linalg.hpp"
#include "sparsehard/rng.hpp"

namespace sparsehard {

BitVector::BitVector(std::size_t size)
    : size_(size), words_((size + 63) / 64, 0) {}

BitVector BitVector::FromString(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw InvalidArgument(std::string("bit string contains '") + bits[i] +
                            "'");
    }
  }
  return v;
}

void BitVector::set(std::size_t i, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

std::size_t BitVector::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

BitVector BitVector::complement() const {
  BitVector c(size_);
  for (std::size_t i = 0; i < words_.size(); ++i) c.words_[i] = ~words_[i];
  // Clear the padding bits so equality stays meaningful.
  if (size_ % 64 != 0) {
    c.words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }
  return c;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

Vector BitVector::to_vector() const {
  Vector v(size_, 0.0);
  for (std::size_t i = 0; i < size_; ++i) {
    if (test(i)) v[i] = 1.0;
  }
  return v;
}

SetSystem::SetSystem(std::vector<BitVector> sets, int ell, double delta)
    : sets_(std::move(sets)), universe_size_(0), ell_(ell), delta_(delta) {
  if (sets_.empty()) throw InvalidArgument("set system has no sets");
  universe_size_ = sets_.front().size();
  if (universe_size_ == 0) throw InvalidArgument("universe is empty");
  if (!(delta_ >= 0.0)) throw InvalidArgument("delta must be >= 0");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (sets_[i].size() != universe_size_) {
      throw InvalidArgument("set " + std::to_string(i) +
                            " has a different universe size");
    }
    if (!seen.insert(sets_[i].to_string()).second) {
      throw InvalidArgument("set " + std::to_string(i) + " is a duplicate");
    }
  }
}

std::size_t required_universe_size(std::size_t num_sets, int ell) {
  if (num_sets < 2) throw InvalidArgument("M must be >= 2");
  if (ell < 1) throw InvalidArgument("ell must be >= 1");
  const double l = static_cast<double>(ell);
  return static_cast<std::size_t>(
      std::ceil(256.0 * l * l * std::log(static_cast<double>(num_sets))));
}

double usefulness_delta(std::size_t universe_size) {
  return static_cast<double>(universe_size) / 32.0;
}

SetSystem generate_set_system(std::size_t num_sets, int ell,
                              std::uint64_t seed,
                              std::optional<std::size_t> universe_override) {
  const std::size_t required = required_universe_size(num_sets, ell);
  if (universe_override && *universe_override < 1) {
    throw InvalidArgument("universe override must be >= 1");
  }
  const std::size_t n = universe_override.value_or(required);
  const double delta = universe_override ? 0.0 : usefulness_delta(n);

  constexpr int kMaxAttempts = 100;
  std::vector<BitVector> sets;
  std::set<std::string> seen;
  sets.reserve(num_sets);
  for (std::size_t i = 0; i < num_sets; ++i) {
    Rng rng = Rng::Substream(seed, i);
    bool placed = false;
    for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
      BitVector v(n);
      for (std::size_t s = 0; s < n; ++s) v.set(s, rng.coin());
      if (seen.insert(v.to_string()).second) {
        sets.push_back(std::move(v));
        placed = true;
      }
    }
    if (!placed) {
      throw LimitExceeded("set " + std::to_string(i) +
                          " still duplicates an earlier set after " +
                          std::to_string(kMaxAttempts) + " resamples");
    }
  }
  return SetSystem(std::move(sets), ell, delta);
}

std::uint64_t admissible_subset_count(std::size_t num_sets, int ell) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::size_t top = std::min<std::size_t>(
      num_sets, static_cast<std::size_t>(std::max(ell, 0)));
  // Accumulate in long double to detect saturation, then round.
  long double total = 0.0L;
  long double binom = 1.0L;  // C(M, j)
  long double pow2 = 1.0L;
  for (std::size_t j = 0; j <= top; ++j) {
    total += binom * pow2;
    binom = binom * static_cast<long double>(num_sets - j) /
            static_cast<long double>(j + 1);
    pow2 *= 2.0L;
  }
  if (total >= static_cast<long double>(kMax)) return kMax;
  return static_cast<std::uint64_t>(std::llround(total));
}

namespace {

// Enumerates k-combinations of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double residual_for(const std::vector<Vector>& pool,
                    const std::vector<std::size_t>& picks,
                    const Vector& target, const Tolerances& tol) {
  OrthonormalBasis basis(target.size(), tol);
  for (auto p : picks) basis.add(pool[p]);
  return norm_sq(basis.remainder(target));
}

}  // namespace

double usefulness_margin(const SetSystem& sys, int ell,
                         const MarginOptions& options) {
  if (ell < 0) throw InvalidArgument("ell must be >= 0");
  const std::size_t num_sets = sys.num_sets();
  const std::uint64_t count = admissible_subset_count(num_sets, ell);
  if (count > options.enumeration_cap) {
    throw LimitExceeded("usefulness_margin: " + std::to_string(count) +
                        " admissible subsets exceed the enumeration cap " +
                        std::to_string(options.enumeration_cap));
  }
  const Vector e = ones(sys.universe_size());
  // pool[2i] = v_i, pool[2i+1] = vbar_i.
  std::vector<Vector> pool;
  pool.reserve(2 * num_sets);
  for (std::size_t i = 0; i < num_sets; ++i) {
    pool.push_back(sys.indicator(i));
    pool.push_back(sys.complement_indicator(i));
  }

  // The empty combination leaves all of ||e||^2.
  double best = norm_sq(e);
  const std::size_t top =
      std::min<std::size_t>(num_sets, static_cast<std::size_t>(ell));
  for (std::size_t size = 1; size <= top; ++size) {
    // Work items: (set-index combination, sign mask). Materialize the
    // combinations so they can be split across workers.
    std::vector<std::vector<std::size_t>> combos;
    std::vector<std::size_t> c(size);
    std::iota(c.begin(), c.end(), 0);
    do {
      combos.push_back(c);
    } while (next_combination(c, num_sets));
    const std::size_t masks = std::size_t{1} << size;
    auto partial = internal::map_chunks<double>(
        combos.size(), options.workers, [&](std::size_t lo, std::size_t hi) {
          double local = std::numeric_limits<double>::infinity();
          std::vector<std::size_t> picks(size);
          for (std::size_t ci = lo; ci < hi; ++ci) {
            for (std::size_t mask = 0; mask < masks; ++mask) {
              for (std::size_t t = 0; t < size; ++t) {
                picks[t] = 2 * combos[ci][t] + ((mask >> t) & 1u);
              }
              local = std::min(local,
                               residual_for(pool, picks, e, options.tol));
            }
          }
          return local;
        });
    for (double p : partial) best = std::min(best, p);
  }
  return best;
}

ProjectionStats montecarlo_projection(std::size_t num_sets, int ell,
                                      std::size_t trials, std::uint64_t seed,
                                      bool fixed_target, unsigned workers) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (ell < 0) throw InvalidArgument("ell must be >= 0");
  const std::size_t n = required_universe_size(num_sets, std::max(ell, 1));
  const double l = static_cast<double>(ell);
  ProjectionStats stats;
  stats.trials = trials;
  stats.dimension = n;
  stats.bound = 128.0 * l * l * std::log(static_cast<double>(num_sets));

  std::vector<double> proj(trials, 0.0);
  internal::map_chunks<int>(trials, workers, [&](std::size_t lo,
                                                 std::size_t hi) {
    Vector target(n, 1.0);
    Vector v(n);
    for (std::size_t t = lo; t < hi; ++t) {
      Rng rng = Rng::Substream(seed, t);
      OrthonormalBasis basis(n);
      for (int i = 0; i < ell; ++i) {
        for (auto& x : v) x = rng.coin() ? 1.0 : -1.0;
        basis.add(v);
      }
      if (!fixed_target) {
        for (auto& x : target) x = rng.coin() ? 1.0 : -1.0;
      }
      proj[t] = ell == 0 ? 0.0 : basis.projection_sq_norm(target);
    }
    return 0;
  });

  double sum = 0.0;
  for (double p : proj) {
    sum += p;
    stats.max_proj_sq = std::max(stats.max_proj_sq, p);
    if (p > stats.bound) ++stats.violations;
  }
  stats.mean_proj_sq = sum / static_cast<double>(trials);
  return stats;
}

}  // namespace sparsehard
