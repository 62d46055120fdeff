#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chromest/exact_polynomial.hpp"
#include "chromest/graph.hpp"
#include "chromest/log_number.hpp"
#include "chromest/rng.hpp"

namespace chromest {

/// Partition of the vertices into independent blocks, with the block
/// conflict matrix: conflict(r, s) is set when some graph edge joins B_r and B_s.
class BlockMatrix {
 public:
  explicit BlockMatrix(const Graph& g)
      : n_(static_cast<std::size_t>(g.vertex_count())), k_(n_), conflict_(n_ * n_, 0), sizes_(n_, 1), members_(n_) {
    for (const auto& e : g.edges()) {
      conflict_[idx(e.u, e.v)] = 1;
      conflict_[idx(e.v, e.u)] = 1;
    }
    for (std::size_t v = 0; v < n_; ++v) members_[v] = {static_cast<int>(v)};
  }

  int block_count() const noexcept { return static_cast<int>(k_); }
  bool conflict(int r, int s) const { return conflict_[idx(r, s)] != 0; }
  int size(int r) const { return sizes_[static_cast<std::size_t>(r)]; }
  std::span<const int> sizes() const { return {sizes_.data(), k_}; }
  const std::vector<int>& members(int r) const { return members_[static_cast<std::size_t>(r)]; }

  /// Number of pairs r < s that can be merged (zeros above the diagonal).
  std::uint64_t mergeable_pairs() const {
    std::uint64_t count = 0;
    for (std::size_t r = 0; r < k_; ++r)
      for (std::size_t s = r + 1; s < k_; ++s) count += conflict_[r * n_ + s] == 0;
    return count;
  }

  /// The index-th mergeable pair in row-major order of the upper triangle.
  std::pair<int, int> mergeable_pair(std::uint64_t index) const {
    for (std::size_t r = 0; r < k_; ++r)
      for (std::size_t s = r + 1; s < k_; ++s)
        if (conflict_[r * n_ + s] == 0 && index-- == 0) return {static_cast<int>(r), static_cast<int>(s)};
    throw std::out_of_range("BlockMatrix::mergeable_pair: index past the last mergeable pair");
  }

  /// Merges B_s into B_r (r < s): ORs row and column s into r, then moves the
  /// last block into slot s.
  void merge(int r, int s) {
    if (r > s) std::swap(r, s);
    const auto ur = static_cast<std::size_t>(r), us = static_cast<std::size_t>(s);
    if (r == s || us >= k_) throw std::invalid_argument("BlockMatrix::merge: bad block pair");
    if (conflict_[ur * n_ + us]) throw std::logic_error("BlockMatrix::merge: blocks are not independent");
    for (std::size_t t = 0; t < k_; ++t) {
      const char c = conflict_[ur * n_ + t] | conflict_[us * n_ + t];
      conflict_[ur * n_ + t] = c;
      conflict_[t * n_ + ur] = c;
    }
    conflict_[ur * n_ + ur] = 0;
    sizes_[ur] += sizes_[us];
    members_[ur].insert(members_[ur].end(), members_[us].begin(), members_[us].end());

    const std::size_t last = k_ - 1;
    if (us != last) {
      for (std::size_t t = 0; t < k_; ++t) {
        conflict_[us * n_ + t] = conflict_[last * n_ + t];
        conflict_[t * n_ + us] = conflict_[t * n_ + last];
      }
      conflict_[us * n_ + us] = 0;
      sizes_[us] = sizes_[last];
      members_[us] = std::move(members_[last]);
    }
    members_[last].clear();
    --k_;
  }

 private:
  std::size_t idx(int r, int s) const { return static_cast<std::size_t>(r) * n_ + static_cast<std::size_t>(s); }

  std::size_t n_;
  std::size_t k_;
  std::vector<char> conflict_;
  std::vector<int> sizes_;
  std::vector<std::vector<int>> members_;
};

/// Number of distinct merge sequences leading from n singletons to a
/// partition with block sizes beta_1..beta_k:
///   F = (n - k)! * prod_i beta_i! / 2^(beta_i - 1).
/// Each block can be built in beta!(beta-1)!/2^(beta-1) ways and the
/// sum(beta_i - 1) = n - k steps of the k builds can be interleaved in
/// (n-k)! / prod (beta_i - 1)! ways.
inline BigInt duplicate_count_exact(std::span<const int> sizes, int n) {
  long total = 0;
  for (int b : sizes) {
    if (b < 1) throw std::invalid_argument("duplicate_count: block sizes must be >= 1");
    total += b;
  }
  if (total != n) throw std::invalid_argument("duplicate_count: block sizes do not sum to n");
  auto fact = [](long k) {
    BigInt r = 1;
    for (long j = 2; j <= k; ++j) r *= j;
    return r;
  };
  BigInt num = fact(n - static_cast<long>(sizes.size()));
  BigInt den = 1;
  for (int b : sizes) {
    num *= fact(b);
    den <<= (b - 1);
  }
  return num / den;
}

/// duplicate_count_exact in log space.
inline LogNumber duplicate_count(std::span<const int> sizes, int n, const LogFactorials& lf) {
  long total = 0;
  double log_f = 0.0;
  for (int b : sizes) {
    if (b < 1) throw std::invalid_argument("duplicate_count: block sizes must be >= 1");
    total += b;
    log_f += lf(static_cast<std::size_t>(b)) - (b - 1) * std::numbers::ln2;
  }
  if (total != n) throw std::invalid_argument("duplicate_count: block sizes do not sum to n");
  log_f += lf(static_cast<std::size_t>(n) - sizes.size());
  return LogNumber::from_log(log_f);
}

inline LogNumber duplicate_count(std::span<const int> sizes, int n) {
  return duplicate_count(sizes, n, LogFactorials(static_cast<std::size_t>(std::max(n, 1))));
}

/// One FF sample.
struct FfSample {
  /// p[i] estimates p_{n-i}, the number of partitions into n - i independent
  /// sets. p[0] = 1; levels below the point where the walk stopped are zero.
  std::vector<LogNumber> p;
  /// Mergeable-pair counts c_1, c_2, ... seen along the walk (the last is 0).
  std::vector<std::uint64_t> levels;
  /// Block count when the walk stopped.
  int final_blocks = 0;
};

/// Draws FF samples: from n singletons, repeatedly count the mergeable pairs
/// c_i, merge a uniformly chosen one and set
///   p_{n-i} = c_1 ... c_i / F(block sizes after the merge),
/// until no pair can be merged.
class FfSampler {
 public:
  explicit FfSampler(Graph&&) = delete;
  explicit FfSampler(const Graph& g) : graph_(&g), lf_(static_cast<std::size_t>(std::max(g.vertex_count(), 1))) {
    if (g.vertex_count() < 1) throw GraphError("FF sampler needs at least one vertex");
  }

  FfSample sample(Rng& rng) const {
    const int n = graph_->vertex_count();
    BlockMatrix blocks(*graph_);
    FfSample s;
    s.p.assign(static_cast<std::size_t>(n), LogNumber{});
    s.p[0] = LogNumber::one();
    // log F tracked incrementally: sum over blocks of log(beta!) - (beta-1) log 2, plus log (n-k)!.
    double log_block_terms = 0.0;
    double log_path = 0.0;
    for (int i = 1;; ++i) {
      const std::uint64_t c = blocks.mergeable_pairs();
      s.levels.push_back(c);
      if (c == 0) break;
      log_path += std::log(static_cast<double>(c));
      const auto [r, t] = blocks.mergeable_pair(rng.uniform_index(c));
      const int a = blocks.size(r), b = blocks.size(t);
      log_block_terms += block_term(a + b) - block_term(a) - block_term(b);
      blocks.merge(r, t);
      const double log_f = log_block_terms + lf_(static_cast<std::size_t>(i));
      s.p[static_cast<std::size_t>(i)] = LogNumber::from_log(log_path - log_f);
    }
    s.final_blocks = blocks.block_count();
    return s;
  }

 private:
  double block_term(int beta) const { return lf_(static_cast<std::size_t>(beta)) - (beta - 1) * std::numbers::ln2; }

  const Graph* graph_;
  LogFactorials lf_;
};

inline FfSample ff_sample(const Graph& g, Rng& rng) { return FfSampler(g).sample(rng); }

// ---------------------------------------------------------------------------
// Falling factorial -> power basis

/// Signed Stirling numbers of the first kind s(t, j), j = 0..t, so that
/// x(x-1)...(x-t+1) = sum_j s(t, j) x^j.
inline std::vector<BigInt> stirling_first_row(int t) {
  if (t < 0) throw std::invalid_argument("stirling_first_row: negative degree");
  std::vector<BigInt> row{1};
  for (int k = 0; k < t; ++k) {
    // multiply by (x - k)
    std::vector<BigInt> next(row.size() + 1);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j + 1] += row[j];
      next[j] -= row[j] * k;
    }
    row = std::move(next);
  }
  return row;
}

/// sum_t p_t <x>_t in the power basis, exactly. p[t-1] holds p_t; the result
/// is indexed by power. T is BigInt or Rational.
template <class T>
std::vector<T> falling_to_power_exact(std::span<const T> p) {
  std::vector<T> out(p.size() + 1);
  for (std::size_t t = 1; t <= p.size(); ++t) {
    if (p[t - 1] == 0) continue;
    const auto s = stirling_first_row(static_cast<int>(t));
    for (std::size_t j = 0; j <= t; ++j) out[j] += p[t - 1] * T(s[j]);
  }
  return out;
}

inline ExactPolynomial falling_to_power(std::span<const BigInt> p) {
  return ExactPolynomial(falling_to_power_exact<BigInt>(p));
}

/// Power-basis coefficients converted from estimated falling-factorial
/// coefficients, plus a per-coefficient cancellation flag.
struct PowerConversion {
  std::vector<LogNumber> coeffs;  // index = power
  /// Largest partial-sum magnitude over |final| for each coefficient (+inf when the final value is 0).
  std::vector<double> cancellation_ratio;
  std::vector<bool> cancellation_warning;
};

/// Sign-aware log-space version of falling_to_power for estimated p_t.
/// A coefficient is flagged when some partial sum was more than
/// `warn_factor` times larger than the final value.
inline PowerConversion falling_to_power(std::span<const LogNumber> p, double warn_factor = 1e6) {
  const std::size_t n = p.size();
  std::vector<std::vector<LogNumber>> stirling(n + 1);
  for (std::size_t t = 1; t <= n; ++t) {
    if (p[t - 1].is_zero()) continue;
    const auto row = stirling_first_row(static_cast<int>(t));
    stirling[t].reserve(row.size());
    for (const auto& s : row) stirling[t].push_back(to_log_number(s));
  }
  PowerConversion out;
  out.coeffs.assign(n + 1, LogNumber{});
  out.cancellation_ratio.assign(n + 1, 1.0);
  out.cancellation_warning.assign(n + 1, false);
  const double log_warn = std::log(warn_factor);
  for (std::size_t j = 0; j <= n; ++j) {
    LogNumber acc;
    double max_partial = -std::numeric_limits<double>::infinity();
    for (std::size_t t = std::max<std::size_t>(j, 1); t <= n; ++t) {
      if (p[t - 1].is_zero()) continue;
      acc += p[t - 1] * stirling[t][j];
      max_partial = std::max(max_partial, acc.log_magnitude());
    }
    out.coeffs[j] = acc;
    if (std::isinf(max_partial)) continue;  // every term was zero
    const double log_ratio = max_partial - acc.log_magnitude();
    out.cancellation_ratio[j] = std::exp(log_ratio);
    out.cancellation_warning[j] = log_ratio > log_warn;
  }
  return out;
}

}  // namespace chromest
