#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chromest/errors.hpp"
#include "chromest/exact_polynomial.hpp"
#include "chromest/graph.hpp"

namespace chromest {

/// Size caps (vertex counts) above which the exact oracles refuse to run.
struct OracleCaps {
  int deletion_contraction = 14;
  int interpolation = 10;
  int nbc = 12;
  int partitions = 12;
};

// ---------------------------------------------------------------------------
// Deletion-contraction

namespace detail {

// Graph on k <= 64 vertices as adjacency bit rows.
using Rows = std::vector<std::uint64_t>;

inline Rows remove_vertex(const Rows& rows, int v) {
  Rows out;
  out.reserve(rows.size() - 1);
  const std::uint64_t low = (std::uint64_t{1} << v) - 1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(i) == v) continue;
    const std::uint64_t r = rows[i];
    const std::uint64_t high = v == 63 ? 0 : (r >> (v + 1)) << v;
    out.push_back((r & low) | high);
  }
  return out;
}

class DeletionContraction {
 public:
  ExactPolynomial solve(const Rows& rows) {
    const int k = static_cast<int>(rows.size());
    if (k == 0) return ExactPolynomial::constant(1);
    int degree_sum = 0;
    for (auto r : rows) degree_sum += std::popcount(r);
    const int m = degree_sum / 2;
    if (m == 0) return ExactPolynomial::monomial(static_cast<std::size_t>(k));
    if (m == k * (k - 1) / 2) return ExactPolynomial::falling_factorial(static_cast<std::size_t>(k));

    std::string key(reinterpret_cast<const char*>(rows.data()), rows.size() * sizeof(std::uint64_t));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    ExactPolynomial result = reduce(rows);
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  ExactPolynomial reduce(const Rows& rows) {
    const int k = static_cast<int>(rows.size());

    // Split off the component of vertex 0 if the graph is disconnected.
    std::uint64_t comp = 1, frontier = 1;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= rows[static_cast<std::size_t>(std::countr_zero(f))];
      frontier = next & ~comp;
      comp |= next;
    }
    if (std::popcount(comp) < k) {
      std::vector<int> in_ids, out_ids;
      for (int v = 0; v < k; ++v) ((comp >> v) & 1 ? in_ids : out_ids).push_back(v);
      return solve(induced(rows, in_ids)) * solve(induced(rows, out_ids));
    }

    // A vertex of degree one contributes a factor (x - 1).
    for (int v = 0; v < k; ++v)
      if (std::popcount(rows[static_cast<std::size_t>(v)]) == 1)
        return ExactPolynomial::linear(1) * solve(remove_vertex(rows, v));

    // Pivot on the edge whose contraction removes the most edges.
    int bu = -1, bv = -1, best = -1;
    for (int u = 0; u < k; ++u)
      for (std::uint64_t nb = rows[static_cast<std::size_t>(u)] >> (u + 1); nb; nb &= nb - 1) {
        const int v = u + 1 + std::countr_zero(nb);
        const int common = std::popcount(rows[static_cast<std::size_t>(u)] & rows[static_cast<std::size_t>(v)]);
        if (common > best) {
          best = common;
          bu = u;
          bv = v;
        }
      }

    Rows deleted = rows;
    deleted[static_cast<std::size_t>(bu)] &= ~(std::uint64_t{1} << bv);
    deleted[static_cast<std::size_t>(bv)] &= ~(std::uint64_t{1} << bu);

    // Contract bv into bu; parallel edges collapse in the bit rows.
    Rows merged = deleted;
    const std::uint64_t nv = merged[static_cast<std::size_t>(bv)];
    merged[static_cast<std::size_t>(bu)] |= nv;
    for (std::uint64_t f = nv; f; f &= f - 1) merged[static_cast<std::size_t>(std::countr_zero(f))] |= std::uint64_t{1} << bu;
    const Rows contracted = remove_vertex(merged, bv);

    return solve(deleted) - solve(contracted);
  }

  static Rows induced(const Rows& rows, const std::vector<int>& ids) {
    Rows out(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = 0; j < ids.size(); ++j)
        if ((rows[static_cast<std::size_t>(ids[i])] >> ids[j]) & 1) out[i] |= std::uint64_t{1} << j;
    return out;
  }

  std::unordered_map<std::string, ExactPolynomial> memo_;
};

}  // namespace detail

/// Chromatic polynomial by deletion-contraction, P(G) = P(G - e) - P(G / e).
///
/// Contracted graphs collapse parallel edges. Recursion bottoms out at
/// edgeless graphs (x^k) and complete graphs (falling factorial); components
/// are solved separately and degree-one vertices peel off a factor (x - 1).
/// Subresults are memoized on the exact labeled subgraph.
inline ExactPolynomial exact_deletion_contraction(const Graph& g, int cap = OracleCaps{}.deletion_contraction) {
  const int n = g.vertex_count();
  if (n > cap || n > 64) throw CapExceeded("deletion-contraction", n, std::min(cap, 64));
  detail::Rows rows(static_cast<std::size_t>(n), 0);
  for (const auto& e : g.edges()) {
    rows[static_cast<std::size_t>(e.u)] |= std::uint64_t{1} << e.v;
    rows[static_cast<std::size_t>(e.v)] |= std::uint64_t{1} << e.u;
  }
  return detail::DeletionContraction{}.solve(rows);
}

// ---------------------------------------------------------------------------
// Brute-force colorings + interpolation

/// Number of proper colorings with colors {0..k-1}, by exhaustive assignment
/// (vertex by vertex, skipping colors already used by a colored neighbor).
inline BigInt count_proper_colorings(const Graph& g, int k) {
  const int n = g.vertex_count();
  if (n == 0) return 1;
  if (k <= 0) return 0;
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  std::uint64_t count = 0;
  std::function<void(int)> assign = [&](int v) {
    if (v == n) {
      ++count;
      return;
    }
    for (int c = 0; c < k; ++c) {
      bool clash = false;
      for (int w : g.neighbors(v))
        if (w < v && color[static_cast<std::size_t>(w)] == c) {
          clash = true;
          break;
        }
      if (clash) continue;
      color[static_cast<std::size_t>(v)] = c;
      assign(v + 1);
    }
    color[static_cast<std::size_t>(v)] = -1;
  };
  assign(0);
  return count;
}

/// Chromatic polynomial from the coloring counts P(0), ..., P(n): Newton
/// forward differences give P(x) = sum_j (Delta^j P(0) / j!) x(x-1)...(x-j+1),
/// expanded in exact rational arithmetic. Non-integral coefficients mean a bug.
inline ExactPolynomial exact_by_interpolation(const Graph& g, int cap = OracleCaps{}.interpolation) {
  const int n = g.vertex_count();
  if (n > cap) throw CapExceeded("interpolation", n, cap);
  std::vector<Rational> diff;
  for (int k = 0; k <= n; ++k) diff.emplace_back(count_proper_colorings(g, k));

  std::vector<Rational> coeffs(static_cast<std::size_t>(n) + 1);
  std::vector<Rational> falling{1};  // x(x-1)...(x-j+1), power basis
  Rational j_factorial = 1;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) {
      // diff[i] <- diff[i+1] - diff[i]
      for (int i = 0; i + j <= n; ++i) diff[static_cast<std::size_t>(i)] = diff[static_cast<std::size_t>(i) + 1] - diff[static_cast<std::size_t>(i)];
      std::vector<Rational> next(falling.size() + 1);
      for (std::size_t t = 0; t < falling.size(); ++t) {
        next[t + 1] += falling[t];
        next[t] -= falling[t] * (j - 1);
      }
      falling = std::move(next);
      j_factorial *= j;
    }
    const Rational weight = diff[0] / j_factorial;
    for (std::size_t t = 0; t < falling.size(); ++t) coeffs[t] += weight * falling[t];
  }

  std::vector<BigInt> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    if (boost::multiprecision::denominator(c) != 1)
      throw std::logic_error("interpolation produced a non-integral coefficient");
    out.push_back(boost::multiprecision::numerator(c));
  }
  return ExactPolynomial(std::move(out));
}

// ---------------------------------------------------------------------------
// Broken-circuit enumeration

/// True iff the edge set (assumed acyclic) contains a broken circuit: some
/// edge f outside the set whose endpoints are joined inside the set by a path
/// of edges all larger than f. Also true if the set has a cycle.
inline bool contains_broken_circuit(const Graph& g, const EdgeOrdering& eo, std::span<const int> set) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  std::vector<char> in_set(static_cast<std::size_t>(g.edge_count()), 0);
  std::vector<int> comp(n);
  for (std::size_t v = 0; v < n; ++v) comp[v] = static_cast<int>(v);
  std::function<int(int)> find = [&](int x) { return comp[static_cast<std::size_t>(x)] == x ? x : comp[static_cast<std::size_t>(x)] = find(comp[static_cast<std::size_t>(x)]); };
  for (int e : set) {
    const Edge& ed = g.edge(e);
    const int a = find(ed.u), b = find(ed.v);
    if (a == b) return true;  // cycle
    comp[static_cast<std::size_t>(a)] = b;
    in_set[static_cast<std::size_t>(e)] = 1;
    adj[static_cast<std::size_t>(ed.u)].push_back({ed.v, e});
    adj[static_cast<std::size_t>(ed.v)].push_back({ed.u, e});
  }
  std::vector<int> parent_edge(n);
  std::vector<int> stack;
  for (int f = 0; f < g.edge_count(); ++f) {
    if (in_set[static_cast<std::size_t>(f)]) continue;
    const Edge& fd = g.edge(f);
    if (find(fd.u) != find(fd.v)) continue;
    // Recover the forest path from fd.u to fd.v.
    std::fill(parent_edge.begin(), parent_edge.end(), -2);
    parent_edge[static_cast<std::size_t>(fd.u)] = -1;
    stack.assign(1, fd.u);
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (const auto& [y, e] : adj[static_cast<std::size_t>(x)])
        if (parent_edge[static_cast<std::size_t>(y)] == -2) {
          parent_edge[static_cast<std::size_t>(y)] = e;
          stack.push_back(y);
        }
    }
    bool all_larger = true;
    for (int x = fd.v; x != fd.u;) {
      const int e = parent_edge[static_cast<std::size_t>(x)];
      if (!eo.less(f, e)) {
        all_larger = false;
        break;
      }
      const Edge& ed = g.edge(e);
      x = ed.u == x ? ed.v : ed.u;
    }
    if (all_larger) return true;
  }
  return false;
}

/// b_i = number of i-edge subsets containing no broken circuit, i = 0..n-1.
/// Subsets are generated once each by extending with strictly larger edge
/// indices; since subsets of NBC sets are NBC, only NBC sets are extended.
inline std::vector<BigInt> exact_nbc_counts(const Graph& g, const EdgeOrdering& eo, int cap = OracleCaps{}.nbc) {
  const int n = g.vertex_count();
  if (n > cap) throw CapExceeded("nbc", n, cap);
  std::vector<BigInt> counts(static_cast<std::size_t>(std::max(n, 1)));
  std::vector<int> set;
  std::function<void(int)> extend = [&](int start) {
    counts[set.size()] += 1;
    for (int e = start; e < g.edge_count(); ++e) {
      set.push_back(e);
      if (!contains_broken_circuit(g, eo, set)) extend(e + 1);
      set.pop_back();
    }
  };
  extend(0);
  return counts;
}

// ---------------------------------------------------------------------------
// Independent-set partitions

/// p_t = number of partitions of V into t independent sets, t = 0..n, by
/// enumerating set partitions in restricted-growth order.
inline std::vector<BigInt> exact_independent_partitions(const Graph& g, int cap = OracleCaps{}.partitions) {
  const int n = g.vertex_count();
  if (n > cap) throw CapExceeded("partition", n, cap);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::vector<int>> blocks;
  std::function<void(int)> place = [&](int v) {
    if (v == n) {
      ++counts[blocks.size()];
      return;
    }
    // Index access: the recursion appends to `blocks`, which may reallocate.
    for (std::size_t i = 0, open = blocks.size(); i < open; ++i) {
      const auto& b = blocks[i];
      const bool independent = std::none_of(b.begin(), b.end(), [&](int w) { return g.adjacent(v, w); });
      if (!independent) continue;
      blocks[i].push_back(v);
      place(v + 1);
      blocks[i].pop_back();
    }
    blocks.push_back({v});
    place(v + 1);
    blocks.pop_back();
  };
  place(0);
  return {counts.begin(), counts.end()};
}

// ---------------------------------------------------------------------------
// Closed forms

enum class FormulaFamily { wheel, cycle, complete, tree };

/// Closed-form chromatic polynomials:
///   wheel on n vertices  x[(x-2)^(n-1) + (-1)^(n+1)(x-2)]   (n >= 4)
///   cycle               (x-1)^n + (-1)^n (x-1)               (n >= 3)
///   complete            x(x-1)...(x-n+1)                     (n >= 1)
///   tree                x(x-1)^(n-1)                         (n >= 1)
inline ExactPolynomial formula_family(FormulaFamily family, int n) {
  auto power = [](const ExactPolynomial& p, int e) {
    ExactPolynomial r = ExactPolynomial::constant(1);
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
  };
  const auto x = ExactPolynomial::monomial(1);
  switch (family) {
    case FormulaFamily::wheel: {
      if (n < 4) throw std::invalid_argument("wheel needs n >= 4");
      const auto xm2 = ExactPolynomial::linear(2);
      const auto sign = ExactPolynomial::constant((n + 1) % 2 == 0 ? 1 : -1);
      return x * (power(xm2, n - 1) + sign * xm2);
    }
    case FormulaFamily::cycle: {
      if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
      const auto xm1 = ExactPolynomial::linear(1);
      return power(xm1, n) + ExactPolynomial::constant(n % 2 == 0 ? 1 : -1) * xm1;
    }
    case FormulaFamily::complete:
      if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
      return ExactPolynomial::falling_factorial(static_cast<std::size_t>(n));
    case FormulaFamily::tree:
      if (n < 1) throw std::invalid_argument("tree needs n >= 1");
      return x * power(ExactPolynomial::linear(1), n - 1);
  }
  throw std::invalid_argument("unknown formula family");
}

/// Formula family for a generator family name, if it has one
/// (path and tree_star are trees).
inline std::optional<FormulaFamily> formula_family_for(std::string_view family) {
  if (family == "wheel") return FormulaFamily::wheel;
  if (family == "cycle") return FormulaFamily::cycle;
  if (family == "complete") return FormulaFamily::complete;
  if (family == "tree" || family == "path" || family == "tree_star") return FormulaFamily::tree;
  return std::nullopt;
}

/// Smallest k >= 0 with P(k) > 0.
inline int chromatic_number(const ExactPolynomial& p) {
  for (int k = 0;; ++k)
    if (p.evaluate(BigInt(k)) > 0) return k;
}

}  // namespace chromest
