#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "chromest/errors.hpp"
#include "chromest/graph.hpp"
#include "chromest/log_number.hpp"
#include "chromest/rng.hpp"

namespace chromest {

enum class BcVariant { plain, improved };

inline std::string_view to_string(BcVariant v) { return v == BcVariant::plain ? "plain" : "improved"; }

/// Union-find with union by rank and path halving.
class DisjointSet {
 public:
  explicit DisjointSet(int n = 0) { reset(n); }

  void reset(int n) {
    parent_.resize(static_cast<std::size_t>(n));
    std::iota(parent_.begin(), parent_.end(), 0);
    rank_.assign(static_cast<std::size_t>(n), 0);
    components_ = n;
  }

  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }

  /// find without path compression.
  int root(int x) const {
    while (parent_[static_cast<std::size_t>(x)] != x) x = parent_[static_cast<std::size_t>(x)];
    return x;
  }

  /// Merges the sets of a and b; false if they were already one set.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[static_cast<std::size_t>(a)] < rank_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    if (rank_[static_cast<std::size_t>(a)] == rank_[static_cast<std::size_t>(b)]) ++rank_[static_cast<std::size_t>(a)];
    --components_;
    return true;
  }

  bool same(int a, int b) const { return root(a) == root(b); }
  int components() const noexcept { return components_; }
  int size() const noexcept { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
  int components_ = 0;
};

/// Edge set of the forest under construction, with its union-find and the
/// forest adjacency used to recover tree paths.
class ForestState {
 public:
  ForestState() = default;
  explicit ForestState(const Graph& g)
      : graph_(&g),
        dsu_(g.vertex_count()),
        in_forest_(static_cast<std::size_t>(g.edge_count()), 0),
        adj_(static_cast<std::size_t>(g.vertex_count())) {}

  void reset() {
    dsu_.reset(graph_->vertex_count());
    std::fill(in_forest_.begin(), in_forest_.end(), 0);
    for (auto& a : adj_) a.clear();
    chosen_.clear();
  }

  /// Adds edge e. Throws if e is already present or would close a cycle.
  void add(int e) {
    if (contains(e)) throw std::logic_error("ForestState::add: edge already chosen");
    const Edge& ed = graph_->edge(e);
    if (!dsu_.unite(ed.u, ed.v)) throw std::logic_error("ForestState::add: edge closes a cycle");
    in_forest_[static_cast<std::size_t>(e)] = 1;
    adj_[static_cast<std::size_t>(ed.u)].push_back({ed.v, e});
    adj_[static_cast<std::size_t>(ed.v)].push_back({ed.u, e});
    chosen_.push_back(e);
  }

  const Graph& graph() const { return *graph_; }
  const std::vector<int>& chosen() const noexcept { return chosen_; }
  bool contains(int e) const { return in_forest_[static_cast<std::size_t>(e)] != 0; }
  const DisjointSet& dsu() const noexcept { return dsu_; }
  DisjointSet& dsu() noexcept { return dsu_; }

  /// (neighbor, edge index) pairs of v inside the forest.
  std::span<const std::pair<int, int>> forest_neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }

 private:
  const Graph* graph_ = nullptr;
  DisjointSet dsu_;
  std::vector<char> in_forest_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::vector<int> chosen_;
};

/// Reference admissibility test, straight from the definition.
///
/// True iff e joins two different trees of the forest and, after adding e, no
/// edge f < e outside the forest has its endpoints joined by a forest path
/// made only of edges larger than f (that path would be a broken circuit).
/// The sampler uses BcWalk's batched version; this one backs the tests.
inline bool is_nbc_admissible(const ForestState& state, int e, const Graph& g, const EdgeOrdering& eo) {
  if (state.contains(e)) return false;
  const Edge& ed = g.edge(e);
  if (state.dsu().same(ed.u, ed.v)) return false;

  const auto n = static_cast<std::size_t>(g.vertex_count());
  // Minimum edge rank on the path from `src` to every vertex in the forest plus e.
  std::vector<int> min_rank(n);
  auto path_minima = [&](int src) {
    std::fill(min_rank.begin(), min_rank.end(), -1);
    min_rank[static_cast<std::size_t>(src)] = INT_MAX;
    std::vector<int> stack{src};
    auto visit = [&](int from, int to, int edge) {
      if (min_rank[static_cast<std::size_t>(to)] != -1) return;
      min_rank[static_cast<std::size_t>(to)] = std::min(min_rank[static_cast<std::size_t>(from)], eo.rank(edge));
      stack.push_back(to);
    };
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (const auto& [y, fe] : state.forest_neighbors(x)) visit(x, y, fe);
      if (x == ed.u) visit(x, ed.v, e);
      if (x == ed.v) visit(x, ed.u, e);
    }
  };

  for (int f = 0; f < g.edge_count(); ++f) {
    if (f == e || state.contains(f) || !eo.less(f, e)) continue;
    const Edge& fd = g.edge(f);
    path_minima(fd.u);
    const int m = min_rank[static_cast<std::size_t>(fd.v)];
    if (m != -1 && eo.rank(f) < m) return false;
  }
  return true;
}

/// One root-to-leaf walk down the tree of NBC subgraphs.
///
/// Holds the current forest and the set D of edges that can be added without
/// creating a broken circuit. In the improved variant the smallest edge is
/// placed in the forest at construction. Copyable, so tests can branch on
/// every candidate to enumerate the whole decision tree. The graph is
/// borrowed; the edge ordering is shared among copies.
class BcWalk {
 public:
  BcWalk(Graph&&, const EdgeOrdering&, BcVariant) = delete;
  BcWalk(const Graph& g, const EdgeOrdering& eo, BcVariant variant)
      : graph_(&g), order_(std::make_shared<const EdgeOrdering>(eo)), variant_(variant), state_(g), cache_(static_cast<std::size_t>(g.vertex_count())),
        stamp_(static_cast<std::size_t>(g.vertex_count()), 0), comp_(static_cast<std::size_t>(g.vertex_count())) {
    if (eo.size() != static_cast<std::size_t>(g.edge_count()))
      throw std::invalid_argument("edge ordering size does not match graph");
    restart();
  }

  void restart() {
    state_.reset();
    if (variant_ == BcVariant::improved && graph_->edge_count() > 0) state_.add(order_->smallest());
    refresh();
  }

  bool done() const { return state_.chosen().size() + 1 >= static_cast<std::size_t>(graph_->vertex_count()); }

  /// Admissible edges of the current forest, ascending by edge index.
  const std::vector<int>& candidates() const noexcept { return candidates_; }

  void take(int e) {
    state_.add(e);
    refresh();
  }

  const ForestState& state() const noexcept { return state_; }
  BcVariant variant() const noexcept { return variant_; }

 private:
  // Minimum edge rank along the forest path from src to every vertex of its
  // tree, cached per stage.
  const std::vector<int>& path_minima(int src) {
    auto& out = cache_[static_cast<std::size_t>(src)];
    if (stamp_[static_cast<std::size_t>(src)] == epoch_) return out;
    stamp_[static_cast<std::size_t>(src)] = epoch_;
    out.resize(static_cast<std::size_t>(graph_->vertex_count()));
    out[static_cast<std::size_t>(src)] = INT_MAX;
    stack_.assign(1, {src, -1});
    while (!stack_.empty()) {
      const auto [x, parent] = stack_.back();
      stack_.pop_back();
      for (const auto& [y, fe] : state_.forest_neighbors(x)) {
        if (y == parent) continue;
        out[static_cast<std::size_t>(y)] = std::min(out[static_cast<std::size_t>(x)], order_->rank(fe));
        stack_.push_back({y, x});
      }
    }
    return out;
  }

  void refresh() {
    ++epoch_;
    candidates_.clear();
    if (done()) return;
    const Graph& g = *graph_;
    for (int v = 0; v < g.vertex_count(); ++v) comp_[static_cast<std::size_t>(v)] = state_.dsu().find(v);

    // Edges between two different trees, grouped by tree pair, ascending rank within a group.
    cross_.clear();
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      const int a = comp_[static_cast<std::size_t>(ed.u)], b = comp_[static_cast<std::size_t>(ed.v)];
      if (a == b) continue;
      cross_.push_back({std::min(a, b), std::max(a, b), order_->rank(e), e});
    }
    std::sort(cross_.begin(), cross_.end());

    // Within a group, e is admissible unless some smaller f in the group has
    // both of its tree paths (to e's endpoints) made of edges larger than f.
    for (std::size_t lo = 0; lo < cross_.size();) {
      std::size_t hi = lo;
      while (hi < cross_.size() && cross_[hi].a == cross_[lo].a && cross_[hi].b == cross_[lo].b) ++hi;
      for (std::size_t j = lo; j < hi; ++j) {
        const Edge& ed = g.edge(cross_[j].edge);
        const int side_u = comp_[static_cast<std::size_t>(ed.u)];
        bool ok = true;
        for (std::size_t i = lo; i < j && ok; ++i) {
          const Edge& fd = g.edge(cross_[i].edge);
          const bool f_u_side = comp_[static_cast<std::size_t>(fd.u)] == side_u;
          const int x = f_u_side ? fd.u : fd.v;
          const int y = f_u_side ? fd.v : fd.u;
          const int rf = cross_[i].rank;
          if (rf < path_minima(ed.u)[static_cast<std::size_t>(x)] && rf < path_minima(ed.v)[static_cast<std::size_t>(y)])
            ok = false;
        }
        if (ok) candidates_.push_back(cross_[j].edge);
      }
      lo = hi;
    }
    std::sort(candidates_.begin(), candidates_.end());
  }

  struct Cross {
    int a, b, rank, edge;
    friend bool operator<(const Cross& l, const Cross& r) {
      return std::tie(l.a, l.b, l.rank) < std::tie(r.a, r.b, r.rank);
    }
  };

  const Graph* graph_;
  std::shared_ptr<const EdgeOrdering> order_;
  BcVariant variant_;
  ForestState state_;
  std::vector<int> candidates_;
  std::vector<Cross> cross_;
  std::vector<std::vector<int>> cache_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
  std::vector<int> comp_;
  std::vector<std::pair<int, int>> stack_;
};

/// One BC sample.
struct BcSample {
  /// |D| at each stage, in sampling order.
  std::vector<std::uint64_t> levels;
  /// Estimated |b_0| .. |b_{n-1}|.
  std::vector<LogNumber> b;
  BcVariant variant = BcVariant::plain;
  /// Edges of the sampled NBC spanning tree, in the order they were added.
  std::vector<int> tree;
};

/// Converts counts a_i of NBC subgraphs that contain the smallest edge
/// (with i + 1 edges) into the full counts: b_0 = a_0,
/// b_i = a_{i-1} + a_i, b_{n-1} = a_{n-2}.
template <class T>
std::vector<T> a_to_b(std::span<const T> a) {
  if (a.empty()) throw std::invalid_argument("a_to_b: need at least one coefficient");
  std::vector<T> b(a.size() + 1);
  b[0] = a[0];
  for (std::size_t i = 1; i < a.size(); ++i) b[i] = a[i - 1] + a[i];
  b[a.size()] = a.back();
  return b;
}

template <class T>
std::vector<T> a_to_b(const std::vector<T>& a) {
  return a_to_b(std::span<const T>(a));
}

/// Draws BC samples for a fixed graph and edge order.
///
/// Plain variant: stage i (1..n-1) records |D|, updates
/// log b_i = log b_{i-1} + log|D| - log i and adds a uniformly chosen
/// admissible edge. Improved variant: the smallest edge is forced in, the
/// same loop estimates a_1..a_{n-2}, and b comes from a_to_b.
class BcSampler {
 public:
  BcSampler(Graph&&, const EdgeOrdering&, BcVariant) = delete;
  BcSampler(const Graph& g, const EdgeOrdering& eo, BcVariant variant)
      : graph_(&g), walk_(g, eo, variant), log_int_(static_cast<std::size_t>(std::max(g.edge_count(), g.vertex_count())) + 1) {
    if (g.vertex_count() < 1) throw GraphError("BC sampler needs at least one vertex");
    if (!is_connected(g)) throw GraphError("BC sampler requires a connected graph");
    for (std::size_t k = 1; k < log_int_.size(); ++k) log_int_[k] = std::log(static_cast<double>(k));
  }

  BcSample sample(Rng& rng) {
    BcSample s;
    s.variant = walk_.variant();
    const int n = graph_->vertex_count();
    if (n == 1) {
      s.b = {LogNumber::one()};
      return s;
    }
    walk_.restart();
    std::vector<LogNumber> est{LogNumber::one()};
    double log_est = 0.0;
    for (std::size_t i = 1; !walk_.done(); ++i) {
      const auto& d = walk_.candidates();
      if (d.empty()) throw std::logic_error("BC sampler: no admissible edge before the tree was complete");
      s.levels.push_back(d.size());
      log_est += log_int_[d.size()] - log_int_[i];
      est.push_back(LogNumber::from_log(log_est));
      walk_.take(d[rng.uniform_index(d.size())]);
    }
    s.tree = walk_.state().chosen();
    s.b = s.variant == BcVariant::plain ? std::move(est) : a_to_b(est);
    return s;
  }

 private:
  const Graph* graph_;
  BcWalk walk_;
  std::vector<double> log_int_;
};

inline BcSample bc_sample(const Graph& g, const EdgeOrdering& eo, Rng& rng) {
  return BcSampler(g, eo, BcVariant::plain).sample(rng);
}

inline BcSample bc_sample_improved(const Graph& g, const EdgeOrdering& eo, Rng& rng) {
  return BcSampler(g, eo, BcVariant::improved).sample(rng);
}

}  // namespace chromest
