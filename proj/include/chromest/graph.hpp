#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chromest/errors.hpp"
#include "chromest/rng.hpp"

namespace chromest {

/// Undirected edge with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1.
///
/// Edges keep the index they were given at construction; orderings and
/// samplers refer to edges by that index. Construction rejects loops,
/// duplicates and out-of-range endpoints, and stores every edge as (min, max).
class Graph {
 public:
  Graph() = default;

  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), adj_(static_cast<std::size_t>(n)) {
    if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
    std::set<Edge> seen;
    for (auto& e : edges_) {
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
        throw std::invalid_argument("Graph: edge endpoint out of range");
      if (e.u == e.v) throw std::invalid_argument("Graph: loop at vertex " + std::to_string(e.u));
      if (e.u > e.v) std::swap(e.u, e.v);
      if (!seen.insert(e).second)
        throw std::invalid_argument("Graph: duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
      adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
      adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
  }

  int vertex_count() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int i) const { return edges_.at(static_cast<std::size_t>(i)); }

  /// Sorted neighbor list.
  std::span<const int> neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  bool adjacent(int u, int v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

/// Result of parsing a graph file.
struct ParsedGraph {
  Graph graph;
  /// Number of repeated edges that were collapsed into one.
  int duplicate_edges = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<long long> parse_ints(std::string_view line, std::size_t lineno) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc{} || (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t'))
      throw ParseError(lineno, "expected integers, got '" + std::string(line) + "'");
    out.push_back(value);
    i = static_cast<std::size_t>(ptr - line.data());
  }
  return out;
}

// Collects edges, collapsing repeats and canonicalizing to (min, max).
class EdgeCollector {
 public:
  explicit EdgeCollector(long long n) : n_(n) {}

  void add(long long u, long long v, std::size_t lineno) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw ParseError(lineno, "vertex id out of range [0, " + std::to_string(n_) + ")");
    if (u == v) throw ParseError(lineno, "loop edge at vertex " + std::to_string(u));
    Edge e{static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v))};
    if (seen_.insert(e).second) edges_.push_back(e);
    else ++duplicates_;
  }

  ParsedGraph finish() { return {Graph(static_cast<int>(n_), std::move(edges_)), duplicates_}; }

 private:
  long long n_;
  std::set<Edge> seen_;
  std::vector<Edge> edges_;
  int duplicates_ = 0;
};

}  // namespace detail

/// Reads the plain edge-list format: a header line "n m", then m lines "u v"
/// with 0-based vertex ids. Blank lines and lines starting with '#' are skipped.
/// Repeated edges are kept once (first occurrence fixes the edge index) and
/// counted in ParsedGraph::duplicate_edges.
inline ParsedGraph parse_edge_list(std::istream& in) {
  std::string raw;
  std::size_t lineno = 0;
  bool have_header = false;
  long long n = 0, m = 0, read = 0;
  std::optional<detail::EdgeCollector> edges;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto ints = detail::parse_ints(line, lineno);
    if (ints.size() != 2) throw ParseError(lineno, "expected two integers");
    if (!have_header) {
      n = ints[0];
      m = ints[1];
      if (n < 0 || m < 0) throw ParseError(lineno, "negative vertex or edge count");
      if (n > (1 << 24)) throw ParseError(lineno, "vertex count too large");
      edges.emplace(n);
      have_header = true;
      continue;
    }
    if (read == m) throw ParseError(lineno, "more edge lines than the declared " + std::to_string(m));
    edges->add(ints[0], ints[1], lineno);
    ++read;
  }
  if (!have_header) throw ParseError(lineno, "missing 'n m' header");
  if (read != m)
    throw ParseError(lineno, "expected " + std::to_string(m) + " edges, found " + std::to_string(read));
  return edges->finish();
}

inline ParsedGraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

/// Reads DIMACS .col: "c" comment lines, one "p edge n m" line, and "e u v"
/// lines with 1-based ids. Ids are shifted to 0-based. Repeated edges
/// (including both orientations of the same pair) are collapsed.
inline ParsedGraph parse_dimacs(std::istream& in) {
  std::string raw;
  std::size_t lineno = 0;
  std::optional<detail::EdgeCollector> edges;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == 'c') continue;
    if (line.front() == 'p') {
      if (edges) throw ParseError(lineno, "second problem line");
      std::istringstream ss{std::string(line.substr(1))};
      std::string kind;
      long long n = -1, m = -1;
      if (!(ss >> kind >> n >> m) || n < 0 || m < 0) throw ParseError(lineno, "malformed problem line");
      edges.emplace(n);
      continue;
    }
    if (line.front() == 'e') {
      if (!edges) throw ParseError(lineno, "edge before problem line");
      const auto ints = detail::parse_ints(detail::trim(line.substr(1)), lineno);
      if (ints.size() != 2) throw ParseError(lineno, "expected 'e u v'");
      edges->add(ints[0] - 1, ints[1] - 1, lineno);
      continue;
    }
    throw ParseError(lineno, "unrecognized line");
  }
  if (!edges) throw ParseError(lineno, "missing problem line");
  return edges->finish();
}

/// Parses a file, choosing DIMACS for the ".col" extension and the edge-list
/// format otherwise.
inline ParsedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open '" + path + "'");
  const bool dimacs = path.size() >= 4 && path.compare(path.size() - 4, 4, ".col") == 0;
  return dimacs ? parse_dimacs(in) : parse_edge_list(in);
}

inline void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

/// True iff the graph has exactly one connected component. The empty graph
/// (n = 0) is not connected; a single vertex is.
inline bool is_connected(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(v)) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

/// Length of the shortest cycle; 0 for forests.
inline int girth(const Graph& g) {
  const int n = g.vertex_count();
  int best = 0;
  std::vector<int> dist(static_cast<std::size_t>(n)), parent(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(s)] = 0;
    parent[static_cast<std::size_t>(s)] = -1;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int w : g.neighbors(v)) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          parent[static_cast<std::size_t>(w)] = v;
          q.push(w);
        } else if (parent[static_cast<std::size_t>(v)] != w) {
          const int len = dist[static_cast<std::size_t>(v)] + dist[static_cast<std::size_t>(w)] + 1;
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Generators

/// Erdos-Renyi G(n, p). Each attempt draws every pair (i < j) in
/// lexicographic order from substream `attempt` of `seed`; the first
/// connected draw is returned.
inline Graph gen_er(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_er: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gen_er: p must lie in [0, 1]");
  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(attempt));
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform01() < p) edges.push_back({i, j});
    Graph g(n, std::move(edges));
    if (is_connected(g)) return g;
  }
  throw GraphError("gen_er: no connected graph in 1000 attempts (p too small for n?)");
}

/// The 4-vertex kite: a triangle pair sharing edge v1v3, with the edge
/// indices e1..e5 = v1v3, v1v2, v1v4, v2v3, v3v4 (vertices 0-based).
inline Graph gen_kite() { return Graph(4, {{0, 2}, {0, 1}, {0, 3}, {1, 2}, {2, 3}}); }

inline Graph gen_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph(n, std::move(e));
}

inline Graph gen_path(int n) {
  if (n < 1) throw std::invalid_argument("path needs n >= 1");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, std::move(e));
}

/// Wheel on n vertices: hub 0 joined to the rim cycle 1..n-1.
inline Graph gen_wheel(int n) {
  if (n < 4) throw std::invalid_argument("wheel needs n >= 4 (hub included)");
  std::vector<Edge> e;
  for (int i = 1; i < n; ++i) e.push_back({0, i});
  for (int i = 1; i < n; ++i) e.push_back({i, i + 1 < n ? i + 1 : 1});
  return Graph(n, std::move(e));
}

inline Graph gen_complete(int n) {
  if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, std::move(e));
}

/// Star K_{1,n-1} with center 0.
inline Graph gen_star(int n) {
  if (n < 2) throw std::invalid_argument("tree_star needs n >= 2");
  std::vector<Edge> e;
  for (int i = 1; i < n; ++i) e.push_back({0, i});
  return Graph(n, std::move(e));
}

/// a x b x c grid graph; vertex (x, y, z) has id x + a*(y + b*z).
inline Graph gen_grid3d(int a, int b, int c) {
  if (a < 1 || b < 1 || c < 1) throw std::invalid_argument("grid3d needs positive dimensions");
  auto id = [&](int x, int y, int z) { return x + a * (y + b * z); };
  std::vector<Edge> e;
  for (int z = 0; z < c; ++z)
    for (int y = 0; y < b; ++y)
      for (int x = 0; x < a; ++x) {
        if (x + 1 < a) e.push_back({id(x, y, z), id(x + 1, y, z)});
        if (y + 1 < b) e.push_back({id(x, y, z), id(x, y + 1, z)});
        if (z + 1 < c) e.push_back({id(x, y, z), id(x, y, z + 1)});
      }
  return Graph(a * b * c, std::move(e));
}

/// Dispatches on a family name: kite, cycle, path, wheel, complete,
/// tree_star (one size each, except kite with none) and grid3d (three sizes).
inline Graph gen_named(std::string_view family, std::span<const int> sizes) {
  auto need = [&](std::size_t k) {
    if (sizes.size() != k)
      throw std::invalid_argument(std::string(family) + " takes " + std::to_string(k) + " size parameter(s)");
  };
  if (family == "kite") {
    need(0);
    return gen_kite();
  }
  if (family == "grid3d") {
    need(3);
    return gen_grid3d(sizes[0], sizes[1], sizes[2]);
  }
  need(1);
  if (family == "cycle") return gen_cycle(sizes[0]);
  if (family == "path") return gen_path(sizes[0]);
  if (family == "wheel") return gen_wheel(sizes[0]);
  if (family == "complete") return gen_complete(sizes[0]);
  if (family == "tree_star") return gen_star(sizes[0]);
  throw std::invalid_argument("unknown graph family '" + std::string(family) + "'");
}

// ---------------------------------------------------------------------------
// Orderings

namespace detail {
inline std::vector<int> inverse_permutation(const std::vector<int>& order) {
  std::vector<int> rank(order.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int x = order[i];
    if (x < 0 || static_cast<std::size_t>(x) >= order.size() || rank[static_cast<std::size_t>(x)] != -1)
      throw std::invalid_argument("not a permutation");
    rank[static_cast<std::size_t>(x)] = static_cast<int>(i);
  }
  return rank;
}
}  // namespace detail

/// Vertex elimination sequence: order[0] is eliminated first.
class VertexOrdering {
 public:
  VertexOrdering() = default;
  explicit VertexOrdering(std::vector<int> order)
      : order_(std::move(order)), rank_(detail::inverse_permutation(order_)) {}

  const std::vector<int>& order() const noexcept { return order_; }
  /// Position of vertex v in the elimination sequence.
  int position(int v) const { return rank_.at(static_cast<std::size_t>(v)); }
  /// Comparison key: the vertex eliminated last has key 0, the first n-1.
  int key(int v) const { return static_cast<int>(order_.size()) - 1 - position(v); }
  std::size_t size() const noexcept { return order_.size(); }

 private:
  std::vector<int> order_;
  std::vector<int> rank_;
};

/// Total order on edge indices: order[0] is the smallest edge.
class EdgeOrdering {
 public:
  EdgeOrdering() = default;
  explicit EdgeOrdering(std::vector<int> order)
      : order_(std::move(order)), rank_(detail::inverse_permutation(order_)) {}

  const std::vector<int>& order() const noexcept { return order_; }
  int rank(int e) const { return rank_[static_cast<std::size_t>(e)]; }
  const std::vector<int>& ranks() const noexcept { return rank_; }
  bool less(int e, int f) const { return rank(e) < rank(f); }
  int smallest() const { return order_.front(); }
  std::size_t size() const noexcept { return order_.size(); }

 private:
  std::vector<int> order_;
  std::vector<int> rank_;
};

/// Greedy elimination order: repeatedly removes the smallest-id simplicial
/// vertex of the remaining graph, or, when none is simplicial, the
/// smallest-id vertex of minimum remaining degree. On chordal graphs this is
/// a perfect elimination ordering.
inline VertexOrdering peo_vertex_order(const Graph& g) {
  const int n = g.vertex_count();
  const auto un = static_cast<std::size_t>(n);
  std::vector<char> alive(un, 1);
  std::vector<int> deg(un);
  for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);

  std::vector<int> live_nb;
  auto simplicial = [&](int v) {
    live_nb.clear();
    for (int w : g.neighbors(v))
      if (alive[static_cast<std::size_t>(w)]) live_nb.push_back(w);
    for (std::size_t i = 0; i < live_nb.size(); ++i)
      for (std::size_t j = i + 1; j < live_nb.size(); ++j)
        if (!g.adjacent(live_nb[i], live_nb[j])) return false;
    return true;
  };

  std::vector<int> order;
  order.reserve(un);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n && pick < 0; ++v)
      if (alive[static_cast<std::size_t>(v)] && simplicial(v)) pick = v;
    if (pick < 0) {
      for (int v = 0; v < n; ++v)
        if (alive[static_cast<std::size_t>(v)] &&
            (pick < 0 || deg[static_cast<std::size_t>(v)] < deg[static_cast<std::size_t>(pick)]))
          pick = v;
    }
    alive[static_cast<std::size_t>(pick)] = 0;
    for (int w : g.neighbors(pick))
      if (alive[static_cast<std::size_t>(w)]) --deg[static_cast<std::size_t>(w)];
    order.push_back(pick);
  }
  return VertexOrdering(std::move(order));
}

/// Edge order induced by a vertex elimination order. Vertices compare by
/// VertexOrdering::key (last eliminated is smallest); each edge is keyed by
/// its two endpoint keys sorted ascending and edges compare
/// lexicographically on that pair.
inline EdgeOrdering edge_order_from_vertex_order(const Graph& g, const VertexOrdering& vo) {
  if (vo.size() != static_cast<std::size_t>(g.vertex_count()))
    throw std::invalid_argument("vertex ordering size does not match graph");
  const int m = g.edge_count();
  std::vector<std::pair<int, int>> keys(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto& e = g.edge(i);
    const int a = vo.key(e.u), b = vo.key(e.v);
    keys[static_cast<std::size_t>(i)] = {std::min(a, b), std::max(a, b)};
  }
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return keys[static_cast<std::size_t>(x)] < keys[static_cast<std::size_t>(y)]; });
  return EdgeOrdering(std::move(order));
}

/// Edge i is the i-th smallest.
inline EdgeOrdering input_edge_order(const Graph& g) {
  std::vector<int> order(static_cast<std::size_t>(g.edge_count()));
  std::iota(order.begin(), order.end(), 0);
  return EdgeOrdering(std::move(order));
}

/// Uniformly random edge order (Fisher-Yates).
inline EdgeOrdering random_edge_order(const Graph& g, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(g.edge_count()));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
  return EdgeOrdering(std::move(order));
}

enum class OrderingKind { peo, input, random };

inline std::string_view to_string(OrderingKind k) {
  switch (k) {
    case OrderingKind::peo: return "peo";
    case OrderingKind::input: return "input";
    case OrderingKind::random: return "random";
  }
  return "?";
}

/// Substream of the run seed reserved for drawing a random edge order.
inline constexpr std::uint64_t kOrderingStream = 0xffff'0000'0000'0001ULL;

inline EdgeOrdering make_edge_order(const Graph& g, OrderingKind kind, std::uint64_t seed) {
  switch (kind) {
    case OrderingKind::peo: return edge_order_from_vertex_order(g, peo_vertex_order(g));
    case OrderingKind::input: return input_edge_order(g);
    case OrderingKind::random: {
      Rng rng = Rng::for_stream(seed, kOrderingStream);
      return random_edge_order(g, rng);
    }
  }
  throw std::invalid_argument("unknown ordering kind");
}

}  // namespace chromest
