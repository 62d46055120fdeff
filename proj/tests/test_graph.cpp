#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "chromest/errors.hpp"
#include "chromest/graph.hpp"
#include "oracles.hpp"

namespace {

using namespace chromest;

void expect_well_formed(const Graph& g) {
  std::set<Edge> seen;
  for (const auto& e : g.edges()) {
    EXPECT_LT(e.u, e.v);
    EXPECT_TRUE(seen.insert(e).second);
  }
  int degree_sum = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    degree_sum += g.degree(v);
    for (int w : g.neighbors(v)) EXPECT_TRUE(seen.count({std::min(v, w), std::max(v, w)}));
  }
  EXPECT_EQ(degree_sum, 2 * g.edge_count());
}

TEST(Graph, ConstructionRejectsBadEdges) {
  EXPECT_THROW(Graph(3, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(Graph(3, {{0, 3}}), std::invalid_argument);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  const Graph g(3, {{2, 0}});
  EXPECT_EQ(g.edge(0), (Edge{0, 2}));
  EXPECT_TRUE(g.adjacent(2, 0));
  EXPECT_FALSE(g.adjacent(1, 0));
}

TEST(ParseEdgeList, KiteAndComments) {
  const auto parsed = parse_edge_list("# the kite\n4 5\n0 1\n0 2\n\n0 3\n# middle\n1 2\n2 3\n");
  EXPECT_EQ(parsed.graph.vertex_count(), 4);
  EXPECT_EQ(parsed.graph.edge_count(), 5);
  EXPECT_EQ(parsed.duplicate_edges, 0);
  expect_well_formed(parsed.graph);
}

TEST(ParseEdgeList, SingleVertex) {
  const auto parsed = parse_edge_list("1 0\n");
  EXPECT_EQ(parsed.graph.vertex_count(), 1);
  EXPECT_EQ(parsed.graph.edge_count(), 0);
}

TEST(ParseEdgeList, DuplicatesCollapse) {
  const auto parsed = parse_edge_list("3 3\n0 1\n1 0\n1 2\n");
  EXPECT_EQ(parsed.graph.edge_count(), 2);
  EXPECT_EQ(parsed.duplicate_edges, 1);
  EXPECT_EQ(parsed.graph.edge(1), (Edge{1, 2}));
}

TEST(ParseEdgeList, ErrorsNameTheLine) {
  auto line_of = [](const std::string& text) {
    try {
      parse_edge_list(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.line());
    }
    return -1L;
  };
  EXPECT_EQ(line_of("3 2\n0 1\n1 1\n"), 3);     // loop
  EXPECT_EQ(line_of("3 2\n0 1\n1 5\n"), 3);     // out of range
  EXPECT_EQ(line_of("# c\n3 1\n0 x\n"), 3);     // malformed
  EXPECT_EQ(line_of("3 1\n0 1\n1 2\n"), 3);     // too many edges
  EXPECT_EQ(line_of("3 2\n0 1\n"), 2);          // too few edges
  EXPECT_EQ(line_of("3 1 7\n"), 1);
  EXPECT_EQ(line_of(""), 0);
}

TEST(ParseDimacs, OneBasedIds) {
  std::istringstream in("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\ne 2 1\n");
  const auto parsed = parse_dimacs(in);
  EXPECT_EQ(parsed.graph.vertex_count(), 3);
  EXPECT_EQ(parsed.graph.edge_count(), 3);
  EXPECT_EQ(parsed.duplicate_edges, 1);
  EXPECT_EQ(parsed.graph.edge(0), (Edge{0, 1}));
  std::istringstream bad("e 1 2\n");
  EXPECT_THROW(parse_dimacs(bad), ParseError);
}

TEST(GraphFiles, RoundTripAndExtensionDispatch) {
  const auto dir = std::filesystem::temp_directory_path();
  const Graph w = gen_wheel(7);
  const auto plain = (dir / "chromest_roundtrip.txt").string();
  {
    std::ofstream os(plain);
    write_edge_list(os, w);
  }
  EXPECT_EQ(read_graph_file(plain).graph, w);

  const auto col = (dir / "chromest_roundtrip.col").string();
  {
    std::ofstream os(col);
    os << "p edge 3 2\ne 1 2\ne 2 3\n";
  }
  EXPECT_EQ(read_graph_file(col).graph, gen_path(3));
  EXPECT_THROW(read_graph_file((dir / "chromest_missing_file.txt").string()), GraphError);
}

TEST(Generators, Shapes) {
  EXPECT_EQ(gen_kite().edge_count(), 5);
  EXPECT_EQ(gen_kite().edge(0), (Edge{0, 2}));
  EXPECT_EQ(gen_kite().edge(1), (Edge{0, 1}));
  const int ten[1] = {10}, hundred[1] = {100}, twenty[1] = {20};
  EXPECT_EQ(gen_named("wheel", ten).edge_count(), 18);
  EXPECT_EQ(gen_named("wheel", twenty).edge_count(), 38);
  EXPECT_EQ(gen_named("cycle", hundred).edge_count(), 100);
  EXPECT_EQ(gen_named("complete", ten).edge_count(), 45);
  EXPECT_EQ(gen_named("path", ten).edge_count(), 9);
  EXPECT_EQ(gen_named("tree_star", ten).edge_count(), 9);
  EXPECT_EQ(gen_named("kite", {}).vertex_count(), 4);
  const int dims[3] = {4, 4, 4};
  EXPECT_EQ(gen_named("grid3d", dims).edge_count(), 144);
  const int two[1] = {2}, three[1] = {3};
  EXPECT_THROW(gen_named("cycle", two), std::invalid_argument);
  EXPECT_THROW(gen_named("wheel", three), std::invalid_argument);
  EXPECT_THROW(gen_named("petersen", ten), std::invalid_argument);
  for (const Graph& g : {gen_wheel(12), gen_grid3d(2, 3, 4), gen_complete(6), gen_cycle(9)}) {
    expect_well_formed(g);
    EXPECT_TRUE(is_connected(g));
  }
}

TEST(Generators, ErdosRenyiIsDeterministicAndConnected) {
  EXPECT_EQ(gen_er(5, 0.5, 42), gen_er(5, 0.5, 42));
  EXPECT_EQ(gen_er(2, 1.0, 3), Graph(2, {{0, 1}}));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = gen_er(10, 0.3, seed);
    EXPECT_TRUE(is_connected(g));
    expect_well_formed(g);
  }
  EXPECT_THROW(gen_er(10, 0.0, 1), GraphError);
  EXPECT_THROW(gen_er(0, 0.5, 1), std::invalid_argument);
}

TEST(Connectivity, SmallCases) {
  EXPECT_TRUE(is_connected(gen_kite()));
  EXPECT_FALSE(is_connected(Graph(4, {{0, 1}, {2, 3}})));
  EXPECT_TRUE(is_connected(Graph(1, {})));
  EXPECT_FALSE(is_connected(Graph(0, {})));
}

TEST(Girth, SmallCases) {
  EXPECT_EQ(girth(gen_path(6)), 0);
  EXPECT_EQ(girth(gen_kite()), 3);
  EXPECT_EQ(girth(gen_cycle(7)), 7);
  std::vector<Edge> c6{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {0, 3}};
  EXPECT_EQ(girth(Graph(6, c6)), 4);
  EXPECT_EQ(girth(gen_grid3d(3, 3, 3)), 4);
}

// Direct clique check of each eliminated vertex's remaining neighborhood.
bool is_perfect_elimination(const Graph& g, const VertexOrdering& vo) {
  for (int i = 0; i < g.vertex_count(); ++i) {
    const int v = vo.order()[static_cast<std::size_t>(i)];
    std::vector<int> later;
    for (int w : g.neighbors(v))
      if (vo.position(w) > i) later.push_back(w);
    for (std::size_t a = 0; a < later.size(); ++a)
      for (std::size_t b = a + 1; b < later.size(); ++b)
        if (!g.adjacent(later[a], later[b])) return false;
  }
  return true;
}

TEST(PeoOrder, ChordalGraphsGetPerfectEliminationOrders) {
  // fan: path 1..6 plus hub 0, chordal
  std::vector<Edge> fan;
  for (int i = 1; i <= 6; ++i) fan.push_back({0, i});
  for (int i = 1; i < 6; ++i) fan.push_back({i, i + 1});
  for (const Graph& g : {gen_kite(), gen_complete(6), gen_path(7), gen_star(5), Graph(7, fan)})
    EXPECT_TRUE(is_perfect_elimination(g, peo_vertex_order(g)));
  EXPECT_EQ(peo_vertex_order(gen_kite()).order(), (std::vector<int>{1, 0, 2, 3}));
}

TEST(PeoOrder, CycleFallsBackToMinimumDegree) {
  const auto vo = peo_vertex_order(gen_cycle(5));
  EXPECT_EQ(vo.order().front(), 0);  // every vertex has degree 2, smallest id wins
  EXPECT_FALSE(is_perfect_elimination(gen_cycle(5), vo));
  // After removing 0 the path ends 1 and 4 are simplicial.
  EXPECT_EQ(vo.order()[1], 1);
}

TEST(EdgeOrder, TriangleSmallestEdgeJoinsLastTwo) {
  const Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  const auto eo = edge_order_from_vertex_order(k3, VertexOrdering({0, 1, 2}));
  EXPECT_EQ(k3.edge(eo.smallest()), (Edge{1, 2}));
  EXPECT_EQ(eo.order(), (std::vector<int>{2, 1, 0}));
}

TEST(EdgeOrder, StarWithHubLast) {
  const Graph star = gen_star(4);  // edges 0-1, 0-2, 0-3
  const auto eo = edge_order_from_vertex_order(star, VertexOrdering({1, 2, 3, 0}));
  // Hub key 0; leaf keys 3 (v1), 2 (v2), 1 (v3).
  EXPECT_EQ(eo.order(), (std::vector<int>{2, 1, 0}));
}

TEST(EdgeOrder, KiteFromPeo) {
  // Elimination 1,0,2,3 gives keys v1:3, v0:2, v2:1, v3:0; edge keys
  // e0 (0,2):(1,2) e1 (0,1):(2,3) e2 (0,3):(0,2) e3 (1,2):(1,3) e4 (2,3):(0,1).
  const auto eo = make_edge_order(gen_kite(), OrderingKind::peo, 0);
  EXPECT_EQ(eo.order(), (std::vector<int>{4, 2, 0, 3, 1}));
}

TEST(EdgeOrder, StrictTotalOrderProperty) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = gen_er(10, 0.6, seed);
    ASSERT_LE(g.edge_count(), 50);
    const auto vo = peo_vertex_order(g);
    const auto eo = edge_order_from_vertex_order(g, vo);
    auto key = [&](int e) {
      const int a = vo.key(g.edge(e).u), b = vo.key(g.edge(e).v);
      return std::pair{std::min(a, b), std::max(a, b)};
    };
    for (int e = 0; e < g.edge_count(); ++e) {
      EXPECT_EQ(eo.order()[static_cast<std::size_t>(eo.rank(e))], e);
      EXPECT_FALSE(eo.less(e, e));
      for (int f = 0; f < g.edge_count(); ++f) {
        if (e == f) continue;
        EXPECT_NE(eo.less(e, f), eo.less(f, e));
        EXPECT_EQ(eo.less(e, f), key(e) < key(f));
      }
    }
  }
}

TEST(EdgeOrder, RandomOrderIsSeededPermutation) {
  const Graph g = gen_wheel(9);
  const auto a = make_edge_order(g, OrderingKind::random, 5);
  const auto b = make_edge_order(g, OrderingKind::random, 5);
  EXPECT_EQ(a.order(), b.order());
  auto sorted = a.order();
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < g.edge_count(); ++i) EXPECT_EQ(sorted[static_cast<std::size_t>(i)], i);
  EXPECT_EQ(make_edge_order(g, OrderingKind::input, 0).order(), sorted);
}

}  // namespace
