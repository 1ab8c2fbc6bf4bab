#include <gtest/gtest.h>

#include <random>

#include <cartgenus/graph.hpp>

#include "oracles.hpp"

using namespace cartgenus;

TEST(Graph, RejectsLoopsAndParallelEdges) {
  EXPECT_THROW(Graph::from_edges(3, {{0, 0}}), GraphError);
  EXPECT_THROW(Graph::from_edges(3, {{0, 1}, {1, 0}}), GraphError);
  EXPECT_THROW(Graph::from_edges(2, {{0, 2}}), GraphError);
  EXPECT_THROW(Graph({"a", "a"}, {}), GraphError);
}

TEST(Graph, EdgesAreNormalizedAndIndexed) {
  Graph g = Graph::from_edges(4, {{3, 1}, {0, 2}, {1, 0}});
  ASSERT_EQ(g.size(), 3);
  EXPECT_EQ(g.edge(0), (Edge{0, 1}));
  EXPECT_EQ(g.edge_index(2, 0), 1);
  EXPECT_EQ(g.edge_index(2, 3), -1);
  EXPECT_TRUE(g.adjacent(3, 1));
  EXPECT_EQ(g.degree(0), 2);
}

TEST(Generators, SizesMatchFormulas) {
  for (int n = 3; n <= 9; ++n) {
    EXPECT_EQ(wheel(n).order(), n + 1);
    EXPECT_EQ(wheel(n).size(), 2 * n);
    EXPECT_EQ(cycle_graph(n).size(), n);
    EXPECT_EQ(complete_graph(n).size(), n * (n - 1) / 2);
  }
  for (int n = 5; n <= 12; ++n) EXPECT_EQ(squared_cycle(n).size(), 2 * n);
  EXPECT_TRUE(isomorphic(squared_cycle(4), complete_graph(4)));
  EXPECT_TRUE(isomorphic(wheel(3), complete_graph(4)));
  EXPECT_EQ(complete_bipartite(3, 3).size(), 9);
  EXPECT_THROW(wheel(2), GraphError);
  EXPECT_THROW(squared_cycle(3), GraphError);
}

TEST(Product, K4P3Counts) {
  auto p = cartesian_product(complete_graph(4), path_graph(3));
  EXPECT_EQ(p.graph.order(), 12);
  EXPECT_EQ(p.graph.size(), 26);
  EXPECT_EQ(p.connector_count(), 8);
  EXPECT_TRUE(p.layered_by_tree());
  EXPECT_EQ(p.graph.label(p.vertex(1, 2)), "(1,2)");
}

TEST(Product, SizeFormulaAndClassesOnRandomFactors) {
  std::mt19937 rng(7);
  for (int it = 0; it < 60; ++it) {
    Graph g = oracle::random_connected(rng, 2 + it % 5, 0.4);
    Graph h = oracle::random_connected(rng, 2 + it % 4, 0.3);
    auto p = cartesian_product(g, h);
    ASSERT_EQ(p.graph.order(), g.order() * h.order());
    ASSERT_EQ(p.graph.size(), g.size() * h.order() + h.size() * g.order());
    for (int e = 0; e < p.graph.size(); ++e) {
      const auto& a = p.coords[static_cast<std::size_t>(p.graph.edge(e).u)];
      const auto& b = p.coords[static_cast<std::size_t>(p.graph.edge(e).v)];
      const auto& c = p.edge_class(e);
      if (c.is_connector()) {
        EXPECT_EQ(a.g_part, b.g_part);
        EXPECT_EQ(c.index, h.edge_index(a.h_part, b.h_part));
      } else {
        EXPECT_EQ(a.h_part, b.h_part);
        EXPECT_EQ(c.index, a.h_part);
      }
    }
  }
}

TEST(TutteMoves, HnHasExpectedShape) {
  for (int n = 5; n <= 9; ++n) {
    Graph h = construct_Hn(n);
    EXPECT_EQ(h.order(), n + 3);
    EXPECT_EQ(h.size(), 2 * n + 3);
    EXPECT_GE(h.min_degree(), 3);
  }
  EXPECT_THROW(construct_Hn(4), GraphError);
}

TEST(TutteMoves, SplitValidation) {
  Graph w = wheel(5);
  EXPECT_THROW(vertex_split(w, "c", {"b0"}, {"b1", "b2", "b3", "b4"}, "x", "y"), GraphError);
  EXPECT_THROW(vertex_split(w, "c", {"b0", "b1"}, {"b2", "b3"}, "x", "y"), GraphError);
  EXPECT_THROW(vertex_split(w, "c", {"b0", "b1"}, {"b2", "b3", "b4"}, "b1", "y"), GraphError);
  EXPECT_THROW(add_edge(w, "c", "b0"), GraphError);
  Graph s = vertex_split(w, "c", {"b0", "b1"}, {"b2", "b3", "b4"}, "x", "y");
  EXPECT_EQ(s.order(), 7);
  EXPECT_EQ(s.size(), 11);
}

TEST(Cycles, GirthAndTrianglesAgreeWithCycleOracle) {
  std::mt19937 rng(11);
  for (int it = 0; it < 150; ++it) {
    Graph g = oracle::random_connected(rng, 3 + it % 7, 0.25);
    auto counts = oracle::cycle_counts(g);
    auto gi = girth(g);
    if (counts.empty()) {
      EXPECT_FALSE(gi.has_value());
    } else {
      ASSERT_TRUE(gi.has_value());
      EXPECT_EQ(*gi, counts.begin()->first);
    }
    EXPECT_EQ(static_cast<long>(triangles(g).size()), counts.count(3) ? counts.at(3) : 0L);
  }
  EXPECT_EQ(girth(complete_bipartite(3, 3)), 4);
  EXPECT_FALSE(girth(path_graph(5)).has_value());
}

TEST(Isomorphism, RelabelledCopiesAreIsomorphic) {
  std::mt19937 rng(3);
  for (int it = 0; it < 50; ++it) {
    Graph g = oracle::random_connected(rng, 6 + it % 4, 0.35);
    std::vector<int> p(static_cast<std::size_t>(g.order()));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    std::vector<Edge> es;
    for (const auto& e : g.edges()) es.push_back({p[static_cast<std::size_t>(e.u)], p[static_cast<std::size_t>(e.v)]});
    Graph h = Graph::from_edges(g.order(), es);
    auto m = find_isomorphism(g, h);
    ASSERT_TRUE(m.has_value());
    for (const auto& e : g.edges()) EXPECT_TRUE(h.adjacent((*m)[static_cast<std::size_t>(e.u)], (*m)[static_cast<std::size_t>(e.v)]));
  }
  EXPECT_FALSE(isomorphic(complete_bipartite(3, 3), squared_cycle(6)));
}

TEST(Isomorphism, AutomorphismGroupOrders) {
  EXPECT_EQ(automorphisms(complete_graph(4)).maps.size(), 24u);
  EXPECT_EQ(automorphisms(cycle_graph(6)).maps.size(), 12u);
  EXPECT_EQ(automorphisms(wheel(5)).maps.size(), 10u);
  EXPECT_EQ(automorphisms(path_graph(3)).maps.size(), 2u);
  auto limited = automorphisms(complete_graph(5), 10);
  EXPECT_FALSE(limited.complete);
}
