#include <gtest/gtest.h>

#include <random>

#include <cartgenus/minor.hpp>

#include "oracles.hpp"

using namespace cartgenus;

TEST(Witness, IdentityVerifies) {
  Graph g = wheel(5);
  EXPECT_TRUE(verify_witness(identity_witness(g), g, g));
}

TEST(Witness, RejectsBrokenWitnesses) {
  Graph g = cycle_graph(4);
  Graph k3 = complete_graph(3);
  MinorWitness w{{{0}, {1}, {2, 3}}, {}};
  for (const auto& e : k3.edges()) {
    if (e == Edge{0, 1}) w.edge_map.push_back({0, 1});
    if (e == Edge{0, 2}) w.edge_map.push_back({0, 3});
    if (e == Edge{1, 2}) w.edge_map.push_back({1, 2});
  }
  EXPECT_TRUE(verify_witness(w, k3, g));
  auto disconnected = w;
  disconnected.branch_sets = {{1}, {0}, {2, 3}};
  EXPECT_FALSE(verify_witness(disconnected, k3, g));
  auto overlap = w;
  overlap.branch_sets[2] = {1, 2, 3};
  EXPECT_FALSE(verify_witness(overlap, k3, g));
  MinorWitness split{{{0}, {1}, {2}}, w.edge_map};
  EXPECT_FALSE(verify_witness(split, k3, g));
}

TEST(Search, WheelMinors) {
  for (int m = 3; m <= 5; ++m)
    for (int n = m; n <= 7; ++n) {
      auto r = is_minor(wheel(m), wheel(n));
      ASSERT_EQ(r.verdict, MinorVerdict::found) << m << " in " << n;
      EXPECT_TRUE(verify_witness(*r.witness, wheel(m), wheel(n)));
    }
  EXPECT_EQ(is_minor(wheel(6), wheel(5)).verdict, MinorVerdict::none);
}

TEST(Search, KuratowskiGraphsAreNotMinorsOfPlanarGraphs) {
  EXPECT_EQ(is_minor(complete_graph(5), squared_cycle(6)).verdict, MinorVerdict::none);
  EXPECT_EQ(is_minor(complete_bipartite(3, 3), wheel(7)).verdict, MinorVerdict::none);
  auto r = is_minor(complete_graph(4), squared_cycle(6));
  ASSERT_EQ(r.verdict, MinorVerdict::found);
  EXPECT_TRUE(verify_witness(*r.witness, complete_graph(4), squared_cycle(6)));
}

TEST(Search, HnContainsH5) {
  const Graph h5 = construct_Hn(5);
  for (int n = 5; n <= 8; ++n) {
    auto r = is_minor(h5, construct_Hn(n));
    ASSERT_EQ(r.verdict, MinorVerdict::found) << n;
    EXPECT_TRUE(verify_witness(*r.witness, h5, construct_Hn(n)));
  }
}

TEST(Search, RandomMinorsAreFound) {
  std::mt19937 rng(17);
  for (int it = 0; it < 60; ++it) {
    Graph host = oracle::random_connected(rng, 4 + it % 4, 0.4);
    auto rm = oracle::random_minor(rng, host);
    ASSERT_TRUE(verify_witness({rm.branch_sets, rm.edge_map}, rm.minor, host));
    auto r = is_minor(rm.minor, host);
    ASSERT_EQ(r.verdict, MinorVerdict::found);
    EXPECT_TRUE(verify_witness(*r.witness, rm.minor, host));
  }
}

TEST(Search, BudgetIsReportedSeparately) {
  MinorBudget tiny{1, std::chrono::milliseconds(1000)};
  auto r = is_minor(complete_graph(5), squared_cycle(8), tiny);
  EXPECT_EQ(r.verdict, MinorVerdict::budget_exhausted);
}

TEST(K4, EveryThreeConnectedGraphHasAK4Witness) {
  std::mt19937 rng(23);
  for (int it = 0; it < 80; ++it) {
    Graph g = oracle::random_three_connected(rng, 5 + it % 5);
    auto r = find_k4_minor(g);
    ASSERT_EQ(r.verdict, MinorVerdict::found);
    EXPECT_TRUE(verify_witness(*r.witness, complete_graph(4), g));
  }
  EXPECT_THROW(find_k4_minor(cycle_graph(5)), GraphError);
}

TEST(Compose, ChainsThroughIntermediateGraph) {
  auto ab = is_minor(wheel(3), wheel(5));
  auto bc = is_minor(wheel(5), wheel(7));
  ASSERT_EQ(ab.verdict, MinorVerdict::found);
  ASSERT_EQ(bc.verdict, MinorVerdict::found);
  auto ac = compose_witness(*ab.witness, *bc.witness, wheel(5));
  EXPECT_TRUE(verify_witness(ac, wheel(3), wheel(7)));
}

TEST(ProductClosure, RandomQuadruples) {
  std::mt19937 rng(41);
  for (int it = 0; it < 200; ++it) {
    Graph g2 = oracle::random_connected(rng, 2 + it % 4, 0.4);
    Graph h2 = oracle::random_connected(rng, 2 + (it / 4) % 4, 0.4);
    auto g1 = oracle::random_minor(rng, g2);
    auto h1 = oracle::random_minor(rng, h2);
    auto minor = cartesian_product(g1.minor, h1.minor);
    auto host = cartesian_product(g2, h2);
    auto w = product_minor_witness({g1.branch_sets, g1.edge_map}, {h1.branch_sets, h1.edge_map}, minor, host);
    ASSERT_TRUE(verify_witness(w, minor.graph, host.graph)) << "iteration " << it;
  }
}

TEST(Json, WitnessRoundTrip) {
  auto r = is_minor(complete_graph(4), wheel(6));
  ASSERT_TRUE(r.witness);
  auto j = witness_to_json(*r.witness, complete_graph(4), wheel(6));
  auto back = witness_from_json(nlohmann::json::parse(j.dump()), complete_graph(4), wheel(6));
  EXPECT_TRUE(verify_witness(back, complete_graph(4), wheel(6)));
  EXPECT_EQ(witness_to_json(back, complete_graph(4), wheel(6)).dump(), j.dump());
}
