#include <gtest/gtest.h>

#include <cartgenus/constructions.hpp>
#include <cartgenus/faceset.hpp>
#include <cartgenus/minor.hpp>

#include "oracles.hpp"

using namespace cartgenus;

namespace {

std::set<std::set<std::string>> vertex_sets(const Graph& g, const std::vector<std::vector<Vertex>>& cycles) {
  std::set<std::set<std::string>> out;
  for (const auto& c : cycles) {
    std::set<std::string> s;
    for (Vertex v : c) s.insert(g.label(v));
    out.insert(s);
  }
  return out;
}

void expect_product_certificate(const EmbeddingCertificate& c, int genus) {
  EXPECT_TRUE(verify_certificate(c));
  EXPECT_EQ(c.genus, genus);
  EXPECT_EQ(genus_of(c.graph, c.rotation), genus);
  EXPECT_EQ(c.graph.order() - c.graph.size() + static_cast<int>(c.faces.size()), 2 - 2 * genus);
}

}  // namespace

TEST(ReferenceH, Invariants) {
  Graph h = reference_h();
  EXPECT_EQ(h.order(), 8);
  EXPECT_EQ(h.size(), 13);
  int degree_sum = 0;
  for (Vertex v = 0; v < h.order(); ++v) degree_sum += h.degree(v);
  EXPECT_EQ(degree_sum, 26);
  EXPECT_EQ(vertex_connectivity(h), 3);
  EXPECT_EQ(oracle::brute_connectivity(h), 3);
  EXPECT_TRUE(is_planar(h));
  EXPECT_EQ(is_outer_cylindrical(h).verdict, OcVerdict::noc);
  EXPECT_FALSE(oracle::brute_outer_cylindrical(h));

  std::vector<std::vector<Vertex>> tri;
  for (const auto& t : triangles(h)) tri.push_back({t[0], t[1], t[2]});
  EXPECT_EQ(vertex_sets(h, tri), (std::set<std::set<std::string>>{
                                     {"v2", "v3", "v6"}, {"v4", "v7", "v8"}, {"v4", "v5", "v8"}}));
  EXPECT_EQ(vertex_sets(h, simple_cycles(h, 4)),
            (std::set<std::set<std::string>>{{"v3", "v4", "v7", "v6"},
                                             {"v1", "v2", "v6", "v7"},
                                             {"v1", "v7", "v8", "v5"},
                                             {"v4", "v5", "v8", "v7"},
                                             {"v1", "v7", "v4", "v5"}}));
  EXPECT_EQ(simple_cycles(h, 4).size(), 5u);
  EXPECT_EQ(oracle::cycle_counts(h).at(3), 3);
  EXPECT_EQ(oracle::cycle_counts(h).at(4), 5);
  EXPECT_TRUE(isomorphic(construct_Hn(5), h));
}

TEST(TubeRotation, RejectsMissingConnectors) {
  auto p = cartesian_product(complete_graph(4), path_graph(2));
  auto base = *planar_embedding(complete_graph(4));
  EXPECT_THROW(tube_rotation(p, base, {}), GraphError);
}

TEST(OcConstruction, WheelsAndSquaredCycles) {
  std::vector<Graph> graphs;
  for (int n = 3; n <= 8; ++n) graphs.push_back(wheel(n));
  graphs.push_back(squared_cycle(6));
  graphs.push_back(squared_cycle(8));
  for (const auto& g : graphs) {
    auto oc = is_outer_cylindrical(g);
    ASSERT_EQ(oc.verdict, OcVerdict::oc);
    auto cert = oc_product_torus_embedding(g, *oc.certificate);
    expect_product_certificate(cert, 1);
    EXPECT_EQ(static_cast<int>(cert.faces.size()), 2 * g.size() - g.order());
  }
}

TEST(OcConstruction, FaceCountsFollowEuler) {
  auto cert = oc_product_torus_embedding(wheel(5), *is_outer_cylindrical(wheel(5)).certificate);
  EXPECT_EQ(cert.faces.size(), 14u);
  EXPECT_EQ(cert.graph.order(), 12);
  EXPECT_EQ(cert.graph.size(), 26);
  auto k4 = oc_product_torus_embedding(wheel(3), *is_outer_cylindrical(wheel(3)).certificate);
  EXPECT_EQ(k4.genus, 1);
  // K4 x P2 is non-planar, so genus one is exact.
  EXPECT_FALSE(is_planar(k4.graph));
}

TEST(OcConstruction, FibersRestrictToPlanarEmbeddings) {
  for (const auto& g : {wheel(4), wheel(6), squared_cycle(6), squared_cycle(8)}) {
    auto cert = oc_product_torus_embedding(g, *is_outer_cylindrical(g).certificate);
    auto p = cartesian_product(g, path_graph(2));
    for (Vertex layer = 0; layer < 2; ++layer) {
      RotationSystem rs;
      rs.order.resize(static_cast<std::size_t>(g.order()));
      for (Vertex v = 0; v < g.order(); ++v)
        for (Dart d : cert.rotation.order[static_cast<std::size_t>(p.vertex(v, layer))]) {
          Vertex w = dart_head(p.graph, d);
          if (p.coords[static_cast<std::size_t>(w)].h_part != layer) continue;
          Vertex gw = p.coords[static_cast<std::size_t>(w)].g_part;
          const int e = g.edge_index(v, gw);
          rs.order[static_cast<std::size_t>(v)].push_back(v < gw ? 2 * e : 2 * e + 1);
        }
      EXPECT_EQ(genus_of(g, rs), 0);
    }
  }
}

TEST(OcConstruction, RejectsForeignCertificates) {
  auto oc = *is_outer_cylindrical(wheel(5)).certificate;
  EXPECT_THROW(oc_product_torus_embedding(wheel(6), oc), std::exception);
  auto broken = oc;
  broken.face_b = broken.face_a;
  EXPECT_THROW(oc_product_torus_embedding(wheel(5), broken), std::exception);
}

TEST(GenusTwo, K4P3) {
  auto c = k4p3_genus2_embedding();
  expect_product_certificate(c, 2);
  EXPECT_EQ(c.faces.size(), 12u);
  EXPECT_EQ(distribution_of(c.faces).str(), "f3=4 f4=4 f6=4");
  EXPECT_TRUE(isomorphic(c.graph, cartesian_product(complete_graph(4), path_graph(3)).graph));
}

TEST(GenusTwo, HP2) {
  auto c = hp2_genus2_embedding();
  expect_product_certificate(c, 2);
  EXPECT_EQ(c.faces.size(), 16u);
  EXPECT_TRUE(isomorphic(c.graph, cartesian_product(reference_h(), path_graph(2)).graph));
}

TEST(Classify, Examples) {
  auto w = classify_product(wheel(5), path_graph(2));
  EXPECT_EQ(w.kind, ClassKind::toroidal);
  EXPECT_EQ(w.reason, "oc_construction");
  ASSERT_TRUE(w.certificate);
  EXPECT_TRUE(verify_certificate(*w.certificate));
  EXPECT_EQ(w.certificate->genus, 1);

  auto swapped = classify_product(path_graph(2), wheel(5));
  EXPECT_EQ(swapped.kind, ClassKind::toroidal);
  ASSERT_TRUE(swapped.certificate);
  EXPECT_TRUE(verify_certificate(*swapped.certificate));
  EXPECT_TRUE(swapped.certificate->graph.edges() == cartesian_product(path_graph(2), wheel(5)).graph.edges());

  auto k = classify_product(complete_graph(4), path_graph(3));
  EXPECT_EQ(k.kind, ClassKind::non_toroidal);
  EXPECT_EQ(k.reason, "three_connected_and_H_ne_P2");

  auto k6 = classify_product(complete_graph(6), path_graph(2));
  EXPECT_EQ(k6.kind, ClassKind::non_toroidal);
  EXPECT_EQ(k6.reason, "connectivity_ge_5");

  auto k5 = classify_product(complete_graph(5), path_graph(2));
  EXPECT_EQ(k5.reason, "nonplanar_factor");
}

TEST(Classify, SearchBranches) {
  auto h = classify_product(reference_h(), path_graph(2));
  EXPECT_EQ(h.kind, ClassKind::non_toroidal);
  EXPECT_EQ(h.reason, "search_refuted");
  EXPECT_FALSE(h.certificate);

  for (auto [g, hh] : std::vector<std::pair<Graph, Graph>>{{cycle_graph(3), path_graph(2)},
                                                            {cycle_graph(4), cycle_graph(4)},
                                                            {path_graph(3), path_graph(3)}}) {
    auto v = classify_product(g, hh);
    EXPECT_EQ(v.kind, ClassKind::toroidal);
    EXPECT_EQ(v.reason, "search_certificate");
    ASSERT_TRUE(v.certificate);
    EXPECT_TRUE(verify_certificate(*v.certificate));
    EXPECT_LE(v.certificate->genus, 1);
    EXPECT_FALSE(v.conjecture_counterexample);
  }

  SearchOptions tiny;
  tiny.budget.max_nodes = 5;
  auto cut = classify_product(construct_Hn(6), path_graph(2), tiny);
  EXPECT_EQ(cut.kind, ClassKind::unknown);
  EXPECT_EQ(cut.reason, "budget_exhausted");
}

TEST(Classify, ToroidalVerdictsAlwaysVerify) {
  std::mt19937 rng(2);
  for (int it = 0; it < 25; ++it) {
    Graph a = oracle::random_connected(rng, 2 + it % 4, 0.3);
    Graph b = oracle::random_connected(rng, 2 + (it / 4) % 3, 0.3);
    auto v = classify_product(a, b);
    if (v.kind == ClassKind::toroidal) {
      ASSERT_TRUE(v.certificate);
      EXPECT_TRUE(verify_certificate(*v.certificate));
      EXPECT_LE(v.certificate->genus, 1);
    }
  }
}

TEST(Classify, Json) {
  auto j = classification_to_json(classify_product(wheel(4), path_graph(2)));
  EXPECT_EQ(j["verdict"], "toroidal");
  EXPECT_TRUE(j.contains("certificate"));
  EXPECT_TRUE(verify_certificate(certificate_from_json(j["certificate"])));
}
