// Planarity with embedding output, planar-embedding enumeration, and
// outer-cylindrical recognition.
#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "connectivity.hpp"
#include "genus_search.hpp"
#include "rotation.hpp"

namespace cartgenus {

/// A genus-0 rotation system of g, if g is planar (Boyer-Myrvold).
inline std::optional<RotationSystem> planar_embedding(const Graph& g) {
  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                       boost::property<boost::edge_index_t, int>>;
  using BEdge = boost::graph_traits<BGraph>::edge_descriptor;
  BGraph bg(static_cast<std::size_t>(g.order()));
  for (int e = 0; e < g.size(); ++e) {
    auto [be, ok] = boost::add_edge(static_cast<std::size_t>(g.edge(e).u), static_cast<std::size_t>(g.edge(e).v), bg);
    (void)ok;
    boost::put(boost::edge_index, bg, be, e);
  }
  std::vector<std::vector<BEdge>> emb(static_cast<std::size_t>(g.order()));
  const bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding =
          boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, bg)));
  if (!planar) return std::nullopt;
  RotationSystem rs;
  rs.order.resize(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v)
    for (const auto& be : emb[static_cast<std::size_t>(v)]) {
      const int e = boost::get(boost::edge_index, bg, be);
      rs.order[static_cast<std::size_t>(v)].push_back(g.edge(e).u == v ? 2 * e : 2 * e + 1);
    }
  // Each component is planar on its own; the check below needs connectivity.
  if (g.is_connected() && genus_of(g, rs) != 0) throw EmbeddingError("planar_embedding: embedding failed self-check");
  return rs;
}

inline bool is_planar(const Graph& g) { return planar_embedding(g).has_value(); }

struct PlanarEmbeddings {
  std::vector<RotationSystem> embeddings;  // sorted, duplicate-free
  bool complete = true;                    // false when the budget ran out
};

/// Every genus-0 rotation system of a connected planar graph. For 3-connected
/// graphs this is one embedding and its mirror.
inline PlanarEmbeddings enumerate_planar_embeddings(const Graph& g, SearchBudget budget = {}) {
  PlanarEmbeddings out;
  if (!g.is_connected()) throw GraphError("enumerate_planar_embeddings: graph is disconnected");
  auto base = planar_embedding(g);
  if (!base) return out;
  if (g.order() >= 4 && vertex_connectivity(g) >= 3) {
    out.embeddings = {*base, mirror(*base)};
  } else {
    out.complete = enumerate_embeddings(
        g, 0,
        [&](const RotationSystem& rs) {
          out.embeddings.push_back(rs);
          return true;
        },
        budget);
  }
  // Normalize each cyclic order to start at its smallest dart before sorting.
  for (auto& rs : out.embeddings)
    for (auto& cyc : rs.order)
      if (!cyc.empty()) std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
  std::sort(out.embeddings.begin(), out.embeddings.end());
  out.embeddings.erase(std::unique(out.embeddings.begin(), out.embeddings.end()), out.embeddings.end());
  return out;
}

enum class OcVerdict { oc, noc, budget_exhausted };

struct OcResult {
  OcVerdict verdict = OcVerdict::noc;
  std::optional<OcCertificate> certificate;
};

/// Two distinct faces of some planar embedding whose walks jointly visit
/// every vertex. The first embedding and face pair in sorted order is returned.
inline OcResult is_outer_cylindrical(const Graph& g, SearchBudget budget = {}) {
  OcResult out;
  if (!g.is_connected() || !is_planar(g)) return out;
  auto all = enumerate_planar_embeddings(g, budget);
  const std::size_t n = static_cast<std::size_t>(g.order());
  for (const auto& rs : all.embeddings) {
    auto cert = make_certificate(g, rs);
    std::vector<std::vector<char>> on;
    for (const auto& f : cert.faces) {
      std::vector<char> mask(n, 0);
      for (Vertex v : face_vertices(g, f)) mask[static_cast<std::size_t>(v)] = 1;
      on.push_back(std::move(mask));
    }
    for (std::size_t a = 0; a < on.size(); ++a)
      for (std::size_t b = a + 1; b < on.size(); ++b) {
        bool cover = true;
        for (std::size_t v = 0; v < n && cover; ++v) cover = on[a][v] || on[b][v];
        if (!cover) continue;
        out.verdict = OcVerdict::oc;
        out.certificate = OcCertificate{std::move(cert), static_cast<int>(a), static_cast<int>(b)};
        return out;
      }
  }
  out.verdict = all.complete ? OcVerdict::noc : OcVerdict::budget_exhausted;
  return out;
}

}  // namespace cartgenus
