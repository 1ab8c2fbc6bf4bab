// Combinatorial maps on orientable surfaces: darts, rotation systems, face
// tracing, Euler genus, and self-verifying embedding certificates.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "graph.hpp"

namespace cartgenus {

/// Dart 2e runs u->v along edge e = (u < v); dart 2e+1 runs v->u.
using Dart = int;

inline constexpr Dart reverse(Dart d) noexcept { return d ^ 1; }
inline Vertex dart_tail(const Graph& g, Dart d) {
  const auto& e = g.edge(d >> 1);
  return (d & 1) ? e.v : e.u;
}
inline Vertex dart_head(const Graph& g, Dart d) { return dart_tail(g, reverse(d)); }
inline int dart_count(const Graph& g) noexcept { return 2 * g.size(); }

/// Outgoing darts of v, ordered by head index.
inline std::vector<Dart> darts_at(const Graph& g, Vertex v) {
  std::vector<Dart> out;
  for (Vertex w : g.neighbors(v)) {
    int e = g.edge_index(v, w);
    out.push_back(v < w ? 2 * e : 2 * e + 1);
  }
  return out;
}

/// Cyclic order of outgoing darts at every vertex.
struct RotationSystem {
  std::vector<std::vector<Dart>> order;
  friend bool operator==(const RotationSystem&, const RotationSystem&) = default;
  friend auto operator<=>(const RotationSystem&, const RotationSystem&) = default;
};

class EmbeddingError : public GraphError {
 public:
  using GraphError::GraphError;
};

/// True when each vertex lists exactly its own outgoing darts once.
inline bool is_well_formed(const Graph& g, const RotationSystem& rs) {
  if (static_cast<int>(rs.order.size()) != g.order()) return false;
  for (Vertex v = 0; v < g.order(); ++v) {
    auto got = rs.order[static_cast<std::size_t>(v)];
    auto want = darts_at(g, v);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want) return false;
  }
  return true;
}

/// succ[d]: the dart following d in the rotation at tail(d).
inline std::vector<Dart> successor_table(const Graph& g, const RotationSystem& rs) {
  if (!is_well_formed(g, rs)) throw EmbeddingError("rotation system does not match the graph");
  std::vector<Dart> succ(static_cast<std::size_t>(dart_count(g)), -1);
  for (const auto& cyc : rs.order)
    for (std::size_t i = 0; i < cyc.size(); ++i) succ[static_cast<std::size_t>(cyc[i])] = cyc[(i + 1) % cyc.size()];
  return succ;
}

/// Rotation system with every cyclic order reversed (the mirror embedding).
inline RotationSystem mirror(const RotationSystem& rs) {
  RotationSystem out = rs;
  for (auto& cyc : out.order)
    if (cyc.size() > 1) std::reverse(cyc.begin() + 1, cyc.end());
  return out;
}

/// Rotation system from per-vertex neighbor sequences.
inline RotationSystem rotation_from_neighbors(const Graph& g, const std::vector<std::vector<Vertex>>& nbrs) {
  RotationSystem rs;
  rs.order.resize(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v)
    for (Vertex w : nbrs.at(static_cast<std::size_t>(v))) {
      int e = g.edge_index(v, w);
      if (e < 0) throw EmbeddingError("rotation lists a non-neighbor");
      rs.order[static_cast<std::size_t>(v)].push_back(v < w ? 2 * e : 2 * e + 1);
    }
  return rs;
}

using Face = std::vector<Dart>;

/// Facial walks: the dart after d is the successor of reverse(d) at head(d).
/// Faces start at their smallest dart and are listed in order of that dart.
inline std::vector<Face> trace_faces(const Graph& g, const RotationSystem& rs) {
  const auto succ = successor_table(g, rs);
  std::vector<char> seen(succ.size(), 0);
  std::vector<Face> faces;
  for (Dart s = 0; s < static_cast<Dart>(succ.size()); ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    Face f;
    for (Dart d = s; !seen[static_cast<std::size_t>(d)]; d = succ[static_cast<std::size_t>(reverse(d))]) {
      seen[static_cast<std::size_t>(d)] = 1;
      f.push_back(d);
    }
    faces.push_back(std::move(f));
  }
  return faces;
}

/// Number of faces; a graph without edges has one face.
inline int face_count(const Graph& g, const RotationSystem& rs) {
  if (g.size() == 0) return 1;
  return static_cast<int>(trace_faces(g, rs).size());
}

inline int genus_from_counts(int v, int e, int f) {
  const int twice = 2 - v + e - f;
  if (twice < 0 || twice % 2 != 0) throw EmbeddingError("Euler characteristic is not that of an orientable surface");
  return twice / 2;
}

/// Genus of the orientable surface the rotation system embeds a connected graph in.
inline int genus_of(const Graph& g, const RotationSystem& rs) {
  if (!g.is_connected()) throw EmbeddingError("genus_of: graph is disconnected");
  return genus_from_counts(g.order(), g.size(), face_count(g, rs));
}

/// Vertices visited by a facial walk, each once.
inline std::vector<Vertex> face_vertices(const Graph& g, const Face& f) {
  std::vector<Vertex> vs;
  for (Dart d : f) vs.push_back(dart_tail(g, d));
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

/// Rotation system, its traced faces and genus; re-verifiable from scratch.
struct EmbeddingCertificate {
  Graph graph;
  RotationSystem rotation;
  std::vector<Face> faces;
  int genus = 0;
};

inline EmbeddingCertificate make_certificate(const Graph& g, RotationSystem rs) {
  EmbeddingCertificate c{g, std::move(rs), {}, 0};
  c.faces = trace_faces(c.graph, c.rotation);
  c.genus = genus_of(c.graph, c.rotation);
  return c;
}

/// Genus-0 certificate plus two distinct faces whose walks jointly visit every vertex.
struct OcCertificate {
  EmbeddingCertificate embedding;
  int face_a = -1;
  int face_b = -1;
};

namespace detail {

/// Canonical form of a facial walk: rotated to start at its smallest dart.
inline Face canonical_face(Face f) {
  if (f.empty()) return f;
  auto it = std::min_element(f.begin(), f.end());
  std::rotate(f.begin(), it, f.end());
  return f;
}

}  // namespace detail

/// Recheck every certificate invariant without trusting stored fields.
inline bool verify_certificate(const EmbeddingCertificate& c) {
  const Graph& g = c.graph;
  if (!g.is_connected()) return false;
  if (!is_well_formed(g, c.rotation)) return false;
  const auto succ = successor_table(g, c.rotation);
  // Stored faces must be closed walks under the face permutation that
  // partition the darts.
  std::vector<int> hits(succ.size(), 0);
  for (const auto& f : c.faces) {
    if (f.empty()) return false;
    for (std::size_t i = 0; i < f.size(); ++i) {
      Dart d = f[i];
      if (d < 0 || d >= static_cast<Dart>(succ.size())) return false;
      ++hits[static_cast<std::size_t>(d)];
      Dart next = f[(i + 1) % f.size()];
      if (succ[static_cast<std::size_t>(reverse(d))] != next) return false;
    }
  }
  if (g.size() > 0 && std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; })) return false;
  // Each edge borders exactly two face slots.
  for (int e = 0; e < g.size(); ++e)
    if (hits[static_cast<std::size_t>(2 * e)] + hits[static_cast<std::size_t>(2 * e + 1)] != 2) return false;
  const int f = g.size() == 0 ? 1 : static_cast<int>(c.faces.size());
  const int twice = 2 - g.order() + g.size() - f;
  if (twice < 0 || twice % 2 != 0) return false;
  return twice / 2 == c.genus;
}

inline bool verify_certificate(const OcCertificate& c) {
  if (!verify_certificate(c.embedding)) return false;
  if (c.embedding.genus != 0) return false;
  const int nf = static_cast<int>(c.embedding.faces.size());
  if (c.face_a < 0 || c.face_b < 0 || c.face_a >= nf || c.face_b >= nf || c.face_a == c.face_b) return false;
  const Graph& g = c.embedding.graph;
  std::vector<char> covered(static_cast<std::size_t>(g.order()), 0);
  for (int idx : {c.face_a, c.face_b})
    for (Vertex v : face_vertices(g, c.embedding.faces[static_cast<std::size_t>(idx)]))
      covered[static_cast<std::size_t>(v)] = 1;
  return std::all_of(covered.begin(), covered.end(), [](char x) { return x != 0; });
}

// ---------------------------------------------------------------------------
// JSON. Darts are [tail, head] label pairs; objects use sorted keys, so a
// dump/parse/dump cycle is byte-stable.

inline nlohmann::json dart_to_json(const Graph& g, Dart d) {
  return nlohmann::json::array({g.label(dart_tail(g, d)), g.label(dart_head(g, d))});
}

inline Dart dart_from_json(const Graph& g, const nlohmann::json& j) {
  Vertex a = g.at(j.at(0).get<std::string>());
  Vertex b = g.at(j.at(1).get<std::string>());
  int e = g.edge_index(a, b);
  if (e < 0) throw EmbeddingError("dart along a non-edge");
  return a < b ? 2 * e : 2 * e + 1;
}

inline nlohmann::json certificate_to_json(const EmbeddingCertificate& c) {
  const Graph& g = c.graph;
  nlohmann::json rot = nlohmann::json::object();
  for (Vertex v = 0; v < g.order(); ++v) {
    auto arr = nlohmann::json::array();
    for (Dart d : c.rotation.order[static_cast<std::size_t>(v)]) arr.push_back(dart_to_json(g, d));
    rot[g.label(v)] = std::move(arr);
  }
  auto faces = nlohmann::json::array();
  for (const auto& f : c.faces) {
    auto arr = nlohmann::json::array();
    for (Dart d : f) arr.push_back(dart_to_json(g, d));
    faces.push_back(std::move(arr));
  }
  nlohmann::json gj;
  gj["vertices"] = g.labels();
  auto edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({g.label(e.u), g.label(e.v)});
  gj["edges"] = std::move(edges);
  return {{"graph", std::move(gj)}, {"rotation", std::move(rot)}, {"faces", std::move(faces)}, {"genus", c.genus}};
}

inline EmbeddingCertificate certificate_from_json(const nlohmann::json& j) {
  const auto& gj = j.at("graph");
  std::vector<std::string> labels = gj.at("vertices").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : gj.at("edges")) edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  EmbeddingCertificate c{Graph::from_labels(std::move(labels), edges), {}, {}, j.at("genus").get<int>()};
  c.rotation.order.resize(static_cast<std::size_t>(c.graph.order()));
  for (Vertex v = 0; v < c.graph.order(); ++v)
    for (const auto& d : j.at("rotation").at(c.graph.label(v)))
      c.rotation.order[static_cast<std::size_t>(v)].push_back(dart_from_json(c.graph, d));
  for (const auto& f : j.at("faces")) {
    Face face;
    for (const auto& d : f) face.push_back(dart_from_json(c.graph, d));
    c.faces.push_back(std::move(face));
  }
  return c;
}

inline nlohmann::json oc_certificate_to_json(const OcCertificate& c) {
  auto j = certificate_to_json(c.embedding);
  j["outer_faces"] = {c.face_a, c.face_b};
  return j;
}

inline OcCertificate oc_certificate_from_json(const nlohmann::json& j) {
  OcCertificate c{certificate_from_json(j), j.at("outer_faces").at(0).get<int>(), j.at("outer_faces").at(1).get<int>()};
  return c;
}

}  // namespace cartgenus
