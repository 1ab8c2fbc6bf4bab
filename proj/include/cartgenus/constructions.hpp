// Explicit embeddings of layered products built by joining mirrored copies of
// a planar embedding with tubes, and the product classification cascade.
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "connectivity.hpp"
#include "genus_search.hpp"
#include "graph.hpp"
#include "planarity.hpp"
#include "rotation.hpp"

namespace cartgenus {

/// The 8-vertex, 13-edge NOC graph v1..v8 used for the genus-2 example.
inline Graph reference_h() {
  std::vector<std::string> labels;
  for (int i = 1; i <= 8; ++i) labels.push_back("v" + std::to_string(i));
  const int pairs[][2] = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {2, 6}, {3, 6},
                          {6, 7}, {7, 1}, {7, 4}, {7, 8}, {4, 8}, {8, 5}};
  std::vector<Edge> es;
  for (const auto& p : pairs) es.push_back({p[0] - 1, p[1] - 1});
  return Graph(std::move(labels), std::move(es));
}

/// A tube between layers `layer` and `layer + 1` of G x P_k through one face
/// of the base embedding, carrying the connector edges at `carried`.
struct Tube {
  int layer = 0;
  Face face;  // facial walk in the base rotation of G
  std::vector<Vertex> carried;
};

namespace detail {

inline Dart dart_between(const Graph& g, Vertex from, Vertex to) {
  const int e = g.edge_index(from, to);
  if (e < 0) throw GraphError("dart_between: vertices not adjacent");
  return from < to ? 2 * e : 2 * e + 1;
}

inline void insert_after(std::vector<Dart>& cyc, Dart anchor, Dart x) {
  auto it = std::find(cyc.begin(), cyc.end(), anchor);
  if (it == cyc.end()) throw EmbeddingError("tube splice: corner dart missing");
  cyc.insert(it + 1, x);
}

}  // namespace detail

/// Rotation system of G x P_k (k = p.right.order(), second factor a path):
/// layer i copies `base` when i is even and its mirror when i is odd, and
/// each tube splices its connectors into the corners of its face.
///
/// Splice rule. Let the face walk be d_1 .. d_m and w = head(d_i), so the
/// corner at w is succ(rev d_i) = d_{i+1}. In the copy that uses `base`, the
/// connector dart x at w goes between them: succ(rev d_i) = x, succ(x) =
/// d_{i+1}. In the mirrored copy the same corner reads succ(d_{i+1}) =
/// rev d_i and the connector dart goes between those two. A face carrying c
/// connectors thereby merges with its mirror image into c faces, each
/// crossing the tube twice. Callers must check the genus by tracing.
inline RotationSystem tube_rotation(const Product& p, const RotationSystem& base, const std::vector<Tube>& tubes) {
  const Graph& G = p.left;
  const Graph& pg = p.graph;
  const int k = p.right.order();
  if (genus_of(G, base) != 0) throw EmbeddingError("tube_rotation: base embedding is not planar");
  for (Vertex h = 0; h + 1 < k; ++h)
    if (!p.right.adjacent(h, h + 1)) throw GraphError("tube_rotation: second factor must be a path in label order");
  RotationSystem rs;
  rs.order.resize(static_cast<std::size_t>(pg.order()));
  auto lift = [&](Dart d, int layer) {
    return detail::dart_between(pg, p.vertex(dart_tail(G, d), layer), p.vertex(dart_head(G, d), layer));
  };
  for (int layer = 0; layer < k; ++layer)
    for (Vertex v = 0; v < G.order(); ++v) {
      auto& cyc = rs.order[static_cast<std::size_t>(p.vertex(v, layer))];
      for (Dart d : base.order[static_cast<std::size_t>(v)]) cyc.push_back(lift(d, layer));
      if (layer % 2 == 1) std::reverse(cyc.begin(), cyc.end());
    }
  std::set<std::pair<Vertex, int>> used;
  for (const auto& t : tubes) {
    if (t.layer < 0 || t.layer + 1 >= k) throw GraphError("tube_rotation: tube layer out of range");
    const std::size_t m = t.face.size();
    for (Vertex w : t.carried) {
      if (!used.insert({w, t.layer}).second) throw GraphError("tube_rotation: connector carried twice");
      std::size_t i = 0;
      while (i < m && dart_head(G, t.face[i]) != w) ++i;
      if (i == m) throw GraphError("tube_rotation: carried vertex not on the tube's face");
      const Dart din = t.face[i];
      const Dart dout = t.face[(i + 1) % m];
      for (int layer : {t.layer, t.layer + 1}) {
        const int other = layer == t.layer ? t.layer + 1 : t.layer;
        const Vertex pw = p.vertex(w, layer);
        const Dart x = detail::dart_between(pg, pw, p.vertex(w, other));
        auto& cyc = rs.order[static_cast<std::size_t>(pw)];
        if (layer % 2 == 0)
          detail::insert_after(cyc, lift(reverse(din), layer), x);
        else
          detail::insert_after(cyc, lift(dout, layer), x);
      }
    }
  }
  for (Vertex v = 0; v < G.order(); ++v)
    for (int layer = 0; layer + 1 < k; ++layer)
      if (!used.count({v, layer})) throw GraphError("tube_rotation: connector left uncarried");
  return rs;
}

/// Genus-1 embedding of g x P2 from an OC certificate of g: one tube through
/// each of the two covering faces.
inline EmbeddingCertificate oc_product_torus_embedding(const Graph& g, const OcCertificate& oc) {
  if (!verify_certificate(oc)) throw EmbeddingError("oc_product_torus_embedding: certificate does not verify");
  if (oc.embedding.graph.labels() != g.labels() || oc.embedding.graph.edges() != g.edges())
    throw EmbeddingError("oc_product_torus_embedding: certificate is for another graph");
  const auto& emb = oc.embedding;
  const Face& fa = emb.faces[static_cast<std::size_t>(oc.face_a)];
  const Face& fb = emb.faces[static_cast<std::size_t>(oc.face_b)];
  const auto on_a = face_vertices(g, fa);
  const auto on_b = face_vertices(g, fb);
  Tube ta{0, fa, {}}, tb{0, fb, {}};
  for (Vertex v = 0; v < g.order(); ++v) {
    if (std::find(on_a.begin(), on_a.end(), v) != on_a.end())
      ta.carried.push_back(v);
    else
      tb.carried.push_back(v);
  }
  // Both tubes need a connector; otherwise the surface stays a sphere.
  if (tb.carried.empty()) {
    const Vertex v = on_b.front();
    ta.carried.erase(std::find(ta.carried.begin(), ta.carried.end(), v));
    tb.carried.push_back(v);
  }
  const Product p = cartesian_product(g, path_graph(2));
  auto cert = make_certificate(p.graph, tube_rotation(p, emb.rotation, {ta, tb}));
  if (cert.genus != 1 || !verify_certificate(cert))
    throw EmbeddingError("oc_product_torus_embedding: construction did not yield a torus embedding");
  return cert;
}

namespace detail {

/// The face of a genus-0 rotation whose vertex set equals `cycle` (labels).
inline Face face_through(const Graph& g, const RotationSystem& rs, const std::vector<std::string>& cycle) {
  std::set<Vertex> want;
  for (const auto& l : cycle) want.insert(g.at(l));
  for (const auto& f : trace_faces(g, rs)) {
    const auto vs = face_vertices(g, f);
    if (vs.size() == want.size() && std::set<Vertex>(vs.begin(), vs.end()) == want) return f;
  }
  throw EmbeddingError("no face through the requested cycle");
}

inline std::vector<Vertex> vertices_named(const Graph& g, const std::vector<std::string>& names) {
  std::vector<Vertex> out;
  for (const auto& n : names) out.push_back(g.at(n));
  return out;
}

}  // namespace detail

/// K4 x P3 on the double torus: three spheres joined by four tubes, two
/// between the first and middle layer and two between the middle and last,
/// each carrying two connectors.
inline EmbeddingCertificate k4p3_genus2_embedding() {
  const Graph k4 = complete_graph(4);
  const Product p = cartesian_product(k4, path_graph(3));
  const auto rho = *planar_embedding(k4);
  // Each triangular face of K4 misses one vertex; pair up the faces so that
  // every layer gap gets all four connectors.
  const auto& l = k4.labels();
  auto face_without = [&](int v) {
    std::vector<std::string> c;
    for (int u = 0; u < 4; ++u)
      if (u != v) c.push_back(l[static_cast<std::size_t>(u)]);
    return detail::face_through(k4, rho, c);
  };
  std::vector<Tube> tubes{
      {0, face_without(0), {1, 2}},
      {0, face_without(1), {0, 3}},
      {1, face_without(2), {1, 3}},
      {1, face_without(3), {0, 2}},
  };
  auto cert = make_certificate(p.graph, tube_rotation(p, rho, tubes));
  if (cert.genus != 2 || !verify_certificate(cert)) throw EmbeddingError("k4p3_genus2_embedding: self-check failed");
  return cert;
}

/// H x P2 on the double torus: the two layers joined by three tubes through
/// the faces (v1 v2 v3 v4 v5), (v3 v4 v7 v6) and (v4 v5 v8).
inline EmbeddingCertificate hp2_genus2_embedding() {
  const Graph h = reference_h();
  const Product p = cartesian_product(h, path_graph(2));
  const auto rho = *planar_embedding(h);
  std::vector<Tube> tubes{
      {0, detail::face_through(h, rho, {"v1", "v2", "v3", "v4", "v5"}), detail::vertices_named(h, {"v1", "v2", "v5"})},
      {0, detail::face_through(h, rho, {"v3", "v4", "v7", "v6"}), detail::vertices_named(h, {"v3", "v6", "v7"})},
      {0, detail::face_through(h, rho, {"v4", "v5", "v8"}), detail::vertices_named(h, {"v4", "v8"})},
  };
  auto cert = make_certificate(p.graph, tube_rotation(p, rho, tubes));
  if (cert.genus != 2 || !verify_certificate(cert)) throw EmbeddingError("hp2_genus2_embedding: self-check failed");
  return cert;
}

// ---------------------------------------------------------------------------
// Classification of G x H with respect to genus at most one

enum class ClassKind { toroidal, non_toroidal, unknown };

inline std::string to_string(ClassKind k) {
  switch (k) {
    case ClassKind::toroidal: return "toroidal";
    case ClassKind::non_toroidal: return "non_toroidal";
    case ClassKind::unknown: return "unknown";
  }
  return "?";
}

struct ClassificationVerdict {
  ClassKind kind = ClassKind::unknown;
  /// nonplanar_factor, connectivity_ge_5, three_connected_and_H_ne_P2,
  /// search_refuted, oc_construction, search_certificate, budget_exhausted,
  /// or conjecture_note.
  std::string reason;
  std::string note;
  std::optional<EmbeddingCertificate> certificate;  // on the product g x h
  std::optional<SearchStats> search;
  bool conjecture_counterexample = false;
};

namespace detail {

inline bool is_p2(const Graph& g) { return g.order() == 2 && g.size() == 1; }

/// Carry a rotation of b x a over to a x b (swap the coordinates).
inline RotationSystem swap_product_rotation(const Product& from, const Product& to, const RotationSystem& rs) {
  const Graph& fg = from.graph;
  const Graph& tg = to.graph;
  std::vector<Vertex> vmap(static_cast<std::size_t>(fg.order()));
  for (Vertex v = 0; v < fg.order(); ++v) {
    const auto& c = from.coords[static_cast<std::size_t>(v)];
    vmap[static_cast<std::size_t>(v)] = to.vertex(c.h_part, c.g_part);
  }
  RotationSystem out;
  out.order.resize(static_cast<std::size_t>(tg.order()));
  for (Vertex v = 0; v < fg.order(); ++v)
    for (Dart d : rs.order[static_cast<std::size_t>(v)])
      out.order[static_cast<std::size_t>(vmap[static_cast<std::size_t>(v)])].push_back(dart_between(
          tg, vmap[static_cast<std::size_t>(dart_tail(fg, d))], vmap[static_cast<std::size_t>(dart_head(fg, d))]));
  return out;
}

}  // namespace detail

/// Decide whether g x h embeds on the torus, cheapest argument first:
/// connectivity above four, a non-planar factor, a 3-connected factor with
/// the other factor not P2, an OC 3-connected factor against P2 (explicit
/// torus embedding), and finally exhaustive search within the budget.
inline ClassificationVerdict classify_product(const Graph& g, const Graph& h, SearchOptions opt = {}) {
  if (!g.is_connected() || !h.is_connected() || g.order() < 2 || h.order() < 2)
    throw GraphError("classify_product: factors must be connected and nontrivial");
  ClassificationVerdict out;
  const int kg = vertex_connectivity(g);
  const int kh = vertex_connectivity(h);
  if (kg >= 5 || kh >= 5) {
    out.kind = ClassKind::non_toroidal;
    out.reason = "connectivity_ge_5";
    return out;
  }
  if (!is_planar(g) || !is_planar(h)) {
    out.kind = ClassKind::non_toroidal;
    out.reason = "nonplanar_factor";
    return out;
  }
  const bool g3 = g.order() >= 4 && kg >= 3;
  const bool h3 = h.order() >= 4 && kh >= 3;
  if ((g3 && !detail::is_p2(h)) || (h3 && !detail::is_p2(g))) {
    out.kind = ClassKind::non_toroidal;
    out.reason = "three_connected_and_H_ne_P2";
    return out;
  }
  const Product target = cartesian_product(g, h);
  if (g3 || h3) {
    const Graph& x = g3 ? g : h;
    auto oc = is_outer_cylindrical(x, opt.budget);
    if (oc.verdict == OcVerdict::oc) {
      auto cert = oc_product_torus_embedding(x, *oc.certificate);
      // x x P2 shares vertex and edge numbering with x x h whatever h's
      // labels; when x is the second factor the coordinates are swapped too.
      if (g3)
        cert = make_certificate(target.graph, cert.rotation);
      else
        cert = make_certificate(target.graph,
                                detail::swap_product_rotation(cartesian_product(h, g), target, cert.rotation));
      out.kind = ClassKind::toroidal;
      out.reason = "oc_construction";
      out.certificate = std::move(cert);
      return out;
    }
    out.note = oc.verdict == OcVerdict::noc ? "3-connected NOC factor against P2" : "OC test ran out of budget";
  } else {
    out.note = "no 3-connected factor; no known decision rule applies";
  }
  auto res = is_toroidal(target, opt);
  out.search = res.stats;
  switch (res.verdict) {
    case Verdict::embeddable:
      out.kind = ClassKind::toroidal;
      out.reason = "search_certificate";
      out.certificate = res.certificate;
      out.conjecture_counterexample = g3 || h3;
      if (out.conjecture_counterexample) out.note = "torus embedding of a NOC x P2 product: counterexample to the OC conjecture";
      break;
    case Verdict::refuted:
      out.kind = ClassKind::non_toroidal;
      out.reason = "search_refuted";
      break;
    case Verdict::budget_exhausted:
      out.kind = ClassKind::unknown;
      out.reason = g3 || h3 ? "budget_exhausted" : "conjecture_note";
      break;
  }
  return out;
}

inline nlohmann::json classification_to_json(const ClassificationVerdict& v) {
  nlohmann::json j{{"verdict", to_string(v.kind)}, {"reason", v.reason}};
  if (!v.note.empty()) j["note"] = v.note;
  if (v.conjecture_counterexample) j["conjecture_counterexample"] = true;
  if (v.certificate) j["certificate"] = certificate_to_json(*v.certificate);
  if (v.search)
    j["search"] = {{"nodes", v.search->nodes}, {"prunes", v.search->prunes}, {"wall_ms", v.search->wall_ms}};
  return j;
}

}  // namespace cartgenus
