// Simple undirected labeled graphs, standard generators, Cartesian products
// with fiber metadata, and Tutte moves.
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cartgenus {

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Vertex = int;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1, each carrying an opaque label.
/// Edges are stored normalized (u < v) and sorted; the edge index is stable
/// for the lifetime of the value. Connectedness is not an invariant.
class Graph {
 public:
  Graph() = default;

  Graph(std::vector<std::string> labels, std::vector<Edge> edges)
      : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (!index_.emplace(labels_[i], static_cast<Vertex>(i)).second)
        throw GraphError("duplicate vertex label '" + labels_[i] + "'");
    }
    const auto n = static_cast<Vertex>(labels_.size());
    for (auto& e : edges) {
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
        throw GraphError("edge endpoint out of range");
      if (e.u == e.v) throw GraphError("loop at '" + labels_[e.u] + "'");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw GraphError("parallel edge");
    edges_ = std::move(edges);
    rebuild_adjacency();
  }

  /// Build from label pairs; every endpoint must be listed in `labels`.
  static Graph from_labels(std::vector<std::string> labels,
                           const std::vector<std::pair<std::string, std::string>>& edges) {
    std::map<std::string, Vertex> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) idx.emplace(labels[i], static_cast<Vertex>(i));
    std::vector<Edge> es;
    es.reserve(edges.size());
    for (const auto& [a, b] : edges) {
      auto ia = idx.find(a);
      auto ib = idx.find(b);
      if (ia == idx.end() || ib == idx.end())
        throw GraphError("edge endpoint '" + (ia == idx.end() ? a : b) + "' is not a vertex");
      es.push_back({ia->second, ib->second});
    }
    return Graph(std::move(labels), std::move(es));
  }

  /// Unlabeled convenience: vertices are named "0", "1", ...
  static Graph from_edges(int n, std::vector<Edge> edges) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return Graph(std::move(labels), std::move(edges));
  }

  int order() const noexcept { return static_cast<int>(labels_.size()); }
  int size() const noexcept { return static_cast<int>(edges_.size()); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Vertex v) const { return labels_.at(static_cast<std::size_t>(v)); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

  std::optional<Vertex> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  Vertex at(const std::string& label) const {
    auto v = find(label);
    if (!v) throw GraphError("no vertex labeled '" + label + "'");
    return *v;
  }

  bool adjacent(Vertex u, Vertex v) const {
    const auto& a = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(a.begin(), a.end(), v);
  }

  /// Index of edge uv, or -1.
  int edge_index(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
    if (it == edges_.end() || *it != Edge{u, v}) return -1;
    return static_cast<int>(it - edges_.begin());
  }

  int min_degree() const {
    int d = std::numeric_limits<int>::max();
    for (Vertex v = 0; v < order(); ++v) d = std::min(d, degree(v));
    return order() == 0 ? 0 : d;
  }
  int max_degree() const {
    int d = 0;
    for (Vertex v = 0; v < order(); ++v) d = std::max(d, degree(v));
    return d;
  }

  bool is_connected() const {
    if (order() == 0) return true;
    return component_of(0).size() == static_cast<std::size_t>(order());
  }

  /// Vertices reachable from `s`, optionally ignoring vertices flagged in `removed`.
  std::vector<Vertex> component_of(Vertex s, const std::vector<char>* removed = nullptr) const {
    std::vector<char> seen(static_cast<std::size_t>(order()), 0);
    std::vector<Vertex> out{s};
    seen[static_cast<std::size_t>(s)] = 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (Vertex w : neighbors(out[i])) {
        if (seen[static_cast<std::size_t>(w)]) continue;
        if (removed && (*removed)[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = 1;
        out.push_back(w);
      }
    }
    return out;
  }

  bool is_complete() const {
    const long n = order();
    return size() == n * (n - 1) / 2;
  }

  bool is_tree() const { return is_connected() && size() == order() - 1; }

  /// The same graph with vertex i renamed to `labels[i]`.
  Graph relabeled(std::vector<std::string> labels) const {
    if (labels.size() != labels_.size()) throw GraphError("relabel: size mismatch");
    return Graph(std::move(labels), edges_);
  }

  /// Induced subgraph on `keep` (in the given order).
  Graph induced(const std::vector<Vertex>& keep) const {
    std::vector<int> pos(static_cast<std::size_t>(order()), -1);
    std::vector<std::string> labs;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      pos[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
      labs.push_back(labels_[static_cast<std::size_t>(keep[i])]);
    }
    std::vector<Edge> es;
    for (const auto& e : edges_) {
      int a = pos[static_cast<std::size_t>(e.u)];
      int b = pos[static_cast<std::size_t>(e.v)];
      if (a >= 0 && b >= 0) es.push_back({a, b});
    }
    return Graph(std::move(labs), std::move(es));
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.labels_ == b.labels_ && a.edges_ == b.edges_;
  }

 private:
  void rebuild_adjacency() {
    adj_.assign(labels_.size(), {});
    for (const auto& e : edges_) {
      adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
      adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
  }

  std::vector<std::string> labels_;
  std::map<std::string, Vertex> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

// ---------------------------------------------------------------------------
// Generators

inline Graph path_graph(int n) {
  if (n < 1) throw GraphError("path_graph: n must be >= 1");
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return Graph::from_edges(n, std::move(es));
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw GraphError("cycle_graph: n must be >= 3");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.push_back({i, (i + 1) % n});
  return Graph::from_edges(n, std::move(es));
}

inline Graph complete_graph(int n) {
  if (n < 1) throw GraphError("complete_graph: n must be >= 1");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({i, j});
  return Graph::from_edges(n, std::move(es));
}

inline Graph complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw GraphError("complete_bipartite: parts must be nonempty");
  std::vector<Edge> es;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) es.push_back({i, a + j});
  return Graph::from_edges(a + b, std::move(es));
}

/// W_n: hub "c" joined to the rim cycle b0..b{n-1}.
inline Graph wheel(int n) {
  if (n < 3) throw GraphError("wheel: n must be >= 3");
  std::vector<std::string> labels{"c"};
  for (int i = 0; i < n; ++i) labels.push_back("b" + std::to_string(i));
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) {
    es.push_back({0, 1 + i});
    es.push_back({1 + i, 1 + (i + 1) % n});
  }
  return Graph(std::move(labels), std::move(es));
}

/// C^2_n: the n-cycle v1..vn plus every chord joining vertices at distance two.
/// For n = 4 the distance-two chords coincide pairwise and the result is K4.
inline Graph squared_cycle(int n) {
  if (n < 4) throw GraphError("squared_cycle: n must be >= 4");
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("v" + std::to_string(i));
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) {
    for (int step : {1, 2}) {
      Edge e{i, (i + step) % n};
      if (e.u > e.v) std::swap(e.u, e.v);
      if (std::find(es.begin(), es.end(), e) == es.end()) es.push_back(e);
    }
  }
  return Graph(std::move(labels), std::move(es));
}

// ---------------------------------------------------------------------------
// Cartesian products

/// Position of a product vertex in its two factors.
struct ProductLabel {
  Vertex g_part;
  Vertex h_part;
  friend bool operator==(const ProductLabel&, const ProductLabel&) = default;
};

/// Edge classes of G□H. A fiber edge lies in the copy of G over h-vertex
/// `index`; a connector edge lies in an H-fiber and projects to h-edge
/// `index`. When H is a path, connector(j) joins layers j and j+1.
struct EdgeClass {
  enum class Kind : std::uint8_t { fiber, connector };
  Kind kind;
  int index;
  friend bool operator==(const EdgeClass&, const EdgeClass&) = default;
  friend auto operator<=>(const EdgeClass&, const EdgeClass&) = default;

  bool is_connector() const noexcept { return kind == Kind::connector; }
  std::string str() const {
    return (kind == Kind::fiber ? "fiber(" : "connector(") + std::to_string(index) + ")";
  }
};

/// G□H together with the projection of every vertex and the class of every
/// edge, computed once at construction.
struct Product {
  Graph graph;
  Graph left;
  Graph right;
  std::vector<ProductLabel> coords;
  std::vector<EdgeClass> classes;

  Vertex vertex(Vertex g, Vertex h) const { return h * left.order() + g; }
  const EdgeClass& edge_class(int e) const { return classes.at(static_cast<std::size_t>(e)); }
  /// Connector edges never lie on a closed walk without fiber turns when the
  /// second factor is a tree; several face bounds depend on this.
  bool layered_by_tree() const { return right.is_tree(); }
  int connector_count() const {
    return static_cast<int>(std::count_if(classes.begin(), classes.end(),
                                          [](const EdgeClass& c) { return c.is_connector(); }));
  }
};

inline std::string product_label(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

inline Product cartesian_product(const Graph& g, const Graph& h) {
  const int ng = g.order();
  const int nh = h.order();
  std::vector<std::string> labels;
  std::vector<ProductLabel> coords;
  labels.reserve(static_cast<std::size_t>(ng * nh));
  for (int j = 0; j < nh; ++j)
    for (int i = 0; i < ng; ++i) {
      labels.push_back(product_label(g.label(i), h.label(j)));
      coords.push_back({i, j});
    }
  std::vector<Edge> es;
  std::map<Edge, EdgeClass> cls;
  for (int j = 0; j < nh; ++j)
    for (const auto& e : g.edges()) {
      Edge pe{j * ng + e.u, j * ng + e.v};
      es.push_back(pe);
      cls.emplace(pe, EdgeClass{EdgeClass::Kind::fiber, j});
    }
  for (int k = 0; k < h.size(); ++k) {
    const auto& e = h.edge(k);
    for (int i = 0; i < ng; ++i) {
      Edge pe{e.u * ng + i, e.v * ng + i};
      es.push_back(pe);
      cls.emplace(pe, EdgeClass{EdgeClass::Kind::connector, k});
    }
  }
  Product p{Graph(std::move(labels), std::move(es)), g, h, std::move(coords), {}};
  p.classes.reserve(static_cast<std::size_t>(p.graph.size()));
  for (const auto& e : p.graph.edges()) p.classes.push_back(cls.at(e));
  return p;
}

// ---------------------------------------------------------------------------
// Tutte moves

/// Replace `v` by two adjacent vertices carrying the neighbor sets `side_a`
/// and `side_b`, which must partition N(v). Both new vertices must end with
/// degree at least three.
inline Graph vertex_split(const Graph& g, const std::string& v, const std::vector<std::string>& side_a,
                          const std::vector<std::string>& side_b, const std::string& name_a,
                          const std::string& name_b) {
  const Vertex x = g.at(v);
  std::vector<Vertex> a, b;
  for (const auto& s : side_a) a.push_back(g.at(s));
  for (const auto& s : side_b) b.push_back(g.at(s));
  std::vector<Vertex> all = a;
  all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw GraphError("vertex_split: sides overlap");
  std::vector<Vertex> nbrs(g.neighbors(x).begin(), g.neighbors(x).end());
  if (all != nbrs) throw GraphError("vertex_split: sides do not cover N(" + v + ")");
  if (a.size() + 1 < 3 || b.size() + 1 < 3)
    throw GraphError("vertex_split: a new vertex would have degree < 3");
  if ((g.find(name_a) && name_a != v) || (g.find(name_b) && name_b != v) || name_a == name_b)
    throw GraphError("vertex_split: new vertex names collide");

  // Keep every other vertex in place; x becomes name_a and name_b is appended.
  auto labels = g.labels();
  labels[static_cast<std::size_t>(x)] = name_a;
  labels.push_back(name_b);
  const Vertex y = g.order();
  std::vector<Edge> es;
  for (const auto& e : g.edges())
    if (e.u != x && e.v != x) es.push_back(e);
  for (Vertex w : a) es.push_back({x, w});
  for (Vertex w : b) es.push_back({y, w});
  es.push_back({x, y});
  return Graph(std::move(labels), std::move(es));
}

inline Graph add_edge(const Graph& g, const std::string& u, const std::string& v) {
  const Vertex a = g.at(u);
  const Vertex b = g.at(v);
  if (a == b) throw GraphError("add_edge: loop at '" + u + "'");
  if (g.adjacent(a, b)) throw GraphError("add_edge: edge " + u + v + " already present");
  auto es = g.edges();
  es.push_back({a, b});
  return Graph(g.labels(), std::move(es));
}

/// H_n from W_n by three Tutte moves: split the hub into c1 ~ {b0, b1} and
/// c2 ~ {b2..b(n-1)}, add c2 b1, then split c2 into c3 ~ {b1, c1, b(n-1)} and
/// c4 ~ {b2..b(n-2)}.
inline Graph construct_Hn(int n) {
  if (n < 5) throw GraphError("construct_Hn: n must be >= 5");
  auto b = [](int i) { return "b" + std::to_string(i); };
  Graph w = wheel(n);
  std::vector<std::string> rest;
  for (int i = 2; i < n; ++i) rest.push_back(b(i));
  Graph s1 = vertex_split(w, "c", {b(0), b(1)}, rest, "c1", "c2");
  Graph s2 = add_edge(s1, "c2", b(1));
  std::vector<std::string> low;
  for (int i = 2; i <= n - 2; ++i) low.push_back(b(i));
  Graph s3 = vertex_split(s2, "c2", {b(1), "c1", b(n - 1)}, low, "c3", "c4");
  return s3;
}

// ---------------------------------------------------------------------------
// Girth and short cycles

/// Length of a shortest cycle, or nullopt for forests.
inline std::optional<int> girth(const Graph& g) {
  int best = std::numeric_limits<int>::max();
  const int n = g.order();
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(s)] = 0;
    parent[static_cast<std::size_t>(s)] = -1;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex w : g.neighbors(u)) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          parent[static_cast<std::size_t>(w)] = u;
          q.push(w);
        } else if (parent[static_cast<std::size_t>(u)] != w) {
          best = std::min(best, dist[static_cast<std::size_t>(u)] + dist[static_cast<std::size_t>(w)] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

/// All triangles {a < b < c}.
inline std::vector<std::array<Vertex, 3>> triangles(const Graph& g) {
  std::vector<std::array<Vertex, 3>> out;
  for (const auto& e : g.edges())
    for (Vertex w : g.neighbors(e.v))
      if (w > e.v && g.adjacent(e.u, w)) out.push_back({e.u, e.v, w});
  return out;
}

// ---------------------------------------------------------------------------
// Automorphisms and isomorphism (backtracking with degree refinement; sized
// for the small graphs this library targets)

namespace detail {

/// Calls `visit(map)` for every isomorphism a -> b (map[i] = image of i),
/// stopping early when visit returns false. Returns false if stopped.
template <class Visit>
bool for_each_isomorphism(const Graph& a, const Graph& b, Visit&& visit) {
  const int n = a.order();
  if (n != b.order() || a.size() != b.size()) return true;
  std::vector<int> da(static_cast<std::size_t>(n)), db(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    da[static_cast<std::size_t>(i)] = a.degree(i);
    db[static_cast<std::size_t>(i)] = b.degree(i);
  }
  {
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return true;
  }
  // Map vertices of `a` in BFS order so each new vertex has a mapped neighbor.
  std::vector<Vertex> order;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Vertex s = 0; s < n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    Vertex best = s;
    for (Vertex v = s; v < n; ++v)
      if (!seen[static_cast<std::size_t>(v)] && a.degree(v) > a.degree(best)) best = v;
    for (Vertex v : a.component_of(best)) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        order.push_back(v);
      }
    }
  }
  std::vector<int> map(static_cast<std::size_t>(n), -1), inv(static_cast<std::size_t>(n), -1);
  bool keep_going = true;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (!keep_going) return;
    if (k == order.size()) {
      keep_going = visit(static_cast<const std::vector<int>&>(map));
      return;
    }
    const Vertex v = order[k];
    for (Vertex w = 0; w < n && keep_going; ++w) {
      if (inv[static_cast<std::size_t>(w)] >= 0) continue;
      if (da[static_cast<std::size_t>(v)] != db[static_cast<std::size_t>(w)]) continue;
      bool ok = true;
      for (Vertex u : a.neighbors(v)) {
        int mu = map[static_cast<std::size_t>(u)];
        if (mu >= 0 && !b.adjacent(mu, w)) { ok = false; break; }
      }
      if (!ok) continue;
      // Non-edges must map to non-edges as well.
      int mapped_nbrs = 0;
      for (Vertex u : a.neighbors(v))
        if (map[static_cast<std::size_t>(u)] >= 0) ++mapped_nbrs;
      int image_nbrs = 0;
      for (Vertex x : b.neighbors(w))
        if (inv[static_cast<std::size_t>(x)] >= 0) ++image_nbrs;
      if (mapped_nbrs != image_nbrs) continue;
      map[static_cast<std::size_t>(v)] = w;
      inv[static_cast<std::size_t>(w)] = v;
      self(self, k + 1);
      map[static_cast<std::size_t>(v)] = -1;
      inv[static_cast<std::size_t>(w)] = -1;
    }
  };
  rec(rec, 0);
  return keep_going;
}

}  // namespace detail

/// An isomorphism a -> b (vertex images indexed by a's vertices), if any.
inline std::optional<std::vector<int>> find_isomorphism(const Graph& a, const Graph& b) {
  std::optional<std::vector<int>> out;
  detail::for_each_isomorphism(a, b, [&](const std::vector<int>& m) {
    out = m;
    return false;
  });
  return out;
}

inline bool isomorphic(const Graph& a, const Graph& b) { return find_isomorphism(a, b).has_value(); }

/// Automorphisms of g, up to `limit` of them; `complete` reports whether the
/// whole group was listed.
struct AutomorphismList {
  std::vector<std::vector<int>> maps;
  bool complete = true;
};

inline AutomorphismList automorphisms(const Graph& g, std::size_t limit = 100000) {
  AutomorphismList out;
  out.complete = detail::for_each_isomorphism(g, g, [&](const std::vector<int>& m) {
    out.maps.push_back(m);
    return out.maps.size() < limit;
  });
  return out;
}

}  // namespace cartgenus
