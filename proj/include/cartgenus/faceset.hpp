// Face-distribution analysis for hypothetical embeddings of products layered
// by a path: feasible face sets, triangle caps, cycle taxonomy, two-factors,
// and a staged refuter for individual face distributions.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "graph.hpp"
#include "rotation.hpp"

namespace cartgenus {

// ---------------------------------------------------------------------------
// Face distributions

struct FaceDistribution {
  std::map<int, int> counts;  // face length -> number of faces; no zero entries

  int at(int len) const {
    auto it = counts.find(len);
    return it == counts.end() ? 0 : it->second;
  }
  int face_count() const {
    int s = 0;
    for (auto [l, c] : counts) s += c;
    return s;
  }
  int dart_sum() const {
    int s = 0;
    for (auto [l, c] : counts) s += l * c;
    return s;
  }
  int max_length() const { return counts.empty() ? 0 : counts.rbegin()->first; }
  std::string str() const {
    std::string s;
    for (auto [l, c] : counts) s += (s.empty() ? "" : " ") + ("f" + std::to_string(l) + "=" + std::to_string(c));
    return s;
  }
  friend bool operator==(const FaceDistribution&, const FaceDistribution&) = default;
};

/// Traced face lengths of an embedding.
inline FaceDistribution distribution_of(const std::vector<Face>& faces) {
  FaceDistribution fd;
  for (const auto& f : faces) ++fd.counts[static_cast<int>(f.size())];
  return fd;
}

/// Every {f_i} with f_i = 0 below the girth, sum f_i = F = E - V + 2 - 2*genus,
/// sum i*f_i = 2E and f_girth <= cap, in lexicographic order of
/// (f_girth, f_girth+1, ...).
inline std::vector<FaceDistribution> face_distributions(int v, int e, int genus, int girth_value,
                                                        std::optional<int> triangle_cap = std::nullopt) {
  const int f = e - v + 2 - 2 * genus;
  if (f < 1) throw GraphError("face_distributions: Euler formula leaves no faces (F = " + std::to_string(f) + ")");
  if (girth_value < 3) throw GraphError("face_distributions: girth must be at least 3");
  const long excess = 2L * e - static_cast<long>(girth_value) * f;
  std::vector<std::vector<int>> keys;
  if (excess < 0) return {};
  // Partitions of the excess into at most F parts; a part p is a face of
  // length girth + p.
  std::vector<int> parts;
  constexpr std::size_t limit = 2'000'000;
  auto rec = [&](auto&& self, long remaining, int maxpart) -> void {
    if (remaining == 0) {
      const int k = static_cast<int>(parts.size());
      const int fg = f - k;
      if (triangle_cap && fg > *triangle_cap) return;
      std::vector<int> key(static_cast<std::size_t>(excess) + 1, 0);
      key[0] = fg;
      for (int p : parts) ++key[static_cast<std::size_t>(p)];
      keys.push_back(std::move(key));
      if (keys.size() > limit) throw GraphError("face_distributions: too many solutions");
      return;
    }
    if (static_cast<int>(parts.size()) >= f) return;
    for (int p = static_cast<int>(std::min<long>(maxpart, remaining)); p >= 1; --p) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  rec(rec, excess, static_cast<int>(excess));
  std::sort(keys.begin(), keys.end());
  std::vector<FaceDistribution> out;
  for (const auto& key : keys) {
    FaceDistribution fd;
    for (std::size_t i = 0; i < key.size(); ++i)
      if (key[i] > 0) fd.counts[girth_value + static_cast<int>(i)] = key[i];
    out.push_back(std::move(fd));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fibers and triangle caps

namespace detail {

/// Upper bound on triangular faces inside one fiber: a K4 fiber whose
/// vertices all carry an edge leaving the fiber can show at most two of its
/// triangles (three would close a disk around their common vertex).
inline int fiber_triangle_cap(const Graph& fiber, bool every_vertex_leaves) {
  const int t = static_cast<int>(triangles(fiber).size());
  if (fiber.order() == 4 && fiber.is_complete() && every_vertex_leaves) return 2;
  return t;
}

}  // namespace detail

/// min(#3-cycles, sum of per-fiber caps) over both fiber families.
inline int triangle_cap(const Product& p) {
  const int total = static_cast<int>(triangles(p.graph).size());
  int sum = 0;
  // Copies of the first factor, one per vertex of the second; their vertices
  // leave the fiber whenever the second factor has an edge at that vertex.
  for (Vertex h = 0; h < p.right.order(); ++h)
    sum += detail::fiber_triangle_cap(p.left, p.right.degree(h) > 0);
  for (Vertex g = 0; g < p.left.order(); ++g) sum += detail::fiber_triangle_cap(p.right, p.left.degree(g) > 0);
  return std::min(total, sum);
}

// ---------------------------------------------------------------------------
// Cycles and signatures

/// Simple cycles of the given length, each once: starting at its smallest
/// vertex, second vertex smaller than the last.
inline std::vector<std::vector<Vertex>> simple_cycles(const Graph& g, int length) {
  std::vector<std::vector<Vertex>> out;
  if (length < 3) return out;
  std::vector<Vertex> path;
  std::vector<char> on(static_cast<std::size_t>(g.order()), 0);
  auto rec = [&](auto&& self, Vertex s) -> void {
    const Vertex x = path.back();
    if (static_cast<int>(path.size()) == length) {
      if (g.adjacent(x, s) && path[1] < path.back()) out.push_back(path);
      return;
    }
    for (Vertex w : g.neighbors(x)) {
      if (w <= s || on[static_cast<std::size_t>(w)]) continue;
      on[static_cast<std::size_t>(w)] = 1;
      path.push_back(w);
      self(self, s);
      path.pop_back();
      on[static_cast<std::size_t>(w)] = 0;
    }
  };
  for (Vertex s = 0; s < g.order(); ++s) {
    path = {s};
    on[static_cast<std::size_t>(s)] = 1;
    rec(rec, s);
    on[static_cast<std::size_t>(s)] = 0;
  }
  return out;
}

/// Sorted multiset of edge classes.
using CycleSignature = std::vector<EdgeClass>;

inline std::string signature_string(const CycleSignature& sig) {
  std::map<EdgeClass, int> m;
  for (const auto& c : sig) ++m[c];
  std::string s;
  for (const auto& [c, k] : m) s += (s.empty() ? "" : " ") + c.str() + "x" + std::to_string(k);
  return s;
}

namespace detail {

inline CycleSignature raw_signature(const Product& p, const std::vector<Vertex>& cyc) {
  CycleSignature sig;
  for (std::size_t i = 0; i < cyc.size(); ++i)
    sig.push_back(p.edge_class(p.graph.edge_index(cyc[i], cyc[(i + 1) % cyc.size()])));
  std::sort(sig.begin(), sig.end());
  return sig;
}

/// Images of edge classes under the automorphisms of the second factor.
inline std::vector<std::function<EdgeClass(const EdgeClass&)>> class_symmetries(const Product& p) {
  std::vector<std::function<EdgeClass(const EdgeClass&)>> out;
  const Graph& h = p.right;
  for (const auto& m : automorphisms(h, 5000).maps) {
    std::vector<int> emap(static_cast<std::size_t>(h.size()));
    for (int e = 0; e < h.size(); ++e)
      emap[static_cast<std::size_t>(e)] =
          h.edge_index(m[static_cast<std::size_t>(h.edge(e).u)], m[static_cast<std::size_t>(h.edge(e).v)]);
    out.push_back([m, emap](const EdgeClass& c) {
      return c.is_connector() ? EdgeClass{c.kind, emap[static_cast<std::size_t>(c.index)]}
                              : EdgeClass{c.kind, m[static_cast<std::size_t>(c.index)]};
    });
  }
  return out;
}

inline CycleSignature canonical_signature(const CycleSignature& sig,
                                          const std::vector<std::function<EdgeClass(const EdgeClass&)>>& syms) {
  CycleSignature best = sig;
  for (const auto& s : syms) {
    CycleSignature img;
    for (const auto& c : sig) img.push_back(s(c));
    std::sort(img.begin(), img.end());
    best = std::min(best, img);
  }
  return best;
}

}  // namespace detail

struct SignatureCount {
  CycleSignature signature;
  int count = 0;
};

/// Simple cycles of one length bucketed by signature, identified up to the
/// symmetries of the second factor (layer reflection for paths).
inline std::vector<SignatureCount> classify_cycles(const Product& p, int length, bool require_connector) {
  const auto syms = detail::class_symmetries(p);
  std::map<CycleSignature, int> buckets;
  for (const auto& cyc : simple_cycles(p.graph, length)) {
    auto sig = detail::raw_signature(p, cyc);
    if (require_connector && std::none_of(sig.begin(), sig.end(), [](const EdgeClass& c) { return c.is_connector(); }))
      continue;
    ++buckets[detail::canonical_signature(sig, syms)];
  }
  std::vector<SignatureCount> out;
  for (auto& [s, c] : buckets) out.push_back({s, c});
  return out;
}

// ---------------------------------------------------------------------------
// Two-factors

/// Vertex-disjoint cycles covering every vertex. Cycles are listed from their
/// smallest vertex toward its smaller neighbor, and sorted.
struct TwoFactor {
  std::vector<std::vector<Vertex>> cycles;
  friend bool operator==(const TwoFactor&, const TwoFactor&) = default;
  friend auto operator<=>(const TwoFactor&, const TwoFactor&) = default;
};

namespace detail {

inline std::vector<Vertex> canonical_cycle(std::vector<Vertex> c) {
  std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
  if (c.size() > 2 && c.back() < c[1]) std::reverse(c.begin() + 1, c.end());
  return c;
}

}  // namespace detail

inline std::vector<TwoFactor> enumerate_two_factors(const Graph& g) {
  const int n = g.order();
  const int m = g.size();
  std::vector<TwoFactor> out;
  if (n < 3) return out;
  std::vector<int> deg(static_cast<std::size_t>(n), 0), left(static_cast<std::size_t>(n), 0);
  for (const auto& e : g.edges()) {
    ++left[static_cast<std::size_t>(e.u)];
    ++left[static_cast<std::size_t>(e.v)];
  }
  std::vector<int> chosen;
  auto emit = [&] {
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    for (int e : chosen) {
      adj[static_cast<std::size_t>(g.edge(e).u)].push_back(g.edge(e).v);
      adj[static_cast<std::size_t>(g.edge(e).v)].push_back(g.edge(e).u);
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    TwoFactor tf;
    for (Vertex s = 0; s < n; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      std::vector<Vertex> cyc{s};
      seen[static_cast<std::size_t>(s)] = 1;
      Vertex prev = s, cur = adj[static_cast<std::size_t>(s)][0];
      while (cur != s) {
        cyc.push_back(cur);
        seen[static_cast<std::size_t>(cur)] = 1;
        const auto& a = adj[static_cast<std::size_t>(cur)];
        Vertex nx = a[0] == prev ? a[1] : a[0];
        prev = cur;
        cur = nx;
      }
      tf.cycles.push_back(detail::canonical_cycle(std::move(cyc)));
    }
    std::sort(tf.cycles.begin(), tf.cycles.end());
    out.push_back(std::move(tf));
  };
  auto rec = [&](auto&& self, int e) -> void {
    if (e == m) {
      if (std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; })) emit();
      return;
    }
    const Vertex u = g.edge(e).u, v = g.edge(e).v;
    auto& du = deg[static_cast<std::size_t>(u)];
    auto& dv = deg[static_cast<std::size_t>(v)];
    auto& lu = left[static_cast<std::size_t>(u)];
    auto& lv = left[static_cast<std::size_t>(v)];
    --lu;
    --lv;
    if (du < 2 && dv < 2) {
      ++du;
      ++dv;
      chosen.push_back(e);
      self(self, e + 1);
      chosen.pop_back();
      --du;
      --dv;
    }
    // Skipping e must leave both endpoints enough edges to reach degree two.
    if (du + lu >= 2 && dv + lv >= 2) self(self, e + 1);
    ++lu;
    ++lv;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Mixed-face feasibility

/// One violated (or decisive) constraint, with both sides evaluated.
struct Reason {
  std::string constraint;
  std::string detail;
  long lhs = 0;
  std::string relation;
  long rhs = 0;
};

enum class Feasibility { infeasible, feasible, undecided };

inline std::string to_string(Feasibility f) {
  switch (f) {
    case Feasibility::infeasible: return "infeasible";
    case Feasibility::feasible: return "feasible";
    case Feasibility::undecided: return "undecided";
  }
  return "?";
}

/// One sub-case examined after the counting constraints passed.
struct CaseReport {
  std::string label;
  std::map<std::string, int> classes;  // face class -> count
  std::vector<std::vector<std::string>> two_factor;  // present when the case fixes one
  Feasibility verdict = Feasibility::undecided;
  std::uint64_t nodes = 0;
};

struct FeasibilityReport {
  Feasibility verdict = Feasibility::undecided;
  /// "euler", "counting" or "cover_search" for refutations; empty otherwise.
  std::string closed_by;
  std::vector<Reason> reasons;
  std::vector<CaseReport> cases;
  /// An embedding realizing the distribution, when the cover search finds one.
  std::optional<RotationSystem> witness;
};

struct FeasibilityOptions {
  std::uint64_t cover_nodes = 20'000'000;  // per case
  int max_face_length = 7;
};

namespace detail {

/// A class of faces: mixed faces by raw signature, the others by length and
/// layer (a face without connector darts stays inside one layer).
struct FaceClass {
  int length = 0;
  bool mixed = false;
  int layer = -1;
  CycleSignature signature;
  std::vector<int> conn;  // connector edges per edge of the second factor
  std::vector<int> fib;   // fiber edges per layer
  std::string name;
};

struct ClosedWalk {
  std::vector<Dart> darts;
  int cls = -1;
};

/// Closed walks of length 3..max_len that could bound a face: every dart at
/// most once, no immediate reversal except at degree-one vertices. Listed
/// once per rotation (starting at the smallest dart).
inline std::vector<std::vector<Dart>> facial_walk_candidates(const Graph& g, int max_len) {
  std::vector<std::vector<Dart>> out;
  const int d = dart_count(g);
  std::vector<std::vector<Dart>> from(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v) from[static_cast<std::size_t>(v)] = darts_at(g, v);
  std::vector<char> used(static_cast<std::size_t>(d), 0);
  std::vector<Dart> walk;
  auto step_ok = [&](Dart a, Dart b) { return b != reverse(a) || g.degree(dart_head(g, a)) == 1; };
  auto rec = [&](auto&& self, Dart s) -> void {
    const Dart last = walk.back();
    const Vertex x = dart_head(g, last);
    if (x == dart_tail(g, s) && walk.size() >= 3 && step_ok(last, s)) out.push_back(walk);
    if (static_cast<int>(walk.size()) == max_len) return;
    for (Dart b : from[static_cast<std::size_t>(x)]) {
      if (b <= s || used[static_cast<std::size_t>(b)] || !step_ok(last, b)) continue;
      used[static_cast<std::size_t>(b)] = 1;
      walk.push_back(b);
      self(self, s);
      walk.pop_back();
      used[static_cast<std::size_t>(b)] = 0;
    }
  };
  for (Dart s = 0; s < d; ++s) {
    walk = {s};
    used[static_cast<std::size_t>(s)] = 1;
    rec(rec, s);
    used[static_cast<std::size_t>(s)] = 0;
  }
  return out;
}

/// Exact cover of the darts by candidate walks with per-class quotas, such
/// that the corners at every vertex chain into a single rotation cycle.
/// Success yields a rotation system whose faces are exactly the chosen walks.
class CoverSearch {
 public:
  CoverSearch(const Graph& g, const std::vector<ClosedWalk>& walks, std::vector<int> quota, std::uint64_t budget)
      : g_(g), walks_(walks), quota_(std::move(quota)), budget_(budget) {
    const int d = dart_count(g);
    succ_.assign(static_cast<std::size_t>(d), -1);
    pred_.assign(static_cast<std::size_t>(d), -1);
    covered_.assign(static_cast<std::size_t>(d), 0);
    uncovered_ = d;
    by_dart_.resize(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < walks_.size(); ++i)
      for (Dart x : walks_[i].darts) by_dart_[static_cast<std::size_t>(x)].push_back(static_cast<int>(i));
    tail_.resize(static_cast<std::size_t>(d));
    for (Dart x = 0; x < d; ++x) tail_[static_cast<std::size_t>(x)] = dart_tail(g, x);
  }

  Feasibility run() {
    const bool ok = rec();
    if (ok) return Feasibility::feasible;
    return out_of_budget_ ? Feasibility::undecided : Feasibility::infeasible;
  }
  std::uint64_t nodes() const { return nodes_; }

  RotationSystem rotation() const {
    RotationSystem rs;
    rs.order.resize(static_cast<std::size_t>(g_.order()));
    for (Vertex v = 0; v < g_.order(); ++v) {
      auto ds = darts_at(g_, v);
      if (ds.empty()) continue;
      Dart x = ds[0];
      for (std::size_t i = 0; i < ds.size(); ++i) {
        rs.order[static_cast<std::size_t>(v)].push_back(x);
        x = succ_[static_cast<std::size_t>(x)];
      }
    }
    return rs;
  }

 private:
  bool admissible(Dart a, Dart b) const {
    if (succ_[static_cast<std::size_t>(a)] >= 0 || pred_[static_cast<std::size_t>(b)] >= 0) return false;
    int len = 1;
    Dart w = b;
    while (succ_[static_cast<std::size_t>(w)] >= 0) {
      w = succ_[static_cast<std::size_t>(w)];
      ++len;
      if (w == b) return false;
    }
    if (w != a) return a != b;
    return len == g_.degree(tail_[static_cast<std::size_t>(a)]);
  }

  bool placeable(const ClosedWalk& w) const {
    if (quota_[static_cast<std::size_t>(w.cls)] <= 0) return false;
    for (Dart x : w.darts)
      if (covered_[static_cast<std::size_t>(x)]) return false;
    return true;
  }

  /// Place walk i; returns the number of links set, or -1 (nothing changed).
  int place(int i) {
    const auto& w = walks_[static_cast<std::size_t>(i)];
    int set = 0;
    const std::size_t k = w.darts.size();
    for (std::size_t j = 0; j < k; ++j) {
      const Dart a = reverse(w.darts[j]);
      const Dart b = w.darts[(j + 1) % k];
      if (!admissible(a, b)) {
        unplace_links(i, set);
        return -1;
      }
      succ_[static_cast<std::size_t>(a)] = b;
      pred_[static_cast<std::size_t>(b)] = a;
      ++set;
    }
    for (Dart x : w.darts) covered_[static_cast<std::size_t>(x)] = 1;
    uncovered_ -= static_cast<int>(k);
    --quota_[static_cast<std::size_t>(w.cls)];
    return set;
  }
  void unplace_links(int i, int set) {
    const auto& w = walks_[static_cast<std::size_t>(i)];
    for (int j = set - 1; j >= 0; --j) {
      const Dart a = reverse(w.darts[static_cast<std::size_t>(j)]);
      pred_[static_cast<std::size_t>(succ_[static_cast<std::size_t>(a)])] = -1;
      succ_[static_cast<std::size_t>(a)] = -1;
    }
  }
  void unplace(int i) {
    const auto& w = walks_[static_cast<std::size_t>(i)];
    unplace_links(i, static_cast<int>(w.darts.size()));
    for (Dart x : w.darts) covered_[static_cast<std::size_t>(x)] = 0;
    uncovered_ += static_cast<int>(w.darts.size());
    ++quota_[static_cast<std::size_t>(w.cls)];
  }

  bool rec() {
    if (uncovered_ == 0) return true;
    if (++nodes_ > budget_) {
      out_of_budget_ = true;
      return false;
    }
    // Branch on the uncovered dart with the fewest placeable walks.
    int best = -1;
    std::size_t best_k = static_cast<std::size_t>(-1);
    for (Dart x = 0; x < static_cast<Dart>(covered_.size()); ++x) {
      if (covered_[static_cast<std::size_t>(x)]) continue;
      std::size_t k = 0;
      for (int i : by_dart_[static_cast<std::size_t>(x)])
        if (placeable(walks_[static_cast<std::size_t>(i)])) ++k;
      if (k < best_k) {
        best_k = k;
        best = x;
        if (k == 0) return false;
      }
    }
    for (int i : by_dart_[static_cast<std::size_t>(best)]) {
      if (!placeable(walks_[static_cast<std::size_t>(i)])) continue;
      if (place(i) < 0) continue;
      if (rec()) return true;
      unplace(i);
      if (out_of_budget_) return false;
    }
    return false;
  }

  const Graph& g_;
  const std::vector<ClosedWalk>& walks_;
  std::vector<int> quota_;
  std::uint64_t budget_;
  std::vector<Dart> succ_, pred_;
  std::vector<char> covered_;
  std::vector<Vertex> tail_;
  std::vector<std::vector<int>> by_dart_;
  int uncovered_ = 0;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
};

}  // namespace detail

/// Staged refutation of a face distribution for a product layered by a tree
/// (typically G x P_k). Stages: Euler/Fact-4 identities; face lengths that no
/// closed walk realizes; the triangle cap; connector-slot equations (each
/// connector edge borders two faces, none of them triangles); per-layer
/// fiber-slot equations; and finally, per surviving class assignment, an exact
/// cover search whose vertex links must close into single cycles.
inline FeasibilityReport mixed_face_feasibility(const Product& p, const FaceDistribution& fd,
                                                const FeasibilityOptions& opt = {}) {
  if (!p.layered_by_tree()) throw GraphError("mixed_face_feasibility: second factor must be a tree");
  FeasibilityReport rep;
  const Graph& g = p.graph;
  const int V = g.order(), E = g.size(), F = fd.face_count();
  auto refute = [&](std::string stage, Reason r) {
    rep.verdict = Feasibility::infeasible;
    rep.closed_by = std::move(stage);
    rep.reasons.push_back(std::move(r));
    return rep;
  };

  // Euler and Fact 4.
  if (fd.dart_sum() != 2 * E)
    return refute("euler", {"fact4", "sum of i*f_i must equal 2|E|", fd.dart_sum(), "==", 2L * E});
  const int chi = V - E + F;
  if (chi > 2 || (chi % 2 + 2) % 2 != 0)
    return refute("euler", {"euler_characteristic", "V - E + F must be even and at most 2", chi, "in", 2});
  for (auto [len, c] : fd.counts)
    if (len < 3) return refute("euler", {"face_length", "faces have length at least 3", len, ">=", 3});

  if (fd.max_length() > opt.max_face_length) {
    rep.reasons.push_back({"not_analyzed", "faces longer than " + std::to_string(opt.max_face_length) + " are not modeled",
                           fd.max_length(), "<=", opt.max_face_length});
    return rep;
  }

  const Graph& G = p.left;
  const Graph& H = p.right;
  const int layers = H.order();
  const int hedges = H.size();

  // Candidate walks and their classes.
  std::vector<detail::FaceClass> classes;
  std::map<std::pair<CycleSignature, int>, int> class_index;  // (signature, layer or -1)
  std::vector<detail::ClosedWalk> walks;
  for (auto& darts : detail::facial_walk_candidates(g, fd.max_length())) {
    const int len = static_cast<int>(darts.size());
    if (fd.at(len) == 0) continue;
    CycleSignature sig;
    for (Dart d : darts) sig.push_back(p.edge_class(d >> 1));
    std::sort(sig.begin(), sig.end());
    const bool mixed = std::any_of(sig.begin(), sig.end(), [](const EdgeClass& c) { return c.is_connector(); });
    const int layer = mixed ? -1 : sig.front().index;
    auto key = std::make_pair(mixed ? sig : CycleSignature{}, mixed ? -len : layer * 1000 + len);
    auto it = class_index.find(key);
    if (it == class_index.end()) {
      detail::FaceClass fc;
      fc.length = len;
      fc.mixed = mixed;
      fc.layer = layer;
      fc.signature = sig;
      fc.conn.assign(static_cast<std::size_t>(hedges), 0);
      fc.fib.assign(static_cast<std::size_t>(layers), 0);
      for (const auto& c : sig) (c.is_connector() ? fc.conn : fc.fib)[static_cast<std::size_t>(c.index)]++;
      fc.name = mixed ? "mixed " + std::to_string(len) + "-gon [" + signature_string(sig) + "]"
                      : std::to_string(len) + "-gon in layer " + std::to_string(layer);
      it = class_index.emplace(key, static_cast<int>(classes.size())).first;
      classes.push_back(std::move(fc));
    }
    walks.push_back({std::move(darts), it->second});
  }

  // Face lengths with no realizing walk.
  for (auto [len, c] : fd.counts) {
    const bool any = std::any_of(classes.begin(), classes.end(), [&](const auto& fc) { return fc.length == len; });
    if (!any)
      return refute("counting", {"length_support", "no closed walk of length " + std::to_string(len) + " exists", c,
                                 "<=", 0});
  }

  // Triangle caps per layer.
  std::vector<int> tri_cap(static_cast<std::size_t>(layers));
  int cap_sum = 0;
  for (int i = 0; i < layers; ++i) {
    tri_cap[static_cast<std::size_t>(i)] = detail::fiber_triangle_cap(G, H.degree(i) > 0);
    cap_sum += tri_cap[static_cast<std::size_t>(i)];
  }
  if (fd.at(3) > cap_sum)
    return refute("counting", {"triangle_cap", "triangular faces exceed the per-fiber caps", fd.at(3), "<=", cap_sum});

  // Connector slots, one class at a time: 2|V(G)| slots per edge of H.
  const long conn_need = 2L * G.order();
  for (int j = 0; j < hedges; ++j) {
    long mx = 0;
    for (auto [len, c] : fd.counts) {
      int best = 0;
      for (const auto& fc : classes)
        if (fc.length == len) best = std::max(best, fc.conn[static_cast<std::size_t>(j)]);
      mx += static_cast<long>(best) * c;
    }
    if (mx < conn_need)
      return refute("counting", {"connector_slots",
                                 "faces can border at most " + std::to_string(mx) + " slots of connector(" +
                                     std::to_string(j) + ")",
                                 mx, ">=", conn_need});
  }

  // Enumerate class counts meeting length totals, triangle caps and the
  // connector equations.
  const long fib_need = 2L * G.size();
  std::vector<int> lens;
  for (auto [len, c] : fd.counts) lens.push_back(len);
  std::vector<std::vector<int>> by_len(lens.size());
  for (std::size_t li = 0; li < lens.size(); ++li)
    for (std::size_t k = 0; k < classes.size(); ++k)
      if (classes[k].length == lens[li]) by_len[li].push_back(static_cast<int>(k));

  std::vector<std::vector<int>> s1;
  std::vector<int> x(classes.size(), 0);
  std::vector<long> conn_sum(static_cast<std::size_t>(hedges), 0), fib_sum(static_cast<std::size_t>(layers), 0);
  bool too_many = false;
  constexpr std::size_t kMaxSolutions = 200000;
  auto add = [&](int k, int amount) {
    x[static_cast<std::size_t>(k)] += amount;
    for (int j = 0; j < hedges; ++j) conn_sum[static_cast<std::size_t>(j)] += amount * classes[static_cast<std::size_t>(k)].conn[static_cast<std::size_t>(j)];
    for (int i = 0; i < layers; ++i) fib_sum[static_cast<std::size_t>(i)] += amount * classes[static_cast<std::size_t>(k)].fib[static_cast<std::size_t>(i)];
  };
  auto rec = [&](auto&& self, std::size_t li, std::size_t ci, int remaining) -> void {
    if (too_many) return;
    for (int j = 0; j < hedges; ++j)
      if (conn_sum[static_cast<std::size_t>(j)] > conn_need) return;
    if (li == lens.size()) {
      for (int j = 0; j < hedges; ++j)
        if (conn_sum[static_cast<std::size_t>(j)] != conn_need) return;
      s1.push_back(x);
      if (s1.size() > kMaxSolutions) too_many = true;
      return;
    }
    const auto& ks = by_len[li];
    if (ci + 1 == ks.size()) {
      const int k = ks[ci];
      const auto& fc = classes[static_cast<std::size_t>(k)];
      if (!fc.mixed && fc.length == 3 && remaining > tri_cap[static_cast<std::size_t>(fc.layer)]) return;
      add(k, remaining);
      const int next_len = li + 1 < lens.size() ? fd.at(lens[li + 1]) : 0;
      self(self, li + 1, 0, next_len);
      add(k, -remaining);
      return;
    }
    const int k = ks[ci];
    const auto& fc = classes[static_cast<std::size_t>(k)];
    int hi = remaining;
    if (!fc.mixed && fc.length == 3) hi = std::min(hi, tri_cap[static_cast<std::size_t>(fc.layer)]);
    for (int a = 0; a <= hi; ++a) {
      add(k, a);
      self(self, li, ci + 1, remaining - a);
      add(k, -a);
    }
  };
  rec(rec, 0, 0, fd.at(lens[0]));
  if (too_many) {
    rep.reasons.push_back({"not_analyzed", "too many class assignments to examine", static_cast<long>(s1.size()), "<=",
                           static_cast<long>(kMaxSolutions)});
    return rep;
  }
  if (s1.empty())
    return refute("counting", {"connector_slots", "no class counts give every connector edge exactly two face slots",
                               0, ">=", 1});

  auto layer_slots = [&](const std::vector<int>& sol, int i) {
    long s = 0;
    for (std::size_t k = 0; k < classes.size(); ++k) s += static_cast<long>(sol[k]) * classes[k].fib[static_cast<std::size_t>(i)];
    return s;
  };
  // Layers with the most connector classes first (the inner fibers of a path).
  std::vector<int> order(static_cast<std::size_t>(layers));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return H.degree(a) > H.degree(b); });
  // Impose the layer equations one at a time; the first that empties the
  // solution set is reported with the range it could still reach.
  std::vector<std::vector<int>> cases = s1;
  for (int i : order) {
    long lo = -1, hi = -1;
    std::vector<std::vector<int>> kept;
    for (const auto& sol : cases) {
      const long s = layer_slots(sol, i);
      lo = lo < 0 ? s : std::min(lo, s);
      hi = std::max(hi, s);
      if (s == fib_need) kept.push_back(sol);
    }
    if (!kept.empty()) {
      cases = std::move(kept);
      continue;
    }
    const std::string where = "layer " + std::to_string(i) + " fiber edges";
    if (lo > fib_need)
      return refute("counting", {"fiber_slots", where + " oversubscribed: at least " + std::to_string(lo) + " slots used", lo, "<=", fib_need});
    if (hi < fib_need)
      return refute("counting", {"fiber_slots", where + " undersubscribed: at most " + std::to_string(hi) + " slots used", hi, ">=", fib_need});
    return refute("counting", {"fiber_slots", where + ": no assignment uses exactly the available slots (range " +
                                                  std::to_string(lo) + ".." + std::to_string(hi) + ")",
                               lo, "==", fib_need});
  }

  // Exact cover per case. For two layers with only mixed quadrilaterals the
  // mixed faces sit over a two-factor of G, so each two-factor is a sub-case.
  const std::vector<TwoFactor> tfs = layers == 2 ? enumerate_two_factors(G) : std::vector<TwoFactor>{};
  bool all_infeasible = true;
  for (const auto& sol : cases) {
    std::map<std::string, int> named;
    bool only_mixed_quads = true;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      if (sol[k] == 0) continue;
      named[classes[k].name] = sol[k];
      if (classes[k].mixed && classes[k].length != 4) only_mixed_quads = false;
    }
    auto run_case = [&](const std::vector<detail::ClosedWalk>& ws, CaseReport cr) {
      detail::CoverSearch cs(g, ws, sol, opt.cover_nodes);
      cr.verdict = cs.run();
      cr.nodes = cs.nodes();
      if (cr.verdict == Feasibility::feasible && !rep.witness) rep.witness = cs.rotation();
      if (cr.verdict != Feasibility::infeasible) all_infeasible = false;
      rep.cases.push_back(std::move(cr));
    };
    std::string base;
    for (const auto& [nm, c] : named) base += (base.empty() ? "" : ", ") + std::to_string(c) + " x " + nm;
    if (layers == 2 && only_mixed_quads && !tfs.empty()) {
      for (const auto& tf : tfs) {
        std::set<int> tedges;
        for (const auto& cyc : tf.cycles)
          for (std::size_t i = 0; i < cyc.size(); ++i) tedges.insert(G.edge_index(cyc[i], cyc[(i + 1) % cyc.size()]));
        std::vector<detail::ClosedWalk> ws;
        for (const auto& w : walks) {
          if (!classes[static_cast<std::size_t>(w.cls)].mixed) {
            ws.push_back(w);
            continue;
          }
          // The fiber edges of a mixed quadrilateral project to one edge of G.
          bool over = true;
          for (Dart d : w.darts) {
            const auto& c = p.edge_class(d >> 1);
            if (c.is_connector()) continue;
            const Edge& e = g.edge(d >> 1);
            const int ge = G.edge_index(p.coords[static_cast<std::size_t>(e.u)].g_part,
                                        p.coords[static_cast<std::size_t>(e.v)].g_part);
            over = over && tedges.count(ge) > 0;
          }
          if (over) ws.push_back(w);
        }
        CaseReport cr;
        cr.classes = named;
        for (const auto& cyc : tf.cycles) {
          std::vector<std::string> names;
          for (Vertex v : cyc) names.push_back(G.label(v));
          cr.two_factor.push_back(std::move(names));
        }
        cr.label = base + "; mixed faces over a two-factor";
        run_case(ws, std::move(cr));
      }
    } else {
      CaseReport cr;
      cr.classes = named;
      cr.label = base;
      run_case(walks, std::move(cr));
    }
  }
  if (all_infeasible) {
    std::uint64_t total = 0;
    for (const auto& c : rep.cases) total += c.nodes;
    return refute("cover_search",
                  {"vertex_link_cover",
                   "no choice of faces covers every dart once with single-cycle vertex links (" +
                       std::to_string(rep.cases.size()) + " cases, " + std::to_string(total) + " nodes)",
                   0, ">=", 1});
  }
  const bool any_feasible = std::any_of(rep.cases.begin(), rep.cases.end(),
                                        [](const CaseReport& c) { return c.verdict == Feasibility::feasible; });
  rep.verdict = any_feasible ? Feasibility::feasible : Feasibility::undecided;
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json distribution_to_json(const FaceDistribution& fd) {
  nlohmann::json j = nlohmann::json::object();
  for (auto [l, c] : fd.counts) j["f" + std::to_string(l)] = c;
  return j;
}

inline nlohmann::json signature_to_json(const CycleSignature& sig) {
  auto a = nlohmann::json::array();
  for (const auto& c : sig) a.push_back(c.str());
  return a;
}

inline nlohmann::json two_factor_to_json(const Graph& g, const TwoFactor& tf) {
  auto a = nlohmann::json::array();
  for (const auto& cyc : tf.cycles) {
    auto c = nlohmann::json::array();
    for (Vertex v : cyc) c.push_back(g.label(v));
    a.push_back(std::move(c));
  }
  return a;
}

inline nlohmann::json reason_to_json(const Reason& r) {
  return {{"constraint", r.constraint}, {"detail", r.detail}, {"lhs", r.lhs}, {"relation", r.relation}, {"rhs", r.rhs}};
}

inline nlohmann::json feasibility_to_json(const FeasibilityReport& rep) {
  nlohmann::json j;
  j["verdict"] = to_string(rep.verdict);
  j["closed_by"] = rep.closed_by;
  auto rs = nlohmann::json::array();
  for (const auto& r : rep.reasons) rs.push_back(reason_to_json(r));
  j["reasons"] = std::move(rs);
  auto cs = nlohmann::json::array();
  for (const auto& c : rep.cases) {
    nlohmann::json cj{{"label", c.label}, {"classes", c.classes}, {"verdict", to_string(c.verdict)}, {"nodes", c.nodes}};
    if (!c.two_factor.empty()) cj["two_factor"] = c.two_factor;
    cs.push_back(std::move(cj));
  }
  j["cases"] = std::move(cs);
  return j;
}

}  // namespace cartgenus
