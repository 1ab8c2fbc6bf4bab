// Graph minors certified by branch sets: exact backtracking search,
// independent verification, composition, and product witnesses.
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "connectivity.hpp"
#include "graph.hpp"

namespace cartgenus {

/// Certificate that `minor` ≼ `host`: each minor vertex owns a connected,
/// pairwise-disjoint set of host vertices, and each minor edge is realized by
/// a host edge between the corresponding sets.
struct MinorWitness {
  std::vector<std::vector<Vertex>> branch_sets;  // indexed by minor vertex
  std::vector<Edge> edge_map;                    // indexed by minor edge; host endpoints
  friend bool operator==(const MinorWitness&, const MinorWitness&) = default;
};

inline bool verify_witness(const MinorWitness& w, const Graph& minor, const Graph& host) {
  if (static_cast<int>(w.branch_sets.size()) != minor.order()) return false;
  if (static_cast<int>(w.edge_map.size()) != minor.size()) return false;
  std::vector<int> owner(static_cast<std::size_t>(host.order()), -1);
  for (int m = 0; m < minor.order(); ++m) {
    const auto& bs = w.branch_sets[static_cast<std::size_t>(m)];
    if (bs.empty()) return false;
    for (Vertex x : bs) {
      if (x < 0 || x >= host.order()) return false;
      if (owner[static_cast<std::size_t>(x)] >= 0) return false;
      owner[static_cast<std::size_t>(x)] = m;
    }
  }
  for (int m = 0; m < minor.order(); ++m) {
    const auto& bs = w.branch_sets[static_cast<std::size_t>(m)];
    std::vector<char> outside(static_cast<std::size_t>(host.order()), 1);
    for (Vertex x : bs) outside[static_cast<std::size_t>(x)] = 0;
    if (host.component_of(bs.front(), &outside).size() != bs.size()) return false;
  }
  for (int k = 0; k < minor.size(); ++k) {
    const auto& me = minor.edge(k);
    const auto& he = w.edge_map[static_cast<std::size_t>(k)];
    if (he.u < 0 || he.v < 0 || he.u >= host.order() || he.v >= host.order()) return false;
    if (!host.adjacent(he.u, he.v)) return false;
    int a = owner[static_cast<std::size_t>(he.u)];
    int b = owner[static_cast<std::size_t>(he.v)];
    if (!((a == me.u && b == me.v) || (a == me.v && b == me.u))) return false;
  }
  return true;
}

/// Witness for G ≼ G.
inline MinorWitness identity_witness(const Graph& g) {
  MinorWitness w;
  for (Vertex v = 0; v < g.order(); ++v) w.branch_sets.push_back({v});
  w.edge_map = g.edges();
  return w;
}

/// Given A ≼ B (ab) and B ≼ C (bc), a witness for A ≼ C.
inline MinorWitness compose_witness(const MinorWitness& ab, const MinorWitness& bc, const Graph& b) {
  MinorWitness out;
  for (const auto& set : ab.branch_sets) {
    std::vector<Vertex> merged;
    for (Vertex x : set) {
      const auto& inner = bc.branch_sets.at(static_cast<std::size_t>(x));
      merged.insert(merged.end(), inner.begin(), inner.end());
    }
    std::sort(merged.begin(), merged.end());
    out.branch_sets.push_back(std::move(merged));
  }
  for (const auto& e : ab.edge_map) {
    int k = b.edge_index(e.u, e.v);
    if (k < 0) throw GraphError("compose_witness: edge map does not match B");
    Edge he = bc.edge_map.at(static_cast<std::size_t>(k));
    out.edge_map.push_back(he);
  }
  return out;
}

namespace detail {

inline MinorWitness product_witness_impl(const MinorWitness& wg, const MinorWitness& wh, const Product& minor,
                                         const Product& host) {
  MinorWitness out;
  out.branch_sets.resize(static_cast<std::size_t>(minor.graph.order()));
  for (Vertex mv = 0; mv < minor.graph.order(); ++mv) {
    const auto& c = minor.coords[static_cast<std::size_t>(mv)];
    auto& bs = out.branch_sets[static_cast<std::size_t>(mv)];
    for (Vertex y : wh.branch_sets.at(static_cast<std::size_t>(c.h_part)))
      for (Vertex x : wg.branch_sets.at(static_cast<std::size_t>(c.g_part))) bs.push_back(host.vertex(x, y));
    std::sort(bs.begin(), bs.end());
  }
  for (const auto& me : minor.graph.edges()) {
    const auto& a = minor.coords[static_cast<std::size_t>(me.u)];
    const auto& b = minor.coords[static_cast<std::size_t>(me.v)];
    if (a.h_part == b.h_part) {
      // Fiber edge: realize the G'-edge inside one G-fiber over H'-vertex a.h_part.
      int k = minor.left.edge_index(a.g_part, b.g_part);
      Edge ge = wg.edge_map.at(static_cast<std::size_t>(k));
      Vertex y = wh.branch_sets.at(static_cast<std::size_t>(a.h_part)).front();
      out.edge_map.push_back({host.vertex(ge.u, y), host.vertex(ge.v, y)});
    } else {
      int k = minor.right.edge_index(a.h_part, b.h_part);
      Edge he = wh.edge_map.at(static_cast<std::size_t>(k));
      Vertex x = wg.branch_sets.at(static_cast<std::size_t>(a.g_part)).front();
      out.edge_map.push_back({host.vertex(x, he.u), host.vertex(x, he.v)});
    }
  }
  return out;
}

}  // namespace detail

/// Witness for G'□H' ≼ G□H from witnesses G' ≼ G and H' ≼ H. Each branch set
/// is the product of the factor branch sets, which is what repeating the
/// factor's deletions and contractions in every fiber produces: a deleted
/// edge or vertex of G vanishes from each G-fiber, and a contracted G-edge is
/// contracted in every G-fiber (symmetrically for H).
inline MinorWitness product_minor_witness(const MinorWitness& wg, const MinorWitness& wh, const Product& minor,
                                          const Product& host) {
  if (!verify_witness(wg, minor.left, host.left))
    throw GraphError("product_minor_witness: first-factor witness does not verify");
  if (!verify_witness(wh, minor.right, host.right))
    throw GraphError("product_minor_witness: second-factor witness does not verify");
  return detail::product_witness_impl(wg, wh, minor, host);
}

// ---------------------------------------------------------------------------
// Search

enum class MinorVerdict { found, none, budget_exhausted };

struct MinorResult {
  MinorVerdict verdict = MinorVerdict::none;
  std::optional<MinorWitness> witness;
  std::uint64_t nodes = 0;
};

struct MinorBudget {
  std::uint64_t max_nodes = 50'000'000;
  std::chrono::milliseconds wall{std::chrono::minutes(5)};
};

namespace detail {

class MinorSearch {
 public:
  MinorSearch(const Graph& minor, const Graph& host, MinorBudget budget)
      : m_(minor), h_(host), budget_(budget), start_(std::chrono::steady_clock::now()) {
    for (Vertex v = 0; v < m_.order(); ++v) order_.push_back(v);
    // Descending degree, ties by index; then pull each vertex's placed
    // neighbors forward where possible so adjacency constraints bite early.
    std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) { return m_.degree(a) > m_.degree(b); });
    std::vector<Vertex> bfs;
    std::vector<char> taken(static_cast<std::size_t>(m_.order()), 0);
    for (Vertex root : order_) {
      if (taken[static_cast<std::size_t>(root)]) continue;
      taken[static_cast<std::size_t>(root)] = 1;
      bfs.push_back(root);
      for (std::size_t i = bfs.size() - 1; i < bfs.size(); ++i) {
        std::vector<Vertex> next;
        for (Vertex w : m_.neighbors(bfs[i]))
          if (!taken[static_cast<std::size_t>(w)]) next.push_back(w);
        std::stable_sort(next.begin(), next.end(), [&](Vertex a, Vertex b) { return m_.degree(a) > m_.degree(b); });
        for (Vertex w : next) {
          taken[static_cast<std::size_t>(w)] = 1;
          bfs.push_back(w);
        }
      }
    }
    order_ = bfs;
    owner_.assign(static_cast<std::size_t>(h_.order()), -1);
    sets_.assign(static_cast<std::size_t>(m_.order()), {});
  }

  MinorResult run() {
    MinorResult r;
    if (m_.order() > h_.order() || m_.size() > h_.size()) {
      r.verdict = MinorVerdict::none;
      return r;
    }
    if (m_.order() == 0) {
      r.verdict = MinorVerdict::found;
      r.witness = MinorWitness{};
      return r;
    }
    bool found = place(0);
    r.nodes = nodes_;
    if (found) {
      r.verdict = MinorVerdict::found;
      r.witness = build_witness();
    } else {
      r.verdict = exhausted_ ? MinorVerdict::budget_exhausted : MinorVerdict::none;
    }
    return r;
  }

 private:
  bool out_of_budget() {
    if (exhausted_) return true;
    if (nodes_ > budget_.max_nodes ||
        ((nodes_ & 1023) == 0 && std::chrono::steady_clock::now() - start_ > budget_.wall))
      exhausted_ = true;
    return exhausted_;
  }

  int free_count() const {
    return static_cast<int>(std::count(owner_.begin(), owner_.end(), -1));
  }

  // Is candidate set S adjacent to the placed branch set of minor vertex w?
  bool touches(const std::vector<Vertex>& s, Vertex w) const {
    for (Vertex x : s)
      for (Vertex y : h_.neighbors(x))
        if (owner_[static_cast<std::size_t>(y)] == w) return true;
    return false;
  }

  bool feasible(Vertex mv, const std::vector<Vertex>& s) const {
    for (Vertex w : m_.neighbors(mv))
      if (!sets_[static_cast<std::size_t>(w)].empty() && !touches(s, w)) return false;
    // Unplaced minor neighbors each need a distinct free host vertex next to S.
    int unplaced = 0;
    for (Vertex w : m_.neighbors(mv))
      if (sets_[static_cast<std::size_t>(w)].empty()) ++unplaced;
    if (unplaced > 0) {
      std::vector<char> in_s(static_cast<std::size_t>(h_.order()), 0);
      for (Vertex x : s) in_s[static_cast<std::size_t>(x)] = 1;
      std::vector<char> mark(static_cast<std::size_t>(h_.order()), 0);
      int boundary = 0;
      for (Vertex x : s)
        for (Vertex y : h_.neighbors(x))
          if (!in_s[static_cast<std::size_t>(y)] && owner_[static_cast<std::size_t>(y)] < 0 &&
              !mark[static_cast<std::size_t>(y)]) {
            mark[static_cast<std::size_t>(y)] = 1;
            ++boundary;
          }
      if (boundary < unplaced) return false;
    }
    return true;
  }

  // Connected subsets of free host vertices whose minimum element is `root`,
  // in increasing size up to `max_size`, each exactly once.
  template <class Fn>
  bool for_each_connected_set(Vertex root, int max_size, Fn&& fn) {
    std::vector<std::vector<Vertex>> level{{root}};
    for (int size = 1; size <= max_size && !level.empty(); ++size) {
      for (const auto& set : level) {
        ++nodes_;
        if (out_of_budget()) return false;
        if (fn(set)) return true;
      }
      if (size == max_size) break;
      std::vector<std::vector<Vertex>> next;
      std::vector<char> in(static_cast<std::size_t>(h_.order()), 0);
      for (const auto& set : level) {
        for (Vertex x : set) in[static_cast<std::size_t>(x)] = 1;
        for (Vertex x : set)
          for (Vertex y : h_.neighbors(x)) {
            if (y <= root || in[static_cast<std::size_t>(y)] || owner_[static_cast<std::size_t>(y)] >= 0) continue;
            auto grown = set;
            grown.insert(std::upper_bound(grown.begin(), grown.end(), y), y);
            next.push_back(std::move(grown));
          }
        for (Vertex x : set) in[static_cast<std::size_t>(x)] = 0;
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      level = std::move(next);
    }
    return false;
  }

  bool place(std::size_t k) {
    if (k == order_.size()) return true;
    if (out_of_budget()) return false;
    const Vertex mv = order_[k];
    const int remaining_after = static_cast<int>(order_.size() - k - 1);
    const int max_size = free_count() - remaining_after;
    if (max_size < 1) return false;
    for (Vertex root = 0; root < h_.order(); ++root) {
      if (owner_[static_cast<std::size_t>(root)] >= 0) continue;
      if (h_.degree(root) == 0 && m_.degree(mv) > 0) continue;
      bool hit = for_each_connected_set(root, max_size, [&](const std::vector<Vertex>& s) {
        if (!feasible(mv, s)) return false;
        for (Vertex x : s) owner_[static_cast<std::size_t>(x)] = mv;
        sets_[static_cast<std::size_t>(mv)] = s;
        if (place(k + 1)) return true;
        for (Vertex x : s) owner_[static_cast<std::size_t>(x)] = -1;
        sets_[static_cast<std::size_t>(mv)].clear();
        return false;
      });
      if (hit) return true;
      if (exhausted_) return false;
    }
    return false;
  }

  MinorWitness build_witness() const {
    MinorWitness w;
    w.branch_sets = sets_;
    for (const auto& e : m_.edges()) {
      Edge he{-1, -1};
      for (Vertex x : sets_[static_cast<std::size_t>(e.u)]) {
        for (Vertex y : h_.neighbors(x))
          if (owner_[static_cast<std::size_t>(y)] == e.v) {
            he = {x, y};
            break;
          }
        if (he.u >= 0) break;
      }
      w.edge_map.push_back(he);
    }
    return w;
  }

  const Graph& m_;
  const Graph& h_;
  MinorBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::vector<Vertex> order_;
  std::vector<int> owner_;
  std::vector<std::vector<Vertex>> sets_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace detail

/// Exact minor test. A "none" verdict is a complete refutation; budget
/// exhaustion is reported separately and never as "none".
inline MinorResult is_minor(const Graph& minor, const Graph& host, MinorBudget budget = {}) {
  return detail::MinorSearch(minor, host, budget).run();
}

/// K4 witness for a 3-connected graph (every such graph has one).
inline MinorResult find_k4_minor(const Graph& g, MinorBudget budget = {}) {
  if (vertex_connectivity(g) < 3) throw GraphError("find_k4_minor: input is not 3-connected");
  return is_minor(complete_graph(4), g, budget);
}

// ---------------------------------------------------------------------------
// JSON: {"branch_sets": {minor label: [host labels]}, "edge_map": {"u|v": [x, y]}}

inline nlohmann::json witness_to_json(const MinorWitness& w, const Graph& minor, const Graph& host) {
  nlohmann::json bs = nlohmann::json::object();
  for (Vertex v = 0; v < minor.order(); ++v) {
    auto arr = nlohmann::json::array();
    for (Vertex x : w.branch_sets.at(static_cast<std::size_t>(v))) arr.push_back(host.label(x));
    bs[minor.label(v)] = std::move(arr);
  }
  nlohmann::json em = nlohmann::json::object();
  for (int k = 0; k < minor.size(); ++k) {
    const auto& e = minor.edge(k);
    const auto& he = w.edge_map.at(static_cast<std::size_t>(k));
    em[minor.label(e.u) + "|" + minor.label(e.v)] = {host.label(he.u), host.label(he.v)};
  }
  return {{"branch_sets", std::move(bs)}, {"edge_map", std::move(em)}};
}

inline MinorWitness witness_from_json(const nlohmann::json& j, const Graph& minor, const Graph& host) {
  MinorWitness w;
  w.branch_sets.resize(static_cast<std::size_t>(minor.order()));
  for (Vertex v = 0; v < minor.order(); ++v)
    for (const auto& x : j.at("branch_sets").at(minor.label(v)))
      w.branch_sets[static_cast<std::size_t>(v)].push_back(host.at(x.get<std::string>()));
  for (const auto& e : minor.edges()) {
    const auto& pair = j.at("edge_map").at(minor.label(e.u) + "|" + minor.label(e.v));
    w.edge_map.push_back({host.at(pair.at(0).get<std::string>()), host.at(pair.at(1).get<std::string>())});
  }
  return w;
}

}  // namespace cartgenus
