// Slow reference implementations used only to cross-check the library.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include <cartgenus/graph.hpp>

namespace oracle {

using cartgenus::Edge;
using cartgenus::Graph;
using cartgenus::Vertex;

/// Product over vertices of (deg - 1)!, saturating at `cap + 1`.
inline std::uint64_t rotation_space(const Graph& g, std::uint64_t cap = UINT64_MAX - 1) {
  std::uint64_t s = 1;
  for (Vertex v = 0; v < g.order(); ++v)
    for (int k = 2; k < g.degree(v); ++k) {
      if (s > (cap + 1) / static_cast<std::uint64_t>(k)) return cap + 1;
      s *= static_cast<std::uint64_t>(k);
    }
  return s;
}

/// Calls visit(orders, faces) for every rotation system: orders[v] is the
/// cyclic dart order at v (library dart convention: 2e runs low -> high
/// endpoint) and faces the facial walks, traced here from scratch.
template <class Visit>
void for_each_rotation(const Graph& g, Visit&& visit) {
  const int n = g.order(), m = g.size();
  std::vector<std::vector<int>> perm(static_cast<std::size_t>(n));
  for (int e = 0; e < m; ++e) {
    perm[static_cast<std::size_t>(g.edge(e).u)].push_back(2 * e);
    perm[static_cast<std::size_t>(g.edge(e).v)].push_back(2 * e + 1);
  }
  for (auto& p : perm)
    if (!p.empty()) std::sort(p.begin() + 1, p.end());
  std::vector<int> succ(static_cast<std::size_t>(2 * m)), seen(static_cast<std::size_t>(2 * m));
  int stamp = 0;
  while (true) {
    for (const auto& p : perm)
      for (std::size_t i = 0; i < p.size(); ++i) succ[static_cast<std::size_t>(p[i])] = p[(i + 1) % p.size()];
    ++stamp;
    std::vector<std::vector<int>> faces;
    for (int d = 0; d < 2 * m; ++d) {
      if (seen[static_cast<std::size_t>(d)] == stamp) continue;
      faces.emplace_back();
      int x = d;
      while (seen[static_cast<std::size_t>(x)] != stamp) {
        seen[static_cast<std::size_t>(x)] = stamp;
        faces.back().push_back(x);
        x = succ[static_cast<std::size_t>(x ^ 1)];
      }
    }
    visit(static_cast<const std::vector<std::vector<int>>&>(perm), static_cast<const std::vector<std::vector<int>>&>(faces));
    // Odometer over the orders of all darts but the first at each vertex.
    int v = 0;
    for (; v < n; ++v) {
      auto& p = perm[static_cast<std::size_t>(v)];
      if (p.size() > 2 && std::next_permutation(p.begin() + 1, p.end())) break;
    }
    if (v == n) break;
  }
}

/// Number of rotation systems of each genus (connected graphs).
inline std::map<int, long> genus_histogram(const Graph& g) {
  std::map<int, long> out;
  for_each_rotation(g, [&](const auto&, const auto& faces) {
    ++out[(2 - g.order() + g.size() - static_cast<int>(faces.size())) / 2];
  });
  return out;
}

/// Minimum genus over all rotation systems.
inline int exhaustive_genus(const Graph& g) {
  if (g.size() == 0) return 0;
  return genus_histogram(g).begin()->first;
}

/// OC by brute force: some genus-0 rotation has two faces covering V.
inline bool brute_outer_cylindrical(const Graph& g) {
  bool found = false;
  for_each_rotation(g, [&](const auto&, const auto& faces) {
    if (found || 2 - g.order() + g.size() - static_cast<int>(faces.size()) != 0) return;
    for (std::size_t a = 0; a < faces.size() && !found; ++a)
      for (std::size_t b = a + 1; b < faces.size() && !found; ++b) {
        std::vector<char> cov(static_cast<std::size_t>(g.order()), 0);
        for (const auto* f : {&faces[a], &faces[b]})
          for (int d : *f) cov[static_cast<std::size_t>(d % 2 == 0 ? g.edge(d / 2).u : g.edge(d / 2).v)] = 1;
        found = std::all_of(cov.begin(), cov.end(), [](char c) { return c != 0; });
      }
  });
  return found;
}

/// Vertex connectivity by trying every vertex subset as a cut.
inline int brute_connectivity(const Graph& g) {
  const int n = g.order();
  if (g.is_complete()) return n - 1;
  int best = n - 1;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int k = __builtin_popcount(mask);
    if (k >= best || n - k < 2) continue;
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    Vertex start = -1;
    for (int v = 0; v < n; ++v) {
      removed[static_cast<std::size_t>(v)] = (mask >> v) & 1u;
      if (!removed[static_cast<std::size_t>(v)] && start < 0) start = v;
    }
    if (static_cast<int>(g.component_of(start, &removed).size()) != n - k) best = k;
  }
  return best;
}

/// Number of simple cycles of each length, by bitmask path counting: every
/// cycle is counted from its smallest vertex in both directions.
inline std::map<int, long> cycle_counts(const Graph& g) {
  const int n = g.order();
  std::map<int, long> out;
  for (int s = 0; s < n; ++s) {
    // ways[mask][v]: paths from s through exactly mask ending at v, all > s.
    std::vector<std::vector<long>> ways(1u << n, std::vector<long>(static_cast<std::size_t>(n), 0));
    ways[1u << s][static_cast<std::size_t>(s)] = 1;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (!(mask >> s & 1u) || (mask & ((1u << s) - 1))) continue;
      for (int v = 0; v < n; ++v) {
        const long w = ways[mask][static_cast<std::size_t>(v)];
        if (!w) continue;
        const int len = __builtin_popcount(mask);
        if (len >= 3 && g.adjacent(v, s)) out[len] += w;
        for (Vertex x : g.neighbors(v))
          if (!(mask >> x & 1u)) ways[mask | (1u << x)][static_cast<std::size_t>(x)] += w;
      }
    }
  }
  for (auto& [l, c] : out) c /= 2;
  return out;
}

/// Edge sets of all two-factors, by checking every n-edge subset.
inline std::set<std::vector<int>> two_factor_edge_sets(const Graph& g) {
  const int n = g.order(), m = g.size();
  std::set<std::vector<int>> out;
  if (n > m) return out;
  std::vector<int> pick(static_cast<std::size_t>(m), 0);
  std::fill(pick.end() - n, pick.end(), 1);
  do {
    std::vector<int> deg(static_cast<std::size_t>(n), 0), es;
    for (int e = 0; e < m; ++e)
      if (pick[static_cast<std::size_t>(e)]) {
        ++deg[static_cast<std::size_t>(g.edge(e).u)];
        ++deg[static_cast<std::size_t>(g.edge(e).v)];
        es.push_back(e);
      }
    if (std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; })) out.insert(es);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

/// Canonical adjacency bitstring over all vertex permutations.
inline std::vector<char> canonical_form(const Graph& g) {
  const int n = g.order();
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<char> best;
  do {
    std::vector<char> code;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) code.push_back(g.adjacent(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]) ? 1 : 0);
    if (best.empty() || code > best) best = code;
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

/// Every connected graph on `n` vertices, one per isomorphism class.
inline std::vector<Graph> connected_graphs(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.push_back({i, j});
  std::set<std::vector<char>> seen;
  std::vector<Graph> out;
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    if (static_cast<int>(__builtin_popcount(mask)) < n - 1) continue;
    std::vector<Edge> es;
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (mask >> k & 1u) es.push_back({slots[k].first, slots[k].second});
    Graph g = Graph::from_edges(n, es);
    if (!g.is_connected()) continue;
    if (seen.insert(canonical_form(g)).second) out.push_back(std::move(g));
  }
  return out;
}

/// A random connected graph: a random spanning tree plus extra edges.
inline Graph random_connected(std::mt19937& rng, int n, double extra) {
  std::vector<Edge> es;
  std::set<std::pair<int, int>> have;
  for (int v = 1; v < n; ++v) {
    int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    es.push_back({u, v});
    have.insert({u, v});
  }
  std::bernoulli_distribution coin(extra);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!have.count({u, v}) && coin(rng)) es.push_back({u, v});
  return Graph::from_edges(n, es);
}

/// A 3-connected graph reached from a wheel by random Tutte moves (edge
/// additions and splits of vertices of degree at least four).
inline Graph random_three_connected(std::mt19937& rng, int target_order) {
  Graph g = cartgenus::wheel(std::uniform_int_distribution<int>(3, std::max(3, target_order - 1))(rng));
  int fresh = 0;
  for (int guard = 0; guard < 200 && g.order() < target_order; ++guard) {
    std::vector<Vertex> big;
    for (Vertex v = 0; v < g.order(); ++v)
      if (g.degree(v) >= 4) big.push_back(v);
    if (big.empty() || std::bernoulli_distribution(0.3)(rng)) {
      Vertex u = std::uniform_int_distribution<int>(0, g.order() - 1)(rng);
      Vertex v = std::uniform_int_distribution<int>(0, g.order() - 1)(rng);
      if (u != v && !g.adjacent(u, v)) g = cartgenus::add_edge(g, g.label(u), g.label(v));
      continue;
    }
    Vertex v = big[std::uniform_int_distribution<std::size_t>(0, big.size() - 1)(rng)];
    std::vector<Vertex> nb(g.neighbors(v).begin(), g.neighbors(v).end());
    std::shuffle(nb.begin(), nb.end(), rng);
    const int k = std::uniform_int_distribution<int>(2, static_cast<int>(nb.size()) - 2)(rng);
    std::vector<std::string> a, b;
    for (int i = 0; i < static_cast<int>(nb.size()); ++i)
      (i < k ? a : b).push_back(g.label(nb[static_cast<std::size_t>(i)]));
    g = cartgenus::vertex_split(g, g.label(v), a, b, g.label(v), "s" + std::to_string(fresh++));
  }
  return g;
}

/// A random minor of `host` with its witness: connected branch sets grown
/// from random seeds, then a random subset of the available edges.
struct RandomMinor {
  Graph minor;
  std::vector<std::vector<Vertex>> branch_sets;
  std::vector<Edge> edge_map;
};

inline RandomMinor random_minor(std::mt19937& rng, const Graph& host) {
  const int n = host.order();
  const int k = std::uniform_int_distribution<int>(1, n)(rng);
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Vertex>> sets;
  for (int i = 0; i < k; ++i) {
    owner[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    sets.push_back({order[static_cast<std::size_t>(i)]});
  }
  // Grow some sets by absorbing unowned neighbors; others stay deleted.
  for (int round = 0; round < n; ++round) {
    const int i = std::uniform_int_distribution<int>(0, k - 1)(rng);
    std::vector<Vertex> cand;
    for (Vertex x : sets[static_cast<std::size_t>(i)])
      for (Vertex w : host.neighbors(x))
        if (owner[static_cast<std::size_t>(w)] < 0) cand.push_back(w);
    if (cand.empty() || std::bernoulli_distribution(0.3)(rng)) continue;
    Vertex w = cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng)];
    owner[static_cast<std::size_t>(w)] = i;
    sets[static_cast<std::size_t>(i)].push_back(w);
  }
  std::map<std::pair<int, int>, Edge> avail;
  for (const auto& e : host.edges()) {
    int a = owner[static_cast<std::size_t>(e.u)], b = owner[static_cast<std::size_t>(e.v)];
    if (a < 0 || b < 0 || a == b) continue;
    Edge he = e;
    if (a > b) {
      std::swap(a, b);
      std::swap(he.u, he.v);
    }
    avail.emplace(std::make_pair(a, b), he);
  }
  std::vector<Edge> es;
  std::vector<Edge> hosts;
  for (const auto& [ab, he] : avail)
    if (std::bernoulli_distribution(0.8)(rng)) {
      es.push_back({ab.first, ab.second});
      hosts.push_back(he);
    }
  RandomMinor out{Graph::from_edges(k, es), sets, {}};
  // Graph sorts its edges; map host edges to the sorted order.
  for (const auto& e : out.minor.edges())
    for (std::size_t i = 0; i < es.size(); ++i)
      if (es[i] == e) out.edge_map.push_back(hosts[i]);
  return out;
}

}  // namespace oracle
