// Vertex connectivity via unit-capacity max flow on the split-vertex network.
#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "graph.hpp"

namespace cartgenus {

namespace detail {

/// Number of internally vertex-disjoint s-t paths (s, t nonadjacent), capped at `cap`.
inline int local_connectivity(const Graph& g, Vertex s, Vertex t, int cap) {
  // Vertex v becomes v_in = 2v and v_out = 2v+1 joined by a unit arc.
  struct Arc {
    int to;
    int cap;
    int rev;
  };
  const int n = g.order();
  std::vector<std::vector<Arc>> net(static_cast<std::size_t>(2 * n));
  auto add = [&](int a, int b, int c) {
    net[static_cast<std::size_t>(a)].push_back({b, c, static_cast<int>(net[static_cast<std::size_t>(b)].size())});
    net[static_cast<std::size_t>(b)].push_back({a, 0, static_cast<int>(net[static_cast<std::size_t>(a)].size()) - 1});
  };
  const int big = n + 1;
  for (Vertex v = 0; v < n; ++v) add(2 * v, 2 * v + 1, (v == s || v == t) ? big : 1);
  for (const auto& e : g.edges()) {
    add(2 * e.u + 1, 2 * e.v, big);
    add(2 * e.v + 1, 2 * e.u, big);
  }
  const int src = 2 * s + 1;
  const int dst = 2 * t;
  int flow = 0;
  std::vector<int> prev_node(static_cast<std::size_t>(2 * n)), prev_arc(static_cast<std::size_t>(2 * n));
  while (flow < cap) {
    std::fill(prev_node.begin(), prev_node.end(), -1);
    prev_node[static_cast<std::size_t>(src)] = src;
    std::queue<int> q;
    q.push(src);
    while (!q.empty() && prev_node[static_cast<std::size_t>(dst)] < 0) {
      int x = q.front();
      q.pop();
      const auto& arcs = net[static_cast<std::size_t>(x)];
      for (std::size_t i = 0; i < arcs.size(); ++i) {
        const auto& a = arcs[i];
        if (a.cap > 0 && prev_node[static_cast<std::size_t>(a.to)] < 0) {
          prev_node[static_cast<std::size_t>(a.to)] = x;
          prev_arc[static_cast<std::size_t>(a.to)] = static_cast<int>(i);
          q.push(a.to);
        }
      }
    }
    if (prev_node[static_cast<std::size_t>(dst)] < 0) break;
    for (int x = dst; x != src; x = prev_node[static_cast<std::size_t>(x)]) {
      auto& a = net[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(x)])]
                   [static_cast<std::size_t>(prev_arc[static_cast<std::size_t>(x)])];
      a.cap -= 1;
      net[static_cast<std::size_t>(x)][static_cast<std::size_t>(a.rev)].cap += 1;
    }
    ++flow;
  }
  return flow;
}

}  // namespace detail

/// κ(G): minimum vertex-cut size, n-1 for complete graphs, 0 if disconnected.
inline int vertex_connectivity(const Graph& g) {
  const int n = g.order();
  if (n <= 1) return 0;
  if (!g.is_connected()) return 0;
  if (g.is_complete()) return n - 1;
  // Even's algorithm: some vertex among the first κ+1 lies outside a minimum
  // cut, so only those sources need to be tried.
  int best = n - 1;
  for (Vertex s = 0; s < n && s <= best; ++s)
    for (Vertex t = s + 1; t < n; ++t) {
      if (g.adjacent(s, t)) continue;
      best = std::min(best, detail::local_connectivity(g, s, t, best));
    }
  return best;
}

}  // namespace cartgenus
