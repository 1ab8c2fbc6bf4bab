// Bounded-genus decision by face-tracing backtracking over rotation systems.
//
// The search grows faces one dart at a time. Whenever the walk needs the
// rotation successor of a dart that is still undecided, it branches over the
// admissible successors at that vertex. A partial assignment is abandoned when
// the faces already closed plus an optimistic count of faces that the
// remaining darts could still form cannot reach the face count the target
// genus requires.
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "graph.hpp"
#include "io.hpp"
#include "rotation.hpp"

namespace cartgenus {

// ---------------------------------------------------------------------------
// Euler bounds

/// ceil(max(0, 1 + |E|(a-2)/(2a) - |V|/2)) with a = girth. Trees are rejected.
inline int euler_lower_bound(const Graph& g) {
  if (!g.is_connected()) throw GraphError("euler_lower_bound: graph is disconnected");
  auto a = girth(g);
  if (!a) throw GraphError("euler_lower_bound: graph is acyclic");
  const long long alpha = *a;
  const long long num = 2 * alpha + static_cast<long long>(g.size()) * (alpha - 2) - static_cast<long long>(g.order()) * alpha;
  const long long den = 2 * alpha;
  if (num <= 0) return 0;
  return static_cast<int>((num + den - 1) / den);
}

/// Necessary condition for a triangular embedding: every edge on a 3-cycle.
/// false means no triangular embedding exists; true is inconclusive.
inline bool triangular_embedding_possible(const Graph& g) {
  auto a = girth(g);
  if (!a || *a != 3) throw GraphError("triangular_embedding_possible: girth must be 3");
  std::vector<char> on(static_cast<std::size_t>(g.size()), 0);
  for (const auto& t : triangles(g)) {
    on[static_cast<std::size_t>(g.edge_index(t[0], t[1]))] = 1;
    on[static_cast<std::size_t>(g.edge_index(t[1], t[2]))] = 1;
    on[static_cast<std::size_t>(g.edge_index(t[0], t[2]))] = 1;
  }
  return std::all_of(on.begin(), on.end(), [](char c) { return c != 0; });
}

// ---------------------------------------------------------------------------
// Search types

/// succ(from) = to, both darts leaving the same vertex.
struct Link {
  Dart from;
  Dart to;
  friend bool operator==(const Link&, const Link&) = default;
  friend auto operator<=>(const Link&, const Link&) = default;
};
using PartialAssignment = std::vector<Link>;

struct SearchBudget {
  std::uint64_t max_nodes = 0;  // 0: unlimited
  std::chrono::milliseconds wall{0};  // 0: unlimited
};

struct SearchOptions {
  SearchBudget budget;
  int jobs = 1;
  bool prune = true;
  bool symmetry = true;
};

enum class Verdict { embeddable, refuted, budget_exhausted };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::embeddable: return "embeddable";
    case Verdict::refuted: return "refuted";
    case Verdict::budget_exhausted: return "budget_exhausted";
  }
  return "?";
}

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
  std::uint64_t leaves = 0;
  std::size_t subproblems = 0;
  double wall_ms = 0;
};

struct SearchOutcome {
  Verdict verdict = Verdict::refuted;
  int target = 0;
  std::optional<EmbeddingCertificate> certificate;
  SearchStats stats;
  /// Unexplored partial assignments when the budget ran out; their extension
  /// sets partition the remaining search space.
  std::vector<PartialAssignment> frontier;
};

namespace detail {

/// Shared budget and cancellation state for one decide call.
struct SearchControl {
  SearchBudget budget;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> exhausted{false};
  /// Index of the lowest subproblem known to succeed.
  std::atomic<std::size_t> best_success{static_cast<std::size_t>(-1)};

  bool charge(std::uint64_t batch) {
    const auto total = nodes.fetch_add(batch) + batch;
    if (budget.max_nodes != 0 && total >= budget.max_nodes) exhausted = true;
    if (budget.wall.count() != 0 && std::chrono::steady_clock::now() - started >= budget.wall) exhausted = true;
    return !exhausted;
  }
};

class FaceSearch {
 public:
  enum class Result { done, success, stopped, aborted };

  /// `connector` marks edges that lie in tree-like path fibers of a product;
  /// empty for plain graphs.
  FaceSearch(const Graph& g, const std::vector<char>& connector, int target, bool prune)
      : g_(g), n_(g.order()), d_(dart_count(g)), prune_(prune) {
    needed_ = g.size() - g.order() + 2 - 2 * target;
    tail_.resize(static_cast<std::size_t>(d_));
    conn_.assign(static_cast<std::size_t>(d_), 0);
    for (int e = 0; e < g.size(); ++e) {
      tail_[static_cast<std::size_t>(2 * e)] = g.edge(e).u;
      tail_[static_cast<std::size_t>(2 * e + 1)] = g.edge(e).v;
      if (!connector.empty() && connector[static_cast<std::size_t>(e)]) {
        conn_[static_cast<std::size_t>(2 * e)] = 1;
        conn_[static_cast<std::size_t>(2 * e + 1)] = 1;
      }
    }
    darts_.resize(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) darts_[static_cast<std::size_t>(v)] = darts_at(g, v);
    total_conn_ = static_cast<int>(std::count(conn_.begin(), conn_.end(), 1));
    product_ = total_conn_ > 0;

    const int mindeg = g.order() ? g.min_degree() : 0;
    const auto gir = girth(g);
    if (mindeg < 2 || !gir) {
      mode_ = Mode::degenerate;
    } else if (*gir == 3) {
      mode_ = Mode::triangles;
      capped_ = mindeg >= 3;
      tri_total_ = static_cast<int>(triangles(g).size());
    } else {
      mode_ = Mode::long_faces;
      girth_ = *gir;
    }
    build_table();
    reset();
  }

  void reset() {
    succ_.assign(static_cast<std::size_t>(d_), -1);
    pred_.assign(static_cast<std::size_t>(d_), -1);
    used_.assign(static_cast<std::size_t>(d_), 0);
    trail_.clear();
    st_ = State{};
    st_.unused_c = total_conn_;
    st_.unused_f = d_ - total_conn_;
    // Vertices of degree one or two have a single rotation.
    for (Vertex v = 0; v < n_; ++v) {
      const auto& ds = darts_[static_cast<std::size_t>(v)];
      if (ds.size() == 1) link(ds[0], ds[0]);
      if (ds.size() == 2) {
        link(ds[0], ds[1]);
        link(ds[1], ds[0]);
      }
    }
  }

  /// Apply successor links; false if they are inconsistent with any rotation.
  bool apply(const PartialAssignment& links) {
    for (const auto& l : links) {
      if (l.from < 0 || l.from >= d_ || l.to < 0 || l.to >= d_) return false;
      if (tail(l.from) != tail(l.to)) return false;
      const Dart cur = succ_[static_cast<std::size_t>(l.from)];
      if (cur == l.to) continue;
      if (cur >= 0 || pred_[static_cast<std::size_t>(l.to)] >= 0) return false;
      if (!admissible(l.from, l.to)) return false;
      link(l.from, l.to);
    }
    return true;
  }

  /// Every current successor link.
  PartialAssignment links() const {
    PartialAssignment out;
    for (Dart d = 0; d < d_; ++d)
      if (succ_[static_cast<std::size_t>(d)] >= 0) out.push_back({d, succ_[static_cast<std::size_t>(d)]});
    return out;
  }

  /// Explore every completion of the current assignment. `on_leaf` receives
  /// each complete rotation whose face count meets the target and returns
  /// true to stop. `abort` is polled with the node budget.
  Result run(SearchControl& ctl, const std::function<bool(const RotationSystem&)>& on_leaf,
             const std::function<bool()>& abort, int split_depth = -1,
             std::vector<PartialAssignment>* split_out = nullptr) {
    ctl_ = &ctl;
    on_leaf_ = &on_leaf;
    abort_ = &abort;
    split_depth_ = split_depth;
    split_out_ = split_out;
    frontier_.clear();
    if (d_ == 0) {
      ++leaves_;
      return needed_ <= 1 && on_leaf(rotation()) ? Result::success : Result::done;
    }
    auto r = explore(0);
    flush();
    return r;
  }

  RotationSystem rotation() const {
    RotationSystem rs;
    rs.order.resize(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) {
      const auto& ds = darts_[static_cast<std::size_t>(v)];
      if (ds.empty()) continue;
      Dart d = ds[0];
      for (std::size_t i = 0; i < ds.size(); ++i) {
        rs.order[static_cast<std::size_t>(v)].push_back(d);
        d = succ_[static_cast<std::size_t>(d)];
      }
    }
    return rs;
  }

  const std::vector<PartialAssignment>& frontier() const { return frontier_; }
  std::uint64_t nodes() const { return nodes_total_; }
  std::uint64_t prunes() const { return prunes_; }
  std::uint64_t leaves() const { return leaves_; }
  int needed() const { return needed_; }

 private:
  enum class Mode { degenerate, triangles, long_faces };
  enum class Step { leaf, branch, pruned };

  struct State {
    int closed = 0;
    int closed_tri = 0;
    int used = 0;
    int unused_f = 0;
    int unused_c = 0;
    int open_f = 0;
    int open_c = 0;
    Dart start = -1;
    Dart cur = -1;
  };

  Vertex tail(Dart d) const { return tail_[static_cast<std::size_t>(d)]; }
  int degree(Vertex v) const { return static_cast<int>(darts_[static_cast<std::size_t>(v)].size()); }

  void link(Dart a, Dart b) {
    succ_[static_cast<std::size_t>(a)] = b;
    pred_[static_cast<std::size_t>(b)] = a;
    trail_.push_back(a);
  }
  void mark(Dart d) {
    used_[static_cast<std::size_t>(d)] = 1;
    trail_.push_back(-d - 1);
  }
  void undo(std::size_t to) {
    while (trail_.size() > to) {
      const int x = trail_.back();
      trail_.pop_back();
      if (x >= 0) {
        pred_[static_cast<std::size_t>(succ_[static_cast<std::size_t>(x)])] = -1;
        succ_[static_cast<std::size_t>(x)] = -1;
      } else {
        used_[static_cast<std::size_t>(-x - 1)] = 0;
      }
    }
  }

  /// succ(a) = b keeps the partial rotation at tail(a) a union of paths, or
  /// closes it into a single cycle through every dart.
  bool admissible(Dart a, Dart b) const {
    int len = 1;
    Dart w = b;
    while (succ_[static_cast<std::size_t>(w)] >= 0) {
      w = succ_[static_cast<std::size_t>(w)];
      ++len;
      if (w == b) return false;
    }
    if (w != a) return a != b;
    return len == degree(tail(a));
  }

  // Face-count bound for a pool of darts. Triangular faces use fiber darts
  // only; every other face has length at least four and, in a product layered
  // by a tree, at least two fiber darts.
  void build_table() {
    const int fmax = d_ - total_conn_;
    table_f_ = fmax + 1;
    table_c_ = total_conn_ + 1;
    table_t_ = mode_ == Mode::triangles ? std::min(tri_total_, fmax / 3) + 1 : 1;
    table_.assign(static_cast<std::size_t>(table_f_) * static_cast<std::size_t>(table_c_) * static_cast<std::size_t>(table_t_), 0);
    for (int f = 0; f < table_f_; ++f)
      for (int c = 0; c < table_c_; ++c)
        for (int t = 0; t < table_t_; ++t) table_[index(f, c, t)] = pool_bound(f, c, t);
  }
  std::size_t index(int f, int c, int t) const {
    return (static_cast<std::size_t>(f) * static_cast<std::size_t>(table_c_) + static_cast<std::size_t>(c)) *
               static_cast<std::size_t>(table_t_) +
           static_cast<std::size_t>(t);
  }
  int pool_bound(int f, int c, int tav) const {
    const int r = f + c;
    switch (mode_) {
      case Mode::degenerate: return r / 2;
      case Mode::long_faces: return r / girth_;
      case Mode::triangles: break;
    }
    const int tmax = capped_ ? std::min(tav, f / 3) : f / 3;
    int best = 0;
    for (int t = 0; t <= tmax; ++t) {
      int q = (r - 3 * t) / 4;
      if (product_) q = std::min(q, (f - 3 * t) / 2);
      best = std::max(best, t + q);
    }
    return best;
  }
  int pool(int f, int c) const {
    int t = 0;
    if (mode_ == Mode::triangles) t = std::min(capped_ ? tri_total_ - st_.closed_tri : tri_total_, table_t_ - 1);
    return table_[index(f, c, std::max(t, 0))];
  }
  int bound() const {
    if (st_.start < 0) return st_.closed + pool(st_.unused_f, st_.unused_c);
    const int b1 = 1 + pool(st_.unused_f, st_.unused_c);
    const int b2 = pool(st_.unused_f + st_.open_f, st_.unused_c + st_.open_c);
    return st_.closed + std::min(b1, b2);
  }

  int choices(Dart r) const {
    if (succ_[static_cast<std::size_t>(r)] >= 0) return 0;
    int k = 0;
    for (Dart b : darts_[static_cast<std::size_t>(tail(r))])
      if (pred_[static_cast<std::size_t>(b)] < 0 && admissible(r, b)) ++k;
    return k;
  }

  /// Start the next face at the unused dart whose continuation is most
  /// constrained; ties go to the smallest dart.
  Dart pick_start() const {
    Dart best = -1;
    int best_k = 1 << 30;
    for (Dart d = 0; d < d_; ++d) {
      if (used_[static_cast<std::size_t>(d)]) continue;
      const int k = choices(reverse(d));
      if (k < best_k) {
        best_k = k;
        best = d;
        if (k == 0) break;
      }
    }
    return best;
  }

  void consume(Dart d) {
    mark(d);
    ++st_.used;
    if (conn_[static_cast<std::size_t>(d)]) {
      --st_.unused_c;
      ++st_.open_c;
    } else {
      --st_.unused_f;
      ++st_.open_f;
    }
  }

  Step advance() {
    for (;;) {
      if (st_.start < 0) {
        if (prune_ && bound() < needed_) return Step::pruned;
        if (st_.used == d_) return Step::leaf;
        const Dart s = pick_start();
        st_.start = s;
        st_.cur = s;
        consume(s);
      }
      const Dart nx = succ_[static_cast<std::size_t>(reverse(st_.cur))];
      if (nx < 0) {
        if (prune_ && bound() < needed_) return Step::pruned;
        return Step::branch;
      }
      if (nx == st_.start) {
        ++st_.closed;
        if (st_.open_f + st_.open_c == 3) ++st_.closed_tri;
        st_.open_f = st_.open_c = 0;
        st_.start = st_.cur = -1;
      } else {
        consume(nx);
        st_.cur = nx;
      }
    }
  }

  void flush() {
    if (pending_ == 0) return;
    ctl_->charge(pending_);
    pending_ = 0;
  }

  bool tick() {
    ++nodes_total_;
    if (++pending_ >= 1024) {
      const bool ok = ctl_->charge(pending_);
      pending_ = 0;
      if (!ok) return false;
      if ((*abort_)()) {
        aborted_ = true;
        return false;
      }
    }
    return !ctl_->exhausted.load(std::memory_order_relaxed);
  }

  Result explore(int depth) {
    const State saved = st_;
    const std::size_t mark_at = trail_.size();
    Result out = Result::done;
    switch (advance()) {
      case Step::pruned:
        ++prunes_;
        break;
      case Step::leaf:
        ++leaves_;
        if (st_.closed >= needed_ && (*on_leaf_)(rotation())) out = Result::success;
        break;
      case Step::branch: {
        const Dart r = reverse(st_.cur);
        if (depth == split_depth_) {
          for (Dart b : darts_[static_cast<std::size_t>(tail(r))]) {
            if (pred_[static_cast<std::size_t>(b)] >= 0 || !admissible(r, b)) continue;
            auto ls = links();
            ls.push_back({r, b});
            split_out_->push_back(std::move(ls));
          }
          break;
        }
        std::vector<Dart> cand;
        for (Dart b : darts_[static_cast<std::size_t>(tail(r))])
          if (pred_[static_cast<std::size_t>(b)] < 0 && admissible(r, b)) cand.push_back(b);
        for (std::size_t i = 0; i < cand.size(); ++i) {
          const std::size_t before = trail_.size();
          const State here = st_;
          link(r, cand[i]);
          Result sub;
          if (!tick()) {
            sub = aborted_ ? Result::aborted : Result::stopped;
            if (sub == Result::stopped) frontier_.push_back(links());
          } else {
            sub = explore(depth + 1);
          }
          undo(before);
          st_ = here;
          if (sub == Result::done) continue;
          if (sub == Result::stopped) {
            for (std::size_t j = i + 1; j < cand.size(); ++j) {
              auto ls = links();
              ls.push_back({r, cand[j]});
              frontier_.push_back(std::move(ls));
            }
          }
          out = sub;
          break;
        }
        break;
      }
    }
    undo(mark_at);
    st_ = saved;
    return out;
  }

  const Graph& g_;
  int n_;
  int d_;
  bool prune_;
  int needed_ = 0;
  std::vector<Vertex> tail_;
  std::vector<char> conn_;
  std::vector<std::vector<Dart>> darts_;
  int total_conn_ = 0;
  bool product_ = false;
  Mode mode_ = Mode::degenerate;
  bool capped_ = false;
  int tri_total_ = 0;
  int girth_ = 3;
  std::vector<int> table_;
  int table_f_ = 0, table_c_ = 0, table_t_ = 0;

  std::vector<Dart> succ_, pred_;
  std::vector<char> used_;
  std::vector<int> trail_;
  State st_;

  SearchControl* ctl_ = nullptr;
  const std::function<bool(const RotationSystem&)>* on_leaf_ = nullptr;
  const std::function<bool()>* abort_ = nullptr;
  int split_depth_ = -1;
  std::vector<PartialAssignment>* split_out_ = nullptr;
  std::vector<PartialAssignment> frontier_;
  std::uint64_t pending_ = 0;
  std::uint64_t nodes_total_ = 0;
  std::uint64_t prunes_ = 0;
  std::uint64_t leaves_ = 0;
  bool aborted_ = false;
};

/// Root vertex for symmetry breaking: maximum degree, ties by smaller label.
inline Vertex symmetry_root(const Graph& g) {
  Vertex best = 0;
  for (Vertex v = 1; v < g.order(); ++v)
    if (g.degree(v) > g.degree(best) || (g.degree(v) == g.degree(best) && g.label(v) < g.label(best))) best = v;
  return best;
}

/// Cyclic orders at the root, one per orbit under (automorphisms fixing the
/// root) x (mirror). Each order is returned as the links it fixes.
inline std::vector<PartialAssignment> root_orbit_representatives(const Graph& g) {
  if (g.order() == 0 || g.size() == 0) return {{}};
  const Vertex root = symmetry_root(g);
  const auto ds = darts_at(g, root);
  const int k = static_cast<int>(ds.size());
  if (k < 3 || k > 9) return {{}};

  // Stabilizer maps acting on the root's darts. Any subset of the symmetry
  // group is sound for the minimum-image test below.
  std::vector<std::vector<Dart>> acts;
  auto auts = automorphisms(g, 20000);
  for (const auto& m : auts.maps) {
    if (m[static_cast<std::size_t>(root)] != root) continue;
    std::vector<Dart> act(static_cast<std::size_t>(dart_count(g)), -1);
    for (Dart d : ds) {
      const Vertex w = m[static_cast<std::size_t>(dart_head(g, d))];
      const int e = g.edge_index(root, w);
      act[static_cast<std::size_t>(d)] = root < w ? 2 * e : 2 * e + 1;
    }
    acts.push_back(std::move(act));
  }
  const std::size_t group = acts.size() * 2;
  std::size_t orders = 1;
  for (int i = 2; i < k; ++i) orders *= static_cast<std::size_t>(i);
  if (orders * group > 50'000'000) acts.resize(1);  // identity only, plus mirror

  auto normalize = [](std::vector<Dart> o) {
    std::rotate(o.begin(), std::min_element(o.begin(), o.end()), o.end());
    return o;
  };
  std::vector<Dart> rest(ds.begin() + 1, ds.end());
  std::sort(rest.begin(), rest.end());
  std::vector<PartialAssignment> reps;
  do {
    std::vector<Dart> o{ds[0]};
    o.insert(o.end(), rest.begin(), rest.end());
    o = normalize(o);
    bool minimal = true;
    for (const auto& act : acts) {
      std::vector<Dart> img;
      for (Dart d : o) img.push_back(act[static_cast<std::size_t>(d)]);
      if (normalize(img) < o) { minimal = false; break; }
      std::reverse(img.begin(), img.end());
      if (normalize(img) < o) { minimal = false; break; }
    }
    if (!minimal) continue;
    PartialAssignment ls;
    for (int i = 0; i < k; ++i) ls.push_back({o[static_cast<std::size_t>(i)], o[static_cast<std::size_t>((i + 1) % k)]});
    reps.push_back(std::move(ls));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return reps;
}

inline std::vector<char> connector_mask(const Product& p) {
  std::vector<char> mask;
  if (!p.layered_by_tree()) return mask;
  for (const auto& c : p.classes) mask.push_back(c.is_connector() ? 1 : 0);
  return mask;
}

/// Run every subproblem (in index order for determinism) and merge.
inline SearchOutcome run_subproblems(const Graph& g, const std::vector<char>& mask, int target,
                                     std::vector<PartialAssignment> items, const SearchOptions& opt) {
  SearchOutcome out;
  out.target = target;
  SearchControl ctl;
  ctl.budget = opt.budget;
  const auto no_abort = [] { return false; };
  const auto accept = [](const RotationSystem&) { return true; };

  // Split into enough independent pieces for parallel workers. The split does
  // not depend on the job count, so the reported certificate does not either.
  const int jobs = std::max(1, opt.jobs);
  {
    for (int round = 0; round < 4 && items.size() < 64; ++round) {
      std::vector<PartialAssignment> next;
      bool progressed = false;
      for (const auto& it : items) {
        FaceSearch fs(g, mask, target, opt.prune);
        if (!fs.apply(it)) continue;
        std::vector<PartialAssignment> kids;
        auto res = fs.run(ctl, accept, no_abort, 0, &kids);
        out.stats.nodes += fs.nodes();
        out.stats.prunes += fs.prunes();
        if (res == FaceSearch::Result::success) {
          // Solved before branching: keep it as a complete assignment.
          next.push_back(it);
          continue;
        }
        if (!kids.empty()) progressed = true;
        for (auto& k : kids) next.push_back(std::move(k));
      }
      items = std::move(next);
      if (!progressed) break;
    }
  }
  out.stats.subproblems = items.size();

  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::optional<RotationSystem>> found(items.size());
  std::vector<std::vector<PartialAssignment>> pending(items.size());
  std::vector<char> finished(items.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex mu;

  auto worker = [&] {
    FaceSearch fs(g, mask, target, opt.prune);
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= items.size()) break;
      if (ctl.best_success.load() < i) continue;
      if (ctl.exhausted.load()) {
        pending[i] = {items[i]};
        continue;
      }
      fs.reset();
      if (!fs.apply(items[i])) {
        finished[i] = 1;
        continue;
      }
      std::optional<RotationSystem> hit;
      const std::uint64_t n0 = fs.nodes(), p0 = fs.prunes(), l0 = fs.leaves();
      auto res = fs.run(
          ctl,
          [&](const RotationSystem& rs) {
            hit = rs;
            return true;
          },
          [&] { return ctl.best_success.load() < i; });
      {
        std::lock_guard<std::mutex> lock(mu);
        out.stats.nodes += fs.nodes() - n0;
        out.stats.prunes += fs.prunes() - p0;
        out.stats.leaves += fs.leaves() - l0;
      }
      if (res == FaceSearch::Result::success) {
        found[i] = std::move(hit);
        std::size_t cur = ctl.best_success.load();
        while (i < cur && !ctl.best_success.compare_exchange_weak(cur, i)) {
        }
        finished[i] = 1;
      } else if (res == FaceSearch::Result::stopped) {
        pending[i] = fs.frontier();
      } else if (res == FaceSearch::Result::done) {
        finished[i] = 1;
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  out.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - ctl.started).count();

  const std::size_t best = ctl.best_success.load();
  if (best != none) {
    // Every subproblem before the winner must have completed for the answer
    // to be schedule independent; a success anywhere is still a proof.
    out.verdict = Verdict::embeddable;
    out.certificate = make_certificate(g, *found[best]);
    return out;
  }
  for (std::size_t i = 0; i < items.size(); ++i)
    for (auto& p : pending[i]) out.frontier.push_back(std::move(p));
  out.verdict = out.frontier.empty() ? Verdict::refuted : Verdict::budget_exhausted;
  return out;
}

inline SearchOutcome decide_impl(const Graph& g, const std::vector<char>& mask, int target,
                                 const SearchOptions& opt) {
  if (!g.is_connected()) throw GraphError("decide_genus_le: graph is disconnected");
  if (target < 0) throw GraphError("decide_genus_le: negative target genus");
  std::vector<PartialAssignment> items = opt.symmetry ? root_orbit_representatives(g) : std::vector<PartialAssignment>{{}};
  return run_subproblems(g, mask, target, std::move(items), opt);
}

}  // namespace detail

/// Decide whether g has an orientable embedding of genus <= target.
inline SearchOutcome decide_genus_le(const Graph& g, int target, const SearchOptions& opt = {}) {
  return detail::decide_impl(g, {}, target, opt);
}

/// Product overload: connector edges of a tree-layered product tighten the
/// face bound (no connector edge lies on a triangle).
inline SearchOutcome decide_genus_le(const Product& p, int target, const SearchOptions& opt = {}) {
  return detail::decide_impl(p.graph, detail::connector_mask(p), target, opt);
}

/// Continue an exhausted search from its frontier.
inline SearchOutcome resume_genus_le(const Graph& g, int target, const std::vector<PartialAssignment>& frontier,
                                     const SearchOptions& opt = {}, const std::vector<char>& connector = {}) {
  if (!g.is_connected()) throw GraphError("resume_genus_le: graph is disconnected");
  return detail::run_subproblems(g, connector, target, frontier, opt);
}

/// Call `visit` for every rotation system of genus <= max_genus (no symmetry
/// reduction). Returns false if the budget ran out first.
inline bool enumerate_embeddings(const Graph& g, int max_genus, const std::function<bool(const RotationSystem&)>& visit,
                                 SearchBudget budget = {}) {
  if (!g.is_connected()) throw GraphError("enumerate_embeddings: graph is disconnected");
  detail::SearchControl ctl;
  ctl.budget = budget;
  detail::FaceSearch fs(g, {}, max_genus, true);
  auto res = fs.run(ctl, [&](const RotationSystem& rs) { return !visit(rs); }, [] { return false; });
  return res != detail::FaceSearch::Result::stopped;
}

struct GenusResult {
  std::optional<int> genus;  // empty when the budget ran out
  int lower_bound = 0;
  std::optional<EmbeddingCertificate> certificate;
  SearchStats stats;
};

/// Minimum genus: decide_genus_le from the Euler bound upward.
inline GenusResult genus(const Graph& g, const SearchOptions& opt = {}) {
  if (!g.is_connected()) throw GraphError("genus: graph is disconnected");
  GenusResult out;
  if (!girth(g)) {
    out.genus = 0;
    RotationSystem rs;
    rs.order.resize(static_cast<std::size_t>(g.order()));
    for (Vertex v = 0; v < g.order(); ++v) rs.order[static_cast<std::size_t>(v)] = darts_at(g, v);
    out.certificate = make_certificate(g, rs);
    return out;
  }
  out.lower_bound = euler_lower_bound(g);
  for (int t = out.lower_bound;; ++t) {
    auto r = decide_genus_le(g, t, opt);
    out.stats.nodes += r.stats.nodes;
    out.stats.prunes += r.stats.prunes;
    out.stats.leaves += r.stats.leaves;
    out.stats.wall_ms += r.stats.wall_ms;
    if (r.verdict == Verdict::budget_exhausted) return out;
    if (r.verdict == Verdict::embeddable) {
      out.genus = r.certificate->genus;
      out.certificate = std::move(r.certificate);
      return out;
    }
  }
}

inline SearchOutcome is_toroidal(const Graph& g, const SearchOptions& opt = {}) { return decide_genus_le(g, 1, opt); }
inline SearchOutcome is_toroidal(const Product& p, const SearchOptions& opt = {}) { return decide_genus_le(p, 1, opt); }

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json link_to_json(const Graph& g, const Link& l) {
  return nlohmann::json::array({dart_to_json(g, l.from), dart_to_json(g, l.to)});
}

inline Link link_from_json(const Graph& g, const nlohmann::json& j) {
  return {dart_from_json(g, j.at(0)), dart_from_json(g, j.at(1))};
}

inline nlohmann::json outcome_to_json(const Graph& g, const SearchOutcome& o, bool with_frontier = false) {
  nlohmann::json j;
  j["verdict"] = to_string(o.verdict);
  j["target"] = o.target;
  j["nodes"] = o.stats.nodes;
  j["prunes"] = o.stats.prunes;
  j["leaves"] = o.stats.leaves;
  j["subproblems"] = o.stats.subproblems;
  j["wall_ms"] = o.stats.wall_ms;
  if (o.certificate) j["certificate"] = certificate_to_json(*o.certificate);
  if (o.verdict == Verdict::budget_exhausted) {
    j["frontier_size"] = o.frontier.size();
    if (with_frontier) {
      auto fr = nlohmann::json::array();
      for (const auto& p : o.frontier) {
        auto arr = nlohmann::json::array();
        for (const auto& l : p) arr.push_back(link_to_json(g, l));
        fr.push_back(std::move(arr));
      }
      j["frontier"] = std::move(fr);
    }
  }
  return j;
}

/// Frontier snapshot: {"graph", "target", "connector_edges"?, "frontier"}.
inline nlohmann::json frontier_to_json(const Graph& g, int target, const std::vector<PartialAssignment>& frontier,
                                       const std::vector<char>& connector = {}) {
  nlohmann::json j;
  j["graph"] = graph_to_json(g);
  j["target"] = target;
  if (!connector.empty()) j["connector_edges"] = connector;
  auto fr = nlohmann::json::array();
  for (const auto& p : frontier) {
    auto arr = nlohmann::json::array();
    for (const auto& l : p) arr.push_back(link_to_json(g, l));
    fr.push_back(std::move(arr));
  }
  j["frontier"] = std::move(fr);
  return j;
}

struct FrontierSnapshot {
  Graph graph;
  int target = 0;
  std::vector<char> connector;
  std::vector<PartialAssignment> frontier;
};

inline FrontierSnapshot frontier_from_json(const nlohmann::json& j) {
  FrontierSnapshot s{graph_from_json(j.at("graph")), j.at("target").get<int>(), {}, {}};
  if (j.contains("connector_edges")) s.connector = j.at("connector_edges").get<std::vector<char>>();
  for (const auto& p : j.at("frontier")) {
    PartialAssignment pa;
    for (const auto& l : p) pa.push_back(link_from_json(s.graph, l));
    s.frontier.push_back(std::move(pa));
  }
  return s;
}

}  // namespace cartgenus
