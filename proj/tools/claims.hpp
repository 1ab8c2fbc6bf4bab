// Reproduction claims checked by `cartgenus verify-paper` and the acceptance
// binary. Each claim carries its own time limit; a claim passes only if its
// checks hold and it finishes inside that limit.
#pragma once

#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <cartgenus/cartgenus.hpp>
#include <json.hpp>

#include "oracles.hpp"

namespace cartgenus::claims {

enum class Profile { quick, full, extended };

enum class Status { pass, fail, skipped, budget_exhausted };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    case Status::budget_exhausted: return "budget_exhausted";
  }
  return "?";
}

struct Claim {
  int id = 0;
  std::string name;
  std::string engine;
  Status status = Status::fail;
  std::string detail;
  double wall_ms = 0;
  double limit_ms = 0;
};

struct Settings {
  Profile profile = Profile::full;
  // Wall budget for the long refutation; the short one uses an hour.
  std::chrono::milliseconds extended_budget{std::chrono::hours(24)};
  int jobs = 1;
  std::uint32_t seed = 1;
};

namespace detail {

// A check appends failure messages; an empty list means it held.
struct Checks {
  std::vector<std::string> failures;
  std::string info;
  bool budget_hit = false;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

inline Claim run(int id, std::string name, std::string engine, double limit_s,
                 const std::function<void(Checks&)>& body) {
  Claim c{id, std::move(name), std::move(engine), Status::fail, "", 0, limit_s * 1000};
  Checks chk;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(chk);
  } catch (const std::exception& e) {
    chk.failures.push_back(std::string("exception: ") + e.what());
  }
  c.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!chk.failures.empty()) {
    c.status = Status::fail;
    c.detail = join(chk.failures, "; ");
  } else if (chk.budget_hit) {
    c.status = Status::budget_exhausted;
    c.detail = chk.info;
  } else if (c.wall_ms > c.limit_ms) {
    c.status = Status::fail;
    c.detail = "over time limit";
  } else {
    c.status = Status::pass;
    c.detail = chk.info;
  }
  return c;
}

inline Claim skipped(int id, std::string name, std::string engine, double limit_s) {
  return Claim{id, std::move(name), std::move(engine), Status::skipped, "not run in this profile", 0, limit_s * 1000};
}

inline FaceDistribution dist(std::map<int, int> m) { return FaceDistribution{std::move(m)}; }

inline std::set<std::set<std::string>> cycle_sets(const Graph& g, const std::vector<std::vector<std::string>>& cycles) {
  std::set<std::set<std::string>> out;
  for (const auto& c : cycles) {
    // A cycle as the set of its edges, which ignores start and direction.
    std::set<std::string> es;
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto a = c[i], b = c[(i + 1) % c.size()];
      if (g.at(a) > g.at(b)) std::swap(a, b);
      es.insert(a + "-" + b);
    }
    out.insert(es);
  }
  return out;
}

inline std::set<std::set<std::string>> two_factor_key(const Graph& g, const TwoFactor& tf) {
  std::vector<std::vector<std::string>> named;
  for (const auto& c : tf.cycles) {
    named.emplace_back();
    for (Vertex v : c) named.back().push_back(g.label(v));
  }
  return cycle_sets(g, named);
}

}  // namespace detail

inline std::vector<Claim> run_all(const Settings& s) {
  using detail::Checks;
  using detail::dist;
  std::vector<Claim> out;

  out.push_back(detail::run(1, "face distributions of K4xP3 on the torus", "face_distributions", 1, [](Checks& c) {
    auto p = cartesian_product(complete_graph(4), path_graph(3));
    auto got = face_distributions(p.graph.order(), p.graph.size(), 1, 3, triangle_cap(p));
    std::vector<FaceDistribution> want{dist({{3, 4}, {4, 10}}), dist({{3, 5}, {4, 8}, {5, 1}}),
                                       dist({{3, 6}, {4, 6}, {5, 2}}), dist({{3, 6}, {4, 7}, {6, 1}})};
    std::sort(got.begin(), got.end(), [](auto& a, auto& b) { return a.str() < b.str(); });
    std::sort(want.begin(), want.end(), [](auto& a, auto& b) { return a.str() < b.str(); });
    c.expect(got == want, "distribution list differs");
    c.info = std::to_string(got.size()) + " distributions";
  }));

  out.push_back(detail::run(2, "face distributions of HxP2 on the torus", "face_distributions", 1, [](Checks& c) {
    auto p = cartesian_product(reference_h(), path_graph(2));
    c.expect(p.graph.order() == 16 && p.graph.size() == 34, "unexpected product size");
    c.expect(triangle_cap(p) == 6, "triangle cap is not 6");
    auto got = face_distributions(16, 34, 1, 3, 6);
    std::vector<FaceDistribution> want{dist({{3, 4}, {4, 14}}), dist({{3, 5}, {4, 12}, {5, 1}}),
                                       dist({{3, 6}, {4, 10}, {5, 2}}), dist({{3, 6}, {4, 11}, {6, 1}})};
    std::sort(got.begin(), got.end(), [](auto& a, auto& b) { return a.str() < b.str(); });
    std::sort(want.begin(), want.end(), [](auto& a, auto& b) { return a.str() < b.str(); });
    c.expect(got == want, "distribution list differs");
    c.info = std::to_string(got.size()) + " distributions";
  }));

  out.push_back(detail::run(3, "two-factors of H are exactly the seven listed sets", "enumerate_two_factors", 1,
                            [](Checks& c) {
                              Graph h = reference_h();
                              const std::vector<std::vector<std::vector<std::string>>> listed{
                                  {{"v1", "v2", "v3", "v6", "v7", "v4", "v8", "v5"}},
                                  {{"v1", "v2", "v3", "v6", "v7", "v8", "v4", "v5"}},
                                  {{"v1", "v2", "v6", "v3", "v4", "v7", "v8", "v5"}},
                                  {{"v1", "v7", "v6", "v2", "v3", "v4", "v8", "v5"}},
                                  {{"v1", "v2", "v6", "v3", "v4", "v5", "v8", "v7"}},
                                  {{"v2", "v3", "v6"}, {"v1", "v7", "v4", "v8", "v5"}},
                                  {{"v4", "v5", "v8"}, {"v1", "v2", "v3", "v6", "v7"}}};
                              std::set<std::set<std::set<std::string>>> want, got;
                              for (const auto& tf : listed) want.insert(detail::cycle_sets(h, tf));
                              auto all = enumerate_two_factors(h);
                              for (const auto& tf : all) got.insert(detail::two_factor_key(h, tf));
                              for (const auto& w : want) c.expect(got.count(w) > 0, "a listed two-factor is missing");
                              std::vector<std::string> extra;
                              for (const auto& g : got)
                                if (!want.count(g)) {
                                  std::string s;
                                  for (const auto& cyc : g) s += "[" + detail::join({cyc.begin(), cyc.end()}, " ") + "]";
                                  extra.push_back(s);
                                }
                              c.expect(all.size() == 7,
                                       std::to_string(all.size()) + " two-factors found; unlisted: " +
                                           detail::join(extra, ", "));
                            }));

  out.push_back(detail::run(4, "connector cycle types of K4xP3 (lengths 4/5/6)", "classify_cycles", 5, [](Checks& c) {
    auto p = cartesian_product(complete_graph(4), path_graph(3));
    std::vector<std::string> sizes;
    const std::size_t want[] = {1, 2, 4};
    for (int len = 4; len <= 6; ++len) {
      auto sig = classify_cycles(p, len, true);
      sizes.push_back(std::to_string(sig.size()));
      c.expect(sig.size() == want[len - 4], "wrong number of " + std::to_string(len) + "-cycle types");
    }
    c.info = detail::join(sizes, "/");
  }));

  out.push_back(detail::run(5, "outer-cylindrical recognition", "is_outer_cylindrical", 60, [](Checks& c) {
    for (int n = 3; n <= 8; ++n) {
      auto r = is_outer_cylindrical(wheel(n));
      c.expect(r.verdict == OcVerdict::oc && r.certificate && verify_certificate(*r.certificate),
               "W" + std::to_string(n) + " not certified OC");
    }
    for (int n : {3, 4}) {
      auto r = is_outer_cylindrical(squared_cycle(2 * n));
      c.expect(r.verdict == OcVerdict::oc && r.certificate && verify_certificate(*r.certificate),
               "C2_" + std::to_string(2 * n) + " not certified OC");
    }
    for (int n : {5, 6})
      c.expect(is_outer_cylindrical(construct_Hn(n)).verdict == OcVerdict::noc, "H" + std::to_string(n) + " not NOC");
  }));

  out.push_back(detail::run(6, "torus embeddings of OC x P2", "oc_product_torus_embedding", 10, [](Checks& c) {
    std::vector<std::pair<std::string, Graph>> gs;
    for (int n = 3; n <= 8; ++n) gs.emplace_back("W" + std::to_string(n), wheel(n));
    for (int n : {3, 4}) gs.emplace_back("C2_" + std::to_string(2 * n), squared_cycle(2 * n));
    for (const auto& [name, g] : gs) {
      auto cert = oc_product_torus_embedding(g, *is_outer_cylindrical(g).certificate);
      const int chi = cert.graph.order() - cert.graph.size() + static_cast<int>(cert.faces.size());
      c.expect(verify_certificate(cert) && cert.genus == 1 && chi == 0, name + "xP2 certificate invalid");
    }
  }));

  out.push_back(detail::run(7, "genus-2 embeddings of K4xP3 and HxP2", "constructions", 1, [](Checks& c) {
    auto k = k4p3_genus2_embedding();
    c.expect(verify_certificate(k) && k.genus == 2 && k.faces.size() == 12, "K4xP3 certificate invalid");
    auto h = hp2_genus2_embedding();
    c.expect(verify_certificate(h) && h.genus == 2 && h.faces.size() == 16, "HxP2 certificate invalid");
  }));

  out.push_back(detail::run(8, "genus of K4, K5, K3,3, K6, K7", "genus", 300, [](Checks& c) {
    const std::vector<std::pair<std::string, Graph>> gs{{"K4", complete_graph(4)},
                                                        {"K5", complete_graph(5)},
                                                        {"K3,3", complete_bipartite(3, 3)},
                                                        {"K6", complete_graph(6)},
                                                        {"K7", complete_graph(7)}};
    const int want[] = {0, 1, 1, 1, 1};
    std::vector<std::string> got;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      auto r = genus(gs[i].second);
      got.push_back(r.genus ? std::to_string(*r.genus) : std::string("?"));
      c.expect(r.genus == want[i] && r.certificate && verify_certificate(*r.certificate),
               "wrong genus for " + gs[i].first);
    }
    c.expect(oracle::exhaustive_genus(complete_graph(5)) == 1, "K5 disagrees with full enumeration");
    c.expect(oracle::exhaustive_genus(complete_bipartite(3, 3)) == 1, "K3,3 disagrees with full enumeration");
    c.info = detail::join(got, ",");
  }));

  auto refutation = [&s](const Product& p, std::chrono::milliseconds wall) {
    return [&s, p, wall](Checks& c) {
      SearchOptions opt;
      opt.budget.wall = wall;
      opt.jobs = s.jobs;
      auto r = decide_genus_le(p, 1, opt);
      c.info = "nodes=" + std::to_string(r.stats.nodes) + " prunes=" + std::to_string(r.stats.prunes) +
               " subproblems=" + std::to_string(r.stats.subproblems);
      if (r.verdict == Verdict::budget_exhausted)
        c.budget_hit = true;
      else
        c.expect(r.verdict == Verdict::refuted, "found a torus embedding");
    };
  };
  if (s.profile == Profile::quick)
    out.push_back(detail::skipped(9, "K4xP3 is not toroidal", "decide_genus_le", 3600));
  else
    out.push_back(detail::run(9, "K4xP3 is not toroidal", "decide_genus_le", 3600,
                              refutation(cartesian_product(complete_graph(4), path_graph(3)), std::chrono::hours(1))));
  if (s.profile != Profile::extended)
    out.push_back(detail::skipped(10, "HxP2 is not toroidal", "decide_genus_le",
                                  std::chrono::duration<double>(s.extended_budget).count()));
  else
    out.push_back(detail::run(10, "HxP2 is not toroidal", "decide_genus_le",
                              std::chrono::duration<double>(s.extended_budget).count() + 60,
                              refutation(cartesian_product(reference_h(), path_graph(2)), s.extended_budget)));

  out.push_back(detail::run(11, "counting eliminations of torus face distributions", "mixed_face_feasibility", 60,
                            [](Checks& c) {
                              std::vector<std::string> notes;
                              auto check = [&](const std::string& name, const Product& p) {
                                for (const auto& d : face_distributions(p.graph.order(), p.graph.size(), 1, 3,
                                                                        triangle_cap(p))) {
                                  auto rep = mixed_face_feasibility(p, d);
                                  c.expect(rep.verdict == Feasibility::infeasible && !rep.reasons.empty(),
                                           name + " " + d.str() + " not eliminated");
                                  notes.push_back(name + " " + d.str() + ": " + rep.closed_by);
                                }
                              };
                              check("K4xP3", cartesian_product(complete_graph(4), path_graph(3)));
                              check("HxP2", cartesian_product(reference_h(), path_graph(2)));
                              c.info = detail::join(notes, "; ");
                            }));

  out.push_back(detail::run(12, "minor closure, K4 minors, K6xP2 bounds", "minor/genus_search", 300,
                            [&s](Checks& c) {
                              std::mt19937 rng(s.seed);
                              for (int i = 0; i < 200; ++i) {
                                Graph g = oracle::random_connected(rng, 3 + i % 4, 0.4);
                                Graph h = oracle::random_connected(rng, 2 + i % 3, 0.4);
                                auto mg = oracle::random_minor(rng, g);
                                auto mh = oracle::random_minor(rng, h);
                                MinorWitness wg{mg.branch_sets, mg.edge_map};
                                MinorWitness wh{mh.branch_sets, mh.edge_map};
                                auto minor = cartesian_product(mg.minor, mh.minor);
                                auto host = cartesian_product(g, h);
                                auto w = product_minor_witness(wg, wh, minor, host);
                                c.expect(verify_witness(w, minor.graph, host.graph), "product witness rejected");
                              }
                              int checked = 0;
                              auto k4 = [&](const Graph& g) {
                                auto r = find_k4_minor(g);
                                c.expect(r.verdict == MinorVerdict::found && r.witness &&
                                             verify_witness(*r.witness, complete_graph(4), g),
                                         "no K4 witness");
                                ++checked;
                              };
                              for (int n = 4; n <= 6; ++n)
                                for (const auto& g : oracle::connected_graphs(n))
                                  if (vertex_connectivity(g) >= 3) k4(g);
                              for (int i = 0; i < 300; ++i) k4(oracle::random_three_connected(rng, 7 + i % 3));
                              auto k6p2 = cartesian_product(complete_graph(6), path_graph(2));
                              c.expect(euler_lower_bound(k6p2.graph) == 1, "K6xP2 Euler bound is not 1");
                              c.expect(!triangular_embedding_possible(k6p2.graph), "K6xP2 triangulation not excluded");
                              c.info = std::to_string(checked) + " 3-connected graphs";
                            }));

  out.push_back(detail::run(13, "H_n family", "construct_Hn", 120, [](Checks& c) {
    Graph h5 = construct_Hn(5);
    c.expect(isomorphic(h5, reference_h()), "H5 is not isomorphic to H");
    for (int n = 5; n <= 8; ++n) {
      Graph h = construct_Hn(n);
      const std::string nm = "H" + std::to_string(n);
      c.expect(h.order() == n + 3 && h.size() == 2 * n + 3, nm + " has wrong size");
      c.expect(is_planar(h), nm + " not planar");
      c.expect(vertex_connectivity(h) == 3, nm + " not 3-connected");
      c.expect(is_outer_cylindrical(h).verdict == OcVerdict::noc, nm + " not NOC");
      auto m = is_minor(h5, h);
      c.expect(m.verdict == MinorVerdict::found && m.witness && verify_witness(*m.witness, h5, h),
               "H5 minor witness missing in " + nm);
    }
  }));

  out.push_back(detail::run(14, "search agrees with full rotation enumeration (|V| <= 6)", "decide_genus_le", 600,
                            [](Checks& c) {
                              int graphs = 0;
                              for (int n = 1; n <= 6; ++n)
                                for (const auto& g : oracle::connected_graphs(n)) {
                                  if (oracle::rotation_space(g, 10'000'000) > 10'000'000) continue;
                                  ++graphs;
                                  const int want = oracle::exhaustive_genus(g);
                                  for (int t = std::max(0, want - 1); t <= want; ++t) {
                                    auto r = decide_genus_le(g, t);
                                    const Verdict expect_v = t >= want ? Verdict::embeddable : Verdict::refuted;
                                    c.expect(r.verdict == expect_v,
                                             "disagreement on " + serialize_graph6(g) + " at genus " + std::to_string(t));
                                  }
                                }
                              c.info = std::to_string(graphs) + " graphs";
                            }));
  return out;
}

inline nlohmann::json to_json(const std::vector<Claim>& claims) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : claims)
    arr.push_back({{"id", c.id},
                   {"claim", c.name},
                   {"engine", c.engine},
                   {"verdict", to_string(c.status)},
                   {"detail", c.detail},
                   {"runtime_ms", c.wall_ms},
                   {"limit_ms", c.limit_ms}});
  return arr;
}

}  // namespace cartgenus::claims
