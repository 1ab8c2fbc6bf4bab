// cartgenus: command-line front end for the cartgenus library.
//
// Every command prints one JSON report on stdout; --pretty switches to a
// human rendering. Exit codes: 0 positive verdict, 1 negative verdict,
// 2 usage error, 3 budget exhausted.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <unistd.h>

#include <CLI11.hpp>
#include <cartgenus/cartgenus.hpp>
#include <json.hpp>

#include "claims.hpp"

using namespace cartgenus;
using nlohmann::json;

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string spec;
  Graph graph;
  std::optional<Product> product;
};

// Named small graphs usable on their own and as product factors:
// Kn, Pn, Cn, Wn, Ka_b, refh, and the wheel:/c2n:/hn: generators.
std::optional<Graph> named_graph(const std::string& s) {
  std::smatch m;
  static const std::regex kn("K(\\d+)"), pn("P(\\d+)"), cn("C(\\d+)"), wn("W(\\d+)"), kab("K(\\d+)_(\\d+)");
  static const std::regex gen("(wheel|c2n|hn):(\\d+)");
  auto num = [&](int i) { return std::stoi(m[i].str()); };
  if (std::regex_match(s, m, kn)) return complete_graph(num(1));
  if (std::regex_match(s, m, pn)) return path_graph(num(1));
  if (std::regex_match(s, m, cn)) return cycle_graph(num(1));
  if (std::regex_match(s, m, wn)) return wheel(num(1));
  if (std::regex_match(s, m, kab)) return complete_bipartite(num(1), num(2));
  if (s == "refh") return reference_h();
  if (std::regex_match(s, m, gen)) {
    const std::string kind = m[1].str();
    if (kind == "wheel") return wheel(num(2));
    if (kind == "c2n") return squared_cycle(2 * num(2));
    return construct_Hn(num(2));
  }
  return std::nullopt;
}

Graph graph_from_text(const std::string& text) {
  std::size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && text[i] == '{') return graph_from_json(json::parse(text));
  std::string line = text.substr(0, text.find('\n'));
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
  return parse_graph6(line);
}

Input resolve(const std::string& spec) {
  try {
    if (spec.rfind("product:", 0) == 0) {
      const std::string rest = spec.substr(8);
      const auto comma = rest.find(',');
      if (comma == std::string::npos) throw UsageError("product spec needs two factors: product:A,B");
      auto a = named_graph(rest.substr(0, comma));
      auto b = named_graph(rest.substr(comma + 1));
      if (!a || !b) throw UsageError("unknown factor in '" + spec + "'");
      Product p = cartesian_product(*a, *b);
      return {spec, p.graph, p};
    }
    if (auto g = named_graph(spec)) return {spec, *g, std::nullopt};
    const std::string path = spec.rfind("@", 0) == 0 ? spec.substr(1) : spec;
    if (std::ifstream in{path}; in) {
      std::stringstream ss;
      ss << in.rdbuf();
      return {spec, graph_from_text(ss.str()), std::nullopt};
    }
    return {spec, parse_graph6(spec), std::nullopt};
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("cannot read graph '" + spec + "': " + e.what());
  }
}

std::chrono::milliseconds parse_duration(const std::string& s) {
  static const std::regex re("(\\d+(?:\\.\\d+)?)(ms|s|m|h|d)?");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw UsageError("bad duration '" + s + "' (examples: 500ms, 30s, 10m, 1h)");
  const double x = std::stod(m[1].str());
  const std::string unit = m[2].matched ? m[2].str() : "s";
  const double scale = unit == "ms" ? 1 : unit == "s" ? 1e3 : unit == "m" ? 6e4 : unit == "h" ? 3.6e6 : 8.64e7;
  return std::chrono::milliseconds(static_cast<std::int64_t>(x * scale));
}

struct Common {
  bool pretty = false;
  std::string budget;
  std::uint64_t nodes = 0;
  int jobs = 1;
  std::uint32_t seed = 1;
};

SearchOptions search_options(const Common& c, bool required) {
  if (required && c.budget.empty() && c.nodes == 0)
    throw UsageError("search commands need an explicit --budget or --nodes");
  SearchOptions opt;
  if (!c.budget.empty()) opt.budget.wall = parse_duration(c.budget);
  opt.budget.max_nodes = c.nodes;
  opt.jobs = std::max(1, c.jobs);
  return opt;
}

bool use_color() { return std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO); }

std::string paint(const std::string& s, const char* code) {
  return use_color() ? std::string("\033[") + code + "m" + s + "\033[0m" : s;
}

std::string verdict_colored(const std::string& v) {
  static const std::set<std::string> good{"embeddable", "found", "oc", "planar", "toroidal", "pass", "feasible"};
  static const std::set<std::string> bad{"refuted", "none", "noc", "nonplanar", "non_toroidal", "fail", "infeasible"};
  if (good.count(v)) return paint(v, "32");
  if (bad.count(v)) return paint(v, "31");
  return paint(v, "33");
}

// Output of one command: the report plus exit code.
struct Report {
  json result;
  int code = kPositive;
  std::string pretty;  // empty: pretty mode falls back to indented JSON
};

void emit(const std::string& command, const std::vector<std::string>& inputs, const Report& r, double wall_ms,
          const Common& c) {
  if (!c.pretty) {
    json j{{"command", command}, {"inputs", inputs}, {"result", r.result}, {"wall_ms", wall_ms}};
    std::cout << j.dump() << "\n";
    return;
  }
  std::cout << paint(command, "1");
  for (const auto& i : inputs) std::cout << " " << i;
  std::cout << "\n";
  if (r.result.contains("verdict") && r.result["verdict"].is_string())
    std::cout << "verdict: " << verdict_colored(r.result["verdict"].get<std::string>()) << "\n";
  std::cout << (r.pretty.empty() ? r.result.dump(2) + "\n" : r.pretty);
  std::cout << "wall: " << wall_ms << " ms\n";
}

int verdict_code(Verdict v) {
  return v == Verdict::embeddable ? kPositive : v == Verdict::refuted ? kNegative : kBudget;
}

// --- commands --------------------------------------------------------------

Report cmd_product(const Input& a, const Input& b) {
  Product p = cartesian_product(a.graph, b.graph);
  Report r;
  r.result = product_to_json(p);
  r.result["graph6"] = serialize_graph6(p.graph);
  return r;
}

Report cmd_decide(const Input& in, int target, const SearchOptions& opt, const std::string& save,
                  const std::string& resume) {
  std::vector<char> mask = in.product && in.product->layered_by_tree() ? detail::connector_mask(*in.product)
                                                                       : std::vector<char>{};
  SearchOutcome o;
  const Graph* g = &in.graph;
  FrontierSnapshot snap;
  if (!resume.empty()) {
    std::ifstream f(resume);
    if (!f) throw UsageError("cannot open frontier file '" + resume + "'");
    snap = frontier_from_json(json::parse(f));
    if (snap.target != target) throw UsageError("frontier was saved for a different genus target");
    if (snap.graph.edges() != in.graph.edges() || snap.graph.order() != in.graph.order())
      throw UsageError("frontier was saved for a different graph");
    o = resume_genus_le(snap.graph, target, snap.frontier, opt, snap.connector);
    o.target = target;
    g = &snap.graph;
    mask = snap.connector;
  } else {
    o = in.product ? decide_genus_le(*in.product, target, opt) : decide_genus_le(in.graph, target, opt);
  }
  Report r;
  r.result = outcome_to_json(*g, o);
  if (o.verdict == Verdict::budget_exhausted && !save.empty()) {
    std::ofstream f(save);
    f << frontier_to_json(*g, target, o.frontier, mask).dump() << "\n";
    r.result["frontier_file"] = save;
  }
  r.code = verdict_code(o.verdict);
  return r;
}

Report cmd_genus(const Input& in, const SearchOptions& opt) {
  auto res = genus(in.graph, opt);
  Report r;
  r.result = {{"lower_bound", res.lower_bound},
              {"nodes", res.stats.nodes},
              {"prunes", res.stats.prunes},
              {"wall_ms", res.stats.wall_ms}};
  if (res.genus) {
    r.result["verdict"] = "found";
    r.result["genus"] = *res.genus;
    r.result["certificate"] = certificate_to_json(*res.certificate);
  } else {
    r.result["verdict"] = "budget_exhausted";
    r.code = kBudget;
  }
  return r;
}

Report cmd_planar(const Input& in) {
  Report r;
  auto rs = planar_embedding(in.graph);
  r.result["verdict"] = rs ? "planar" : "nonplanar";
  if (rs && in.graph.is_connected()) r.result["certificate"] = certificate_to_json(make_certificate(in.graph, *rs));
  r.code = rs ? kPositive : kNegative;
  return r;
}

Report cmd_oc(const Input& in, const Common& c) {
  SearchBudget b;
  if (!c.budget.empty()) b.wall = parse_duration(c.budget);
  b.max_nodes = c.nodes;
  auto res = is_outer_cylindrical(in.graph, b);
  Report r;
  r.result["verdict"] = res.verdict == OcVerdict::oc ? "oc" : res.verdict == OcVerdict::noc ? "noc" : "budget_exhausted";
  if (res.certificate) r.result["certificate"] = oc_certificate_to_json(*res.certificate);
  r.code = res.verdict == OcVerdict::oc ? kPositive : res.verdict == OcVerdict::noc ? kNegative : kBudget;
  return r;
}

Report cmd_minor(const Input& m, const Input& h, const Common& c) {
  MinorBudget b;
  if (!c.budget.empty()) b.wall = parse_duration(c.budget);
  if (c.nodes) b.max_nodes = c.nodes;
  auto res = is_minor(m.graph, h.graph, b);
  Report r;
  r.result["verdict"] = res.verdict == MinorVerdict::found  ? "found"
                        : res.verdict == MinorVerdict::none ? "none"
                                                            : "budget_exhausted";
  r.result["nodes"] = res.nodes;
  if (res.witness) r.result["witness"] = witness_to_json(*res.witness, m.graph, h.graph);
  r.code = res.verdict == MinorVerdict::found ? kPositive : res.verdict == MinorVerdict::none ? kNegative : kBudget;
  return r;
}

Report cmd_facesets(const Input& in, int genus_value, std::optional<int> cap, std::optional<int> girth_opt,
                    bool analyze) {
  const auto gi = girth_opt ? girth_opt : girth(in.graph);
  if (!gi) throw UsageError("graph is acyclic");
  if (!cap && in.product) cap = triangle_cap(*in.product);
  auto ds = face_distributions(in.graph.order(), in.graph.size(), genus_value, *gi, cap);
  Report r;
  r.result["vertices"] = in.graph.order();
  r.result["edges"] = in.graph.size();
  r.result["genus"] = genus_value;
  r.result["girth"] = *gi;
  if (cap) r.result["triangle_cap"] = *cap;
  json rows = json::array();
  std::ostringstream table;
  table << "| distribution | faces |" << (analyze ? " verdict | closed by |" : "") << "\n";
  table << "|---|---|" << (analyze ? "---|---|" : "") << "\n";
  for (const auto& d : ds) {
    json row{{"distribution", distribution_to_json(d)}, {"text", d.str()}};
    table << "| " << d.str() << " | " << d.face_count() << " |";
    if (analyze) {
      if (!in.product || !in.product->layered_by_tree())
        throw UsageError("--analyze needs a product whose second factor is a tree");
      auto rep = mixed_face_feasibility(*in.product, d);
      row["feasibility"] = feasibility_to_json(rep);
      table << " " << verdict_colored(to_string(rep.verdict)) << " | " << rep.closed_by << " |";
    }
    table << "\n";
    rows.push_back(std::move(row));
  }
  r.result["distributions"] = std::move(rows);
  r.pretty = table.str();
  return r;
}

Report cmd_two_factors(const Input& in) {
  auto tfs = enumerate_two_factors(in.graph);
  Report r;
  json arr = json::array();
  std::ostringstream out;
  for (const auto& tf : tfs) {
    arr.push_back(two_factor_to_json(in.graph, tf));
    for (const auto& c : tf.cycles) {
      out << "(";
      for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << in.graph.label(c[i]);
      out << ")";
    }
    out << "\n";
  }
  r.result = {{"count", tfs.size()}, {"two_factors", arr}};
  r.pretty = out.str() + std::to_string(tfs.size()) + " two-factors\n";
  return r;
}

Report cmd_cycle_types(const Input& in, int length, bool all) {
  if (!in.product) throw UsageError("cycle-types needs a product spec (product:A,B)");
  auto sig = classify_cycles(*in.product, length, !all);
  Report r;
  json arr = json::array();
  std::ostringstream out;
  for (const auto& s : sig) {
    arr.push_back({{"signature", signature_to_json(s.signature)}, {"count", s.count}});
    out << signature_string(s.signature) << "  x" << s.count << "\n";
  }
  r.result = {{"length", length}, {"types", sig.size()}, {"signatures", arr}};
  r.pretty = out.str();
  return r;
}

Report cmd_construct(const std::string& kind, std::optional<int> n) {
  Report r;
  auto need = [&]() {
    if (!n) throw UsageError("construct " + kind + " needs a size");
    return *n;
  };
  if (kind == "k4p3" || kind == "hp2") {
    auto cert = kind == "k4p3" ? k4p3_genus2_embedding() : hp2_genus2_embedding();
    r.result = {{"graph6", serialize_graph6(cert.graph)},
                {"genus", cert.genus},
                {"faces", cert.faces.size()},
                {"distribution", distribution_to_json(distribution_of(cert.faces))},
                {"certificate", certificate_to_json(cert)}};
    return r;
  }
  Graph g = kind == "wheel" ? wheel(need())
            : kind == "c2n" ? squared_cycle(2 * need())
            : kind == "hn"  ? construct_Hn(need())
                            : throw UsageError("unknown construction '" + kind + "'");
  r.result = {{"graph6", serialize_graph6(g)}, {"graph", graph_to_json(g)}};
  return r;
}

Report cmd_classify(const Input& a, const Input& b, const SearchOptions& opt) {
  auto v = classify_product(a.graph, b.graph, opt);
  Report r;
  r.result = classification_to_json(v);
  r.code = v.kind == ClassKind::toroidal ? kPositive : v.kind == ClassKind::non_toroidal ? kNegative : kBudget;
  return r;
}

Report cmd_verify(const std::string& profile, const std::string& extended_budget, const Common& c) {
  claims::Settings s;
  s.profile = profile == "quick" ? claims::Profile::quick
              : profile == "full" ? claims::Profile::full
                                  : claims::Profile::extended;
  if (!extended_budget.empty()) s.extended_budget = parse_duration(extended_budget);
  s.jobs = std::max(1, c.jobs);
  s.seed = c.seed;
  auto ledger = claims::run_all(s);
  Report r;
  r.result = {{"profile", profile}, {"claims", claims::to_json(ledger)}};
  std::ostringstream t;
  t << "| # | claim | engine | verdict | ms | detail |\n|---|---|---|---|---|---|\n";
  bool failed = false;
  for (const auto& cl : ledger) {
    failed = failed || cl.status == claims::Status::fail;
    t << "| " << cl.id << " | " << cl.name << " | " << cl.engine << " | " << verdict_colored(claims::to_string(cl.status))
      << " | " << static_cast<long>(cl.wall_ms) << " | " << cl.detail << " |\n";
  }
  r.result["verdict"] = failed ? "fail" : "pass";
  r.pretty = t.str();
  r.code = failed ? kNegative : kPositive;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genus, planarity and torus-embedding tools for graphs and Cartesian products"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--pretty", common.pretty, "Human-readable output instead of JSON");
  app.add_option("--budget", common.budget, "Wall-clock budget, e.g. 30s, 10m, 1h");
  app.add_option("--nodes", common.nodes, "Search node budget (0: unlimited)");
  app.add_option("--jobs", common.jobs, "Worker threads for genus search")->check(CLI::PositiveNumber);
  app.add_option("--seed", common.seed, "Seed for randomized claims");
  app.fallthrough();

  std::vector<std::string> specs;
  std::string save_frontier, resume_frontier, profile = "quick", extended_budget, kind;
  int genus_value = 1, length = 4;
  std::optional<int> cap, girth_opt, le, size;
  bool analyze = false, all_cycles = false;

  const char* graph_help = "graph6 string, file (graph6 or JSON), or generator (wheel:5, c2n:3, hn:5, K4, P3, C5, "
                           "W5, K3_3, refh, product:K4,P3)";
  auto* product = app.add_subcommand("product", "Cartesian product of two graphs");
  product->add_option("graphs", specs, graph_help)->expected(2)->required();
  auto* genus_cmd = app.add_subcommand("genus", "Minimum genus, or decide genus <= k with --le");
  genus_cmd->add_option("graph", specs, graph_help)->expected(1)->required();
  genus_cmd->add_option("--le", le, "Decide genus <= k instead of computing the minimum");
  genus_cmd->add_option("--save-frontier", save_frontier, "Write the unexplored frontier here on budget exhaustion");
  genus_cmd->add_option("--resume", resume_frontier, "Resume from a saved frontier");
  auto* toroidal = app.add_subcommand("toroidal", "Decide genus <= 1");
  toroidal->add_option("graph", specs, graph_help)->expected(1)->required();
  toroidal->add_option("--save-frontier", save_frontier, "Write the unexplored frontier here on budget exhaustion");
  toroidal->add_option("--resume", resume_frontier, "Resume from a saved frontier");
  auto* planar = app.add_subcommand("planar", "Planarity test with embedding");
  planar->add_option("graph", specs, graph_help)->expected(1)->required();
  auto* oc = app.add_subcommand("oc", "Outer-cylindrical test with certificate");
  oc->add_option("graph", specs, graph_help)->expected(1)->required();
  auto* conn = app.add_subcommand("connectivity", "Vertex connectivity");
  conn->add_option("graph", specs, graph_help)->expected(1)->required();
  auto* girth_cmd = app.add_subcommand("girth", "Length of a shortest cycle");
  girth_cmd->add_option("graph", specs, graph_help)->expected(1)->required();
  auto* minor = app.add_subcommand("minor", "Is the first graph a minor of the second?");
  minor->add_option("graphs", specs, graph_help)->expected(2)->required();
  auto* facesets = app.add_subcommand("facesets", "Face-length distributions allowed by Euler's formula");
  facesets->add_option("graph", specs, graph_help)->expected(1)->required();
  facesets->add_option("--genus", genus_value, "Surface genus")->check(CLI::NonNegativeNumber);
  facesets->add_option("--cap", cap, "Upper bound on triangular faces (default: product triangle cap)");
  facesets->add_option("--girth", girth_opt, "Override the girth");
  facesets->add_flag("--analyze", analyze, "Run the mixed-face feasibility analysis on each distribution");
  auto* tfs = app.add_subcommand("two-factors", "All two-factors");
  tfs->add_option("graph", specs, graph_help)->expected(1)->required();
  auto* ctypes = app.add_subcommand("cycle-types", "Cycle signatures of a product by edge class");
  ctypes->add_option("graph", specs, graph_help)->expected(1)->required();
  ctypes->add_option("--length", length, "Cycle length")->check(CLI::Range(3, 64));
  ctypes->add_flag("--all", all_cycles, "Include cycles without connector edges");
  auto* construct = app.add_subcommand("construct", "Build a graph family member or an explicit embedding");
  construct->add_option("kind", kind, "wheel | c2n | hn | k4p3 | hp2")
      ->required()
      ->check(CLI::IsMember({"wheel", "c2n", "hn", "k4p3", "hp2"}));
  construct->add_option("n", size, "Size parameter for wheel, c2n, hn");
  auto* classify = app.add_subcommand("classify", "Decide whether G x H embeds on the torus");
  classify->add_option("graphs", specs, graph_help)->expected(2)->required();
  auto* verify = app.add_subcommand("verify-paper", "Run the reproduction claim ledger");
  verify->add_option("--profile", profile, "quick | full | extended")
      ->check(CLI::IsMember({"quick", "full", "extended"}));
  verify->add_option("--extended-budget", extended_budget, "Wall budget for the long refutation (default 24h)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::vector<Input> in;
    for (const auto& s : specs) in.push_back(resolve(s));
    Report r;
    if (name == "product") {
      r = cmd_product(in[0], in[1]);
    } else if (name == "genus") {
      auto opt = search_options(common, true);
      r = le ? cmd_decide(in[0], *le, opt, save_frontier, resume_frontier) : cmd_genus(in[0], opt);
    } else if (name == "toroidal") {
      r = cmd_decide(in[0], 1, search_options(common, true), save_frontier, resume_frontier);
    } else if (name == "planar") {
      r = cmd_planar(in[0]);
    } else if (name == "oc") {
      r = cmd_oc(in[0], common);
    } else if (name == "connectivity") {
      r.result = {{"connectivity", vertex_connectivity(in[0].graph)}};
    } else if (name == "girth") {
      auto gi = girth(in[0].graph);
      r.result = {{"girth", gi ? json(*gi) : json("acyclic")}};
    } else if (name == "minor") {
      r = cmd_minor(in[0], in[1], common);
    } else if (name == "facesets") {
      r = cmd_facesets(in[0], genus_value, cap, girth_opt, analyze);
    } else if (name == "two-factors") {
      r = cmd_two_factors(in[0]);
    } else if (name == "cycle-types") {
      r = cmd_cycle_types(in[0], length, all_cycles);
    } else if (name == "construct") {
      r = cmd_construct(kind, size);
    } else if (name == "classify") {
      r = cmd_classify(in[0], in[1], search_options(common, true));
    } else if (name == "verify-paper") {
      r = cmd_verify(profile, extended_budget, common);
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::vector<std::string> inputs = specs;
    if (name == "construct") inputs = {kind + (size ? ":" + std::to_string(*size) : "")};
    emit(name, inputs, r, ms, common);
    return r.code;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUsage;
  }
}
