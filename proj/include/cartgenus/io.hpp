// graph6 and JSON adjacency-list encodings.
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "graph.hpp"

namespace cartgenus {

/// Malformed graph6 input; `offset` is the byte where decoding failed.
class ParseError : public GraphError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : GraphError(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Decode a graph6 string (optional ">>graph6<<" header, trailing newline
/// tolerated). Vertices are labeled "0".."n-1" in file order.
inline Graph parse_graph6(std::string_view text) {
  constexpr std::string_view header = ">>graph6<<";
  std::size_t pos = 0;
  if (text.substr(0, header.size()) == header) pos = header.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);

  auto byte_at = [&](std::size_t i) -> int {
    if (i >= text.size()) throw ParseError("graph6: unexpected end of input", i);
    int c = static_cast<unsigned char>(text[i]);
    if (c < 63 || c > 126) throw ParseError("graph6: byte out of range", i);
    return c - 63;
  };

  if (pos >= text.size()) throw ParseError("graph6: empty input", pos);
  long n = 0;
  if (byte_at(pos) < 63) {
    n = byte_at(pos);
    pos += 1;
  } else if (pos + 1 < text.size() && static_cast<unsigned char>(text[pos + 1]) == 126) {
    for (int k = 0; k < 6; ++k) n = (n << 6) | byte_at(pos + 2 + static_cast<std::size_t>(k));
    pos += 8;
  } else {
    for (int k = 0; k < 3; ++k) n = (n << 6) | byte_at(pos + 1 + static_cast<std::size_t>(k));
    pos += 4;
  }
  if (n > 100000) throw ParseError("graph6: vertex count too large for this library", pos);

  const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t nbytes = (bits + 5) / 6;
  if (text.size() - pos != nbytes)
    throw ParseError("graph6: expected " + std::to_string(nbytes) + " data bytes, found " +
                         std::to_string(text.size() - pos),
                     text.size() < pos + nbytes ? text.size() : pos + nbytes);
  std::vector<Edge> edges;
  std::size_t k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      int chunk = byte_at(pos + k / 6);
      if ((chunk >> (5 - static_cast<int>(k % 6))) & 1) edges.push_back({i, j});
    }
  // Padding bits must be zero.
  if (bits % 6 != 0) {
    int chunk = byte_at(pos + nbytes - 1);
    int pad = static_cast<int>(6 - bits % 6);
    if (chunk & ((1 << pad) - 1)) throw ParseError("graph6: nonzero padding", pos + nbytes - 1);
  }
  return Graph::from_edges(static_cast<int>(n), std::move(edges));
}

/// Encode in graph6 using the graph's vertex order (labels are dropped).
inline std::string serialize_graph6(const Graph& g) {
  const long n = g.order();
  std::string out;
  if (n < 63) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n < 258048) {
    out.push_back(126);
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(63 + ((n >> s) & 63)));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(63 + ((n >> s) & 63)));
  }
  int chunk = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      chunk = (chunk << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + chunk));
        chunk = 0;
        filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>(63 + (chunk << (6 - filled))));
  return out;
}

// ---------------------------------------------------------------------------
// JSON: {"vertices": [...], "edges": [[u, v], ...], "edge_classes": [...]}

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["vertices"] = g.labels();
  auto edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({g.label(e.u), g.label(e.v)});
  j["edges"] = std::move(edges);
  return j;
}

inline nlohmann::json product_to_json(const Product& p) {
  auto j = graph_to_json(p.graph);
  auto cls = nlohmann::json::array();
  for (const auto& c : p.classes)
    cls.push_back({{"kind", c.is_connector() ? "connector" : "fiber"}, {"index", c.index}});
  j["edge_classes"] = std::move(cls);
  return j;
}

inline Graph graph_from_json(const nlohmann::json& j) {
  if (!j.contains("vertices") || !j.contains("edges")) throw GraphError("graph JSON needs 'vertices' and 'edges'");
  std::vector<std::string> labels;
  for (const auto& v : j.at("vertices")) labels.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw GraphError("graph JSON: each edge must be a pair");
    auto s = [](const nlohmann::json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
    edges.emplace_back(s(e[0]), s(e[1]));
  }
  return Graph::from_labels(std::move(labels), edges);
}

}  // namespace cartgenus
