#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nashoverlap/cover.hpp"
#include "nashoverlap/graph.hpp"
#include "nashoverlap/phase1.hpp"
#include "nashoverlap/stats.hpp"
#include "nashoverlap/tie_strength.hpp"

namespace nashoverlap {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line,
                                                  char sep = ' ') {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() &&
           (line[i] == sep || line[i] == '\t' || line[i] == '\r'))
      ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != sep && line[i] != '\t' &&
           line[i] != '\r')
      ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

inline Label parse_label(std::string_view s, std::size_t line) {
  Label value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(line, "expected a vertex id, got '" + std::string(s) + "'");
  return value;
}

inline double parse_real(std::string_view s, std::size_t line) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(line, "expected a number, got '" + std::string(s) + "'");
  return value;
}

}  // namespace detail

struct EdgeListOptions {
  bool weighted = false;
  bool one_indexed = false;
};

/// Whitespace-delimited edge list, "u v" or "u v w" per line, '#'
/// comments. Duplicate edges are merged by summing weights, self-loops
/// dropped and tallied, unweighted edges get unit weight. Distinct
/// labels are remapped (sorted) to contiguous internal ids.
inline Graph read_edge_list(std::istream& in,
                            const EdgeListOptions& opts = {}) {
  std::vector<std::tuple<Label, Label, double>> triples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = detail::split_fields(line);
    if (fields.empty() || fields[0][0] == '#') continue;
    const std::size_t expected = opts.weighted ? 3 : 2;
    if (fields.size() != expected)
      throw ParseError(line_no, "expected " + std::to_string(expected) +
                                    " fields, got " +
                                    std::to_string(fields.size()));
    Label u = detail::parse_label(fields[0], line_no);
    Label v = detail::parse_label(fields[1], line_no);
    if (opts.one_indexed && (u == 0 || v == 0))
      throw ParseError(line_no, "vertex id 0 in a one-indexed edge list");
    double w = 1.0;
    if (opts.weighted) {
      w = detail::parse_real(fields[2], line_no);
      if (!(w > 0.0)) throw ParseError(line_no, "nonpositive edge weight");
    }
    triples.emplace_back(u, v, w);
  }
  if (triples.empty()) throw ParseError(line_no, "empty graph");
  Graph g = Graph::from_labeled_edges(triples);
  if (g.num_edges() == 0) throw ParseError(line_no, "empty graph");
  return g;
}

/// Canonical edge order (ascending label pairs), one edge per line.
inline void write_edge_list(std::ostream& out, const Graph& g,
                            bool weighted = false) {
  for (const Edge& e : g.edges()) {
    out << g.label(e.u) << ' ' << g.label(e.v);
    if (weighted) out << ' ' << format_double(e.w);
    out << '\n';
  }
}

enum class CoverFormat {
  community_per_line,   // space-separated vertex ids, one community per line
  vertex_memberships,   // "vertex_id comm_id [comm_id ...]" per line
};

/// Cover in label space. Empty lines are skipped; a vertex-memberships
/// line must name at least one community.
inline std::vector<std::vector<Label>> read_cover_communities(
    std::istream& in, CoverFormat format) {
  std::vector<std::vector<Label>> communities;
  std::map<Label, std::vector<Label>> keyed;  // community label -> members
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = detail::split_fields(line);
    if (fields.empty() || fields[0][0] == '#') continue;
    if (format == CoverFormat::community_per_line) {
      std::vector<Label> community;
      community.reserve(fields.size());
      for (auto f : fields)
        community.push_back(detail::parse_label(f, line_no));
      communities.push_back(std::move(community));
    } else {
      if (fields.size() < 2)
        throw ParseError(line_no, "expected 'vertex comm [comm ...]'");
      Label v = detail::parse_label(fields[0], line_no);
      for (std::size_t i = 1; i < fields.size(); ++i)
        keyed[detail::parse_label(fields[i], line_no)].push_back(v);
    }
  }
  if (format == CoverFormat::vertex_memberships)
    for (auto& [label, members] : keyed)
      communities.push_back(std::move(members));
  if (communities.empty()) throw ParseError(line_no, "empty cover");
  return communities;
}

/// Map a label-space cover onto a graph's vertices; unknown labels are
/// rejected.
inline Cover index_cover(const std::vector<std::vector<Label>>& communities,
                         const Graph& g) {
  std::vector<std::vector<Vertex>> indexed(communities.size());
  for (std::size_t c = 0; c < communities.size(); ++c) {
    indexed[c].reserve(communities[c].size());
    for (Label l : communities[c]) {
      Vertex v = 0;
      if (!g.find_vertex(l, v))
        throw std::invalid_argument("unknown vertex label " +
                                    std::to_string(l));
      indexed[c].push_back(v);
    }
  }
  return Cover(g.num_vertices(), std::move(indexed));
}

/// Map a label-space cover onto an explicit sorted universe.
inline Cover index_cover(const std::vector<std::vector<Label>>& communities,
                         const std::vector<Label>& sorted_universe) {
  std::vector<std::vector<Vertex>> indexed(communities.size());
  for (std::size_t c = 0; c < communities.size(); ++c) {
    indexed[c].reserve(communities[c].size());
    for (Label l : communities[c]) {
      auto it = std::lower_bound(sorted_universe.begin(),
                                 sorted_universe.end(), l);
      if (it == sorted_universe.end() || *it != l)
        throw std::invalid_argument("unknown vertex label " +
                                    std::to_string(l));
      indexed[c].push_back(static_cast<Vertex>(it - sorted_universe.begin()));
    }
  }
  return Cover(static_cast<Vertex>(sorted_universe.size()),
               std::move(indexed));
}

/// Community-per-line with original labels; members ascending, and the
/// Cover's canonical order already sorts communities by smallest member.
inline void write_cover(std::ostream& out, const Cover& cover,
                        const std::vector<Label>& labels) {
  for (const auto& community : cover.communities()) {
    for (std::size_t i = 0; i < community.size(); ++i) {
      if (i) out << ' ';
      out << labels[community[i]];
    }
    out << '\n';
  }
}

/// Per-edge dump "u,v,w,t,p" with original labels.
inline void write_closeness_csv(std::ostream& out, const Graph& g,
                                const TieStrengths& t,
                                const EdgeCloseness& closeness) {
  out << "u,v,w,t,p\n";
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edges()[id];
    out << g.label(e.u) << ',' << g.label(e.v) << ',' << format_double(e.w)
        << ',' << format_double(t.edge[id]) << ','
        << format_double(closeness.p[id]) << '\n';
  }
}

/// Read back a closeness dump against the graph it was written for.
/// Every graph edge must be present exactly once.
inline EdgeCloseness read_closeness_csv(std::istream& in, const Graph& g) {
  EdgeCloseness closeness;
  closeness.p.assign(g.num_edges(), -1.0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("u,", 0) == 0) continue;  // header
    auto fields = detail::split_fields(line, ',');
    if (fields.empty()) continue;
    if (fields.size() != 5)
      throw ParseError(line_no, "expected 5 comma-separated fields");
    Label lu = detail::parse_label(fields[0], line_no);
    Label lv = detail::parse_label(fields[1], line_no);
    double p = detail::parse_real(fields[4], line_no);
    if (!(p >= 0.0 && p <= 1.0))
      throw ParseError(line_no, "closeness outside [0, 1]");
    Vertex u = 0, v = 0;
    if (!g.find_vertex(lu, u) || !g.find_vertex(lv, v))
      throw ParseError(line_no, "edge endpoint not in graph");
    bool found = false;
    for (const Arc& a : g.neighbors(u)) {
      if (a.to == v) {
        closeness.p[a.edge] = p;
        found = true;
        break;
      }
    }
    if (!found) throw ParseError(line_no, "edge not in graph");
  }
  for (double p : closeness.p)
    if (p < 0.0)
      throw std::invalid_argument("closeness file does not cover all edges");
  return closeness;
}

/// FNV-1a 64-bit digest, used for input/output fingerprints in run
/// manifests.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace nashoverlap
