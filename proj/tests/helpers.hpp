#pragma once

// Deterministic fixture builders shared by the test suites.

#include <cstdint>
#include <vector>

#include "nashoverlap/cover.hpp"
#include "nashoverlap/graph.hpp"
#include "nashoverlap/phase1.hpp"
#include "nashoverlap/rng.hpp"

namespace testutil {

using nashoverlap::Cover;
using nashoverlap::Edge;
using nashoverlap::EdgeCloseness;
using nashoverlap::Graph;
using nashoverlap::SplitMix64;
using nashoverlap::Vertex;

inline Graph make_clique(Vertex n, Vertex offset = 0, double w = 1.0) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      edges.push_back({static_cast<Vertex>(offset + u),
                       static_cast<Vertex>(offset + v), w});
  return Graph::from_edges(offset + n, std::move(edges));
}

/// Two size-`s` cliques joined by the single edge (0, s).
inline Graph two_cliques_bridge(Vertex s) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < s; ++u)
    for (Vertex v = u + 1; v < s; ++v) edges.push_back({u, v, 1.0});
  for (Vertex u = s; u < 2 * s; ++u)
    for (Vertex v = u + 1; v < 2 * s; ++v) edges.push_back({u, v, 1.0});
  edges.push_back({0, s, 1.0});
  return Graph::from_edges(2 * s, std::move(edges));
}

/// Erdos-Renyi-style graph: each pair kept with probability close to
/// `density`, weights 1 or random in [0.5, 2.5] when `weighted`.
inline Graph random_graph(Vertex n, double density, std::uint64_t seed,
                          bool weighted = false) {
  SplitMix64 rng(seed);
  const auto threshold =
      static_cast<std::uint64_t>(density * 1048576.0);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.below(1048576) >= threshold) continue;
      double w = 1.0;
      if (weighted) w = 0.5 + static_cast<double>(rng.below(2000)) / 1000.0;
      edges.push_back({u, v, w});
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

/// Random cover: a random base partition into `parts`, plus extra
/// memberships with probability ~extra_prob per vertex.
inline Cover random_cover(Vertex n, std::uint32_t parts, double extra_prob,
                          std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::vector<Vertex>> communities(parts);
  for (Vertex v = 0; v < n; ++v) {
    auto base = static_cast<std::uint32_t>(rng.below(parts));
    communities[base].push_back(v);
    if (parts > 1 &&
        rng.below(1048576) < static_cast<std::uint64_t>(extra_prob * 1048576.0)) {
      auto extra = static_cast<std::uint32_t>(rng.below(parts));
      if (extra != base) communities[extra].push_back(v);
    }
  }
  std::erase_if(communities, [](const auto& c) { return c.empty(); });
  return Cover(n, std::move(communities));
}

/// Hand-built closeness table with uniform p on every edge.
inline EdgeCloseness uniform_closeness(const Graph& g, double p,
                                       std::uint32_t games = 100) {
  EdgeCloseness c;
  c.games = games;
  c.agree.assign(g.num_edges(),
                 static_cast<std::uint32_t>(p * games + 0.5));
  c.p.assign(g.num_edges(), p);
  return c;
}

/// Random closeness values, multiples of 1/games like the real engine
/// produces.
inline EdgeCloseness random_closeness(const Graph& g, std::uint64_t seed,
                                      std::uint32_t games = 100) {
  SplitMix64 rng(seed);
  EdgeCloseness c;
  c.games = games;
  c.agree.resize(g.num_edges());
  c.p.resize(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    c.agree[e] = static_cast<std::uint32_t>(rng.below(games + 1));
    c.p[e] = static_cast<double>(c.agree[e]) / games;
  }
  return c;
}

}  // namespace testutil
