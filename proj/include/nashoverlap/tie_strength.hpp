#pragma once

#include <vector>

#include "nashoverlap/graph.hpp"

namespace nashoverlap {

/// Per-edge tie strengths and their per-vertex sums.
///
/// t(i,j) = w(i,j) + sum over common neighbors k of (w(i,k) + w(j,k)),
/// t_i    = sum over edges (i,j) of t(i,j).
struct TieStrengths {
  std::vector<double> edge;    // t(i,j), indexed by EdgeId
  std::vector<double> vertex;  // t_i
  double vertex_total = 0;     // W = sum_i t_i
  double edge_total = 0;       // sum over edges of t(i,j); W = 2 * edge_total
};

/// Sorted-neighbor-list intersection per edge, O(sum over edges of
/// d(i)+d(j)). Common neighbors are visited in ascending id order, which
/// keeps the floating-point sums reproducible.
inline TieStrengths compute_tie_strengths(const Graph& g) {
  TieStrengths t;
  t.edge.resize(g.num_edges());
  t.vertex.assign(g.num_vertices(), 0.0);

  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edges()[id];
    double strength = e.w;
    auto a = g.neighbors(e.u);
    auto b = g.neighbors(e.v);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].to < b[j].to) {
        ++i;
      } else if (a[i].to > b[j].to) {
        ++j;
      } else {
        strength += a[i].weight + b[j].weight;
        ++i;
        ++j;
      }
    }
    t.edge[id] = strength;
    t.vertex[e.u] += strength;
    t.vertex[e.v] += strength;
    t.edge_total += strength;
  }
  for (double v : t.vertex) t.vertex_total += v;
  return t;
}

}  // namespace nashoverlap
