#pragma once

#include <stdexcept>
#include <vector>

#include "nashoverlap/cover.hpp"
#include "nashoverlap/graph.hpp"

namespace nashoverlap {

/// Weighted Newman modularity of a disjoint partition:
///   Q = sum_c [ w_in(c)/w_total - (w_deg(c) / (2*w_total))^2 ].
/// Overlapping covers are rejected; the measure is only used for
/// disjoint comparisons.
inline double modularity(const Graph& g, const Cover& partition) {
  if (partition.universe_size() != g.num_vertices())
    throw std::invalid_argument("partition universe does not match graph");
  if (!partition.disjoint_partition())
    throw std::invalid_argument("modularity requires a disjoint partition");
  if (g.num_edges() == 0)
    throw std::invalid_argument("modularity is undefined on an empty graph");

  const std::size_t c = partition.community_count();
  std::vector<double> internal_weight(c, 0.0), degree_weight(c, 0.0);
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edges()[id];
    if (partition.memberships(e.u)[0] == partition.memberships(e.v)[0])
      internal_weight[partition.memberships(e.u)[0]] += e.w;
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    degree_weight[partition.memberships(v)[0]] += g.weighted_degree(v);

  const double w_total = g.total_weight();
  double q = 0;
  for (std::size_t i = 0; i < c; ++i) {
    const double degree_fraction = degree_weight[i] / (2.0 * w_total);
    q += internal_weight[i] / w_total - degree_fraction * degree_fraction;
  }
  return q;
}

}  // namespace nashoverlap
