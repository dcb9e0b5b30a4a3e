#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nashoverlap/cover.hpp"
#include "nashoverlap/graph.hpp"
#include "nashoverlap/phase1.hpp"
#include "nashoverlap/rng.hpp"

namespace nashoverlap {

struct Phase2Config {
  double alpha = 0.5;  // overlap parameter; 1 forces a disjoint cover
  std::uint64_t master_seed = 0;
  std::uint32_t max_rounds = 1000;

  void validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0))
      throw std::invalid_argument("alpha must be in (0, 1]");
    if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  }
};

/// Mutable membership sets driven by the second-phase dynamics.
/// Community ids are fixed at initialization; communities can only lose
/// or gain members, never appear, so an emptied community is dead for
/// the rest of the run and is dropped from the final cover.
struct MembershipState {
  std::uint32_t community_count = 0;
  std::vector<std::vector<std::uint32_t>> member_of;  // per vertex, sorted

  static MembershipState from_partition(const IntermediatePartition& p) {
    MembershipState s;
    s.community_count = static_cast<std::uint32_t>(p.components.size());
    s.member_of.resize(p.component_id.size());
    for (Vertex v = 0; v < p.component_id.size(); ++v)
      s.member_of[v] = {p.component_id[v]};
    return s;
  }

  static MembershipState from_cover(const Cover& c) {
    MembershipState s;
    s.community_count = static_cast<std::uint32_t>(c.community_count());
    s.member_of.resize(c.universe_size());
    for (Vertex v = 0; v < c.universe_size(); ++v)
      s.member_of[v].assign(c.memberships(v).begin(), c.memberships(v).end());
    return s;
  }

  Cover to_cover() const {
    std::vector<std::vector<Vertex>> communities(community_count);
    for (Vertex v = 0; v < member_of.size(); ++v)
      for (std::uint32_t c : member_of[v]) communities[c].push_back(v);
    return Cover(static_cast<Vertex>(member_of.size()),
                 std::move(communities));
  }
};

/// Community-closeness p(i,C): sum of edge-closeness values from i to
/// its neighbors inside C. Zero when i has no neighbor in C.
inline double community_closeness(const Graph& g, const EdgeCloseness& cl,
                                  const Cover& cover, Vertex v,
                                  std::uint32_t community) {
  double sum = 0;
  for (const Arc& a : g.neighbors(v)) {
    auto m = cover.memberships(a.to);
    if (std::binary_search(m.begin(), m.end(), community))
      sum += cl.p[a.edge];
  }
  return sum;
}

struct Phase2Workspace {
  std::vector<double> closeness_acc;  // per community, cleared via touched
  std::vector<std::uint32_t> touched;

  void ensure(std::uint32_t communities) {
    if (closeness_acc.size() < communities)
      closeness_acc.resize(communities, 0.0);
  }
};

struct Phase2Step {
  std::vector<std::uint32_t> candidates;  // threshold-qualified, sorted
  bool accepted = false;
  double current_utility = 0;
  double candidate_utility = 0;
};

/// One move of the community-closeness game: the candidate set is every
/// adjacent community whose closeness is at least alpha times the
/// maximum (at alpha == 1 it degenerates to the smallest-id argmax so
/// that exact ties cannot create overlap in disjoint mode). The move is
/// taken only if it strictly raises the vertex's summed closeness.
/// With all-zero closeness the membership is left unchanged.
inline Phase2Step phase2_step(MembershipState& state, const Graph& g,
                              const EdgeCloseness& cl, Vertex v, double alpha,
                              Phase2Workspace* ws = nullptr) {
  Phase2Workspace local;
  if (!ws) ws = &local;
  ws->ensure(state.community_count);
  for (std::uint32_t c : ws->touched) ws->closeness_acc[c] = 0.0;
  ws->touched.clear();

  for (const Arc& a : g.neighbors(v)) {
    double p = cl.p[a.edge];
    if (p == 0.0) continue;
    for (std::uint32_t c : state.member_of[a.to]) {
      if (ws->closeness_acc[c] == 0.0) ws->touched.push_back(c);
      ws->closeness_acc[c] += p;
    }
  }

  Phase2Step step;
  double max_closeness = 0;
  for (std::uint32_t c : ws->touched)
    max_closeness = std::max(max_closeness, ws->closeness_acc[c]);
  if (max_closeness <= 0.0) return step;  // no adjacent community reachable

  if (alpha == 1.0) {
    std::uint32_t best = UINT32_MAX;
    for (std::uint32_t c : ws->touched)
      if (ws->closeness_acc[c] == max_closeness && c < best) best = c;
    step.candidates = {best};
  } else {
    const double threshold = alpha * max_closeness;
    for (std::uint32_t c : ws->touched)
      if (ws->closeness_acc[c] >= threshold) step.candidates.push_back(c);
    std::sort(step.candidates.begin(), step.candidates.end());
  }

  for (std::uint32_t c : state.member_of[v])
    step.current_utility += ws->closeness_acc[c];
  for (std::uint32_t c : step.candidates)
    step.candidate_utility += ws->closeness_acc[c];

  if (step.candidate_utility > step.current_utility) {
    step.accepted = true;
    state.member_of[v] = step.candidates;
  }
  return step;
}

struct Phase2Result {
  Cover cover;
  std::uint32_t passes = 0;
  bool converged = false;
  std::uint64_t accepted_moves = 0;
};

/// Refine the intermediate partition into the converged overlapping
/// cover. One random vertex permutation (from master_seed) is reused
/// every pass; passes repeat until none accepts a move. Output drops
/// emptied communities and merges duplicates.
inline Phase2Result run_phase2(const Graph& g, const EdgeCloseness& cl,
                               const IntermediatePartition& partition,
                               const Phase2Config& cfg) {
  cfg.validate();
  if (cl.p.size() != g.num_edges())
    throw std::invalid_argument("closeness does not cover all edges");
  if (partition.component_id.size() != g.num_vertices())
    throw std::invalid_argument("partition does not cover all vertices");

  MembershipState state = MembershipState::from_partition(partition);
  // Index offset 1<<32 keeps this stream distinct from every per-game
  // seed derived from the same master.
  SplitMix64 order_rng(derive_seed(cfg.master_seed, std::uint64_t{1} << 32));
  const std::vector<Vertex> order =
      random_permutation(g.num_vertices(), order_rng);

  Phase2Result result;
  Phase2Workspace ws;
  for (std::uint32_t pass = 1; pass <= cfg.max_rounds; ++pass) {
    std::uint64_t accepted = 0;
    for (Vertex v : order) {
      if (phase2_step(state, g, cl, v, cfg.alpha, &ws).accepted) ++accepted;
    }
    result.accepted_moves += accepted;
    result.passes = pass;
    if (accepted == 0) {
      result.converged = true;
      break;
    }
  }
  result.cover = state.to_cover();
  return result;
}

/// Phi_2 = 1/2 * sum over vertices i and communities C of i of p(i,C).
inline double potential_phi2(const Graph& g, const EdgeCloseness& cl,
                             const MembershipState& state) {
  Phase2Workspace ws;
  ws.ensure(state.community_count);
  double total = 0;
  for (Vertex v = 0; v < state.member_of.size(); ++v) {
    for (std::uint32_t c : ws.touched) ws.closeness_acc[c] = 0.0;
    ws.touched.clear();
    for (const Arc& a : g.neighbors(v)) {
      double p = cl.p[a.edge];
      if (p == 0.0) continue;
      for (std::uint32_t c : state.member_of[a.to]) {
        if (ws.closeness_acc[c] == 0.0) ws.touched.push_back(c);
        ws.closeness_acc[c] += p;
      }
    }
    for (std::uint32_t c : state.member_of[v]) total += ws.closeness_acc[c];
  }
  return 0.5 * total;
}

inline double potential_phi2(const Graph& g, const EdgeCloseness& cl,
                             const Cover& cover) {
  return potential_phi2(g, cl, MembershipState::from_cover(cover));
}

}  // namespace nashoverlap
