#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "nashoverlap/graph.hpp"
#include "nashoverlap/rng.hpp"
#include "nashoverlap/tie_strength.hpp"
#include "nashoverlap/union_find.hpp"

namespace nashoverlap {

struct Phase1Config {
  std::uint32_t strategies = 40;  // r
  std::uint32_t games = 100;      // k
  double beta = 0.95;             // edge-closeness threshold
  double epsilon = 0.0;           // 0 = exact best response
  std::uint64_t master_seed = 0;
  std::uint32_t max_rounds = 1000;  // cap on full passes per game

  void validate() const {
    if (strategies < 2) throw std::invalid_argument("strategies must be >= 2");
    if (games < 1) throw std::invalid_argument("games must be >= 1");
    if (!(beta > 0.0 && beta <= 1.0))
      throw std::invalid_argument("beta must be in (0, 1]");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
    if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  }
};

/// One game's strategy assignment. `agreement[v]` caches
/// sum over neighbors j with s_j == s_v of t(v,j); the utility of v is
/// agreement[v] / t_v, so the cache gives O(1) utility reads and O(d)
/// incremental updates.
struct StrategyProfile {
  std::uint32_t strategies = 0;
  std::vector<std::uint32_t> strategy;
  std::vector<double> agreement;

  double utility(Vertex v, const TieStrengths& t) const {
    return t.vertex[v] > 0 ? agreement[v] / t.vertex[v] : 0.0;
  }
};

/// Uniform independent strategy per vertex from a splitmix stream seeded
/// by `game_seed`, with the agreement cache built afterwards.
inline StrategyProfile init_profile(const Graph& g, const TieStrengths& t,
                                    std::uint32_t strategies,
                                    std::uint64_t game_seed) {
  if (strategies < 2) throw std::invalid_argument("strategies must be >= 2");
  StrategyProfile p;
  p.strategies = strategies;
  p.strategy.resize(g.num_vertices());
  SplitMix64 rng(game_seed);
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    p.strategy[v] = static_cast<std::uint32_t>(rng.below(strategies));
  p.agreement.assign(g.num_vertices(), 0.0);
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edges()[id];
    if (p.strategy[e.u] == p.strategy[e.v]) {
      p.agreement[e.u] += t.edge[id];
      p.agreement[e.v] += t.edge[id];
    }
  }
  return p;
}

/// Sum of t(i,j) over edges whose endpoints share a strategy.
inline double potential_phi1(const StrategyProfile& p, const Graph& g,
                             const TieStrengths& t) {
  double phi = 0;
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edges()[id];
    if (p.strategy[e.u] == p.strategy[e.v]) phi += t.edge[id];
  }
  return phi;
}

/// Scratch reused across best-response evaluations of one game.
struct Phase1Workspace {
  std::vector<double> class_weight;  // per strategy, cleared via `touched`
  std::vector<std::uint32_t> touched;

  void ensure(std::uint32_t strategies) {
    if (class_weight.size() < strategies) class_weight.resize(strategies, 0.0);
  }
};

struct BestResponse {
  std::uint32_t strategy = 0;  // candidate (argmax), applied only if accepted
  bool accepted = false;
  double gain = 0;  // potential gain t_v * (u_after - u_before)
};

/// Best response of `v`: candidate = argmax over strategies of the
/// agreement weight, keeping the current strategy when it attains the
/// maximum and breaking remaining ties toward the smallest index.
/// With epsilon == 0 any strict gain is accepted; with epsilon > 0 only
/// good-enough gains above (2*epsilon/n) * phi1_current are. On
/// acceptance the caches of v and its neighbors are updated in O(d(v)).
inline BestResponse best_response(StrategyProfile& p, const Graph& g,
                                  const TieStrengths& t, Vertex v,
                                  double epsilon = 0.0,
                                  double phi1_current = 0.0,
                                  Phase1Workspace* ws = nullptr) {
  Phase1Workspace local;
  if (!ws) ws = &local;
  ws->ensure(p.strategies);
  for (std::uint32_t c : ws->touched) ws->class_weight[c] = 0.0;
  ws->touched.clear();

  for (const Arc& a : g.neighbors(v)) {
    std::uint32_t c = p.strategy[a.to];
    if (ws->class_weight[c] == 0.0) ws->touched.push_back(c);
    ws->class_weight[c] += t.edge[a.edge];
  }

  const std::uint32_t current = p.strategy[v];
  const double current_weight = ws->class_weight[current];
  std::uint32_t best = current;
  double best_weight = current_weight;
  for (std::uint32_t c : ws->touched) {
    double w = ws->class_weight[c];
    if (w > best_weight || (w == best_weight && best != current && c < best)) {
      best = c;
      best_weight = w;
    }
  }

  if (best == current) return {current, false, 0.0};

  const double gain = best_weight - current_weight;  // > 0 by construction
  if (epsilon > 0.0) {
    const double threshold =
        (2.0 * epsilon / g.num_vertices()) * phi1_current;
    if (!(gain > threshold)) return {best, false, gain};
  }

  for (const Arc& a : g.neighbors(v)) {
    if (p.strategy[a.to] == current)
      p.agreement[a.to] -= t.edge[a.edge];
    else if (p.strategy[a.to] == best)
      p.agreement[a.to] += t.edge[a.edge];
  }
  p.strategy[v] = best;
  p.agreement[v] = best_weight;
  return {best, true, gain};
}

/// Exhaustive Nash check: number of vertices with a strictly improving
/// unilateral deviation.
inline std::size_t count_improving_deviations(const StrategyProfile& p,
                                              const Graph& g,
                                              const TieStrengths& t) {
  Phase1Workspace ws;
  ws.ensure(p.strategies);
  std::size_t improving = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    for (std::uint32_t c : ws.touched) ws.class_weight[c] = 0.0;
    ws.touched.clear();
    for (const Arc& a : g.neighbors(v)) {
      std::uint32_t c = p.strategy[a.to];
      if (ws.class_weight[c] == 0.0) ws.touched.push_back(c);
      ws.class_weight[c] += t.edge[a.edge];
    }
    double current = ws.class_weight[p.strategy[v]];
    for (std::uint32_t c : ws.touched) {
      if (ws.class_weight[c] > current) {
        ++improving;
        break;
      }
    }
  }
  return improving;
}

struct GameResult {
  StrategyProfile profile;
  std::uint32_t passes = 0;
  bool converged = false;
  std::uint64_t accepted_moves = 0;
  double phi1 = 0;  // incrementally maintained potential of the final profile
};

/// One local-search game: uniform random initialization, one random
/// vertex permutation reused every pass, passes repeated until a full
/// pass accepts no change (or max_rounds is hit, reported as
/// non-converged). Both random streams derive from
/// derive_seed(master_seed, game_index).
inline GameResult run_game(const Graph& g, const TieStrengths& t,
                           const Phase1Config& cfg, std::uint32_t game_index) {
  cfg.validate();
  const std::uint64_t game_seed = derive_seed(cfg.master_seed, game_index);

  GameResult result;
  result.profile =
      init_profile(g, t, cfg.strategies, derive_seed(game_seed, 0));
  SplitMix64 order_rng(derive_seed(game_seed, 1));
  const std::vector<Vertex> order =
      random_permutation(g.num_vertices(), order_rng);

  double phi1 = potential_phi1(result.profile, g, t);
  Phase1Workspace ws;
  for (std::uint32_t pass = 1; pass <= cfg.max_rounds; ++pass) {
    std::uint64_t accepted = 0;
    for (Vertex v : order) {
      BestResponse br =
          best_response(result.profile, g, t, v, cfg.epsilon, phi1, &ws);
      if (br.accepted) {
        ++accepted;
        phi1 += br.gain;
      }
    }
    result.accepted_moves += accepted;
    result.passes = pass;
    if (accepted == 0) {
      result.converged = true;
      break;
    }
  }
  result.phi1 = phi1;
  return result;
}

/// Fraction of the k games in which an edge's endpoints converged to the
/// same strategy.
struct EdgeCloseness {
  std::uint32_t games = 0;
  std::vector<std::uint32_t> agree;  // per edge, in [0, games]
  std::vector<double> p;             // agree / games
};

struct Phase1Result {
  EdgeCloseness closeness;
  std::vector<std::uint32_t> passes;         // per game
  std::vector<std::uint8_t> converged;       // per game
  std::vector<std::uint64_t> accepted_moves; // per game
  std::uint32_t nonconverged = 0;
};

/// Run the k independent games and aggregate edge agreement counts.
/// Games are distributed over `threads` workers; counts are merged by
/// commutative integer addition, so the result is bit-identical for a
/// fixed master_seed regardless of thread count.
inline Phase1Result run_phase1(const Graph& g, const TieStrengths& t,
                               const Phase1Config& cfg, unsigned threads = 1) {
  cfg.validate();
  const std::uint32_t k = cfg.games;
  const EdgeId m = g.num_edges();
  if (threads < 1) threads = 1;
  if (threads > k) threads = k;

  Phase1Result res;
  res.passes.assign(k, 0);
  res.converged.assign(k, 0);
  res.accepted_moves.assign(k, 0);
  res.closeness.games = k;
  res.closeness.agree.assign(m, 0);

  auto play = [&](std::uint32_t game_index, std::vector<std::uint32_t>& agree) {
    GameResult game = run_game(g, t, cfg, game_index);
    res.passes[game_index] = game.passes;
    res.converged[game_index] = game.converged ? 1 : 0;
    res.accepted_moves[game_index] = game.accepted_moves;
    const auto& s = game.profile.strategy;
    for (EdgeId id = 0; id < m; ++id) {
      const Edge& e = g.edges()[id];
      if (s[e.u] == s[e.v]) ++agree[id];
    }
  };

  if (threads == 1) {
    for (std::uint32_t gi = 0; gi < k; ++gi) play(gi, res.closeness.agree);
  } else {
    std::vector<std::vector<std::uint32_t>> partial(
        threads, std::vector<std::uint32_t>(m, 0));
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned tid = 0; tid < threads; ++tid) {
      pool.emplace_back([&, tid] {
        for (std::uint32_t gi = tid; gi < k; gi += threads)
          play(gi, partial[tid]);
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& part : partial)
      for (EdgeId id = 0; id < m; ++id) res.closeness.agree[id] += part[id];
  }

  res.closeness.p.resize(m);
  for (EdgeId id = 0; id < m; ++id)
    res.closeness.p[id] =
        static_cast<double>(res.closeness.agree[id]) / static_cast<double>(k);
  for (std::uint8_t c : res.converged)
    if (!c) ++res.nonconverged;
  return res;
}

/// Connected components over the edges with p(i,j) > beta (strict).
/// Vertices with no qualifying edge become singleton components.
struct IntermediatePartition {
  std::vector<std::uint32_t> component_id;        // per vertex
  std::vector<std::vector<Vertex>> components;
};

inline IntermediatePartition intermediate_partition(const Graph& g,
                                                    const EdgeCloseness& c,
                                                    double beta) {
  if (c.p.size() != g.num_edges())
    throw std::invalid_argument("closeness does not cover all edges");
  UnionFind uf(g.num_vertices());
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    if (c.p[id] > beta) uf.unite(g.edges()[id].u, g.edges()[id].v);
  }
  IntermediatePartition part;
  part.component_id.assign(g.num_vertices(), 0);
  std::vector<std::uint32_t> root_to_component(g.num_vertices(), UINT32_MAX);
  std::uint32_t next = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::uint32_t root = uf.find(v);
    if (root_to_component[root] == UINT32_MAX) {
      root_to_component[root] = next++;
      part.components.emplace_back();
    }
    part.component_id[v] = root_to_component[root];
    part.components[part.component_id[v]].push_back(v);
  }
  return part;
}

}  // namespace nashoverlap
