#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "nashoverlap/cover.hpp"
#include "nashoverlap/graph.hpp"
#include "nashoverlap/rng.hpp"

namespace nashoverlap {

/// Planted-community benchmark: uniform community sizes and near-regular
/// degrees with an exact per-vertex mixing budget. Overlapping vertices
/// hold `om` memberships with their intra degree split equally among
/// them. Deterministic under `seed`.
struct PlantedParams {
  std::uint32_t n = 0;
  std::uint32_t n_comm = 0;
  std::uint32_t comm_size = 0;  // target size; capacity check n_comm*comm_size >= n
  double mu = 0.0;              // mixing factor, [0, 0.5]
  double on_fraction = 0.0;     // fraction of overlapping vertices, [0, 0.5]
  std::uint32_t om = 2;         // memberships per overlapping vertex
  std::uint32_t avg_degree = 0;
  std::uint64_t seed = 0;

  void validate() const {
    if (n == 0 || n_comm == 0 || comm_size == 0 || avg_degree == 0)
      throw std::invalid_argument("counts must be positive");
    if (static_cast<std::uint64_t>(n_comm) * comm_size < n)
      throw std::invalid_argument("communities cannot hold all vertices");
    if (!(mu >= 0.0 && mu <= 0.5))
      throw std::invalid_argument("mu must be in [0, 0.5]");
    if (!(on_fraction >= 0.0 && on_fraction <= 0.5))
      throw std::invalid_argument("on_fraction must be in [0, 0.5]");
    if (om < 2) throw std::invalid_argument("om must be >= 2");
    if (om > n_comm)
      throw std::invalid_argument("om cannot exceed the community count");
  }
};

struct PlantedAudit {
  double max_mixing = 0;   // over non-overlapping vertices
  double mean_mixing = 0;
  std::size_t dropped_intra_stubs = 0;
  std::size_t dropped_inter_stubs = 0;
};

struct PlantedBenchmark {
  Graph graph;
  Cover truth;
  PlantedAudit audit;
};

namespace detail {

inline std::uint64_t edge_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return std::uint64_t{a} << 32 | b;
}

/// Pair up stubs into simple edges: bounded reshuffle retries over the
/// failed remainder, then a deterministic greedy completion pass.
/// Returns the stubs that could not be paired.
template <typename Valid>
std::size_t pair_stubs(std::vector<Vertex>& stubs, SplitMix64& rng,
                       std::unordered_set<std::uint64_t>& seen,
                       std::vector<std::pair<Vertex, Vertex>>& edges,
                       Valid valid) {
  auto try_add = [&](Vertex a, Vertex b) {
    if (a == b || !valid(a, b)) return false;
    auto [it, inserted] = seen.insert(edge_key(a, b));
    (void)it;
    if (!inserted) return false;
    edges.emplace_back(std::min(a, b), std::max(a, b));
    return true;
  };

  std::vector<Vertex> pending = std::move(stubs);
  std::vector<Vertex> failed;
  for (int round = 0; round < 50 && pending.size() > 1; ++round) {
    shuffle(pending, rng);
    failed.clear();
    std::size_t i = 0;
    for (; i + 1 < pending.size(); i += 2) {
      if (!try_add(pending[i], pending[i + 1])) {
        failed.push_back(pending[i]);
        failed.push_back(pending[i + 1]);
      }
    }
    if (i < pending.size()) failed.push_back(pending[i]);  // odd one out
    pending.swap(failed);
  }
  // Completion: exhaustively match what randomness left behind.
  std::sort(pending.begin(), pending.end());
  std::vector<bool> used(pending.size(), false);
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (used[i]) continue;
    for (std::size_t j = i + 1; j < pending.size(); ++j) {
      if (used[j]) continue;
      if (try_add(pending[i], pending[j])) {
        used[i] = used[j] = true;
        break;
      }
    }
  }
  std::size_t leftover = 0;
  for (bool u : used)
    if (!u) ++leftover;
  return leftover;
}

}  // namespace detail

inline PlantedBenchmark generate_planted(const PlantedParams& params) {
  params.validate();
  const std::uint32_t n = params.n;
  SplitMix64 rng(derive_seed(params.seed, 0));

  // Memberships: shuffled vertices round-robin over communities keeps
  // sizes balanced; the first n_on shuffled vertices overlap.
  std::vector<Vertex> perm(n);
  for (Vertex v = 0; v < n; ++v) perm[v] = v;
  shuffle(perm, rng);
  const std::uint32_t n_on =
      static_cast<std::uint32_t>(std::llround(params.on_fraction * n));

  std::vector<std::vector<std::uint32_t>> memberships(n);
  for (std::uint32_t i = 0; i < n; ++i)
    memberships[perm[i]] = {i % params.n_comm};
  for (std::uint32_t i = 0; i < n_on; ++i) {
    Vertex v = perm[i];
    std::uint64_t attempts = 0;
    while (memberships[v].size() < params.om &&
           attempts++ < 64ull * params.om) {
      auto c = static_cast<std::uint32_t>(rng.below(params.n_comm));
      if (std::find(memberships[v].begin(), memberships[v].end(), c) ==
          memberships[v].end())
        memberships[v].push_back(c);
    }
    for (std::uint32_t c = 0; memberships[v].size() < params.om; ++c) {
      if (std::find(memberships[v].begin(), memberships[v].end(), c) ==
          memberships[v].end())
        memberships[v].push_back(c);
    }
    std::sort(memberships[v].begin(), memberships[v].end());
  }

  std::vector<std::vector<Vertex>> members(params.n_comm);
  for (Vertex v = 0; v < n; ++v)
    for (std::uint32_t c : memberships[v]) members[c].push_back(v);

  // Per-vertex endpoint budgets; the small slack keeps exact products
  // like 0.35*20 from rounding down.
  const auto inter_budget = static_cast<std::uint32_t>(
      std::floor(params.mu * params.avg_degree + 1e-9));
  const std::uint32_t intra_budget = params.avg_degree - inter_budget;

  auto intra_share = [&](Vertex v, std::uint32_t community) {
    const auto& m = memberships[v];
    const auto idx = static_cast<std::uint32_t>(
        std::find(m.begin(), m.end(), community) - m.begin());
    const auto size = static_cast<std::uint32_t>(m.size());
    return intra_budget / size + (idx < intra_budget % size ? 1u : 0u);
  };

  for (Vertex v = 0; v < n; ++v)
    for (std::uint32_t c : memberships[v])
      if (intra_share(v, c) > members[c].size() - 1)
        throw std::invalid_argument(
            "community " + std::to_string(c) +
            " is too small for the requested intra degree");

  PlantedBenchmark bench;
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::pair<Vertex, Vertex>> edge_pairs;
  std::vector<std::size_t> dropped_intra(n, 0);
  std::vector<std::uint32_t> realized(n, 0);  // reset per community below

  for (std::uint32_t c = 0; c < params.n_comm; ++c) {
    std::vector<Vertex> stubs;
    for (Vertex v : members[c])
      for (std::uint32_t s = 0; s < intra_share(v, c); ++s) stubs.push_back(v);
    std::vector<std::pair<Vertex, Vertex>> community_edges;
    bench.audit.dropped_intra_stubs += detail::pair_stubs(
        stubs, rng, seen, community_edges,
        [](Vertex, Vertex) { return true; });
    for (auto [a, b] : community_edges) {
      ++realized[a];
      ++realized[b];
    }
    for (Vertex v : members[c]) {
      dropped_intra[v] += intra_share(v, c) - realized[v];
      realized[v] = 0;
    }
    edge_pairs.insert(edge_pairs.end(), community_edges.begin(),
                      community_edges.end());
  }

  auto shares_community = [&](Vertex a, Vertex b) {
    const auto& ma = memberships[a];
    const auto& mb = memberships[b];
    std::size_t i = 0, j = 0;
    while (i < ma.size() && j < mb.size()) {
      if (ma[i] < mb[j])
        ++i;
      else if (ma[i] > mb[j])
        ++j;
      else
        return true;
    }
    return false;
  };

  if (inter_budget > 0) {
    std::vector<Vertex> stubs;
    for (Vertex v = 0; v < n; ++v)
      for (std::uint32_t s = 0; s < inter_budget; ++s) stubs.push_back(v);
    bench.audit.dropped_inter_stubs += detail::pair_stubs(
        stubs, rng, seen, edge_pairs,
        [&](Vertex a, Vertex b) { return !shares_community(a, b); });
  }

  for (Vertex v = 0; v < n; ++v) {
    if (dropped_intra[v] * 2 > intra_budget)
      throw std::runtime_error(
          "sampling failed: vertex lost more than half of its intra degree");
  }

  // Unit weights, labels 1..n.
  std::vector<std::tuple<Label, Label, double>> triples;
  triples.reserve(edge_pairs.size());
  std::vector<std::uint32_t> degree(n, 0), external(n, 0);
  for (auto [a, b] : edge_pairs) {
    triples.emplace_back(a + 1, b + 1, 1.0);
    ++degree[a];
    ++degree[b];
    if (!shares_community(a, b)) {
      ++external[a];
      ++external[b];
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (degree[v] == 0)
      throw std::runtime_error("sampling failed: isolated vertex");

  double mixing_sum = 0;
  std::uint32_t plain = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (memberships[v].size() != 1) continue;
    const double mixing = static_cast<double>(external[v]) / degree[v];
    bench.audit.max_mixing = std::max(bench.audit.max_mixing, mixing);
    mixing_sum += mixing;
    ++plain;
  }
  if (plain > 0) bench.audit.mean_mixing = mixing_sum / plain;

  bench.graph = Graph::from_labeled_edges(triples);
  if (bench.graph.num_vertices() != n)
    throw std::runtime_error("sampling failed: isolated vertex");
  bench.truth = Cover(n, std::move(members));
  return bench;
}

}  // namespace nashoverlap
