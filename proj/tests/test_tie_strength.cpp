#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "helpers.hpp"
#include "nashoverlap/graph.hpp"
#include "nashoverlap/tie_strength.hpp"

using namespace nashoverlap;
using Catch::Matchers::WithinRel;

namespace {

// Independent oracle: literal triple loop over the adjacency matrix,
// t(i,j) = w(i,j) + sum_k [ (i,k) and (j,k) edges ] (w(i,k) + w(j,k)).
std::vector<double> tie_strength_oracle(const Graph& g) {
  const Vertex n = g.num_vertices();
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (const Edge& e : g.edges()) w[e.u][e.v] = w[e.v][e.u] = e.w;
  std::vector<double> t(g.num_edges());
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edges()[id];
    double sum = e.w;
    for (Vertex k = 0; k < n; ++k)
      if (w[e.u][k] > 0 && w[e.v][k] > 0) sum += w[e.u][k] + w[e.v][k];
    t[id] = sum;
  }
  return t;
}

}  // namespace

TEST_CASE("tie strength: unit triangle") {
  Graph g = testutil::make_clique(3);
  auto t = compute_tie_strengths(g);
  for (double v : t.edge) CHECK(v == 3.0);
  for (double v : t.vertex) CHECK(v == 6.0);
  CHECK(t.edge_total == 9.0);
  CHECK(t.vertex_total == 18.0);
}

TEST_CASE("tie strength: no common neighbors means t = w") {
  Graph g = Graph::from_edges(4, {{0, 1, 2.5}, {1, 2, 0.5}, {2, 3, 1.0}});
  auto t = compute_tie_strengths(g);
  CHECK(t.edge[0] == 2.5);
  CHECK(t.edge[1] == 0.5);
  CHECK(t.edge[2] == 1.0);
}

TEST_CASE("tie strength: weighted triangle example") {
  // edges (a,b,1), (b,c,1), (a,c,2)
  Graph g = Graph::from_edges(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 2}});
  auto t = compute_tie_strengths(g);
  // edges are stored sorted: (0,1), (0,2), (1,2)
  CHECK(t.edge[0] == 4.0);  // t(a,b) = 1 + (2 + 1)
  CHECK(t.edge[1] == 4.0);  // t(a,c) = 2 + (1 + 1)
  CHECK(t.edge[2] == 4.0);  // t(b,c) = 1 + (1 + 2)
  CHECK(t.vertex[0] == 8.0);
}

TEST_CASE("tie strength: vertex sums double the edge sums") {
  for (std::uint64_t seed : {1, 2, 3, 4}) {
    Graph g = testutil::random_graph(60, 0.12, seed, seed % 2 == 0);
    auto t = compute_tie_strengths(g);
    REQUIRE_THAT(t.vertex_total, WithinRel(2.0 * t.edge_total, 1e-9));
    double vertex_sum = 0;
    for (double v : t.vertex) vertex_sum += v;
    REQUIRE_THAT(vertex_sum, WithinRel(t.vertex_total, 1e-9));
  }
}

TEST_CASE("tie strength: trees reduce to edge weights") {
  // random spanning-tree-shaped graph: parent chosen among earlier ids
  testutil::SplitMix64 rng(99);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < 50; ++v) {
    auto parent = static_cast<Vertex>(rng.below(v));
    edges.push_back({parent, v, 0.5 + static_cast<double>(rng.below(100)) / 25.0});
  }
  Graph g = Graph::from_edges(50, std::move(edges));
  auto t = compute_tie_strengths(g);
  for (EdgeId id = 0; id < g.num_edges(); ++id)
    CHECK(t.edge[id] == g.edges()[id].w);
}

TEST_CASE("tie strength: matches the brute-force oracle") {
  SECTION("unit weights, exact equality") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      Graph g = testutil::random_graph(10 + 7 * seed, 0.2, 100 + seed);
      auto t = compute_tie_strengths(g);
      auto expected = tie_strength_oracle(g);
      REQUIRE(t.edge == expected);
    }
  }
  SECTION("weighted, 1e-9 relative") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      Graph g = testutil::random_graph(45, 0.2, 200 + seed, true);
      auto t = compute_tie_strengths(g);
      auto expected = tie_strength_oracle(g);
      for (EdgeId id = 0; id < g.num_edges(); ++id)
        REQUIRE_THAT(t.edge[id], WithinRel(expected[id], 1e-9));
    }
  }
}

TEST_CASE("tie strength: t(i,j) >= w(i,j)") {
  Graph g = testutil::random_graph(80, 0.1, 7, true);
  auto t = compute_tie_strengths(g);
  for (EdgeId id = 0; id < g.num_edges(); ++id)
    CHECK(t.edge[id] >= g.edges()[id].w);
}
