#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "helpers.hpp"
#include "nashoverlap/graph.hpp"
#include "nashoverlap/phase1.hpp"
#include "nashoverlap/tie_strength.hpp"

using namespace nashoverlap;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

bool monochromatic(const StrategyProfile& p, Vertex from, Vertex to) {
  for (Vertex v = from + 1; v < to; ++v)
    if (p.strategy[v] != p.strategy[from]) return false;
  return true;
}

// Fresh agreement weight of v, independent of the incremental cache.
double scan_agreement(const StrategyProfile& p, const Graph& g,
                      const TieStrengths& t, Vertex v) {
  double sum = 0;
  for (const Arc& a : g.neighbors(v))
    if (p.strategy[a.to] == p.strategy[v]) sum += t.edge[a.edge];
  return sum;
}

}  // namespace

TEST_CASE("phase1 config validation") {
  Phase1Config cfg;
  cfg.strategies = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.strategies = 2;
  cfg.games = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.games = 1;
  cfg.beta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.beta = 1.2;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.beta = 1.0;
  cfg.epsilon = -0.1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.epsilon = 0.0;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("init_profile: deterministic and uniform") {
  Graph g = Graph::from_edges(100000, {});  // edgeless is fine here
  auto t = compute_tie_strengths(g);

  StrategyProfile a = init_profile(g, t, 2, 42);
  StrategyProfile b = init_profile(g, t, 2, 42);
  CHECK(a.strategy == b.strategy);
  StrategyProfile c = init_profile(g, t, 2, 43);
  CHECK(a.strategy != c.strategy);

  // binomial 5-sigma band around n/2
  const double n = 100000;
  auto zeros = static_cast<double>(
      std::count(a.strategy.begin(), a.strategy.end(), 0u));
  CHECK(std::abs(zeros - n / 2) <= 5.0 * std::sqrt(n / 4));

  CHECK_THROWS_AS(init_profile(g, t, 1, 0), std::invalid_argument);
}

TEST_CASE("best_response: picks the heavier strategy class") {
  // path j - v - k with w(v,j)=3, w(v,k)=1; no common neighbors so t = w
  Graph g = Graph::from_edges(3, {{0, 1, 3.0}, {1, 2, 1.0}});
  auto t = compute_tie_strengths(g);
  StrategyProfile p;
  p.strategies = 2;
  p.strategy = {0, 1, 1};  // j=A, v=B, k=B
  p.agreement = {0.0, 1.0, 1.0};

  BestResponse br = best_response(p, g, t, 1);
  CHECK(br.strategy == 0);
  CHECK(br.accepted);
  CHECK(br.gain == 2.0);
  CHECK(p.strategy[1] == 0);
  CHECK(p.agreement[1] == 3.0);
  CHECK(p.agreement[0] == 3.0);  // neighbor cache updated
  CHECK(p.agreement[2] == 0.0);
}

TEST_CASE("best_response: keeps the current strategy at a per-vertex max") {
  Graph g = testutil::make_clique(4);
  auto t = compute_tie_strengths(g);
  StrategyProfile p;
  p.strategies = 3;
  p.strategy = {2, 2, 2, 2};
  p.agreement.assign(4, 0.0);
  for (Vertex v = 0; v < 4; ++v) p.agreement[v] = scan_agreement(p, g, t, v);

  BestResponse br = best_response(p, g, t, 0);
  CHECK(br.strategy == 2);
  CHECK_FALSE(br.accepted);
  CHECK(p.strategy[0] == 2);
}

TEST_CASE("best_response: ties between new strategies go to the smallest") {
  // v has two neighbors with equal tie strength and different strategies
  Graph g = Graph::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  auto t = compute_tie_strengths(g);
  StrategyProfile p;
  p.strategies = 4;
  p.strategy = {3, 0, 2};  // v = vertex 1, neighbors use 3 and 2
  p.agreement = {0, 0, 0};

  BestResponse br = best_response(p, g, t, 1);
  CHECK(br.strategy == 2);
  CHECK(br.accepted);
}

TEST_CASE("run_game: complete graphs converge monochromatic (Theorem 3)") {
  Graph g = testutil::make_clique(20);
  auto t = compute_tie_strengths(g);
  for (std::uint32_t r : {2u, 5u, 40u}) {
    Phase1Config cfg;
    cfg.strategies = r;
    for (std::uint32_t game = 0; game < 20; ++game) {
      GameResult res = run_game(g, t, cfg, game);
      REQUIRE(res.converged);
      CHECK(res.passes <= 5);
      CHECK(monochromatic(res.profile, 0, 20));
    }
  }
}

TEST_CASE("run_game: edgeless graph returns the initial profile") {
  Graph g = Graph::from_edges(5, {});
  auto t = compute_tie_strengths(g);
  Phase1Config cfg;
  cfg.strategies = 3;
  GameResult res = run_game(g, t, cfg, 0);
  CHECK(res.converged);
  CHECK(res.passes == 1);
  CHECK(res.accepted_moves == 0);
  StrategyProfile expected = init_profile(
      g, t, 3, derive_seed(derive_seed(cfg.master_seed, 0), 0));
  CHECK(res.profile.strategy == expected.strategy);
}

TEST_CASE("run_game: utilities stay in [0,1] and caches stay consistent") {
  Graph g = testutil::random_graph(80, 0.08, 5, true);
  auto t = compute_tie_strengths(g);
  Phase1Config cfg;
  cfg.strategies = 4;
  GameResult res = run_game(g, t, cfg, 7);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    double u = res.profile.utility(v, t);
    CHECK(u >= 0.0);
    CHECK(u <= 1.0 + 1e-12);
    REQUIRE_THAT(res.profile.agreement[v],
                 WithinAbs(scan_agreement(res.profile, g, t, v), 1e-9));
  }
  REQUIRE_THAT(res.phi1, WithinRel(potential_phi1(res.profile, g, t), 1e-9));
}

TEST_CASE("two cliques, one bridge: cliques monochromatic, colors fair") {
  Graph g = testutil::two_cliques_bridge(10);
  auto t = compute_tie_strengths(g);
  Phase1Config cfg;
  cfg.strategies = 2;
  std::uint32_t shared = 0;
  const std::uint32_t games = 100;
  for (std::uint32_t game = 0; game < games; ++game) {
    GameResult res = run_game(g, t, cfg, game);
    REQUIRE(res.converged);
    REQUIRE(monochromatic(res.profile, 0, 10));
    REQUIRE(monochromatic(res.profile, 10, 20));
    if (res.profile.strategy[0] == res.profile.strategy[10]) ++shared;
  }
  // distinct-color fraction within +-0.1 of C(2,2)*2!/2^2 = 0.5
  const double distinct = 1.0 - static_cast<double>(shared) / games;
  CHECK(std::abs(distinct - 0.5) <= 0.1);
}

TEST_CASE("run_phase1: clique edges agree in every game") {
  Graph g = testutil::make_clique(8);
  auto t = compute_tie_strengths(g);
  Phase1Config cfg;
  cfg.strategies = 5;
  cfg.games = 25;
  Phase1Result res = run_phase1(g, t, cfg);
  CHECK(res.nonconverged == 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    CHECK(res.closeness.agree[e] == 25);
    CHECK(res.closeness.p[e] == 1.0);
  }
}

TEST_CASE("run_phase1: p is agree/games and the bridge sits near 1/2") {
  Graph g = testutil::two_cliques_bridge(10);
  auto t = compute_tie_strengths(g);
  Phase1Config cfg;
  cfg.strategies = 2;
  cfg.games = 100;
  Phase1Result res = run_phase1(g, t, cfg);
  EdgeId bridge = 0;
  bool found = false;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    REQUIRE_THAT(res.closeness.p[e],
                 WithinAbs(res.closeness.agree[e] / 100.0, 1e-15));
    const Edge& edge = g.edges()[e];
    if (edge.u < 10 && edge.v >= 10) {
      bridge = e;
      found = true;
    } else {
      CHECK(res.closeness.p[e] == 1.0);
    }
  }
  REQUIRE(found);
  CHECK(res.closeness.p[bridge] >= 0.35);
  CHECK(res.closeness.p[bridge] <= 0.65);
}

TEST_CASE("run_phase1: identical results for any thread count") {
  Graph g = testutil::random_graph(120, 0.06, 9);
  auto t = compute_tie_strengths(g);
  Phase1Config cfg;
  cfg.strategies = 6;
  cfg.games = 40;
  cfg.master_seed = 123;
  Phase1Result one = run_phase1(g, t, cfg, 1);
  Phase1Result four = run_phase1(g, t, cfg, 4);
  CHECK(one.closeness.agree == four.closeness.agree);
  CHECK(one.passes == four.passes);
  CHECK(one.accepted_moves == four.accepted_moves);
}

TEST_CASE("intermediate partition: threshold is strict") {
  // path a-b-c-d with p = (0.99, 0.3, 0.99)
  Graph g = Graph::from_edges(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  EdgeCloseness c;
  c.games = 100;
  c.p = {0.99, 0.3, 0.99};
  c.agree = {99, 30, 99};
  IntermediatePartition part = intermediate_partition(g, c, 0.95);
  REQUIRE(part.components.size() == 2);
  CHECK(part.components[0] == std::vector<Vertex>{0, 1});
  CHECK(part.components[1] == std::vector<Vertex>{2, 3});

  // beta equal to p on an edge excludes it
  c.p = {0.95, 0.95, 0.95};
  part = intermediate_partition(g, c, 0.95);
  CHECK(part.components.size() == 4);

  c.p = {1.0, 1.0, 1.0};
  part = intermediate_partition(g, c, 0.95);
  CHECK(part.components.size() == 1);
  CHECK(part.components[0].size() == 4);
}

TEST_CASE("potential phi1: cut edges contribute nothing") {
  Graph g = testutil::make_clique(3);
  auto t = compute_tie_strengths(g);
  StrategyProfile p;
  p.strategies = 3;
  p.agreement.assign(3, 0.0);

  p.strategy = {0, 0, 0};
  CHECK(potential_phi1(p, g, t) == t.edge_total);
  p.strategy = {0, 1, 2};
  CHECK(potential_phi1(p, g, t) == 0.0);  // every edge cut
  p.strategy = {0, 0, 1};
  CHECK(potential_phi1(p, g, t) == 3.0);  // one intra edge of t = 3
}

TEST_CASE("phase1 potential identity: weighted with t_i") {
  std::size_t deviations = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = testutil::random_graph(60, 0.1, 300 + seed, seed % 2 == 1);
    auto t = compute_tie_strengths(g);
    StrategyProfile p = init_profile(g, t, 4, seed);
    testutil::SplitMix64 rng(seed * 77 + 1);
    for (int i = 0; i < 2500; ++i) {
      auto v = static_cast<Vertex>(rng.below(g.num_vertices()));
      if (t.vertex[v] == 0) continue;
      auto s = static_cast<std::uint32_t>(rng.below(4));
      const double phi_before = potential_phi1(p, g, t);
      const double u_before = scan_agreement(p, g, t, v) / t.vertex[v];
      const std::uint32_t old = p.strategy[v];
      p.strategy[v] = s;
      const double phi_after = potential_phi1(p, g, t);
      const double u_after = scan_agreement(p, g, t, v) / t.vertex[v];
      const double lhs = phi_after - phi_before;
      const double rhs = t.vertex[v] * (u_after - u_before);
      if (std::abs(rhs) > 1e-6)
        REQUIRE_THAT(lhs, WithinRel(rhs, 1e-9));
      else
        REQUIRE_THAT(lhs, WithinAbs(rhs, 1e-9));
      p.strategy[v] = old;
      ++deviations;
    }
  }
  CHECK(deviations >= 10000);
}

TEST_CASE("phase1 potential strictly increases across accepted moves") {
  Graph g = testutil::random_graph(50, 0.15, 21);
  auto t = compute_tie_strengths(g);
  StrategyProfile p = init_profile(g, t, 3, 5);
  double phi = potential_phi1(p, g, t);
  Phase1Workspace ws;
  for (int pass = 0; pass < 3; ++pass) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      BestResponse br = best_response(p, g, t, v, 0.0, 0.0, &ws);
      double now = potential_phi1(p, g, t);
      if (br.accepted) {
        CHECK(now > phi);
        REQUIRE_THAT(now - phi, WithinRel(br.gain, 1e-9));
      } else {
        CHECK(now == phi);
      }
      phi = now;
    }
  }
}

TEST_CASE("converged games are Nash equilibria with phi1 >= W_edge/r") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Graph g = testutil::random_graph(70, 0.09, 400 + seed);
    auto t = compute_tie_strengths(g);
    Phase1Config cfg;
    cfg.strategies = 5;
    cfg.master_seed = seed;
    for (std::uint32_t game = 0; game < 5; ++game) {
      GameResult res = run_game(g, t, cfg, game);
      REQUIRE(res.converged);
      CHECK(count_improving_deviations(res.profile, g, t) == 0);
      CHECK(potential_phi1(res.profile, g, t) >=
            t.edge_total / cfg.strategies - 1e-9);
    }
  }
}

TEST_CASE("good-enough improvements: bounded moves, still converges") {
  Graph g = testutil::random_graph(200, 0.05, 77);
  auto t = compute_tie_strengths(g);
  Phase1Config cfg;
  cfg.strategies = 8;
  cfg.epsilon = 0.1;
  cfg.games = 10;
  Phase1Result res = run_phase1(g, t, cfg);
  CHECK(res.nonconverged == 0);
  const double bound = 10.0 / cfg.epsilon * g.num_vertices() *
                       std::log2(1.0 + t.edge_total);
  for (std::uint64_t moves : res.accepted_moves)
    CHECK(static_cast<double>(moves) <= bound);
}

TEST_CASE("epsilon gates small improvements") {
  // two equal-weight neighbors held apart: the switch gain is tiny
  // relative to (2*eps/n) * phi1 when phi1 is large
  Graph g = Graph::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.001}});
  auto t = compute_tie_strengths(g);
  StrategyProfile p;
  p.strategies = 2;
  p.strategy = {0, 0, 1};
  p.agreement = {1.0, 1.0, 0.0};
  // candidate for v=1 is strategy 1 with gain 0.001
  BestResponse rejected = best_response(p, g, t, 1, 1.0, 100.0);
  CHECK_FALSE(rejected.accepted);
  CHECK(p.strategy[1] == 0);
  BestResponse accepted = best_response(p, g, t, 1, 0.0, 0.0);
  CHECK(accepted.accepted);
  CHECK(accepted.strategy == 1);
}
