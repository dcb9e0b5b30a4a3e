#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <sstream>

#include "helpers.hpp"
#include "nashoverlap/phase1.hpp"
#include "nashoverlap/stats.hpp"
#include "nashoverlap/tie_strength.hpp"

using namespace nashoverlap;
using Catch::Matchers::WithinAbs;

TEST_CASE("pearson is 1 when p is an affine transform of t") {
  Graph g = testutil::random_graph(40, 0.15, 2, true);
  auto ties = compute_tie_strengths(g);
  EdgeCloseness c;
  c.games = 100;
  double t_max = 0;
  for (double t : ties.edge) t_max = std::max(t_max, t);
  for (double t : ties.edge) c.p.push_back(0.1 + 0.8 * t / t_max);
  c.agree.assign(g.num_edges(), 0);

  ClosenessStats stats = closeness_stats(g, ties, c);
  REQUIRE(stats.pearson_defined);
  REQUIRE_THAT(stats.pearson_r, WithinAbs(1.0, 1e-9));
}

TEST_CASE("pearson undefined on zero variance") {
  Graph g = testutil::make_clique(5);
  auto ties = compute_tie_strengths(g);
  SECTION("all p equal") {
    EdgeCloseness c = testutil::uniform_closeness(g, 0.4);
    CHECK_FALSE(closeness_stats(g, ties, c).pearson_defined);
  }
  SECTION("all t equal with varying p still undefined") {
    EdgeCloseness c = testutil::random_closeness(g, 3);
    CHECK_FALSE(closeness_stats(g, ties, c).pearson_defined);
  }
}

TEST_CASE("histogram counts conserve the edge count") {
  Graph g = testutil::random_graph(60, 0.1, 9);
  auto ties = compute_tie_strengths(g);
  EdgeCloseness c = testutil::random_closeness(g, 10);
  ClosenessStats stats = closeness_stats(g, ties, c);
  CHECK(stats.histogram.size() == 20);
  CHECK(std::accumulate(stats.histogram.begin(), stats.histogram.end(),
                        std::size_t{0}) == g.num_edges());
}

TEST_CASE("histogram boundaries: p=1 in the last bin, p=0 in the first") {
  Graph g = Graph::from_edges(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  auto ties = compute_tie_strengths(g);
  EdgeCloseness c;
  c.games = 100;
  c.p = {0.0, 1.0, 0.95};
  c.agree = {0, 100, 95};
  ClosenessStats stats = closeness_stats(g, ties, c);
  CHECK(stats.histogram.front() == 1);
  CHECK(stats.histogram.back() == 2);  // 0.95 lands in [0.95, 1.0]
}

TEST_CASE("csv writers: scatter rows and histogram rows") {
  Graph g = Graph::from_edges(3, {{0, 1, 1}, {1, 2, 1}});
  auto ties = compute_tie_strengths(g);
  EdgeCloseness c;
  c.games = 4;
  c.p = {0.75, 0.5};
  c.agree = {3, 2};

  std::ostringstream scatter;
  write_scatter_csv(scatter, g, ties, c);
  CHECK(scatter.str() == "t,p\n1,0.75\n1,0.5\n");

  std::ostringstream hist;
  write_histogram_csv(hist, closeness_stats(g, ties, c, 0.5));
  CHECK(hist.str() == "bin_low,bin_high,count\n0,0.5,0\n0.5,1,2\n");
}

TEST_CASE("bin width validation") {
  Graph g = testutil::make_clique(3);
  auto ties = compute_tie_strengths(g);
  EdgeCloseness c = testutil::uniform_closeness(g, 0.5);
  CHECK_THROWS_AS(closeness_stats(g, ties, c, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(closeness_stats(g, ties, c, 1.5), std::invalid_argument);
}
