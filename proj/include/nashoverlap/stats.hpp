#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashoverlap/graph.hpp"
#include "nashoverlap/phase1.hpp"
#include "nashoverlap/tie_strength.hpp"

namespace nashoverlap {

/// Shortest-round-trip decimal rendering; deterministic and diffable.
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Edge-closeness analytics: Pearson correlation against tie-strength
/// and the closeness histogram over [0, 1].
struct ClosenessStats {
  bool pearson_defined = false;
  double pearson_r = 0;
  double bin_width = 0.05;
  std::vector<std::size_t> histogram;  // counts sum to |E|
};

inline ClosenessStats closeness_stats(const Graph& g, const TieStrengths& t,
                                      const EdgeCloseness& closeness,
                                      double bin_width = 0.05) {
  if (closeness.p.size() != g.num_edges())
    throw std::invalid_argument("closeness does not cover all edges");
  if (!(bin_width > 0.0 && bin_width <= 1.0))
    throw std::invalid_argument("bin width must be in (0, 1]");

  ClosenessStats stats;
  stats.bin_width = bin_width;
  const std::size_t bins =
      static_cast<std::size_t>(std::ceil(1.0 / bin_width - 1e-12));
  stats.histogram.assign(bins, 0);

  const EdgeId m = g.num_edges();
  double mean_t = 0, mean_p = 0;
  for (EdgeId id = 0; id < m; ++id) {
    mean_t += t.edge[id];
    mean_p += closeness.p[id];
    auto bin = static_cast<std::size_t>(closeness.p[id] / bin_width);
    if (bin >= bins) bin = bins - 1;  // p == 1 lands in the last bin
    ++stats.histogram[bin];
  }
  mean_t /= m;
  mean_p /= m;

  double cov = 0, var_t = 0, var_p = 0;
  for (EdgeId id = 0; id < m; ++id) {
    const double dt = t.edge[id] - mean_t;
    const double dp = closeness.p[id] - mean_p;
    cov += dt * dp;
    var_t += dt * dt;
    var_p += dp * dp;
  }
  if (var_t > 0.0 && var_p > 0.0) {
    stats.pearson_defined = true;
    stats.pearson_r = cov / std::sqrt(var_t * var_p);
  }
  return stats;
}

/// One "t,p" row per edge.
inline void write_scatter_csv(std::ostream& out, const Graph& g,
                              const TieStrengths& t,
                              const EdgeCloseness& closeness) {
  out << "t,p\n";
  for (EdgeId id = 0; id < g.num_edges(); ++id)
    out << format_double(t.edge[id]) << ',' << format_double(closeness.p[id])
        << '\n';
}

inline void write_histogram_csv(std::ostream& out, const ClosenessStats& s) {
  out << "bin_low,bin_high,count\n";
  for (std::size_t i = 0; i < s.histogram.size(); ++i) {
    const double low = static_cast<double>(i) * s.bin_width;
    const double high = std::min(1.0, static_cast<double>(i + 1) * s.bin_width);
    out << format_double(low) << ',' << format_double(high) << ','
        << s.histogram[i] << '\n';
  }
}

}  // namespace nashoverlap
