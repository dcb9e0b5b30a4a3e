#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "nashoverlap/cover.hpp"

namespace nashoverlap {

/// Overlapping-cover NMI: each community is a binary membership variable
/// over the universe; the score symmetrizes the per-direction normalized
/// conditional entropies:
///   value = 1 - (H(X|Y)_norm + H(Y|X)_norm) / 2.
struct NmiReport {
  double value = 0;
  double forward_conditional = 0;  // H(X|Y), normalized and averaged
  double reverse_conditional = 0;  // H(Y|X), normalized and averaged
};

namespace detail {

inline double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

/// H(X|Y) normalized: for each community X_k take the best admitted
/// conditional entropy against Y's communities, divided by H(X_k).
/// A pair is admitted only under the complement-matching guard
/// h(P11)+h(P00) >= h(P01)+h(P10); otherwise it contributes H(X_k).
/// Communities with zero entropy contribute ratio 0.
inline double normalized_conditional_entropy(
    const Cover& x, const Cover& y,
    const std::unordered_map<std::uint64_t, std::uint32_t>& intersections,
    bool swapped) {
  const double n = static_cast<double>(x.universe_size());
  double ratio_sum = 0;
  for (std::uint32_t k = 0; k < x.community_count(); ++k) {
    const double xk = static_cast<double>(x.community(k).size());
    const double hx = plogp(xk / n) + plogp(1.0 - xk / n);
    if (hx == 0.0) continue;  // ratio 0

    double best = hx;
    for (std::uint32_t l = 0; l < y.community_count(); ++l) {
      const double yl = static_cast<double>(y.community(l).size());
      const std::uint64_t key =
          swapped ? (std::uint64_t{l} << 32 | k) : (std::uint64_t{k} << 32 | l);
      auto it = intersections.find(key);
      const double inter = it == intersections.end()
                               ? 0.0
                               : static_cast<double>(it->second);
      const double p11 = inter / n;
      const double p10 = (xk - inter) / n;
      const double p01 = (yl - inter) / n;
      const double p00 = (n - xk - yl + inter) / n;
      if (plogp(p11) + plogp(p00) < plogp(p01) + plogp(p10)) continue;
      const double hy = plogp(yl / n) + plogp(1.0 - yl / n);
      const double joint = plogp(p00) + plogp(p01) + plogp(p10) + plogp(p11);
      best = std::min(best, std::max(0.0, joint - hy));
    }
    ratio_sum += best / hx;
  }
  return ratio_sum / static_cast<double>(x.community_count());
}

}  // namespace detail

inline NmiReport nmi_overlapping(const Cover& x, const Cover& y,
                                 Vertex universe_size) {
  if (universe_size == 0) throw std::invalid_argument("empty universe");
  if (x.universe_size() != universe_size || y.universe_size() != universe_size)
    throw std::invalid_argument("covers are not over the given universe");
  if (x.community_count() == 0 || y.community_count() == 0)
    throw std::invalid_argument("covers must be nonempty");

  std::unordered_map<std::uint64_t, std::uint32_t> intersections;
  for (Vertex v = 0; v < universe_size; ++v)
    for (std::uint32_t k : x.memberships(v))
      for (std::uint32_t l : y.memberships(v))
        ++intersections[std::uint64_t{k} << 32 | l];

  NmiReport report;
  report.forward_conditional =
      detail::normalized_conditional_entropy(x, y, intersections, false);
  report.reverse_conditional =
      detail::normalized_conditional_entropy(y, x, intersections, true);
  report.value =
      1.0 - 0.5 * (report.forward_conditional + report.reverse_conditional);
  return report;
}

}  // namespace nashoverlap
