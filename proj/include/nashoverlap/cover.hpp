#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "nashoverlap/graph.hpp"

namespace nashoverlap {

/// Overlapping community structure over vertices [0, n). Canonical form:
/// members sorted ascending, empty communities dropped, duplicate
/// communities merged, communities ordered lexicographically (which is
/// also by smallest member).
class Cover {
 public:
  Cover() = default;

  Cover(Vertex n, std::vector<std::vector<Vertex>> communities) : n_(n) {
    for (auto& c : communities) {
      for (Vertex v : c)
        if (v >= n) throw std::invalid_argument("cover vertex out of range");
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::erase_if(communities, [](const auto& c) { return c.empty(); });
    std::sort(communities.begin(), communities.end());
    communities.erase(std::unique(communities.begin(), communities.end()),
                      communities.end());
    communities_ = std::move(communities);

    memberships_.assign(n_, {});
    for (std::uint32_t c = 0; c < communities_.size(); ++c)
      for (Vertex v : communities_[c]) memberships_[v].push_back(c);
  }

  Vertex universe_size() const { return n_; }
  std::size_t community_count() const { return communities_.size(); }
  const std::vector<std::vector<Vertex>>& communities() const {
    return communities_;
  }
  const std::vector<Vertex>& community(std::size_t c) const {
    return communities_[c];
  }
  std::span<const std::uint32_t> memberships(Vertex v) const {
    return memberships_[v];
  }

  std::size_t total_memberships() const {
    std::size_t total = 0;
    for (const auto& m : memberships_) total += m.size();
    return total;
  }

  bool covers_universe() const {
    for (const auto& m : memberships_)
      if (m.empty()) return false;
    return true;
  }

  /// Every vertex in exactly one community.
  bool disjoint_partition() const {
    for (const auto& m : memberships_)
      if (m.size() != 1) return false;
    return true;
  }

 private:
  Vertex n_ = 0;
  std::vector<std::vector<Vertex>> communities_;
  std::vector<std::vector<std::uint32_t>> memberships_;
};

}  // namespace nashoverlap
