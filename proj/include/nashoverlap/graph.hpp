#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace nashoverlap {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Label = std::uint64_t;

/// Undirected edge in canonical form (u < v), positive weight.
struct Edge {
  Vertex u;
  Vertex v;
  double w;
};

inline bool operator==(const Edge& a, const Edge& b) {
  return a.u == b.u && a.v == b.v && a.w == b.w;
}

/// Half-edge stored in the adjacency array.
struct Arc {
  Vertex to;
  EdgeId edge;
  double weight;
};

/// Weighted undirected sparse graph. Vertex ids are contiguous 0..n-1;
/// the original labels from ingestion are kept for output. Immutable
/// after construction and safe to share across threads.
class Graph {
 public:
  Graph() = default;

  /// Build from 0-based edges. Duplicates are merged by summing weights,
  /// self-loops dropped (and counted). Labels default to the ids.
  static Graph from_edges(Vertex n, std::vector<Edge> edges) {
    std::vector<Label> labels(n);
    std::iota(labels.begin(), labels.end(), Label{0});
    return Graph(n, std::move(edges), std::move(labels));
  }

  /// Build from labeled endpoint triples. Distinct labels are sorted and
  /// mapped to 0..n-1.
  static Graph from_labeled_edges(
      const std::vector<std::tuple<Label, Label, double>>& triples) {
    std::vector<Label> labels;
    labels.reserve(triples.size() * 2);
    for (const auto& [a, b, w] : triples) {
      (void)w;
      labels.push_back(a);
      labels.push_back(b);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    auto index_of = [&](Label l) {
      return static_cast<Vertex>(
          std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
    };
    std::vector<Edge> edges;
    edges.reserve(triples.size());
    for (const auto& [a, b, w] : triples)
      edges.push_back(Edge{index_of(a), index_of(b), w});
    const auto n = static_cast<Vertex>(labels.size());
    return Graph(n, std::move(edges), std::move(labels));
  }

  Vertex num_vertices() const { return n_; }
  EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Arc> neighbors(Vertex v) const {
    return {adj_.data() + adj_offsets_[v],
            adj_.data() + adj_offsets_[v + 1]};
  }
  std::uint32_t degree(Vertex v) const {
    return static_cast<std::uint32_t>(adj_offsets_[v + 1] - adj_offsets_[v]);
  }
  double weighted_degree(Vertex v) const {
    double s = 0;
    for (const Arc& a : neighbors(v)) s += a.weight;
    return s;
  }

  /// Sum of edge weights, each undirected edge counted once.
  double total_weight() const { return total_weight_; }

  Label label(Vertex v) const { return labels_[v]; }
  const std::vector<Label>& labels() const { return labels_; }

  /// Label -> internal id. Labels are stored sorted, so binary search.
  bool find_vertex(Label l, Vertex& out) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    if (it == labels_.end() || *it != l) return false;
    out = static_cast<Vertex>(it - labels_.begin());
    return true;
  }

  std::size_t self_loops_dropped() const { return self_loops_dropped_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.labels_ == b.labels_ && a.edges_ == b.edges_;
  }

 private:
  Graph(Vertex n, std::vector<Edge> raw, std::vector<Label> labels)
      : n_(n), labels_(std::move(labels)) {
    for (Edge& e : raw) {
      if (e.u >= n_ || e.v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
      if (e.w <= 0)
        throw std::invalid_argument("edge weight must be positive");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    // Merge duplicates, drop self-loops.
    std::sort(raw.begin(), raw.end(), [](const Edge& a, const Edge& b) {
      return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    for (const Edge& e : raw) {
      if (e.u == e.v) {
        ++self_loops_dropped_;
        continue;
      }
      if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v)
        edges_.back().w += e.w;
      else
        edges_.push_back(e);
    }
    for (const Edge& e : edges_) total_weight_ += e.w;

    // CSR adjacency, neighbor lists sorted by id.
    adj_offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const Edge& e : edges_) {
      ++adj_offsets_[e.u + 1];
      ++adj_offsets_[e.v + 1];
    }
    for (std::size_t i = 1; i < adj_offsets_.size(); ++i)
      adj_offsets_[i] += adj_offsets_[i - 1];
    adj_.resize(edges_.size() * 2);
    std::vector<std::size_t> cursor(adj_offsets_.begin(),
                                    adj_offsets_.end() - 1);
    for (EdgeId id = 0; id < edges_.size(); ++id) {
      const Edge& e = edges_[id];
      adj_[cursor[e.u]++] = Arc{e.v, id, e.w};
      adj_[cursor[e.v]++] = Arc{e.u, id, e.w};
    }
    // Edges were sorted by (u,v), so each u-bucket is already ordered;
    // the v-side buckets are not. One sort keeps both invariant.
    for (Vertex v = 0; v < n_; ++v) {
      auto begin = adj_.begin() + static_cast<std::ptrdiff_t>(adj_offsets_[v]);
      auto end = adj_.begin() + static_cast<std::ptrdiff_t>(adj_offsets_[v + 1]);
      std::sort(begin, end,
                [](const Arc& a, const Arc& b) { return a.to < b.to; });
    }
  }

  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> adj_offsets_{0};
  std::vector<Arc> adj_;
  std::vector<Label> labels_;
  double total_weight_ = 0;
  std::size_t self_loops_dropped_ = 0;
};

}  // namespace nashoverlap
