#include "stk/shortest_paths.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>

namespace stk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_length(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

ShortestPathTree dijkstra(const WeightedGraph& g, std::span<const double> length,
                          Vertex source) {
  const int n = g.num_vertices();
  ShortestPathTree tree{std::vector<double>(n, kInf), std::vector<EdgeId>(n, -1)};
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  tree.dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > tree.dist[u]) continue;
    for (const Arc& arc : g.neighbors(u)) {
      double nd = d + length[arc.edge];
      if (nd < tree.dist[arc.to]) {
        tree.dist[arc.to] = nd;
        tree.parent_edge[arc.to] = arc.edge;
        heap.emplace(nd, arc.to);
      }
    }
  }
  return tree;
}

DistanceMatrix::DistanceMatrix(const WeightedGraph& g)
    : n_(g.num_vertices()), dist_(static_cast<std::size_t>(n_) * n_) {
  std::vector<double> weight(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) weight[e] = g.edge(e).w;
  for (Vertex s = 0; s < n_; ++s) {
    auto tree = dijkstra(g, weight, s);
    std::copy(tree.dist.begin(), tree.dist.end(),
              dist_.begin() + static_cast<std::ptrdiff_t>(s) * n_);
  }
  // Symmetrize away rounding differences between the two directions.
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v = u + 1; v < n_; ++v) {
      double d = std::min((*this)(u, v), (*this)(v, u));
      dist_[static_cast<std::size_t>(u) * n_ + v] = d;
      dist_[static_cast<std::size_t>(v) * n_ + u] = d;
    }
  }
}

double DistanceMatrix::diameter() const {
  double best = 0.0;
  for (double d : dist_) best = std::max(best, d);
  return best;
}

double DistanceMatrix::min_positive() const {
  double best = kInf;
  for (double d : dist_) {
    if (d > 0.0) best = std::min(best, d);
  }
  return best == kInf ? 0.0 : best;
}

std::vector<Vertex> DistanceMatrix::path(const WeightedGraph& g, Vertex u,
                                         Vertex v) const {
  std::vector<Vertex> seq{u};
  Vertex at = u;
  while (at != v) {
    Vertex next = -1;
    // Neighbors are sorted by id, so the first one on a shortest path is the
    // lexicographically smallest continuation.
    for (const Arc& arc : g.neighbors(at)) {
      if (same_length(g.edge(arc.edge).w + (*this)(arc.to, v), (*this)(at, v))) {
        next = arc.to;
        break;
      }
    }
    if (next < 0) throw std::logic_error("shortest path reconstruction failed");
    seq.push_back(next);
    at = next;
  }
  return seq;
}

DistanceMatrix shortest_path_metric(const WeightedGraph& g) {
  return DistanceMatrix(g);
}

}  // namespace stk
