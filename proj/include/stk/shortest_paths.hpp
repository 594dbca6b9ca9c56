#ifndef STK_SHORTEST_PATHS_HPP_
#define STK_SHORTEST_PATHS_HPP_

#include <span>
#include <vector>

#include "stk/graph.hpp"

namespace stk {

// All-pairs weighted shortest-path distances (one Dijkstra per source).
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(const WeightedGraph& g);

  int size() const { return n_; }
  double operator()(Vertex u, Vertex v) const {
    return dist_[static_cast<std::size_t>(u) * n_ + v];
  }
  std::span<const double> row(Vertex u) const {
    return {dist_.data() + static_cast<std::size_t>(u) * n_,
            static_cast<std::size_t>(n_)};
  }
  double diameter() const;
  // Smallest distance between two distinct vertices (0 for one vertex).
  double min_positive() const;

  // Lexicographically smallest vertex sequence among the shortest u-v paths.
  std::vector<Vertex> path(const WeightedGraph& g, Vertex u, Vertex v) const;

 private:
  int n_ = 0;
  std::vector<double> dist_;
};

DistanceMatrix shortest_path_metric(const WeightedGraph& g);

// Single-source Dijkstra under arbitrary nonnegative edge lengths indexed by
// EdgeId. `parent_edge[v]` is the edge used to reach v (-1 at the source).
struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<EdgeId> parent_edge;
};
ShortestPathTree dijkstra(const WeightedGraph& g, std::span<const double> length,
                          Vertex source);

}  // namespace stk

#endif  // STK_SHORTEST_PATHS_HPP_
