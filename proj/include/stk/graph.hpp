#ifndef STK_GRAPH_HPP_
#define STK_GRAPH_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace stk {

// Vertices are 0-based in memory and 1-based in every text format.
using Vertex = int;
using EdgeId = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  // Cut cost for the partitioning problems, capacity for routing.
  double w = 0.0;
};

struct Arc {
  Vertex to;
  EdgeId edge;
};

// Undirected, connected, positively weighted simple graph. Parallel edges are
// merged by summing weights; each stored edge has u < v and edges are sorted
// by (u, v), so edge ids are canonical for a given edge set.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // Throws std::invalid_argument on self-loops, out-of-range endpoints,
  // nonpositive or non-finite weights, or a disconnected graph.
  WeightedGraph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Arc> neighbors(Vertex v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }

  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;

  double total_weight() const { return total_weight_; }
  // True if every weight is an integer (exact arithmetic regime).
  bool integral_weights() const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b);

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc> arcs_;  // sorted by neighbor id within each vertex
  double total_weight_ = 0.0;
};

// Ordered set of distinct terminal vertices.
class TerminalSet {
 public:
  TerminalSet() = default;
  // Throws std::invalid_argument if empty, duplicated or out of range.
  TerminalSet(std::vector<Vertex> terminals, int num_vertices);

  int size() const { return static_cast<int>(terminals_.size()); }
  Vertex operator[](int i) const { return terminals_[i]; }
  std::span<const Vertex> vertices() const { return terminals_; }
  bool contains(Vertex v) const { return index_[v] >= 0; }
  // Position of v in the terminal order, or -1.
  int index_of(Vertex v) const { return index_[v]; }

  friend bool operator==(const TerminalSet&, const TerminalSet&) = default;

 private:
  std::vector<Vertex> terminals_;
  std::vector<int> index_;
};

struct Demand {
  Vertex s = 0;
  Vertex t = 0;
  double amount = 1.0;
  friend bool operator==(const Demand&, const Demand&) = default;
};

using DemandPairs = std::vector<Demand>;

// Throws std::invalid_argument on s == t, bad ids or nonpositive amounts.
void validate_demands(const DemandPairs& pairs, int num_vertices);
// Additionally requires both endpoints of every pair to be terminals.
void validate_terminal_demands(const DemandPairs& pairs,
                               const TerminalSet& terminals);

bool is_connected(int n, std::span<const Edge> edges);

}  // namespace stk

#endif  // STK_GRAPH_HPP_
