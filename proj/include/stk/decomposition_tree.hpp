#ifndef STK_DECOMPOSITION_TREE_HPP_
#define STK_DECOMPOSITION_TREE_HPP_

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "stk/graph.hpp"
#include "stk/shortest_paths.hpp"

namespace stk {

struct DecompositionNode {
  int parent = -1;
  int level = 0;
  Vertex center = 0;
  // Cluster radius in graph units: every member is within `radius` of center.
  double radius = 0.0;
  std::vector<int> children;
};

// Hierarchical decomposition of V(G). Leaves are the singletons {v} at level
// 0; the root is the whole vertex set; a node's parent sits exactly one
// level higher. Node ids are assigned top-down, so parent id < child id.
class DecompositionTree {
 public:
  std::vector<DecompositionNode> nodes;
  std::vector<int> leaf_of;  // vertex -> leaf node
  int root = 0;
  // Graph-distance unit (smallest positive distance); level-i radii are
  // beta * 2^(i-1) units.
  double unit = 1.0;
  double beta = 1.0;

  int size() const { return static_cast<int>(nodes.size()); }
  int top_level() const { return nodes[root].level; }

  // Length of the edge from `node` to its parent: 2^(parent level) units.
  double edge_length(int node) const;
  // Tree distance between the leaves of two vertices.
  double leaf_distance(Vertex a, Vertex b) const;
  int lowest_common_ancestor(int a, int b) const;
  // Vertices in the cluster of `node` (leaves below it), ascending.
  std::vector<Vertex> cluster(int node) const;
};

// Source of random dominating trees. Implementations must be deterministic
// functions of (graph, seed).
class TreeSampler {
 public:
  virtual ~TreeSampler() = default;
  virtual std::string_view name() const = 0;
  virtual DecompositionTree sample(const WeightedGraph& g, const DistanceMatrix& metric,
                                   std::uint64_t seed) const = 0;
};

// Fakcharoenphol-Rao-Talwar random hierarchical decomposition: one random
// vertex permutation and one scale beta = 2^U, U ~ Uniform[0,1), per tree.
// Level-i clusters refine level-(i+1) clusters by the first permutation
// vertex within beta * 2^(i-1) of each member.
class FrtSampler final : public TreeSampler {
 public:
  std::string_view name() const override { return "frt"; }
  DecompositionTree sample(const WeightedGraph& g, const DistanceMatrix& metric,
                           std::uint64_t seed) const override;
};

const TreeSampler& default_sampler();

DecompositionTree sample_decomposition_tree(const WeightedGraph& g,
                                            const DistanceMatrix& metric,
                                            std::uint64_t seed);
DecompositionTree sample_decomposition_tree(const WeightedGraph& g, std::uint64_t seed);

}  // namespace stk

#endif  // STK_DECOMPOSITION_TREE_HPP_
