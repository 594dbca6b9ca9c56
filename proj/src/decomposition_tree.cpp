#include "stk/decomposition_tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "stk/random.hpp"

namespace stk {

double DecompositionTree::edge_length(int node) const {
  const int parent = nodes[node].parent;
  if (parent < 0) return 0.0;
  return std::ldexp(unit, nodes[parent].level);
}

int DecompositionTree::lowest_common_ancestor(int a, int b) const {
  while (nodes[a].level < nodes[b].level) a = nodes[a].parent;
  while (nodes[b].level < nodes[a].level) b = nodes[b].parent;
  while (a != b) {
    a = nodes[a].parent;
    b = nodes[b].parent;
  }
  return a;
}

double DecompositionTree::leaf_distance(Vertex a, Vertex b) const {
  double total = 0.0;
  int x = leaf_of[a];
  int y = leaf_of[b];
  const int top = lowest_common_ancestor(x, y);
  for (; x != top; x = nodes[x].parent) total += edge_length(x);
  for (; y != top; y = nodes[y].parent) total += edge_length(y);
  return total;
}

std::vector<Vertex> DecompositionTree::cluster(int node) const {
  std::vector<Vertex> members;
  std::vector<int> stack{node};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    // A leaf is the singleton cluster of its own center.
    if (nodes[x].children.empty()) members.push_back(nodes[x].center);
    for (int c : nodes[x].children) stack.push_back(c);
  }
  std::sort(members.begin(), members.end());
  return members;
}

DecompositionTree FrtSampler::sample(const WeightedGraph& g, const DistanceMatrix& metric,
                                     std::uint64_t seed) const {
  const int n = g.num_vertices();
  DecompositionTree tree;
  tree.leaf_of.assign(n, 0);
  if (n == 1) {
    tree.nodes.push_back({-1, 0, 0, 0.0, {}});
    return tree;
  }

  Rng rng(mix_seed(seed));
  std::vector<Vertex> permutation(n);
  std::iota(permutation.begin(), permutation.end(), 0);
  portable_shuffle(permutation.begin(), permutation.end(), rng);
  tree.beta = std::exp2(uniform01(rng));
  tree.unit = metric.min_positive();

  // Smallest top level whose radius covers the whole (scaled) diameter.
  const double diameter = metric.diameter() / tree.unit;
  int top = 1;
  while (std::ldexp(1.0, top - 1) < diameter) ++top;

  tree.nodes.push_back({-1, top, permutation[0], tree.beta * std::ldexp(tree.unit, top - 1), {}});
  std::vector<int> node_of(n, 0);  // current-level node of each vertex
  for (int level = top - 1; level >= 0; --level) {
    const double radius = tree.beta * std::ldexp(tree.unit, level - 1);
    std::vector<Vertex> center(n);
    for (Vertex v = 0; v < n; ++v) {
      for (Vertex c : permutation) {
        if (metric(v, c) <= radius) {
          center[v] = c;
          break;
        }
      }
    }
    // Children of each parent, in order of the permutation rank of their
    // centers, so node ids do not depend on anything but the sample.
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[permutation[i]] = i;
    std::map<std::pair<int, int>, int> child_of;  // (parent, center rank) -> node
    std::vector<std::pair<std::pair<int, int>, Vertex>> keys;
    keys.reserve(n);
    for (Vertex v = 0; v < n; ++v) keys.push_back({{node_of[v], rank[center[v]]}, v});
    std::sort(keys.begin(), keys.end());
    for (const auto& [key, v] : keys) {
      auto [it, inserted] = child_of.try_emplace(key, static_cast<int>(tree.nodes.size()));
      if (inserted) {
        tree.nodes.push_back({key.first, level, center[v], radius, {}});
        tree.nodes[key.first].children.push_back(it->second);
      }
    }
    for (Vertex v = 0; v < n; ++v) node_of[v] = child_of.at({node_of[v], rank[center[v]]});
  }
  for (Vertex v = 0; v < n; ++v) tree.leaf_of[v] = node_of[v];
  return tree;
}

const TreeSampler& default_sampler() {
  static const FrtSampler sampler;
  return sampler;
}

DecompositionTree sample_decomposition_tree(const WeightedGraph& g,
                                            const DistanceMatrix& metric,
                                            std::uint64_t seed) {
  return default_sampler().sample(g, metric, seed);
}

DecompositionTree sample_decomposition_tree(const WeightedGraph& g, std::uint64_t seed) {
  return sample_decomposition_tree(g, shortest_path_metric(g), seed);
}

}  // namespace stk
