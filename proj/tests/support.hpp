// Small fixtures and random instance builders shared by the unit tests.
#ifndef STK_TESTS_SUPPORT_HPP_
#define STK_TESTS_SUPPORT_HPP_

#include <cmath>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "stk/graph.hpp"
#include "stk/instance_io.hpp"
#include "stk/random.hpp"
#include "stk/terminal_tree.hpp"

namespace stk::testing {

// Vertices 0..weights.size(), edge i joins i and i+1.
inline WeightedGraph path_graph(const std::vector<double>& weights) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1), weights[i]});
  }
  return WeightedGraph(static_cast<int>(weights.size()) + 1, edges);
}

inline WeightedGraph unit_path(int n) { return path_graph(std::vector<double>(n - 1, 1.0)); }

inline WeightedGraph cycle_graph(int n, double w = 1.0) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, w});
  return WeightedGraph(n, edges);
}

inline WeightedGraph unit_triangle() { return cycle_graph(3); }

// Center 0 joined to 1..leaves.
inline WeightedGraph star_graph(int leaves, double w = 1.0) {
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i, w});
  return WeightedGraph(leaves + 1, edges);
}

inline TerminalSet all_vertices(int n) {
  std::vector<Vertex> t(n);
  for (int i = 0; i < n; ++i) t[i] = i;
  return TerminalSet(t, n);
}

inline int random_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

// Connected graph: random spanning tree plus each other pair with
// probability extra_p; integral weights in 1..max_weight.
inline WeightedGraph random_connected_graph(Rng& rng, int n, double extra_p, int max_weight) {
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> used;
  for (int v = 1; v < n; ++v) {
    const int u = random_int(rng, 0, v - 1);
    edges.push_back({u, v, static_cast<double>(random_int(rng, 1, max_weight))});
    used.insert({u, v});
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!used.count({u, v}) && uniform01(rng) < extra_p) {
        edges.push_back({u, v, static_cast<double>(random_int(rng, 1, max_weight))});
      }
    }
  }
  return WeightedGraph(n, edges);
}

inline TerminalSet random_terminals(Rng& rng, int n, int k) {
  std::vector<Vertex> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  portable_shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  return TerminalSet(all, n);
}

inline Instance random_instance(Rng& rng, int n, int k, double extra_p = 0.3,
                                int max_weight = 4) {
  WeightedGraph g = random_connected_graph(rng, n, extra_p, max_weight);
  TerminalSet t = random_terminals(rng, n, k);
  return Instance{std::move(g), std::move(t), std::nullopt, 0};
}

// Up to `count` distinct unordered terminal pairs.
inline DemandPairs random_terminal_pairs(Rng& rng, const TerminalSet& terminals, int count) {
  std::vector<std::pair<Vertex, Vertex>> all;
  for (int i = 0; i < terminals.size(); ++i) {
    for (int j = i + 1; j < terminals.size(); ++j) all.push_back({terminals[i], terminals[j]});
  }
  portable_shuffle(all.begin(), all.end(), rng);
  DemandPairs pairs;
  for (int i = 0; i < count && i < static_cast<int>(all.size()); ++i) {
    pairs.push_back({all[i].first, all[i].second, 1.0});
  }
  return pairs;
}

// Synthetic loaded tree: random parents, integral loads in 0..max_load,
// every leaf a terminal and internal nodes terminals with probability 1/3.
// Node i hosts terminal vertex i.
inline TerminalTree random_loaded_tree(Rng& rng, int nodes, int max_load) {
  std::vector<int> parent(nodes, -1);
  std::vector<int> child_count(nodes, 0);
  for (int i = 1; i < nodes; ++i) {
    parent[i] = random_int(rng, 0, i - 1);
    ++child_count[parent[i]];
  }
  std::vector<Vertex> terminal(nodes, -1);
  std::vector<double> loads(nodes, 0.0);
  for (int i = 0; i < nodes; ++i) {
    if (child_count[i] == 0 || random_int(rng, 0, 2) == 0) terminal[i] = i;
    if (i > 0) loads[i] = random_int(rng, 0, max_load);
  }
  return TerminalTree(parent, terminal, loads);
}

}  // namespace stk::testing

#endif  // STK_TESTS_SUPPORT_HPP_
