#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "doctest.h"
#include "stk/decomposition_tree.hpp"
#include "stk/random.hpp"
#include "stk/shortest_paths.hpp"
#include "stk/terminal_tree.hpp"
#include "support.hpp"

using namespace stk;
using namespace stk::testing;

namespace {

bool in_subtree(const TerminalTree& tree, int node, int root) {
  for (int x = node; x >= 0; x = tree.node(x).parent) {
    if (x == root) return true;
  }
  return false;
}

// load(e) computed edge by edge from subtree membership.
std::vector<double> loads_by_subtree(const WeightedGraph& g, const TerminalTree& tree) {
  std::vector<double> loads(tree.size(), 0.0);
  for (int e = 1; e < tree.size(); ++e) {
    for (const Edge& edge : g.edges()) {
      const bool a = in_subtree(tree, tree.node_of_vertex(edge.u), e);
      const bool b = in_subtree(tree, tree.node_of_vertex(edge.v), e);
      if (a != b) loads[e] += edge.w;
    }
  }
  return loads;
}

std::vector<int> leaf_to_root(const DecompositionTree& dt, Vertex v) {
  std::vector<int> chain;
  for (int x = dt.leaf_of[v]; x >= 0; x = dt.nodes[x].parent) chain.push_back(x);
  return chain;
}

}  // namespace

TEST_SUITE("tree-embed") {

TEST_CASE("single-vertex graph gives a one-node tree") {
  WeightedGraph g(1, {});
  DecompositionTree dt = sample_decomposition_tree(g, 5);
  CHECK(dt.size() == 1);
  CHECK(dt.leaf_of[0] == 0);
  TerminalTree tt = build_terminal_tree(dt, TerminalSet({0}, 1));
  CHECK(tt.size() == 1);
  CHECK(tt.retract(0) == 0);
}

TEST_CASE("path graph dominance over 1000 seeds") {
  WeightedGraph g = unit_path(3);
  DistanceMatrix metric(g);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    DecompositionTree dt = sample_decomposition_tree(g, metric, seed);
    CHECK(dt.leaf_distance(0, 2) >= 2.0);
  }
}

TEST_CASE("same seed gives the same tree") {
  Rng rng(3);
  WeightedGraph g = random_connected_graph(rng, 20, 0.2, 5);
  DecompositionTree a = sample_decomposition_tree(g, 77);
  DecompositionTree b = sample_decomposition_tree(g, 77);
  REQUIRE(a.size() == b.size());
  CHECK(a.beta == b.beta);
  for (int i = 0; i < a.size(); ++i) {
    CHECK(a.nodes[i].parent == b.nodes[i].parent);
    CHECK(a.nodes[i].center == b.nodes[i].center);
    CHECK(a.nodes[i].level == b.nodes[i].level);
  }
}

TEST_CASE("decomposition invariants") {
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = random_int(rng, 1, 25);
    WeightedGraph g = random_connected_graph(rng, n, 0.15, 8);
    DistanceMatrix metric(g);
    DecompositionTree dt = sample_decomposition_tree(g, metric, rng());
    CHECK(dt.beta >= 1.0);
    CHECK(dt.beta < 2.0);
    CHECK(dt.cluster(dt.root).size() == static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      CHECK(dt.nodes[dt.leaf_of[v]].level == 0);
      CHECK(dt.nodes[dt.leaf_of[v]].children.empty());
    }
    for (int x = 0; x < dt.size(); ++x) {
      const auto& node = dt.nodes[x];
      const auto members = dt.cluster(x);
      if (node.parent >= 0) {
        CHECK(node.parent < x);
        CHECK(dt.nodes[node.parent].level == node.level + 1);
        const auto up = dt.cluster(node.parent);
        for (Vertex v : members) CHECK(std::binary_search(up.begin(), up.end(), v));
      }
      // Diameter bound under the sampled scale.
      const double bound = std::ldexp(1.0, node.level + 1) * dt.unit;
      for (Vertex a : members) {
        for (Vertex b : members) CHECK(metric(a, b) <= bound * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("dominance on random instances") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = random_int(rng, 2, 30);
    WeightedGraph g = random_connected_graph(rng, n, 0.1, 10);
    DistanceMatrix metric(g);
    for (int s = 0; s < 10; ++s) {
      DecompositionTree dt = sample_decomposition_tree(g, metric, rng());
      for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) CHECK(dt.leaf_distance(a, b) >= metric(a, b));
      }
    }
  }
}

TEST_CASE("empirical stretch stays within the generous envelope") {
  Rng rng(6);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = random_int(rng, 20, 40);
    const int k = random_int(rng, 4, 32 < n ? 32 : n);
    Instance inst = random_instance(rng, n, k, 0.1, 6);
    DistanceMatrix metric(inst.graph);
    std::map<std::pair<int, int>, double> sum;
    const int samples = 200;
    for (int s = 0; s < samples; ++s) {
      TerminalTree tt = build_terminal_tree(
          sample_decomposition_tree(inst.graph, metric, derive_seed(trial, s)), inst.terminals);
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
          const Vertex a = inst.terminals[i];
          const Vertex b = inst.terminals[j];
          sum[{i, j}] += tt.path_length(tt.node_of_terminal(a), tt.node_of_terminal(b)) /
                         metric(a, b);
        }
      }
    }
    const double envelope = 16.0 * std::log2(k) + 8.0;
    for (const auto& [pair, total] : sum) CHECK(total / samples <= envelope);
  }
}

TEST_CASE("terminal tree structure and retraction rule") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = random_int(rng, 1, 20);
    const int k = random_int(rng, 1, n);
    Instance inst = random_instance(rng, n, k);
    DistanceMatrix metric(inst.graph);
    DecompositionTree dt = sample_decomposition_tree(inst.graph, metric, rng());
    TerminalTree tt = build_terminal_tree(dt, inst.terminals);

    CHECK(tt.num_terminals() == k);
    for (Vertex t : inst.terminals.vertices()) CHECK(tt.retract(t) == t);
    for (Vertex v = 0; v < n; ++v) {
      // Replay: lowest ancestor whose cluster holds a terminal, minimum id.
      Vertex expected = -1;
      for (int x : leaf_to_root(dt, v)) {
        for (Vertex u : dt.cluster(x)) {
          if (inst.terminals.contains(u)) {
            expected = u;
            break;
          }
        }
        if (expected >= 0) break;
      }
      CHECK(tt.retract(v) == expected);
    }
    for (int id = 0; id < tt.size(); ++id) {
      const auto& node = tt.node(id);
      const int degree = static_cast<int>(node.children.size()) + (node.parent >= 0 ? 1 : 0);
      if (tt.size() > 1 && degree == 1) CHECK(tt.is_terminal(id));  // leaves are terminals
      if (!tt.is_terminal(id)) CHECK(degree >= 3);
      if (node.parent >= 0) CHECK(node.parent < id);
    }
    // Terminal-tree distances agree with the decomposition tree's.
    for (Vertex a : inst.terminals.vertices()) {
      for (Vertex b : inst.terminals.vertices()) {
        CHECK(tt.path_length(tt.node_of_terminal(a), tt.node_of_terminal(b)) ==
              doctest::Approx(dt.leaf_distance(a, b)));
      }
    }
  }
}

TEST_CASE("K = V gives the identity retraction") {
  Rng rng(8);
  WeightedGraph g = random_connected_graph(rng, 12, 0.3, 3);
  TerminalTree tt = build_terminal_tree(sample_decomposition_tree(g, 1), all_vertices(12));
  for (Vertex v = 0; v < 12; ++v) CHECK(tt.retract(v) == v);
}

TEST_CASE("two terminals give a single tree edge") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = random_instance(rng, random_int(rng, 2, 15), 2);
    TerminalTree tt = compute_edge_loads(
        inst.graph,
        build_terminal_tree(sample_decomposition_tree(inst.graph, rng()), inst.terminals));
    REQUIRE(tt.size() == 2);
    double crossing = 0.0;
    for (const Edge& e : inst.graph.edges()) {
      if (tt.retract(e.u) != tt.retract(e.v)) crossing += e.w;
    }
    CHECK(tt.load(1) == crossing);
  }
}

TEST_CASE("star loads example") {
  WeightedGraph g = star_graph(3);
  TerminalTree tt({-1, 0, 0, 0}, {-1, 1, 2, 3}, {0, 0, 0, 0}, {1, 1, 2, 3});
  TerminalTree loaded = compute_edge_loads(g, tt);
  CHECK(loaded.load(1) == 2.0);
  CHECK(loaded.load(2) == 1.0);
  CHECK(loaded.load(3) == 1.0);
}

TEST_CASE("edges inside one retraction class carry no load") {
  WeightedGraph g = unit_path(4);
  TerminalTree tt({-1, 0}, {0, 3}, {0, 0}, {0, 0, 3, 3});
  TerminalTree loaded = compute_edge_loads(g, tt);
  CHECK(loaded.load(1) == 1.0);  // only edge (1, 2) crosses
  TerminalTree single({-1}, {0}, {0}, {0, 0, 0, 0});
  CHECK(compute_edge_loads(g, single).total_load() == 0.0);
}

TEST_CASE("loads match a per-edge subtree enumeration") {
  Rng rng(10);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = random_int(rng, 2, 20);
    Instance inst = random_instance(rng, n, random_int(rng, 1, n), 0.3, 7);
    TerminalTree tt = compute_edge_loads(
        inst.graph,
        build_terminal_tree(sample_decomposition_tree(inst.graph, rng()), inst.terminals));
    const auto expected = loads_by_subtree(inst.graph, tt);
    double path_sum = 0.0;
    for (const Edge& e : inst.graph.edges()) {
      path_sum += e.w * static_cast<double>(
                            tt.path_edges(tt.node_of_vertex(e.u), tt.node_of_vertex(e.v)).size());
    }
    for (int e = 1; e < tt.size(); ++e) CHECK(tt.load(e) == expected[e]);
    CHECK(tt.total_load() == path_sum);
  }
}

TEST_CASE("degree-2 chains carry one common load") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = random_int(rng, 3, 20);
    Instance inst = random_instance(rng, n, random_int(rng, 2, n), 0.2, 5);
    DecompositionTree dt = sample_decomposition_tree(inst.graph, rng());
    TerminalTree full = compute_edge_loads(inst.graph, build_terminal_tree(dt, inst.terminals, false));
    TerminalTree contracted = compute_edge_loads(inst.graph, build_terminal_tree(dt, inst.terminals));
    for (int id = 1; id < full.size(); ++id) {
      if (full.node(id).children.size() == 1 && !full.is_terminal(id)) {
        CHECK(full.load(id) == full.load(full.node(id).children[0]));
      }
    }
    // Contraction changes neither the retraction nor the total of load * length.
    for (Vertex v = 0; v < n; ++v) CHECK(full.retract(v) == contracted.retract(v));
    double full_cost = 0.0;
    double contracted_cost = 0.0;
    for (int id = 1; id < full.size(); ++id) full_cost += full.load(id) * full.node(id).length;
    for (int id = 1; id < contracted.size(); ++id) {
      contracted_cost += contracted.load(id) * contracted.node(id).length;
    }
    CHECK(full_cost == doctest::Approx(contracted_cost));
  }
}

TEST_CASE("tree dump lists nodes, retraction and loads") {
  WeightedGraph g = star_graph(3);
  TerminalTree tt =
      compute_edge_loads(g, TerminalTree({-1, 0, 0, 0}, {-1, 1, 2, 3}, {0, 0, 0, 0}, {1, 1, 2, 3}));
  std::ostringstream out;
  write_tree_dump(out, tt);
  const std::string text = out.str();
  CHECK(text.find("n 1 0 0 1\n") == 0);
  CHECK(text.find("f 1 2\n") != std::string::npos);
  CHECK(text.find("l 2 1 2\n") != std::string::npos);
  CHECK(text.find("l 4 1 1\n") != std::string::npos);
}

}  // TEST_SUITE
