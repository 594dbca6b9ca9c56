#include "stk/lift.hpp"

#include <algorithm>

#include "stk/min_cut.hpp"

namespace stk {

Arrangement lift_arrangement(const TerminalTree& tree, const TreeArrangement& ta) {
  const auto retraction = tree.retraction();
  Arrangement a;
  a.position.resize(retraction.size());
  for (std::size_t x = 0; x < retraction.size(); ++x) {
    a.position[x] = ta.position[tree.node_of_terminal(retraction[x])];
  }
  return a;
}

Bipartition lift_bipartition(const TerminalTree& tree, const TreeBipartition& tb) {
  const auto retraction = tree.retraction();
  Bipartition b;
  b.side_a.resize(retraction.size());
  for (std::size_t x = 0; x < retraction.size(); ++x) {
    b.side_a[x] = tb.side_a[tree.node_of_terminal(retraction[x])];
  }
  return b;
}

EdgeCutSet lift_multicut(const WeightedGraph& g, const TerminalTree& tree,
                         const TreeCutSet& tc, const DemandPairs& pairs) {
  std::vector<char> cut(tree.size(), 0);
  for (int e : tc.edges) cut[e] = 1;
  std::vector<int> component(tree.size(), 0);
  for (int v = 1; v < tree.size(); ++v) {
    component[v] = cut[v] ? v : component[tree.node(v).parent];
  }
  std::vector<int> label(g.num_vertices());
  for (Vertex x = 0; x < g.num_vertices(); ++x) label[x] = component[tree.node_of_vertex(x)];

  EdgeCutSet result;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (label[g.edge(e).u] != label[g.edge(e).v]) result.edges.push_back(e);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (label[pairs[i].s] != label[pairs[i].t]) result.separated_pairs.push_back(static_cast<int>(i));
  }
  return result;
}

Arrangement post_optimize_nonterminals(const WeightedGraph& g, const TerminalSet& terminals,
                                       const Arrangement& a) {
  const int n = g.num_vertices();
  const int k = terminals.size();
  if (k == n) return a;
  Arrangement result;
  result.position.assign(n, 1);
  std::vector<bool> below(n, false);  // source side of the previous threshold
  for (int threshold = 1; threshold < k; ++threshold) {
    std::vector<Vertex> sources;
    std::vector<Vertex> sinks;
    for (Vertex x = 0; x < n; ++x) {
      if (below[x]) {
        sources.push_back(x);
      } else if (terminals.contains(x)) {
        (a.position[x] <= threshold ? sources : sinks).push_back(x);
      }
    }
    StCut cut = min_st_cut(g, sources, sinks, CutSide::kMaximal);
    for (Vertex x = 0; x < n; ++x) {
      if (!cut.source_side[x]) ++result.position[x];
    }
    below = std::move(cut.source_side);
  }
  for (Vertex t : terminals.vertices()) result.position[t] = a.position[t];
  return result;
}

Bipartition post_optimize_bisection(const WeightedGraph& g, const TerminalSet& terminals,
                                    const Bipartition& b) {
  std::vector<Vertex> a_terminals;
  std::vector<Vertex> b_terminals;
  for (Vertex t : terminals.vertices()) (b.side_a[t] ? a_terminals : b_terminals).push_back(t);
  Bipartition result;
  if (a_terminals.empty() || b_terminals.empty()) {
    // All terminals on one side: the empty cut is optimal.
    result.side_a.assign(g.num_vertices(), !a_terminals.empty());
    return result;
  }
  StCut cut = min_st_cut(g, a_terminals, b_terminals);
  result.side_a = std::move(cut.source_side);
  return result;
}

}  // namespace stk
