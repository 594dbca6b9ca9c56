#ifndef STK_TREE_SOLVERS_HPP_
#define STK_TREE_SOLVERS_HPP_

#include <functional>
#include <span>
#include <vector>

#include "stk/graph.hpp"
#include "stk/terminal_tree.hpp"

namespace stk {

// Position in 1..k for every tree node; a permutation on terminal nodes.
struct TreeArrangement {
  std::vector<int> position;
};

struct TreeBipartition {
  std::vector<bool> side_a;  // per tree node
};

struct TreeCutSet {
  std::vector<int> edges;  // child ids, ascending
  int separated = 0;       // pairs whose hosts end up in different components
  double cost = 0.0;       // total load of the cut edges
};

// Tree-side objectives under the current loads.
double tree_smla_cost(const TerminalTree& tree, const TreeArrangement& a);
double tree_smcla_cost(const TerminalTree& tree, const TreeArrangement& a);
double tree_bisection_cost(const TerminalTree& tree, const TreeBipartition& b);
double tree_cut_cost(const TerminalTree& tree, std::span<const int> edges);

// Node hosting vertex v: its retraction's node, or v's own node when the
// tree carries no retraction.
int host_node(const TerminalTree& tree, Vertex v);
int count_separated_pairs(const TerminalTree& tree, std::span<const int> cut_edges,
                          const DemandPairs& pairs);

// Given fixed terminal positions, positions the non-terminal nodes to minimize
// sum load(e) * |pos(x) - pos(y)| exactly (tree DP over labels 1..k).
TreeArrangement place_steiner_nodes(const TerminalTree& tree,
                                    std::span<const int> terminal_position);

// Exact for k <= kExactSmlaTerminals (all k! terminal orders, each completed
// by place_steiner_nodes); above that, recursive most-balanced-edge
// splitting with contiguous placement.
inline constexpr int kExactSmlaTerminals = 8;
TreeArrangement solve_tree_smla(const TerminalTree& tree);
// The heuristic branch, exposed for comparison at any k.
TreeArrangement balanced_split_smla(const TerminalTree& tree);

// Exact minimum of sum load(e) * [sides differ] with exactly k_prime terminal
// nodes on side A. Throws std::invalid_argument if k_prime is not in [0, k].
TreeBipartition solve_tree_bisection(const TerminalTree& tree, int k_prime);

// Same DP restricted to the nodes with in_group set (a forest in general);
// only edges with both endpoints in the group are charged and only nodes with
// counted set count toward k_prime. Nodes outside the group are left on B.
TreeBipartition bisect_subforest(const TerminalTree& tree, const std::vector<bool>& in_group,
                                 const std::vector<bool>& counted, int k_prime,
                                 double* cost = nullptr);

// Greedy by newly separated pairs per unit load, then drops redundant edges.
// Throws TreeInfeasible if fewer than k_prime pairs have distinct hosts, and
// std::invalid_argument if k_prime is outside [0, |pairs|].
TreeCutSet solve_tree_partial_multicut(const TerminalTree& tree, const DemandPairs& pairs,
                                       int k_prime);

// Recursive bisection: split the current node group with bisect_subforest at
// ceil(k/2) terminals, place side A before side B, recurse. Every node takes
// the position of the single terminal left in its final group.
TreeArrangement solve_tree_smcla(const TerminalTree& tree);

// Pluggable tree solvers used by the pipeline.
struct TreeSolvers {
  std::function<TreeArrangement(const TerminalTree&)> smla = solve_tree_smla;
  std::function<TreeBipartition(const TerminalTree&, int)> bisection = solve_tree_bisection;
  std::function<TreeCutSet(const TerminalTree&, const DemandPairs&, int)> multicut =
      solve_tree_partial_multicut;
  std::function<TreeArrangement(const TerminalTree&)> smcla = solve_tree_smcla;
};

}  // namespace stk

#endif  // STK_TREE_SOLVERS_HPP_
