#ifndef STK_LIFT_HPP_
#define STK_LIFT_HPP_

#include "stk/graph.hpp"
#include "stk/solutions.hpp"
#include "stk/terminal_tree.hpp"
#include "stk/tree_solvers.hpp"

namespace stk {

// position(x) = tree position of retraction(x)'s node.
Arrangement lift_arrangement(const TerminalTree& tree, const TreeArrangement& ta);

// x in A iff retraction(x)'s node is on side A.
Bipartition lift_bipartition(const TerminalTree& tree, const TreeBipartition& tb);

// Labels each vertex by the component of its retraction's node in T minus the
// cut edges and cuts every G-edge whose endpoints get different labels.
EdgeCutSet lift_multicut(const WeightedGraph& g, const TerminalTree& tree,
                         const TreeCutSet& tc, const DemandPairs& pairs);

// Keeps terminal positions and re-labels the non-terminals to an exact
// minimizer of sum c_uv |pos(u) - pos(v)|: for each threshold t = 1..k-1 the
// set {x : pos(x) <= t} is a minimum cut between terminals at <= t and
// terminals at > t, with the previous threshold's side forced in so the sets
// are nested.
Arrangement post_optimize_nonterminals(const WeightedGraph& g, const TerminalSet& terminals,
                                       const Arrangement& a);

// Bisection post-step: keeps which terminals are on A and replaces the
// non-terminal sides by a minimum cut between the A- and B-terminals.
Bipartition post_optimize_bisection(const WeightedGraph& g, const TerminalSet& terminals,
                                    const Bipartition& b);

}  // namespace stk

#endif  // STK_LIFT_HPP_
