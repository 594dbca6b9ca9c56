#ifndef STK_PIPELINE_HPP_
#define STK_PIPELINE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "stk/decomposition_tree.hpp"
#include "stk/graph.hpp"
#include "stk/shortest_paths.hpp"
#include "stk/solutions.hpp"
#include "stk/terminal_tree.hpp"
#include "stk/tree_solvers.hpp"

namespace stk {

struct PipelineParams {
  Problem problem = Problem::kSmla;
  int trees = 16;
  // Bisection: terminals on side A (default ceil(k/2)). Multicut: pairs to
  // separate (default ceil(|pairs|/2)). Negative selects the default.
  int k_prime = -1;
  DemandPairs pairs;  // multicut only; endpoints must be terminals
  // SMLA: exact threshold-cut relabeling of non-terminals.
  // Bisection: min-cut re-optimization of non-terminal sides.
  bool post_optimize = false;
  int threads = 0;  // <= 0: STK_THREADS / hardware concurrency
  const TreeSampler* sampler = nullptr;  // nullptr: default FRT sampler
  TreeSolvers solvers;
};

struct PipelineReport {
  double best_cost = 0.0;
  // Lifted cost in G per tree; NaN for trees that were infeasible.
  std::vector<double> tree_costs;
  int trees = 0;
  std::uint64_t seed = 0;
  double millis = 0.0;
  std::string solver;
  int infeasible_trees = 0;
  int best_tree = -1;
  int k_prime = 0;
};

struct PipelineResult {
  Solution solution;
  PipelineReport report;
};

// Result of one sample-solve-lift round.
struct TreeOutcome {
  double tree_cost = 0.0;    // tree objective under loads
  Solution lifted;           // lifted, before post-optimization
  double lifted_cost = 0.0;  // cost of `lifted` in G
  Solution final_solution;   // after post-optimization (if enabled)
  double final_cost = 0.0;
};

// Resolved k' for the problem (applies the defaults described above).
int effective_k_prime(Problem problem, int k_prime, int num_terminals, int num_pairs);

// Loaded terminal tree for per-tree seed `seed`.
TerminalTree sample_terminal_tree(const WeightedGraph& g, const DistanceMatrix& metric,
                                  const TerminalSet& terminals, std::uint64_t seed,
                                  const TreeSampler& sampler = default_sampler());

// Solves `params.problem` on a loaded tree and lifts the answer to G. Throws
// TreeInfeasible from the multicut tree solver. `k_prime` must already be
// resolved.
TreeOutcome solve_on_tree(const WeightedGraph& g, const TerminalSet& terminals,
                          const TerminalTree& tree, const PipelineParams& params, int k_prime);

// Samples params.trees trees (tree i uses derive_seed(seed, i)), solves and
// lifts on each, and returns the cheapest lifted solution; ties go to the
// lowest tree index, so the result does not depend on the thread count.
// Throws std::invalid_argument for invalid params and stk::Error when every
// tree is infeasible.
PipelineResult run_pipeline(const WeightedGraph& g, const TerminalSet& terminals,
                            const PipelineParams& params, std::uint64_t seed);

}  // namespace stk

#endif  // STK_PIPELINE_HPP_
