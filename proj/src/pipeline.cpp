#include "stk/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "stk/error.hpp"
#include "stk/lift.hpp"
#include "stk/parallel.hpp"
#include "stk/random.hpp"

namespace stk {

int effective_k_prime(Problem problem, int k_prime, int num_terminals, int num_pairs) {
  if (k_prime >= 0) return k_prime;
  switch (problem) {
    case Problem::kBisection: return (num_terminals + 1) / 2;
    case Problem::kMulticut: return (num_pairs + 1) / 2;
    default: return 0;
  }
}

TerminalTree sample_terminal_tree(const WeightedGraph& g, const DistanceMatrix& metric,
                                  const TerminalSet& terminals, std::uint64_t seed,
                                  const TreeSampler& sampler) {
  DecompositionTree dt = sampler.sample(g, metric, seed);
  return compute_edge_loads(g, build_terminal_tree(dt, terminals));
}

TreeOutcome solve_on_tree(const WeightedGraph& g, const TerminalSet& terminals,
                          const TerminalTree& tree, const PipelineParams& params,
                          int k_prime) {
  TreeOutcome out;
  switch (params.problem) {
    case Problem::kSmla: {
      TreeArrangement ta = params.solvers.smla(tree);
      out.tree_cost = tree_smla_cost(tree, ta);
      Arrangement lifted = lift_arrangement(tree, ta);
      out.lifted_cost = smla_cost(g, lifted);
      out.lifted = lifted;
      if (params.post_optimize) {
        Arrangement better = post_optimize_nonterminals(g, terminals, lifted);
        out.final_cost = smla_cost(g, better);
        out.final_solution = std::move(better);
      } else {
        out.final_cost = out.lifted_cost;
        out.final_solution = std::move(lifted);
      }
      break;
    }
    case Problem::kSmcla: {
      TreeArrangement ta = params.solvers.smcla(tree);
      out.tree_cost = tree_smcla_cost(tree, ta);
      Arrangement lifted = lift_arrangement(tree, ta);
      out.lifted_cost = smcla_cost(g, lifted, terminals.size());
      out.lifted = lifted;
      if (params.post_optimize) {
        // Each threshold set is a minimum prefix cut, so the max can only drop.
        Arrangement better = post_optimize_nonterminals(g, terminals, lifted);
        out.final_cost = smcla_cost(g, better, terminals.size());
        out.final_solution = std::move(better);
      } else {
        out.final_cost = out.lifted_cost;
        out.final_solution = std::move(lifted);
      }
      break;
    }
    case Problem::kBisection: {
      TreeBipartition tb = params.solvers.bisection(tree, k_prime);
      out.tree_cost = tree_bisection_cost(tree, tb);
      Bipartition lifted = lift_bipartition(tree, tb);
      out.lifted_cost = cut_weight(g, lifted.side_a);
      out.lifted = lifted;
      if (params.post_optimize) {
        Bipartition better = post_optimize_bisection(g, terminals, lifted);
        out.final_cost = cut_weight(g, better.side_a);
        out.final_solution = std::move(better);
      } else {
        out.final_cost = out.lifted_cost;
        out.final_solution = std::move(lifted);
      }
      break;
    }
    case Problem::kMulticut: {
      TreeCutSet tc = params.solvers.multicut(tree, params.pairs, k_prime);
      out.tree_cost = tc.cost;
      EdgeCutSet lifted = lift_multicut(g, tree, tc, params.pairs);
      out.lifted_cost = edge_set_weight(g, lifted.edges);
      out.lifted = lifted;
      out.final_cost = out.lifted_cost;
      out.final_solution = std::move(lifted);
      break;
    }
  }
  return out;
}

namespace {

std::string solver_label(const PipelineParams& params, const TreeSampler& sampler, int k) {
  std::string label(sampler.name());
  label += ':';
  switch (params.problem) {
    case Problem::kSmla:
      label += k <= kExactSmlaTerminals ? "exact-tree-mla" : "balanced-split-mla";
      break;
    case Problem::kBisection: label += "tree-dp-bisection"; break;
    case Problem::kMulticut: label += "greedy-density-multicut"; break;
    case Problem::kSmcla: label += "recursive-bisection-mcla"; break;
  }
  if (params.post_optimize &&
      params.problem != Problem::kMulticut) {
    label += "+post";
  }
  return label;
}

}  // namespace

PipelineResult run_pipeline(const WeightedGraph& g, const TerminalSet& terminals,
                            const PipelineParams& params, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  if (params.trees < 1) throw std::invalid_argument("need at least one tree");
  const int k = terminals.size();
  const int num_pairs = static_cast<int>(params.pairs.size());
  const int k_prime = effective_k_prime(params.problem, params.k_prime, k, num_pairs);
  if (params.problem == Problem::kBisection && k_prime > k) {
    throw std::invalid_argument("bisection: k' exceeds the terminal count");
  }
  if (params.problem == Problem::kMulticut) {
    validate_demands(params.pairs, g.num_vertices());
    validate_terminal_demands(params.pairs, terminals);
    if (k_prime > num_pairs) throw std::invalid_argument("multicut: k' exceeds the pair count");
  }
  const TreeSampler& sampler = params.sampler ? *params.sampler : default_sampler();
  const DistanceMatrix metric = shortest_path_metric(g);

  std::vector<std::optional<TreeOutcome>> outcomes(params.trees);
  parallel_for(static_cast<std::size_t>(params.trees), params.threads, [&](std::size_t i) {
    TerminalTree tree = sample_terminal_tree(g, metric, terminals, derive_seed(seed, i), sampler);
    try {
      outcomes[i] = solve_on_tree(g, terminals, tree, params, k_prime);
    } catch (const TreeInfeasible&) {
      outcomes[i].reset();
    }
  });

  PipelineResult result;
  PipelineReport& report = result.report;
  report.trees = params.trees;
  report.seed = seed;
  report.solver = solver_label(params, sampler, k);
  report.k_prime = k_prime;
  report.tree_costs.assign(params.trees, std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < params.trees; ++i) {
    if (!outcomes[i]) {
      ++report.infeasible_trees;
      continue;
    }
    report.tree_costs[i] = outcomes[i]->final_cost;
    if (report.best_tree < 0 || outcomes[i]->final_cost < report.best_cost) {
      report.best_tree = i;
      report.best_cost = outcomes[i]->final_cost;
    }
  }
  if (report.best_tree < 0) throw Error("every sampled tree was infeasible");
  result.solution = std::move(outcomes[report.best_tree]->final_solution);
  report.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace stk
