// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every check runs at a fixed seed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "stk/decomposition_tree.hpp"
#include "stk/error.hpp"
#include "stk/experiment.hpp"
#include "stk/generator.hpp"
#include "stk/lift.hpp"
#include "stk/oracles.hpp"
#include "stk/pipeline.hpp"
#include "stk/routing.hpp"
#include "stk/shortest_paths.hpp"
#include "stk/solutions.hpp"
#include "stk/terminal_tree.hpp"
#include "stk/tree_solvers.hpp"
#include "support.hpp"

using namespace stk;
using namespace stk::testing;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
  return buf;
}

// Connected graph with at most max_edges edges (spanning tree plus extras).
Instance small_instance(Rng& rng, int n, int k, int max_edges, int max_weight) {
  for (;;) {
    Instance inst = random_instance(rng, n, k, 0.3, max_weight);
    if (inst.graph.num_edges() <= max_edges) return inst;
  }
}

std::vector<double> prefix_cuts_g(const WeightedGraph& g, const std::vector<int>& pos, int k) {
  std::vector<double> cuts(std::max(k - 1, 0), 0.0);
  for (const Edge& e : g.edges()) {
    for (int i = std::min(pos[e.u], pos[e.v]); i < std::max(pos[e.u], pos[e.v]); ++i) {
      cuts[i - 1] += e.w;
    }
  }
  return cuts;
}

std::vector<double> prefix_cuts_t(const TerminalTree& t, const std::vector<int>& pos, int k) {
  std::vector<double> cuts(std::max(k - 1, 0), 0.0);
  for (int e = 1; e < t.size(); ++e) {
    const int p = t.node(e).parent;
    for (int i = std::min(pos[e], pos[p]); i < std::max(pos[e], pos[p]); ++i) {
      cuts[i - 1] += t.load(e);
    }
  }
  return cuts;
}

// 1. Dominance of tree distances over graph distances.
Outcome dominance() {
  const auto start = Clock::now();
  Rng rng(1001);
  long long violations = 0;
  long long checked = 0;
  int trees = 0;
  for (int inst_id = 0; inst_id < 50; ++inst_id) {
    const int n = random_int(rng, 2, 50);
    const int k = random_int(rng, 2, std::min(n, 16));
    Instance inst = random_instance(rng, n, k, 0.08, 10);
    DistanceMatrix metric(inst.graph);
    for (int s = 0; s < 20; ++s, ++trees) {
      TerminalTree tree =
          sample_terminal_tree(inst.graph, metric, inst.terminals, derive_seed(inst_id, s));
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
          const Vertex a = inst.terminals[i];
          const Vertex b = inst.terminals[j];
          ++checked;
          if (tree.path_length(tree.node_of_terminal(a), tree.node_of_terminal(b)) <
              metric(a, b)) {
            ++violations;
          }
        }
      }
    }
  }
  const double secs = seconds_since(start);
  return {violations == 0 && secs < 60.0,
          fmt("%.0f trees, %.0f terminal pairs, %.0f violations, %.2f s", trees,
              static_cast<double>(checked), static_cast<double>(violations), secs)};
}

// 2. Lifted cost in G never exceeds the tree objective.
Outcome lifting_inequality() {
  Rng rng(1002);
  long long violations = 0;
  long long checks = 0;
  for (int inst_id = 0; inst_id < 500; ++inst_id) {
    const int n = random_int(rng, 2, 16);
    const int k = random_int(rng, 1, std::min(n, 8));
    Instance inst = random_instance(rng, n, k, 0.25, 9);
    const auto& g = inst.graph;
    DistanceMatrix metric(g);
    DemandPairs pairs = random_terminal_pairs(rng, inst.terminals, 4);
    for (int s = 0; s < 2; ++s) {
      TerminalTree tree = sample_terminal_tree(g, metric, inst.terminals, derive_seed(inst_id, s));
      auto record = [&](bool ok) {
        ++checks;
        if (!ok) ++violations;
      };
      TreeArrangement ta = solve_tree_smla(tree);
      record(smla_cost(g, lift_arrangement(tree, ta)) <= tree_smla_cost(tree, ta));

      TreeBipartition tb = solve_tree_bisection(tree, (k + 1) / 2);
      record(cut_weight(g, lift_bipartition(tree, tb).side_a) <= tree_bisection_cost(tree, tb));

      if (!pairs.empty()) {
        TreeCutSet tc = solve_tree_partial_multicut(tree, pairs, (static_cast<int>(pairs.size()) + 1) / 2);
        EdgeCutSet lifted = lift_multicut(g, tree, tc, pairs);
        record(edge_set_weight(g, lifted.edges) <= tc.cost);
      }

      TreeArrangement tm = solve_tree_smcla(tree);
      auto gc = prefix_cuts_g(g, lift_arrangement(tree, tm).position, k);
      auto tcuts = prefix_cuts_t(tree, tm.position, k);
      for (std::size_t i = 0; i < gc.size(); ++i) record(gc[i] <= tcuts[i]);
    }
  }
  return {violations == 0, fmt("500 instances, %.0f comparisons, %.0f violations",
                               static_cast<double>(checks), static_cast<double>(violations))};
}

// 3. Tree bisection DP equals brute force over all side assignments.
Outcome bisection_dp() {
  Rng rng(1003);
  int mismatches = 0;
  int cases = 0;
  for (int trial = 0; trial < 500; ++trial) {
    TerminalTree tree = random_loaded_tree(rng, random_int(rng, 1, 10), 9);
    const int size = tree.size();
    const int k = tree.num_terminals();
    std::vector<double> best(k + 1, kInf);
    for (std::uint32_t mask = 0; mask < (1u << size); ++mask) {
      TreeBipartition b;
      b.side_a.resize(size);
      int on_a = 0;
      for (int v = 0; v < size; ++v) {
        b.side_a[v] = (mask >> v) & 1u;
        if (b.side_a[v] && tree.is_terminal(v)) ++on_a;
      }
      best[on_a] = std::min(best[on_a], tree_bisection_cost(tree, b));
    }
    for (int kp = 0; kp <= k; ++kp, ++cases) {
      if (tree_bisection_cost(tree, solve_tree_bisection(tree, kp)) != best[kp]) ++mismatches;
    }
  }
  return {mismatches == 0, fmt("500 trees, %.0f (tree, k') cases, %.0f mismatches", cases, mismatches)};
}

// 4. Threshold-cut extension equals exhaustive label enumeration.
Outcome post_optimization() {
  Rng rng(1004);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int k = random_int(rng, 1, 4);
    const int n = k + random_int(rng, 0, 6);
    Instance inst = random_instance(rng, n, k, 0.35, 7);
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 1);
    portable_shuffle(order.begin(), order.end(), rng);
    Arrangement a;
    a.position.assign(n, 1);
    for (int i = 0; i < k; ++i) a.position[inst.terminals[i]] = order[i];
    const double got = smla_cost(inst.graph, post_optimize_nonterminals(inst.graph, inst.terminals, a));

    std::vector<Vertex> free;
    for (Vertex v = 0; v < n; ++v) {
      if (!inst.terminals.contains(v)) free.push_back(v);
    }
    double best = kInf;
    for (;;) {
      best = std::min(best, smla_cost(inst.graph, a));
      std::size_t i = free.size();
      while (i > 0 && a.position[free[i - 1]] == k) a.position[free[--i]] = 1;
      if (i == 0) break;
      ++a.position[free[i - 1]];
    }
    if (got != best) ++mismatches;
  }
  return {mismatches == 0, fmt("200 instances, %.0f mismatches", mismatches)};
}

// 5. Measured approximation ratios against the exact oracles.
Outcome approximation_ratios() {
  const auto start = Clock::now();
  Rng rng(1005);
  std::vector<double> ratios[4];
  double worst_excess[4] = {-kInf, -kInf, -kInf, -kInf};  // ratio - (4 log2 k + 2)
  auto ratio_of = [](double cost, double opt) {
    if (opt > 0) return cost / opt;
    return cost == 0 ? 1.0 : kInf;
  };
  for (int inst_id = 0; inst_id < 100; ++inst_id) {
    const int n = random_int(rng, 4, 10);
    const int k = random_int(rng, 2, std::min(n, 6));
    Instance inst = small_instance(rng, n, k, 16, 5);
    const auto& g = inst.graph;
    const auto& t = inst.terminals;
    PipelineParams params;
    params.trees = 32;
    params.post_optimize = true;
    const std::uint64_t seed = derive_seed(1005, inst_id);
    const double bound = 4.0 * std::log2(k) + 2.0;

    auto note = [&](int slot, double r) {
      ratios[slot].push_back(r);
      worst_excess[slot] = std::max(worst_excess[slot], r - bound);
    };
    params.problem = Problem::kSmla;
    note(0, ratio_of(run_pipeline(g, t, params, seed).report.best_cost, exact_smla(g, t).cost));
    params.problem = Problem::kBisection;
    auto bis = run_pipeline(g, t, params, seed);
    note(1, ratio_of(bis.report.best_cost, exact_steiner_bisection(g, t, bis.report.k_prime).cost));
    params.problem = Problem::kSmcla;
    note(2, ratio_of(run_pipeline(g, t, params, seed).report.best_cost, exact_smcla(g, t).cost));
    params.problem = Problem::kMulticut;
    params.pairs = random_terminal_pairs(rng, t, 3);
    auto mc = run_pipeline(g, t, params, seed);
    ratios[3].push_back(
        ratio_of(mc.report.best_cost, exact_partial_multicut(g, params.pairs, mc.report.k_prime).cost));
  }
  const double secs = seconds_since(start);
  double med[4];
  double max[4];
  for (int i = 0; i < 4; ++i) {
    med[i] = median(ratios[i]);
    max[i] = *std::max_element(ratios[i].begin(), ratios[i].end());
  }
  bool pass = secs < 300.0 && med[3] <= 2.5;
  for (int i = 0; i < 3; ++i) pass = pass && med[i] <= 2.0 && worst_excess[i] <= 0.0;
  std::string detail = fmt("smla median %.3f max %.3f; ", med[0], max[0]) +
                       fmt("bisect median %.3f max %.3f; ", med[1], max[1]) +
                       fmt("smcla median %.3f max %.3f; ", med[2], max[2]) +
                       fmt("multicut median %.3f max %.3f; ", med[3], max[3]) +
                       fmt("%.1f s", secs);
  return {pass, detail};
}

// 6. Concurrent-flow baseline on instances with known optimum.
Outcome concurrent_flow() {
  const double eps = 0.05;
  struct Case {
    WeightedGraph g;
    DemandPairs demands;
    double optimum;
  };
  std::vector<Case> cases;
  cases.push_back({WeightedGraph(2, {{0, 1, 1.0}}), {{0, 1, 1.0}}, 1.0});
  cases.push_back({WeightedGraph(4, {{0, 1, 10.0}, {1, 2, 1.0}, {2, 3, 10.0}}),
                   {{0, 3, 1.0}, {1, 2, 1.0}},
                   0.5});
  bool pass = true;
  std::string detail;
  for (const Case& c : cases) {
    ConcurrentFlow f = max_concurrent_flow(c.g, c.demands, eps);
    bool feasible = true;
    for (EdgeId e = 0; e < c.g.num_edges(); ++e) {
      feasible = feasible && f.edge_usage[e] <= c.g.edge(e).w * (1.0 + 1e-9);
    }
    for (std::size_t i = 0; i < c.demands.size(); ++i) {
      feasible = feasible && f.routed[i] >= f.lambda * c.demands[i].amount * (1.0 - 1e-9);
    }
    feasible = feasible && max_conservation_violation(c.g, c.demands, f.commodity, f.routed) <= 1e-9;
    const bool in_range = f.lambda >= (1.0 - eps) * c.optimum && f.lambda <= c.optimum * (1.0 + 1e-12);
    pass = pass && feasible && in_range;
    detail += fmt("lambda* %.2f -> %.6f%s; ", c.optimum, f.lambda) +
              (feasible ? "certificate feasible; " : "certificate INFEASIBLE; ");
  }
  return {pass, detail + "eps 0.05"};
}

// 7. Per-commodity conservation of the oblivious routing.
Outcome routing_soundness() {
  Rng rng(1007);
  double worst = 0.0;
  std::vector<double> competitive;
  for (int inst_id = 0; inst_id < 40; ++inst_id) {
    const int n = random_int(rng, 3, 25);
    const int k = random_int(rng, 2, std::min(n, 12));
    Instance inst = random_instance(rng, n, k, 0.15, 8);
    RoutingScheme scheme = build_oblivious_scheme(inst.graph, inst.terminals, 16, inst_id);
    DemandPairs demands = random_terminal_pairs(rng, inst.terminals, 8);
    for (auto& d : demands) d.amount = random_int(rng, 1, 5);
    FlowMap flows = route_demands(inst.graph, scheme, demands);
    std::vector<double> amounts;
    for (const auto& d : demands) amounts.push_back(d.amount);
    worst = std::max(worst, max_conservation_violation(inst.graph, demands, flows.commodity, amounts));
    if (inst_id < 15) {
      const double lambda = max_concurrent_flow(inst.graph, demands, 0.1).lambda;
      competitive.push_back(evaluate_congestion(inst.graph, flows.edge_load).congestion * lambda);
    }
  }
  return {worst <= 1e-9,
          fmt("40 demand sets, max violation %.3g; median competitive ratio %.3f (reported only)",
              worst, median(competitive))};
}

// 8. Seeded operations are reproducible across runs and thread counts.
Outcome determinism() {
  Rng rng(1008);
  Instance inst = random_instance(rng, 16, 6, 0.2, 7);
  const auto& g = inst.graph;
  std::vector<std::string> differences;
  auto same = [&](const std::string& what, const std::function<std::string(int)>& produce) {
    const std::string a = produce(1);
    const std::string b = produce(1);
    const std::string c = produce(8);
    if (a != b || a != c) differences.push_back(what);
  };
  for (Problem p : {Problem::kSmla, Problem::kBisection, Problem::kMulticut, Problem::kSmcla}) {
    same(std::string(problem_name(p)), [&](int threads) {
      PipelineParams params;
      params.problem = p;
      params.trees = 16;
      params.threads = threads;
      params.post_optimize = true;
      if (p == Problem::kMulticut) params.pairs = {{inst.terminals[0], inst.terminals[1], 1.0},
                                                   {inst.terminals[2], inst.terminals[3], 1.0}};
      PipelineResult r = run_pipeline(g, inst.terminals, params, 77);
      std::ostringstream out;
      out << solution_to_string(g, r.solution) << r.report.best_tree << ' ' << r.report.best_cost;
      for (double c : r.report.tree_costs) out << ' ' << c;
      return out.str();
    });
  }
  same("routing scheme", [&](int threads) {
    RoutingScheme s = build_oblivious_scheme(g, inst.terminals, 12, 5, threads);
    std::ostringstream out;
    for (const auto& pr : s.pairs) {
      for (const auto& path : pr.paths) {
        for (Vertex v : path.vertices) out << v << ',';
        out << path.weight << ';';
      }
    }
    return out.str();
  });
  same("decomposition tree", [&](int) {
    std::ostringstream out;
    write_tree_dump(out, compute_edge_loads(g, sample_terminal_tree(g, DistanceMatrix(g), inst.terminals, 99)));
    return out.str();
  });
  same("generator", [&](int) {
    GeneratorParams p;
    p.n = 20;
    p.p = 0.2;
    p.terminals = 6;
    p.pairs = 4;
    p.max_weight = 9;
    return instance_to_string(generate_instance(GraphKind::kRandomGnp, p, 13));
  });
  same("concurrent flow", [&](int) {
    ConcurrentFlow f = max_concurrent_flow(g, {{inst.terminals[0], inst.terminals[1], 1.0}}, 0.1);
    std::ostringstream out;
    out.precision(17);
    out << f.lambda;
    for (double u : f.edge_usage) out << ' ' << u;
    return out.str();
  });
  same("bench records", [&](int threads) {
    ExperimentConfig config;
    InstanceSpec spec;
    spec.id = "gnp";
    spec.kind = GraphKind::kRandomGnp;
    spec.params.n = 9;
    spec.params.p = 0.4;
    spec.params.terminals = 4;
    spec.params.pairs = 3;
    spec.seed = 3;
    config.instances = {spec};
    config.problems = {"smla", "bisect", "multicut", "smcla", "route"};
    config.trees = {8};
    config.seeds = {1, 2};
    config.oracle = true;
    config.threads = threads;
    std::ostringstream out;
    run_experiment(config, out);
    // Drop the timing field, which is the last one on every line.
    std::istringstream in(out.str());
    std::string result;
    for (std::string line; std::getline(in, line);) result += line.substr(0, line.find(",\"millis\"")) + "\n";
    return result;
  });
  std::string detail = "pipeline x4, routing, trees, generator, flow, bench; runs and threads 1 vs 8";
  if (!differences.empty()) {
    detail = "differences in:";
    for (const auto& d : differences) detail += " " + d;
  }
  return {differences.empty(), detail};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"dominance of tree distances", dominance},
      {"lifting inequality", lifting_inequality},
      {"tree bisection DP exactness", bisection_dp},
      {"threshold-cut extension exactness", post_optimization},
      {"measured approximation ratios", approximation_ratios},
      {"concurrent-flow baseline", concurrent_flow},
      {"routing conservation", routing_soundness},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::printf("%s criterion %d (%s): %s\n", outcome.pass ? "PASS" : "FAIL", index, name,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
