// stk: command-line front end for tree-based Steiner layout and cut solvers.
//
// stdout carries report data only; diagnostics go to stderr.
// Exit codes: 0 ok, 1 other failure, 2 unknown problem, 3 unreadable
// instance, 4 oracle guard exceeded.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "stk/decomposition_tree.hpp"
#include "stk/error.hpp"
#include "stk/experiment.hpp"
#include "stk/generator.hpp"
#include "stk/instance_io.hpp"
#include "stk/oracles.hpp"
#include "stk/pipeline.hpp"
#include "stk/routing.hpp"
#include "stk/shortest_paths.hpp"
#include "stk/solutions.hpp"
#include "stk/terminal_tree.hpp"

namespace {

using nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 1;
  int trees = 16;
  bool post_optimize = false;
  double eps = 0.05;
  std::string out;
  int threads = 0;
  int k_prime = -1;
};

void emit(const GlobalOptions& opts, const std::function<void(std::ostream&)>& write) {
  if (opts.out.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(opts.out);
  if (!file) throw stk::Error("cannot write '" + opts.out + "'");
  write(file);
}

stk::Problem problem_or_exit(const std::string& name) {
  try {
    return stk::parse_problem(name);
  } catch (const std::invalid_argument&) {
    throw stk::ExperimentError(stk::kExitUnknownProblem, "unknown problem '" + name + "'");
  }
}

stk::Instance instance_or_exit(const std::string& path) {
  stk::InstanceSpec spec;
  spec.file = path;
  return stk::load_instance(spec);
}

stk::DemandPairs demands_or_exit(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw stk::ExperimentError(stk::kExitUnreadableInstance, "cannot open '" + path + "'");
  try {
    return stk::parse_demands(in, n);
  } catch (const stk::ParseError& e) {
    throw stk::ExperimentError(stk::kExitUnreadableInstance, path + ": " + e.what());
  }
}

// Demands for multicut/route: explicit file, else the instance's own, else
// unit demand between every pair of terminals.
stk::DemandPairs resolve_pairs(const stk::Instance& instance, const std::string& demand_file) {
  if (!demand_file.empty()) return demands_or_exit(demand_file, instance.graph.num_vertices());
  if (instance.demands) return *instance.demands;
  stk::DemandPairs pairs;
  const auto& t = instance.terminals;
  for (int i = 0; i < t.size(); ++i) {
    for (int j = i + 1; j < t.size(); ++j) pairs.push_back({t[i], t[j], 1.0});
  }
  return pairs;
}

json instance_fields(const stk::Instance& instance) {
  return {{"n", instance.graph.num_vertices()},
          {"m", instance.graph.num_edges()},
          {"k", instance.terminals.size()}};
}

void add_gen(CLI::App& app, GlobalOptions& opts) {
  auto* cmd = app.add_subcommand("gen", "Generate a random instance");
  auto kind = std::make_shared<std::string>("grid");
  auto params = std::make_shared<stk::GeneratorParams>();
  cmd->add_option("--kind", *kind, "grid | gnp | star-of-cliques")->capture_default_str();
  cmd->add_option("--rows", params->rows);
  cmd->add_option("--cols", params->cols);
  cmd->add_option("--n", params->n, "vertex count (gnp)");
  cmd->add_option("--p", params->p, "edge probability (gnp)");
  cmd->add_option("--cliques", params->cliques);
  cmd->add_option("--clique-size", params->clique_size);
  cmd->add_option("--terminals", params->terminals)->capture_default_str();
  cmd->add_option("--pairs", params->pairs, "random terminal demand pairs")->capture_default_str();
  cmd->add_option("--max-weight", params->max_weight)->capture_default_str();
  cmd->callback([&opts, kind, params] {
    stk::Instance instance =
        stk::generate_instance(stk::parse_graph_kind(*kind), *params, opts.seed);
    emit(opts, [&](std::ostream& out) { stk::write_instance(out, instance); });
  });
}

void add_solve(CLI::App& app, GlobalOptions& opts) {
  auto* cmd = app.add_subcommand("solve", "Sample trees, solve on each, lift the best to G");
  auto problem = std::make_shared<std::string>();
  auto path = std::make_shared<std::string>();
  auto demands = std::make_shared<std::string>();
  cmd->add_option("problem", *problem, "smla | bisect | multicut | smcla")->required();
  cmd->add_option("instance", *path)->required();
  cmd->add_option("--demands", *demands, "demand file for multicut");
  cmd->callback([&opts, problem, path, demands] {
    const stk::Problem p = problem_or_exit(*problem);
    const stk::Instance instance = instance_or_exit(*path);
    stk::PipelineParams params;
    params.problem = p;
    params.trees = opts.trees;
    params.k_prime = opts.k_prime;
    params.post_optimize = opts.post_optimize;
    params.threads = opts.threads;
    if (p == stk::Problem::kMulticut) params.pairs = resolve_pairs(instance, *demands);
    const stk::PipelineResult result =
        stk::run_pipeline(instance.graph, instance.terminals, params, opts.seed);
    json report = instance_fields(instance);
    report["problem"] = *problem;
    report["trees"] = result.report.trees;
    report["seed"] = result.report.seed;
    report["k_prime"] = result.report.k_prime;
    report["cost"] = result.report.best_cost;
    report["best_tree"] = result.report.best_tree;
    report["infeasible_trees"] = result.report.infeasible_trees;
    report["solver"] = result.report.solver;
    report["solution"] = stk::solution_to_string(instance.graph, result.solution);
    report["millis"] = result.report.millis;
    emit(opts, [&](std::ostream& out) { out << report.dump() << '\n'; });
  });
}

void add_oracle(CLI::App& app, GlobalOptions& opts) {
  auto* cmd = app.add_subcommand("oracle", "Exact brute-force optimum (small instances)");
  auto problem = std::make_shared<std::string>();
  auto path = std::make_shared<std::string>();
  auto demands = std::make_shared<std::string>();
  cmd->add_option("problem", *problem, "smla | bisect | multicut | smcla")->required();
  cmd->add_option("instance", *path)->required();
  cmd->add_option("--demands", *demands, "demand file for multicut");
  cmd->callback([&opts, problem, path, demands] {
    const stk::Problem p = problem_or_exit(*problem);
    const stk::Instance instance = instance_or_exit(*path);
    const auto& g = instance.graph;
    const auto& terminals = instance.terminals;
    json report = instance_fields(instance);
    report["problem"] = *problem;
    try {
      switch (p) {
        case stk::Problem::kSmla: {
          auto r = stk::exact_smla(g, terminals);
          report["cost"] = r.cost;
          report["solution"] = stk::solution_to_string(g, r.solution);
          break;
        }
        case stk::Problem::kSmcla: {
          auto r = stk::exact_smcla(g, terminals);
          report["cost"] = r.cost;
          report["solution"] = stk::solution_to_string(g, r.solution);
          break;
        }
        case stk::Problem::kBisection: {
          const int kp = stk::effective_k_prime(p, opts.k_prime, terminals.size(), 0);
          auto r = stk::exact_steiner_bisection(g, terminals, kp);
          report["k_prime"] = kp;
          report["cost"] = r.cost;
          report["solution"] = stk::solution_to_string(g, r.solution);
          break;
        }
        case stk::Problem::kMulticut: {
          const auto pairs = resolve_pairs(instance, *demands);
          const int kp = stk::effective_k_prime(p, opts.k_prime, terminals.size(),
                                                static_cast<int>(pairs.size()));
          auto r = stk::exact_partial_multicut(g, pairs, kp);
          report["k_prime"] = kp;
          report["cost"] = r.cost;
          report["solution"] = stk::solution_to_string(g, r.solution);
          break;
        }
      }
    } catch (const stk::GuardExceeded& e) {
      throw stk::ExperimentError(stk::kExitOracleGuard, e.what());
    }
    emit(opts, [&](std::ostream& out) { out << report.dump() << '\n'; });
  });
}

void add_route(CLI::App& app, GlobalOptions& opts) {
  auto* cmd = app.add_subcommand("route", "Oblivious routing congestion vs concurrent-flow baseline");
  auto path = std::make_shared<std::string>();
  auto demands = std::make_shared<std::string>();
  cmd->add_option("instance", *path)->required();
  cmd->add_option("--demands", *demands, "demand file (default: instance demands or all pairs)");
  cmd->callback([&opts, path, demands] {
    const stk::Instance instance = instance_or_exit(*path);
    const auto& g = instance.graph;
    const stk::DemandPairs pairs = resolve_pairs(instance, *demands);
    stk::validate_terminal_demands(pairs, instance.terminals);
    const stk::RoutingScheme scheme =
        stk::build_oblivious_scheme(g, instance.terminals, opts.trees, opts.seed, opts.threads);
    json report = instance_fields(instance);
    report["problem"] = "route";
    report["trees"] = opts.trees;
    report["seed"] = opts.seed;
    report["demands"] = pairs.size();
    std::size_t paths = 0;
    for (const auto& pr : scheme.pairs) paths += pr.paths.size();
    report["paths"] = paths;
    if (!pairs.empty()) {
      const stk::FlowMap flows = stk::route_demands(g, scheme, pairs);
      const stk::CongestionReport congestion = stk::evaluate_congestion(g, flows.edge_load);
      const stk::ConcurrentFlow baseline = stk::max_concurrent_flow(g, pairs, opts.eps);
      std::vector<double> amounts;
      for (const auto& d : pairs) amounts.push_back(d.amount);
      report["congestion"] = congestion.congestion;
      report["lambda"] = baseline.lambda;
      report["competitive_ratio"] = congestion.congestion * baseline.lambda;
      report["conservation_error"] =
          stk::max_conservation_violation(g, pairs, flows.commodity, amounts);
    }
    emit(opts, [&](std::ostream& out) { out << report.dump() << '\n'; });
  });
}

void add_bench(CLI::App& app, GlobalOptions& opts) {
  auto* cmd = app.add_subcommand("bench", "Run an experiment config, emit JSON lines");
  auto path = std::make_shared<std::string>();
  cmd->add_option("config", *path, "JSON experiment config")->required();
  cmd->callback([&opts, path] {
    stk::ExperimentConfig config = stk::read_experiment_config(*path);
    if (!opts.out.empty()) config.out = opts.out;
    if (opts.threads > 0) config.threads = opts.threads;
    stk::validate_config(config);
    if (config.out.empty()) {
      stk::run_experiment(config, std::cout);
      return;
    }
    std::ofstream file(config.out);
    if (!file) throw stk::Error("cannot write '" + config.out + "'");
    stk::run_experiment(config, file);
  });
}

void add_summarize(CLI::App& app, GlobalOptions& opts) {
  auto* cmd = app.add_subcommand("summarize", "Aggregate a JSON-lines report per problem");
  auto path = std::make_shared<std::string>();
  auto as_json = std::make_shared<bool>(false);
  cmd->add_option("report", *path, "report file (default: stdin)");
  cmd->add_flag("--json", *as_json, "emit JSON lines instead of a table");
  cmd->callback([&opts, path, as_json] {
    std::vector<stk::SummaryRow> rows;
    if (path->empty()) {
      rows = stk::summarize(std::cin);
    } else {
      std::ifstream in(*path);
      if (!in) throw stk::Error("cannot open '" + *path + "'");
      rows = stk::summarize(in);
    }
    emit(opts, [&](std::ostream& out) {
      if (*as_json) {
        stk::write_summary_json(out, rows);
      } else {
        stk::write_summary_table(out, rows);
      }
    });
  });
}

void add_dump_tree(CLI::App& app, GlobalOptions& opts) {
  auto* cmd = app.add_subcommand("dump-tree", "Print the loaded terminal tree for --seed");
  auto path = std::make_shared<std::string>();
  cmd->add_option("instance", *path)->required();
  cmd->callback([&opts, path] {
    const stk::Instance instance = instance_or_exit(*path);
    const stk::DistanceMatrix metric = stk::shortest_path_metric(instance.graph);
    const stk::TerminalTree tree =
        stk::sample_terminal_tree(instance.graph, metric, instance.terminals, opts.seed);
    emit(opts, [&](std::ostream& out) { stk::write_tree_dump(out, tree); });
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steiner layout and cut problems via random tree embeddings"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions opts;
  app.add_option("--seed", opts.seed, "root random seed")->capture_default_str();
  app.add_option("--trees", opts.trees, "number of sampled trees")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--post-optimize", opts.post_optimize, "re-optimize non-terminals on G");
  app.add_option("--eps", opts.eps, "concurrent-flow accuracy")
      ->check(CLI::Range(1e-6, 0.5))
      ->capture_default_str();
  app.add_option("--out", opts.out, "write the report here instead of stdout");
  app.add_option("--threads", opts.threads, "worker threads (0: STK_THREADS or all cores)");
  app.add_option("--k-prime", opts.k_prime, "bisection side size / pairs to separate");

  add_gen(app, opts);
  add_solve(app, opts);
  add_oracle(app, opts);
  add_route(app, opts);
  add_bench(app, opts);
  add_summarize(app, opts);
  add_dump_tree(app, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const stk::ExperimentError& e) {
    std::cerr << "stk: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "stk: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
