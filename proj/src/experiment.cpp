#include "stk/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "stk/decomposition_tree.hpp"
#include "stk/oracles.hpp"
#include "stk/pipeline.hpp"
#include "stk/random.hpp"
#include "stk/routing.hpp"
#include "stk/shortest_paths.hpp"

namespace stk {

using nlohmann::json;

namespace {

constexpr const char* kProblems[] = {"smla", "bisect", "multicut", "smcla", "route"};

bool known_problem(const std::string& name) {
  return std::find(std::begin(kProblems), std::end(kProblems), name) != std::end(kProblems);
}

GeneratorParams parse_generator_params(const json& j) {
  GeneratorParams p;
  p.rows = j.value("rows", 0);
  p.cols = j.value("cols", 0);
  p.n = j.value("n", 0);
  p.p = j.value("p", 0.0);
  p.cliques = j.value("cliques", 0);
  p.clique_size = j.value("clique_size", 0);
  p.terminals = j.value("terminals", 1);
  p.pairs = j.value("pairs", 0);
  p.max_weight = j.value("max_weight", 1);
  p.max_retries = j.value("max_retries", 1000);
  return p;
}

// Unit demands between every pair of terminals.
DemandPairs all_terminal_pairs(const TerminalSet& terminals) {
  DemandPairs pairs;
  for (int i = 0; i < terminals.size(); ++i) {
    for (int j = i + 1; j < terminals.size(); ++j) pairs.push_back({terminals[i], terminals[j], 1.0});
  }
  return pairs;
}

DemandPairs instance_pairs(const Instance& instance) {
  return instance.demands ? *instance.demands : all_terminal_pairs(instance.terminals);
}

void check_oracle_guard(const Instance& instance, const std::string& problem, int k_prime,
                        const std::string& id) {
  const auto& g = instance.graph;
  const auto& terminals = instance.terminals;
  bool fits = true;
  if (problem == "smla") fits = smla_oracle_fits(g, terminals);
  if (problem == "smcla") fits = smcla_oracle_fits(g, terminals);
  if (problem == "multicut") fits = multicut_oracle_fits(g);
  if (problem == "bisect") {
    fits = bisection_oracle_fits(
        terminals, effective_k_prime(Problem::kBisection, k_prime, terminals.size(), 0));
  }
  if (!fits) {
    throw ExperimentError(kExitOracleGuard,
                          "instance '" + id + "' exceeds the " + problem + " oracle guard");
  }
}

double oracle_cost(const Instance& instance, Problem problem, int k_prime,
                   const DemandPairs& pairs) {
  switch (problem) {
    case Problem::kSmla: return exact_smla(instance.graph, instance.terminals).cost;
    case Problem::kBisection:
      return exact_steiner_bisection(instance.graph, instance.terminals, k_prime).cost;
    case Problem::kMulticut: return exact_partial_multicut(instance.graph, pairs, k_prime).cost;
    case Problem::kSmcla: return exact_smcla(instance.graph, instance.terminals).cost;
  }
  return 0.0;
}

std::optional<double> approximation_ratio(double cost, double reference) {
  const double tol = 1e-9 * std::max(1.0, std::abs(reference));
  if (reference > tol) return cost / reference;
  if (cost <= tol) return 1.0;
  return std::nullopt;
}

json route_record(const Instance& instance, int trees, std::uint64_t seed,
                  const ExperimentConfig& config) {
  const auto& g = instance.graph;
  const auto& terminals = instance.terminals;
  DemandPairs demands = instance_pairs(instance);
  validate_terminal_demands(demands, terminals);

  RoutingScheme scheme = build_oblivious_scheme(g, terminals, trees, seed, config.threads);
  json record;
  if (demands.empty()) {
    record["cost"] = 0.0;
  } else {
    FlowMap flows = route_demands(g, scheme, demands);
    CongestionReport report = evaluate_congestion(g, flows.edge_load);
    ConcurrentFlow baseline = max_concurrent_flow(g, demands, config.eps);
    record["cost"] = report.congestion;
    record["lambda"] = baseline.lambda;
    record["oracle_cost"] = 1.0 / baseline.lambda;
    record["ratio"] = report.congestion * baseline.lambda;
  }

  // Mean tree/graph distance ratio over terminal pairs of the same trees.
  const DistanceMatrix metric = shortest_path_metric(g);
  double stretch_sum = 0.0;
  long long stretch_count = 0;
  for (int t = 0; t < trees; ++t) {
    DecompositionTree dt = sample_decomposition_tree(g, metric, derive_seed(seed, t));
    for (int i = 0; i < terminals.size(); ++i) {
      for (int j = i + 1; j < terminals.size(); ++j) {
        stretch_sum += dt.leaf_distance(terminals[i], terminals[j]) / metric(terminals[i], terminals[j]);
        ++stretch_count;
      }
    }
  }
  if (stretch_count > 0) record["stretch"] = stretch_sum / static_cast<double>(stretch_count);
  record["infeasible_trees"] = 0;
  return record;
}

json pipeline_record(const Instance& instance, Problem problem, int trees, std::uint64_t seed,
                     const ExperimentConfig& config) {
  PipelineParams params;
  params.problem = problem;
  params.trees = trees;
  params.k_prime = config.k_prime;
  params.post_optimize = config.post_optimize;
  params.threads = config.threads;
  if (problem == Problem::kMulticut) params.pairs = instance_pairs(instance);
  PipelineResult result = run_pipeline(instance.graph, instance.terminals, params, seed);

  json record;
  record["cost"] = result.report.best_cost;
  if (config.oracle) {
    const double reference = oracle_cost(instance, problem, result.report.k_prime, params.pairs);
    record["oracle_cost"] = reference;
    if (auto ratio = approximation_ratio(result.report.best_cost, reference)) {
      record["ratio"] = *ratio;
    }
  }
  record["infeasible_trees"] = result.report.infeasible_trees;
  return record;
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& j) {
  ExperimentConfig config;
  try {
    for (const auto& item : j.at("instances")) {
      InstanceSpec spec;
      if (item.contains("file")) {
        spec.file = item.at("file").get<std::string>();
        spec.id = item.value("id", *spec.file);
      } else {
        const json& gen = item.at("generate");
        spec.kind = parse_graph_kind(gen.at("kind").get<std::string>());
        spec.params = parse_generator_params(gen);
        spec.seed = gen.value("seed", std::uint64_t{0});
        spec.id = item.value("id", std::string("gen:") + std::string(graph_kind_name(spec.kind)) +
                                       ":" + std::to_string(spec.seed));
      }
      config.instances.push_back(std::move(spec));
    }
    config.problems = j.at("problems").get<std::vector<std::string>>();
    if (j.contains("trees")) config.trees = j.at("trees").get<std::vector<int>>();
    if (j.contains("seeds")) config.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    config.k_prime = j.value("k_prime", -1);
    config.oracle = j.value("oracle", false);
    config.post_optimize = j.value("post_optimize", false);
    config.eps = j.value("eps", 0.05);
    config.threads = j.value("threads", 0);
    config.out = j.value("out", std::string());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad experiment config: ") + e.what());
  }
  return config;
}

ExperimentConfig read_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_experiment_config(j);
}

void validate_config(const ExperimentConfig& config) {
  for (const auto& p : config.problems) {
    if (!known_problem(p)) throw ExperimentError(kExitUnknownProblem, "unknown problem '" + p + "'");
  }
  if (config.problems.empty()) throw std::invalid_argument("config lists no problems");
  if (config.seeds.empty()) throw std::invalid_argument("config lists no seeds");
  if (config.trees.empty()) throw std::invalid_argument("config lists no tree counts");
  for (int t : config.trees) {
    if (t < 1) throw std::invalid_argument("tree counts must be positive");
  }
}

Instance load_instance(const InstanceSpec& spec) {
  if (spec.file) {
    try {
      return read_instance_file(*spec.file);
    } catch (const Error& e) {
      throw ExperimentError(kExitUnreadableInstance, e.what());
    } catch (const std::invalid_argument& e) {
      throw ExperimentError(kExitUnreadableInstance, *spec.file + ": " + e.what());
    }
  }
  return generate_instance(spec.kind, spec.params, spec.seed);
}

void run_experiment(const ExperimentConfig& config, std::ostream& out) {
  validate_config(config);
  std::vector<Instance> instances;
  instances.reserve(config.instances.size());
  for (const auto& spec : config.instances) instances.push_back(load_instance(spec));
  if (config.oracle) {
    for (std::size_t i = 0; i < instances.size(); ++i) {
      for (const auto& problem : config.problems) {
        if (problem != "route") {
          check_oracle_guard(instances[i], problem, config.k_prime, config.instances[i].id);
        }
      }
    }
  }

  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Instance& instance = instances[i];
    for (const auto& problem : config.problems) {
      for (int trees : config.trees) {
        for (std::uint64_t seed : config.seeds) {
          const auto start = std::chrono::steady_clock::now();
          json body = problem == "route"
                          ? route_record(instance, trees, seed, config)
                          : pipeline_record(instance, parse_problem(problem), trees, seed, config);
          json record;
          record["instance_id"] = config.instances[i].id;
          record["problem"] = problem;
          record["n"] = instance.graph.num_vertices();
          record["m"] = instance.graph.num_edges();
          record["k"] = instance.terminals.size();
          record["trees"] = trees;
          record["seed"] = seed;
          for (const char* key : {"cost", "oracle_cost", "ratio", "lambda", "stretch",
                                  "infeasible_trees"}) {
            if (body.contains(key)) record[key] = body[key];
          }
          record["millis"] = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
          // ordered_json is not used, so dump keys in a fixed order by hand.
          out << '{';
          bool first = true;
          for (const char* key : {"instance_id", "problem", "n", "m", "k", "trees", "seed", "cost",
                                  "oracle_cost", "ratio", "lambda", "stretch",
                                  "infeasible_trees", "millis"}) {
            if (!record.contains(key)) continue;
            out << (first ? "" : ",") << json(key).dump() << ':' << record[key].dump();
            first = false;
          }
          out << "}\n";
          out.flush();
        }
      }
    }
  }
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<SummaryRow> summarize(std::istream& in) {
  struct Bucket {
    int records = 0;
    std::vector<double> ratios;
    std::vector<double> stretches;
  };
  std::vector<std::string> order;
  std::map<std::string, Bucket> buckets;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(raw);
    } catch (const json::exception&) {
      throw ParseError(line, "record is not valid JSON");
    }
    if (!record.is_object() || !record.contains("problem") || !record["problem"].is_string()) {
      throw ParseError(line, "record lacks a 'problem' string");
    }
    for (const char* key : {"ratio", "stretch"}) {
      if (record.contains(key) && !record[key].is_number()) {
        throw ParseError(line, std::string("field '") + key + "' is not a number");
      }
    }
    const std::string problem = record["problem"];
    if (!buckets.count(problem)) order.push_back(problem);
    Bucket& bucket = buckets[problem];
    ++bucket.records;
    if (record.contains("ratio")) bucket.ratios.push_back(record["ratio"].get<double>());
    if (record.contains("stretch")) bucket.stretches.push_back(record["stretch"].get<double>());
  }

  std::vector<SummaryRow> rows;
  for (const auto& problem : order) {
    const Bucket& bucket = buckets[problem];
    SummaryRow row;
    row.problem = problem;
    row.records = bucket.records;
    if (!bucket.ratios.empty()) {
      row.median_ratio = median(bucket.ratios);
      row.max_ratio = *std::max_element(bucket.ratios.begin(), bucket.ratios.end());
      if (problem == "route") row.congestion_ratio = row.median_ratio;
    }
    if (!bucket.stretches.empty()) {
      double sum = 0.0;
      for (double s : bucket.stretches) sum += s;
      row.mean_stretch = sum / static_cast<double>(bucket.stretches.size());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& rows) {
  if (rows.empty()) return;
  auto cell = [](const std::optional<double>& x) {
    if (!x) return std::string("-");
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << *x;
    return s.str();
  };
  out << std::left << std::setw(10) << "problem" << std::right << std::setw(9) << "records"
      << std::setw(14) << "median_ratio" << std::setw(12) << "max_ratio" << std::setw(14)
      << "mean_stretch" << std::setw(18) << "congestion_ratio" << '\n';
  for (const auto& row : rows) {
    out << std::left << std::setw(10) << row.problem << std::right << std::setw(9) << row.records
        << std::setw(14) << cell(row.median_ratio) << std::setw(12) << cell(row.max_ratio)
        << std::setw(14) << cell(row.mean_stretch) << std::setw(18) << cell(row.congestion_ratio)
        << '\n';
  }
}

void write_summary_json(std::ostream& out, const std::vector<SummaryRow>& rows) {
  for (const auto& row : rows) {
    json j;
    j["problem"] = row.problem;
    j["records"] = row.records;
    if (row.median_ratio) j["median_ratio"] = *row.median_ratio;
    if (row.max_ratio) j["max_ratio"] = *row.max_ratio;
    if (row.mean_stretch) j["mean_stretch"] = *row.mean_stretch;
    if (row.congestion_ratio) j["congestion_ratio"] = *row.congestion_ratio;
    out << j.dump() << '\n';
  }
}

}  // namespace stk
