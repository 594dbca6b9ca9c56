#ifndef STK_EXPERIMENT_HPP_
#define STK_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "stk/error.hpp"
#include "stk/generator.hpp"
#include "stk/instance_io.hpp"

namespace stk {

// Failures that map to a process exit code.
class ExperimentError : public Error {
 public:
  ExperimentError(int exit_code, const std::string& what) : Error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

inline constexpr int kExitUnknownProblem = 2;
inline constexpr int kExitUnreadableInstance = 3;
inline constexpr int kExitOracleGuard = 4;

struct InstanceSpec {
  std::string id;
  std::optional<std::string> file;  // either a file ...
  GraphKind kind = GraphKind::kGrid;  // ... or a generator spec
  GeneratorParams params;
  std::uint64_t seed = 0;
};

// Problems: smla, bisect, multicut, smcla, route.
struct ExperimentConfig {
  std::vector<InstanceSpec> instances;
  std::vector<std::string> problems;
  std::vector<int> trees{16};
  std::vector<std::uint64_t> seeds{1};
  int k_prime = -1;  // < 0: problem default
  bool oracle = false;
  bool post_optimize = false;
  double eps = 0.05;  // concurrent-flow accuracy for `route`
  int threads = 0;
  std::string out;  // empty: stdout
};

// JSON config:
// {"instances": [{"file": "a.stp"} | {"generate": {"kind": "gnp", "n": 10,
//   "p": 0.3, "terminals": 4, "pairs": 3, "max_weight": 5, "seed": 7},
//   "id": "optional"}], "problems": ["smla"], "trees": [8, 32],
//  "seeds": [1, 2], "k_prime": 2, "oracle": true, "post_optimize": true,
//  "eps": 0.05, "threads": 0, "out": "report.jsonl"}
ExperimentConfig parse_experiment_config(const nlohmann::json& config);
ExperimentConfig read_experiment_config(const std::string& path);

// Throws ExperimentError(2) on an unknown problem name and
// std::invalid_argument on other invalid settings.
void validate_config(const ExperimentConfig& config);

Instance load_instance(const InstanceSpec& spec);  // ExperimentError(3) when unreadable

// Emits one JSON object per line for every (instance, problem, trees, seed)
// in config order. Fields: instance_id, problem, n, m, k, trees, seed, cost,
// oracle_cost?, ratio?, infeasible_trees, millis (+ lambda, stretch for
// route). Oracle guards are checked before any work (ExperimentError(4)).
void run_experiment(const ExperimentConfig& config, std::ostream& out);

struct SummaryRow {
  std::string problem;
  int records = 0;
  std::optional<double> median_ratio;
  std::optional<double> max_ratio;
  std::optional<double> mean_stretch;
  std::optional<double> congestion_ratio;  // median competitive ratio (route)
};

// Aggregates a JSON-lines report per problem, in order of first appearance.
// Throws ParseError with the line number on malformed records.
std::vector<SummaryRow> summarize(std::istream& records);
void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_summary_json(std::ostream& out, const std::vector<SummaryRow>& rows);

// Median with the even-count rule: mean of the two middle values.
double median(std::vector<double> values);

}  // namespace stk

#endif  // STK_EXPERIMENT_HPP_
