#ifndef STK_SOLUTIONS_HPP_
#define STK_SOLUTIONS_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stk/graph.hpp"

namespace stk {

enum class Problem { kSmla, kBisection, kMulticut, kSmcla };

// smla | bisect | multicut | smcla; throws std::invalid_argument otherwise.
Problem parse_problem(std::string_view name);
std::string_view problem_name(Problem problem);

// F: V -> [1..k], a bijection on the terminals.
struct Arrangement {
  std::vector<int> position;
  friend bool operator==(const Arrangement&, const Arrangement&) = default;
};

struct Bipartition {
  std::vector<bool> side_a;
  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

struct EdgeCutSet {
  std::vector<EdgeId> edges;        // ascending
  std::vector<int> separated_pairs;  // indices into the demand list, ascending
  friend bool operator==(const EdgeCutSet&, const EdgeCutSet&) = default;
};

using Solution = std::variant<Arrangement, Bipartition, EdgeCutSet>;

struct Evaluation {
  double cost = 0.0;
  int separated_pairs = 0;  // multicut only
};

// Literal objective value of `solution` on g. Throws std::invalid_argument
// when the solution kind does not match the problem or violates its
// invariants (terminal bijection, |A ∩ K| = k', claimed separations that do
// not hold, fewer than k' separated pairs).
Evaluation evaluate(const WeightedGraph& g, const TerminalSet& terminals, Problem problem,
                    const Solution& solution, int k_prime = 0,
                    const DemandPairs& pairs = {});

double smla_cost(const WeightedGraph& g, const Arrangement& a);
double smcla_cost(const WeightedGraph& g, const Arrangement& a, int k);
double cut_weight(const WeightedGraph& g, const std::vector<bool>& side);
double edge_set_weight(const WeightedGraph& g, const std::vector<EdgeId>& edges);

// Pairs (by index) whose endpoints are disconnected once `edges` are removed.
std::vector<int> disconnected_pairs(const WeightedGraph& g, const std::vector<EdgeId>& edges,
                                    const DemandPairs& pairs);

// `a <v> <pos>` (arrangements), `s <v> A|B` (bipartitions), `c <u> <v>`
// (cut edges); vertices are 1-based.
void write_solution(std::ostream& out, const WeightedGraph& g, const Solution& solution);
std::string solution_to_string(const WeightedGraph& g, const Solution& solution);
Solution parse_solution(std::istream& in, const WeightedGraph& g, Problem problem);

}  // namespace stk

#endif  // STK_SOLUTIONS_HPP_
