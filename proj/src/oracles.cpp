#include "stk/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "stk/error.hpp"
#include "stk/lift.hpp"
#include "stk/min_cut.hpp"

namespace stk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double binomial(int k, int r) {
  double c = 1.0;
  for (int i = 1; i <= r; ++i) c = c * (k - r + i) / i;
  return std::round(c);
}

// Strictly better, or equally good and lexicographically smaller.
class Incumbent {
 public:
  explicit Incumbent(bool exact) : exact_(exact) {}
  template <typename Key>
  bool improves(double cost, const Key& key, const Key& best_key) const {
    if (best_ == kInf) return true;
    const double tol = exact_ ? 0.0 : 1e-9 * std::max(1.0, std::abs(best_));
    if (cost < best_ - tol) return true;
    if (cost > best_ + tol) return false;
    return key < best_key;
  }
  void accept(double cost) { best_ = cost; }
  double best() const { return best_; }

 private:
  bool exact_;
  double best_ = kInf;
};

// Orders bipartitions with A before B.
std::vector<int> side_key(const std::vector<bool>& side_a) {
  std::vector<int> key(side_a.size());
  for (std::size_t i = 0; i < side_a.size(); ++i) key[i] = side_a[i] ? 0 : 1;
  return key;
}

}  // namespace

bool smla_oracle_fits(const WeightedGraph&, const TerminalSet& terminals) {
  return terminals.size() <= kSmlaOracleMaxTerminals;
}

bool bisection_oracle_fits(const TerminalSet& terminals, int k_prime) {
  if (k_prime < 0 || k_prime > terminals.size()) return true;  // rejected separately
  return binomial(terminals.size(), k_prime) <= kBisectionOracleMaxSubsets;
}

bool multicut_oracle_fits(const WeightedGraph& g) {
  return g.num_edges() <= kMulticutOracleMaxEdges;
}

bool smcla_oracle_fits(const WeightedGraph& g, const TerminalSet& terminals) {
  const int k = terminals.size();
  const int free = g.num_vertices() - k;
  return factorial(k) * std::pow(static_cast<double>(k), free) <= kSmclaOracleMaxMaps;
}

OracleResult<Arrangement> exact_smla(const WeightedGraph& g, const TerminalSet& terminals) {
  if (!smla_oracle_fits(g, terminals)) {
    throw GuardExceeded("exact_smla: k = " + std::to_string(terminals.size()) + " exceeds " +
                        std::to_string(kSmlaOracleMaxTerminals));
  }
  const int k = terminals.size();
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 1);
  Incumbent incumbent(g.integral_weights());
  OracleResult<Arrangement> best;
  Arrangement candidate;
  candidate.position.assign(g.num_vertices(), 1);
  do {
    for (int i = 0; i < k; ++i) candidate.position[terminals[i]] = order[i];
    Arrangement full = post_optimize_nonterminals(g, terminals, candidate);
    const double cost = smla_cost(g, full);
    if (incumbent.improves(cost, full.position, best.solution.position)) {
      incumbent.accept(cost);
      best.cost = cost;
      best.solution = std::move(full);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

OracleResult<Bipartition> exact_steiner_bisection(const WeightedGraph& g,
                                                  const TerminalSet& terminals, int k_prime) {
  const int k = terminals.size();
  const int n = g.num_vertices();
  if (k_prime < 0 || k_prime > k) throw std::invalid_argument("bisection oracle: k' out of range");
  if (!bisection_oracle_fits(terminals, k_prime)) {
    throw GuardExceeded("exact_steiner_bisection: C(k, k') exceeds 1e5");
  }
  OracleResult<Bipartition> best;
  if (k_prime == 0 || k_prime == k) {
    best.solution.side_a.assign(n, k_prime == k);
    return best;
  }
  Incumbent incumbent(g.integral_weights());
  std::vector<int> best_key;
  // Subsets of terminal indices, enumerated as lexicographic combinations.
  std::vector<int> chosen(k_prime);
  std::iota(chosen.begin(), chosen.end(), 0);
  for (;;) {
    std::vector<bool> in_subset(k, false);
    for (int i : chosen) in_subset[i] = true;
    std::vector<Vertex> sources;
    std::vector<Vertex> sinks;
    for (int i = 0; i < k; ++i) (in_subset[i] ? sources : sinks).push_back(terminals[i]);
    StCut cut = min_st_cut(g, sources, sinks, CutSide::kMaximal);
    auto key = side_key(cut.source_side);
    if (incumbent.improves(cut.value, key, best_key)) {
      incumbent.accept(cut.value);
      best.cost = cut.value;
      best.solution.side_a = std::move(cut.source_side);
      best_key = std::move(key);
    }
    int i = k_prime - 1;
    while (i >= 0 && chosen[i] == k - k_prime + i) --i;
    if (i < 0) break;
    ++chosen[i];
    for (int j = i + 1; j < k_prime; ++j) chosen[j] = chosen[j - 1] + 1;
  }
  return best;
}

OracleResult<EdgeCutSet> exact_partial_multicut(const WeightedGraph& g, const DemandPairs& pairs,
                                                int k_prime) {
  if (k_prime < 0 || k_prime > static_cast<int>(pairs.size())) {
    throw std::invalid_argument("multicut oracle: k' out of range");
  }
  if (!multicut_oracle_fits(g)) {
    throw GuardExceeded("exact_partial_multicut: m = " + std::to_string(g.num_edges()) +
                        " exceeds " + std::to_string(kMulticutOracleMaxEdges));
  }
  validate_demands(pairs, g.num_vertices());
  const int m = g.num_edges();
  Incumbent incumbent(g.integral_weights());
  OracleResult<EdgeCutSet> best;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<EdgeId> edges;
    double cost = 0.0;
    for (EdgeId e = 0; e < m; ++e) {
      if (mask & (1u << e)) {
        edges.push_back(e);
        cost += g.edge(e).w;
      }
    }
    if (incumbent.best() != kInf && cost > incumbent.best() + 1e-9 * std::max(1.0, cost)) continue;
    auto separated = disconnected_pairs(g, edges, pairs);
    if (static_cast<int>(separated.size()) < k_prime) continue;
    if (incumbent.improves(cost, edges, best.solution.edges)) {
      incumbent.accept(cost);
      best.cost = cost;
      best.solution = {std::move(edges), std::move(separated)};
    }
  }
  return best;
}

OracleResult<Arrangement> exact_smcla(const WeightedGraph& g, const TerminalSet& terminals) {
  if (!smcla_oracle_fits(g, terminals)) {
    throw GuardExceeded("exact_smcla: k! * k^(n-k) exceeds 1e6");
  }
  const int n = g.num_vertices();
  const int k = terminals.size();
  std::vector<Vertex> free;
  for (Vertex v = 0; v < n; ++v) {
    if (!terminals.contains(v)) free.push_back(v);
  }
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 1);
  Incumbent incumbent(g.integral_weights());
  OracleResult<Arrangement> best;
  Arrangement candidate;
  candidate.position.assign(n, 1);
  do {
    for (int i = 0; i < k; ++i) candidate.position[terminals[i]] = order[i];
    for (Vertex v : free) candidate.position[v] = 1;
    for (;;) {
      const double cost = smcla_cost(g, candidate, k);
      if (incumbent.improves(cost, candidate.position, best.solution.position)) {
        incumbent.accept(cost);
        best.cost = cost;
        best.solution = candidate;
      }
      // Odometer over the free vertices' labels.
      std::size_t i = free.size();
      while (i > 0 && candidate.position[free[i - 1]] == k) {
        candidate.position[free[i - 1]] = 1;
        --i;
      }
      if (i == 0) break;
      ++candidate.position[free[i - 1]];
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace stk
