#ifndef STK_ORACLES_HPP_
#define STK_ORACLES_HPP_

#include "stk/graph.hpp"
#include "stk/solutions.hpp"

namespace stk {

// Exhaustive solvers for desk-sized instances. Every guard is a hard
// precondition: exceeding it throws GuardExceeded, never approximates. Among
// optimal solutions the lexicographically smallest one is returned (position
// vectors; bipartitions compare A before B; cut sets as sorted edge ids).

inline constexpr int kSmlaOracleMaxTerminals = 8;
inline constexpr double kBisectionOracleMaxSubsets = 1e5;
inline constexpr int kMulticutOracleMaxEdges = 16;
inline constexpr double kSmclaOracleMaxMaps = 1e6;

template <typename S>
struct OracleResult {
  double cost = 0.0;
  S solution;
};

// All k! terminal orders, each completed by the exact threshold-cut labeling.
OracleResult<Arrangement> exact_smla(const WeightedGraph& g, const TerminalSet& terminals);

// Every size-k' terminal subset S, min cut between S and K \ S.
OracleResult<Bipartition> exact_steiner_bisection(const WeightedGraph& g,
                                                  const TerminalSet& terminals, int k_prime);

// Every edge subset, kept when it disconnects at least k' pairs.
OracleResult<EdgeCutSet> exact_partial_multicut(const WeightedGraph& g, const DemandPairs& pairs,
                                                int k_prime);

// Every map F with F bijective on the terminals; guard k! * k^(n-k) <= 1e6.
OracleResult<Arrangement> exact_smcla(const WeightedGraph& g, const TerminalSet& terminals);

// Same guards, exposed so callers can size instances up front.
bool smla_oracle_fits(const WeightedGraph& g, const TerminalSet& terminals);
bool bisection_oracle_fits(const TerminalSet& terminals, int k_prime);
bool multicut_oracle_fits(const WeightedGraph& g);
bool smcla_oracle_fits(const WeightedGraph& g, const TerminalSet& terminals);

}  // namespace stk

#endif  // STK_ORACLES_HPP_
