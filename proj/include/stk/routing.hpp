#ifndef STK_ROUTING_HPP_
#define STK_ROUTING_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "stk/decomposition_tree.hpp"
#include "stk/graph.hpp"

namespace stk {

struct RoutingPath {
  std::vector<Vertex> vertices;  // walk from the pair's first to second vertex
  double weight = 0.0;
  friend bool operator==(const RoutingPath&, const RoutingPath&) = default;
};

struct PairRoutes {
  Vertex a = 0;
  Vertex b = 0;
  std::vector<RoutingPath> paths;  // weights sum to 1
  friend bool operator==(const PairRoutes&, const PairRoutes&) = default;
};

// Fixed routes for every terminal pair, chosen without looking at demands.
struct RoutingScheme {
  std::vector<Vertex> terminals;
  // Pairs (terminals[i], terminals[j]) for i < j in row-major order.
  std::vector<PairRoutes> pairs;
  // (tree seed, mixing weight) per sampled tree.
  std::vector<std::pair<std::uint64_t, double>> provenance;

  // Routes for {a, b} oriented from a to b, or nullopt if either is not a
  // terminal of the scheme.
  std::optional<PairRoutes> routes(Vertex a, Vertex b) const;

  friend bool operator==(const RoutingScheme&, const RoutingScheme&) = default;
};

// For every sampled tree, the route of terminal pair (a, b) walks the
// terminal-tree path between their leaves and joins consecutive node centers
// by the lexicographically smallest shortest G-path. The N trees are mixed
// with weight 1/N; identical walks are merged.
RoutingScheme build_oblivious_scheme(const WeightedGraph& g, const TerminalSet& terminals,
                                     int trees, std::uint64_t seed, int threads = 0,
                                     const TreeSampler* sampler = nullptr);

struct FlowMap {
  std::vector<double> edge_load;  // total flow per edge, both directions
  // Per demand, net flow per edge oriented from edge.u to edge.v.
  std::vector<std::vector<double>> commodity;
};

// Throws std::invalid_argument for demands whose endpoints are not terminals
// of the scheme.
FlowMap route_demands(const WeightedGraph& g, const RoutingScheme& scheme,
                      const DemandPairs& demands);

// Largest |net outflow - required supply| over all commodities and vertices,
// relative to the commodity's demand.
double max_conservation_violation(const WeightedGraph& g, const DemandPairs& demands,
                                  const std::vector<std::vector<double>>& commodity,
                                  std::span<const double> routed);

struct CongestionReport {
  std::vector<double> edge_load;
  double congestion = 0.0;  // max_e load / capacity
  std::optional<double> lambda;
  std::optional<double> competitive_ratio;  // congestion * lambda
};

CongestionReport evaluate_congestion(const WeightedGraph& g, std::span<const double> flows);

struct ConcurrentFlow {
  double lambda = 0.0;
  // Feasible certificate: commodity i ships routed[i] >= lambda * demand_i
  // and every edge's total usage is within capacity.
  std::vector<std::vector<double>> commodity;  // net flow oriented u -> v
  std::vector<double> edge_usage;              // gross usage per edge
  std::vector<double> routed;
  int phases = 0;
};

// Width-independent multiplicative weights (Garg-Koenemann) for maximum
// concurrent flow: returns lambda >= (1 - epsilon) * lambda*. Requires
// 0 < epsilon <= 0.5 and a nonempty demand list.
ConcurrentFlow max_concurrent_flow(const WeightedGraph& g, const DemandPairs& demands,
                                   double epsilon);

}  // namespace stk

#endif  // STK_ROUTING_HPP_
