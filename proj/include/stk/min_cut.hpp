#ifndef STK_MIN_CUT_HPP_
#define STK_MIN_CUT_HPP_

#include <span>
#include <vector>

#include "stk/graph.hpp"

namespace stk {

// Which optimal source side to report. Minimum cuts form a lattice; kMinimal
// is the vertices reachable from the sources in the final residual network,
// kMaximal everything that cannot reach the sinks there.
enum class CutSide { kMinimal, kMaximal };

struct StCut {
  double value = 0.0;
  std::vector<bool> source_side;
};

// Minimum weight of edges separating `sources` from `sinks`, with each set
// contracted to a single terminal. Both sets must be nonempty and disjoint
// (std::invalid_argument otherwise).
StCut min_st_cut(const WeightedGraph& g, std::span<const Vertex> sources,
                 std::span<const Vertex> sinks, CutSide side = CutSide::kMinimal);

}  // namespace stk

#endif  // STK_MIN_CUT_HPP_
