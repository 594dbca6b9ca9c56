#ifndef STK_GENERATOR_HPP_
#define STK_GENERATOR_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "stk/instance_io.hpp"

namespace stk {

enum class GraphKind { kGrid, kRandomGnp, kStarOfCliques };

GraphKind parse_graph_kind(std::string_view name);  // grid | gnp | star-of-cliques
std::string_view graph_kind_name(GraphKind kind);

struct GeneratorParams {
  int rows = 0;  // grid
  int cols = 0;
  int n = 0;  // gnp
  double p = 0.0;
  int cliques = 0;  // star-of-cliques: a hub joined to one vertex per clique
  int clique_size = 0;
  int terminals = 1;
  int pairs = 0;       // random distinct terminal pairs with demand 1
  int max_weight = 1;  // weights drawn uniformly from 1..max_weight
  int max_retries = 1000;  // gnp redraws until connected
};

// Deterministic for fixed (kind, params, seed). Throws std::invalid_argument
// for unsatisfiable parameters and stk::Error when gnp never connects within
// the retry budget.
Instance generate_instance(GraphKind kind, const GeneratorParams& params,
                           std::uint64_t seed);

}  // namespace stk

#endif  // STK_GENERATOR_HPP_
