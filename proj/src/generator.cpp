#include "stk/generator.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

#include "stk/error.hpp"
#include "stk/random.hpp"

namespace stk {

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "grid") return GraphKind::kGrid;
  if (name == "gnp" || name == "random-gnp") return GraphKind::kRandomGnp;
  if (name == "star-of-cliques") return GraphKind::kStarOfCliques;
  throw std::invalid_argument("unknown graph kind '" + std::string(name) + "'");
}

std::string_view graph_kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::kGrid: return "grid";
    case GraphKind::kRandomGnp: return "gnp";
    case GraphKind::kStarOfCliques: return "star-of-cliques";
  }
  return "?";
}

namespace {

double draw_weight(Rng& rng, int max_weight) {
  return static_cast<double>(1 + uniform_below(rng, static_cast<std::uint64_t>(max_weight)));
}

std::vector<Edge> grid_edges(const GeneratorParams& p, Rng& rng) {
  std::vector<Edge> edges;
  auto id = [&](int r, int c) { return r * p.cols + c; };
  for (int r = 0; r < p.rows; ++r) {
    for (int c = 0; c < p.cols; ++c) {
      if (c + 1 < p.cols) edges.push_back({id(r, c), id(r, c + 1), draw_weight(rng, p.max_weight)});
      if (r + 1 < p.rows) edges.push_back({id(r, c), id(r + 1, c), draw_weight(rng, p.max_weight)});
    }
  }
  return edges;
}

std::vector<Edge> star_of_cliques_edges(const GeneratorParams& p, Rng& rng) {
  std::vector<Edge> edges;
  for (int q = 0; q < p.cliques; ++q) {
    const int base = 1 + q * p.clique_size;
    edges.push_back({0, base, draw_weight(rng, p.max_weight)});
    for (int i = 0; i < p.clique_size; ++i) {
      for (int j = i + 1; j < p.clique_size; ++j) {
        edges.push_back({base + i, base + j, draw_weight(rng, p.max_weight)});
      }
    }
  }
  return edges;
}

}  // namespace

Instance generate_instance(GraphKind kind, const GeneratorParams& p,
                           std::uint64_t seed) {
  if (p.max_weight < 1) throw std::invalid_argument("max_weight must be >= 1");
  int n = 0;
  switch (kind) {
    case GraphKind::kGrid:
      if (p.rows < 1 || p.cols < 1) throw std::invalid_argument("grid needs rows, cols >= 1");
      n = p.rows * p.cols;
      break;
    case GraphKind::kRandomGnp:
      if (p.n < 1) throw std::invalid_argument("gnp needs n >= 1");
      if (!(p.p >= 0.0 && p.p <= 1.0)) throw std::invalid_argument("gnp needs p in [0,1]");
      n = p.n;
      break;
    case GraphKind::kStarOfCliques:
      if (p.cliques < 1 || p.clique_size < 1) {
        throw std::invalid_argument("star-of-cliques needs cliques, clique_size >= 1");
      }
      n = 1 + p.cliques * p.clique_size;
      break;
  }
  if (p.terminals < 1 || p.terminals > n) {
    throw std::invalid_argument("terminal count must be in [1, n]");
  }
  const long long max_pairs = 1LL * p.terminals * (p.terminals - 1) / 2;
  if (p.pairs < 0 || p.pairs > max_pairs) {
    throw std::invalid_argument("more demand pairs than distinct terminal pairs");
  }

  Rng rng(mix_seed(seed));
  std::vector<Edge> edges;
  switch (kind) {
    case GraphKind::kGrid:
      edges = grid_edges(p, rng);
      break;
    case GraphKind::kStarOfCliques:
      edges = star_of_cliques_edges(p, rng);
      break;
    case GraphKind::kRandomGnp: {
      bool connected = false;
      for (int attempt = 0; attempt < p.max_retries && !connected; ++attempt) {
        edges.clear();
        for (int u = 0; u < n; ++u) {
          for (int v = u + 1; v < n; ++v) {
            if (uniform01(rng) < p.p) edges.push_back({u, v, draw_weight(rng, p.max_weight)});
          }
        }
        connected = is_connected(n, edges);
      }
      if (!connected) throw Error("gnp: no connected graph within the retry budget");
      break;
    }
  }

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  portable_shuffle(order.begin(), order.end(), rng);
  order.resize(p.terminals);

  Instance instance{WeightedGraph(n, std::move(edges)), TerminalSet(order, n),
                    std::nullopt, 0};
  if (p.pairs > 0) {
    std::vector<std::pair<int, int>> all;
    for (int i = 0; i < p.terminals; ++i) {
      for (int j = i + 1; j < p.terminals; ++j) all.emplace_back(i, j);
    }
    portable_shuffle(all.begin(), all.end(), rng);
    DemandPairs demands;
    for (int i = 0; i < p.pairs; ++i) {
      demands.push_back({order[all[i].first], order[all[i].second], 1.0});
    }
    instance.demands = std::move(demands);
  }
  return instance;
}

}  // namespace stk
