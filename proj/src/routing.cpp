#include "stk/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "stk/min_cut.hpp"
#include "stk/parallel.hpp"
#include "stk/random.hpp"
#include "stk/shortest_paths.hpp"
#include "stk/terminal_tree.hpp"

namespace stk {

namespace {

std::size_t pair_slot(std::size_t i, std::size_t j, std::size_t k) {
  // Row-major index of (i, j), i < j, in the strict upper triangle.
  return i * k - i * (i + 1) / 2 + (j - i - 1);
}

int terminal_index(const RoutingScheme& scheme, Vertex v) {
  auto it = std::find(scheme.terminals.begin(), scheme.terminals.end(), v);
  return it == scheme.terminals.end() ? -1 : static_cast<int>(it - scheme.terminals.begin());
}

// Node sequence of the tree path from a to b.
std::vector<int> tree_node_path(const TerminalTree& tree, int a, int b) {
  std::vector<int> up{a};
  std::vector<int> down{b};
  while (tree.depth(up.back()) > tree.depth(down.back())) up.push_back(tree.node(up.back()).parent);
  while (tree.depth(down.back()) > tree.depth(up.back())) down.push_back(tree.node(down.back()).parent);
  while (up.back() != down.back()) {
    up.push_back(tree.node(up.back()).parent);
    down.push_back(tree.node(down.back()).parent);
  }
  down.pop_back();
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

void add_signed(const WeightedGraph& g, std::vector<double>& flow, Vertex from, Vertex to,
                double amount) {
  auto e = g.find_edge(from, to);
  if (!e) throw std::logic_error("walk uses a non-edge");
  flow[*e] += g.edge(*e).u == from ? amount : -amount;
}

}  // namespace

std::optional<PairRoutes> RoutingScheme::routes(Vertex a, Vertex b) const {
  const int i = terminal_index(*this, a);
  const int j = terminal_index(*this, b);
  if (i < 0 || j < 0 || i == j) return std::nullopt;
  const std::size_t k = terminals.size();
  PairRoutes result = pairs[pair_slot(std::min(i, j), std::max(i, j), k)];
  if (i > j) {
    std::swap(result.a, result.b);
    for (auto& path : result.paths) std::reverse(path.vertices.begin(), path.vertices.end());
  }
  return result;
}

RoutingScheme build_oblivious_scheme(const WeightedGraph& g, const TerminalSet& terminals,
                                     int trees, std::uint64_t seed, int threads,
                                     const TreeSampler* sampler) {
  if (trees < 1) throw std::invalid_argument("need at least one tree");
  const TreeSampler& source = sampler ? *sampler : default_sampler();
  const std::size_t k = static_cast<std::size_t>(terminals.size());
  const DistanceMatrix metric = shortest_path_metric(g);

  RoutingScheme scheme;
  scheme.terminals.assign(terminals.vertices().begin(), terminals.vertices().end());
  scheme.pairs.resize(k * (k - 1) / 2);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      scheme.pairs[pair_slot(i, j, k)].a = terminals[static_cast<int>(i)];
      scheme.pairs[pair_slot(i, j, k)].b = terminals[static_cast<int>(j)];
    }
  }

  // walks[tree][slot]
  std::vector<std::vector<std::vector<Vertex>>> walks(trees);
  parallel_for(static_cast<std::size_t>(trees), threads, [&](std::size_t t) {
    DecompositionTree dt = source.sample(g, metric, derive_seed(seed, t));
    TerminalTree tree = build_terminal_tree(dt, terminals);
    walks[t].resize(scheme.pairs.size());
    for (std::size_t slot = 0; slot < scheme.pairs.size(); ++slot) {
      const PairRoutes& pr = scheme.pairs[slot];
      std::vector<Vertex> walk{pr.a};
      for (int node : tree_node_path(tree, tree.node_of_terminal(pr.a),
                                     tree.node_of_terminal(pr.b))) {
        const Vertex center = tree.node(node).center;
        auto hop = metric.path(g, walk.back(), center);
        walk.insert(walk.end(), hop.begin() + 1, hop.end());
      }
      auto last = metric.path(g, walk.back(), pr.b);
      walk.insert(walk.end(), last.begin() + 1, last.end());
      walks[t][slot] = std::move(walk);
    }
  });

  const double weight = 1.0 / trees;
  for (int t = 0; t < trees; ++t) {
    scheme.provenance.emplace_back(derive_seed(seed, static_cast<std::uint64_t>(t)), weight);
    for (std::size_t slot = 0; slot < scheme.pairs.size(); ++slot) {
      auto& paths = scheme.pairs[slot].paths;
      auto it = std::find_if(paths.begin(), paths.end(), [&](const RoutingPath& p) {
        return p.vertices == walks[t][slot];
      });
      if (it != paths.end()) {
        it->weight += weight;
      } else {
        paths.push_back({std::move(walks[t][slot]), weight});
      }
    }
  }
  return scheme;
}

FlowMap route_demands(const WeightedGraph& g, const RoutingScheme& scheme,
                      const DemandPairs& demands) {
  FlowMap flows;
  flows.edge_load.assign(g.num_edges(), 0.0);
  flows.commodity.assign(demands.size(), std::vector<double>(g.num_edges(), 0.0));
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const Demand& d = demands[i];
    auto routes = scheme.routes(d.s, d.t);
    if (!routes) {
      throw std::invalid_argument("demand between non-terminals: " + std::to_string(d.s + 1) +
                                  " " + std::to_string(d.t + 1));
    }
    for (const RoutingPath& path : routes->paths) {
      const double amount = d.amount * path.weight;
      for (std::size_t h = 0; h + 1 < path.vertices.size(); ++h) {
        add_signed(g, flows.commodity[i], path.vertices[h], path.vertices[h + 1], amount);
        flows.edge_load[*g.find_edge(path.vertices[h], path.vertices[h + 1])] += amount;
      }
    }
  }
  return flows;
}

double max_conservation_violation(const WeightedGraph& g, const DemandPairs& demands,
                                  const std::vector<std::vector<double>>& commodity,
                                  std::span<const double> routed) {
  double worst = 0.0;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    std::vector<double> net(g.num_vertices(), 0.0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      net[g.edge(e).u] += commodity[i][e];
      net[g.edge(e).v] -= commodity[i][e];
    }
    net[demands[i].s] -= routed[i];
    net[demands[i].t] += routed[i];
    const double scale = std::max(routed[i], std::numeric_limits<double>::min());
    for (double x : net) worst = std::max(worst, std::abs(x) / scale);
  }
  return worst;
}

CongestionReport evaluate_congestion(const WeightedGraph& g, std::span<const double> flows) {
  CongestionReport report;
  report.edge_load.assign(flows.begin(), flows.end());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    report.congestion = std::max(report.congestion, flows[e] / g.edge(e).w);
  }
  return report;
}

ConcurrentFlow max_concurrent_flow(const WeightedGraph& g, const DemandPairs& demands,
                                   double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw std::invalid_argument("epsilon must lie in (0, 0.5]");
  }
  if (demands.empty()) throw std::invalid_argument("no demands");
  validate_demands(demands, g.num_vertices());
  const int m = g.num_edges();
  const std::size_t count = demands.size();

  // The (1 - e')^3 guarantee of the method reaches 1 - epsilon at e' = epsilon / 3.
  const double eps = epsilon / 3.0;
  const double log_inv_delta = std::log((1.0 + eps) * m) / eps - std::log1p(eps);

  // Prescale so that lambda* of the scaled demands lies in [1, #demands].
  double beta = std::numeric_limits<double>::infinity();
  for (const Demand& d : demands) {
    const Vertex s[] = {d.s};
    const Vertex t[] = {d.t};
    double max_flow = min_st_cut(g, s, t).value;
    if (!(max_flow > 0.0)) throw std::invalid_argument("demand endpoints are disconnected");
    beta = std::min(beta, max_flow / d.amount);
  }
  std::vector<double> scaled(count);
  for (std::size_t i = 0; i < count; ++i) {
    scaled[i] = demands[i].amount * beta / static_cast<double>(count);
  }

  // Lengths are kept divided by delta * exp(offset) so they never underflow;
  // the stopping rule D >= 1 becomes log(D_stored) + offset >= log(1/delta).
  std::vector<double> length(m);
  double stored_total = 0.0;
  for (EdgeId e = 0; e < m; ++e) {
    length[e] = 1.0 / g.edge(e).w;
    stored_total += 1.0;
  }
  double offset = 0.0;
  auto finished = [&] { return std::log(stored_total) + offset >= log_inv_delta; };

  ConcurrentFlow result;
  result.commodity.assign(count, std::vector<double>(m, 0.0));
  result.edge_usage.assign(m, 0.0);
  std::vector<double> shipped(count, 0.0);
  const int doubling_period =
      static_cast<int>(std::ceil(2.0 * log_inv_delta / std::log1p(eps)));

  while (!finished()) {
    for (std::size_t i = 0; i < count && !finished(); ++i) {
      double remaining = scaled[i];
      while (remaining > 0.0 && !finished()) {
        auto tree = dijkstra(g, length, demands[i].s);
        std::vector<EdgeId> path;
        for (Vertex v = demands[i].t; v != demands[i].s;) {
          const EdgeId e = tree.parent_edge[v];
          path.push_back(e);
          v = g.edge(e).u == v ? g.edge(e).v : g.edge(e).u;
        }
        double amount = remaining;
        for (EdgeId e : path) amount = std::min(amount, g.edge(e).w);
        Vertex at = demands[i].t;
        for (EdgeId e : path) {
          const Edge& edge = g.edge(e);
          const Vertex from = edge.u == at ? edge.v : edge.u;
          result.commodity[i][e] += edge.u == from ? amount : -amount;
          result.edge_usage[e] += amount;
          stored_total += length[e] * eps * amount;
          length[e] *= 1.0 + eps * amount / edge.w;
          at = from;
        }
        shipped[i] += amount;
        remaining -= amount;
      }
    }
    ++result.phases;
    if (result.phases % doubling_period == 0) {
      for (double& d : scaled) d *= 2.0;
    }
    if (stored_total > 1e200) {
      for (double& l : length) l *= 1e-200;
      stored_total *= 1e-200;
      offset += 200.0 * std::log(10.0);
    }
  }

  // Scale the accumulated flow down to capacity; it certifies lambda.
  double worst = 0.0;
  for (EdgeId e = 0; e < m; ++e) worst = std::max(worst, result.edge_usage[e] / g.edge(e).w);
  const double sigma = worst > 0.0 ? 1.0 / worst : 0.0;
  result.lambda = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    result.lambda = std::min(result.lambda, shipped[i] * sigma / demands[i].amount);
  }
  for (EdgeId e = 0; e < m; ++e) result.edge_usage[e] *= sigma;
  for (auto& flow : result.commodity) {
    for (double& f : flow) f *= sigma;
  }
  result.routed.resize(count);
  for (std::size_t i = 0; i < count; ++i) result.routed[i] = shipped[i] * sigma;
  return result;
}

}  // namespace stk
