#include "stk/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "stk/error.hpp"

namespace stk {

Problem parse_problem(std::string_view name) {
  if (name == "smla") return Problem::kSmla;
  if (name == "bisect" || name == "bisection") return Problem::kBisection;
  if (name == "multicut") return Problem::kMulticut;
  if (name == "smcla") return Problem::kSmcla;
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

std::string_view problem_name(Problem problem) {
  switch (problem) {
    case Problem::kSmla: return "smla";
    case Problem::kBisection: return "bisect";
    case Problem::kMulticut: return "multicut";
    case Problem::kSmcla: return "smcla";
  }
  return "?";
}

double smla_cost(const WeightedGraph& g, const Arrangement& a) {
  double total = 0.0;
  for (const Edge& e : g.edges()) total += e.w * std::abs(a.position[e.u] - a.position[e.v]);
  return total;
}

double smcla_cost(const WeightedGraph& g, const Arrangement& a, int k) {
  if (k <= 1) return 0.0;
  std::vector<double> delta(k + 1, 0.0);
  for (const Edge& e : g.edges()) {
    int lo = a.position[e.u];
    int hi = a.position[e.v];
    if (lo == hi) continue;
    if (lo > hi) std::swap(lo, hi);
    delta[lo] += e.w;
    delta[hi] -= e.w;
  }
  double best = 0.0;
  double running = 0.0;
  for (int i = 1; i < k; ++i) {
    running += delta[i];
    best = std::max(best, running);
  }
  return best;
}

double cut_weight(const WeightedGraph& g, const std::vector<bool>& side) {
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    if (side[e.u] != side[e.v]) total += e.w;
  }
  return total;
}

double edge_set_weight(const WeightedGraph& g, const std::vector<EdgeId>& edges) {
  double total = 0.0;
  for (EdgeId e : edges) total += g.edge(e).w;
  return total;
}

std::vector<int> disconnected_pairs(const WeightedGraph& g, const std::vector<EdgeId>& edges,
                                    const DemandPairs& pairs) {
  const int n = g.num_vertices();
  std::vector<char> removed(g.num_edges(), 0);
  for (EdgeId e : edges) removed[e] = 1;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!removed[e]) parent[find(g.edge(e).u)] = find(g.edge(e).v);
  }
  std::vector<int> result;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (find(pairs[i].s) != find(pairs[i].t)) result.push_back(static_cast<int>(i));
  }
  return result;
}

namespace {

void check_arrangement(const WeightedGraph& g, const TerminalSet& terminals,
                       const Arrangement& a) {
  const int k = terminals.size();
  if (static_cast<int>(a.position.size()) != g.num_vertices()) {
    throw std::invalid_argument("arrangement size differs from vertex count");
  }
  std::vector<char> used(k + 1, 0);
  for (int p : a.position) {
    if (p < 1 || p > k) throw std::invalid_argument("arrangement position outside [1..k]");
  }
  for (Vertex t : terminals.vertices()) {
    if (used[a.position[t]]) {
      throw std::invalid_argument("arrangement is not a bijection on terminals");
    }
    used[a.position[t]] = 1;
  }
}

}  // namespace

Evaluation evaluate(const WeightedGraph& g, const TerminalSet& terminals, Problem problem,
                    const Solution& solution, int k_prime, const DemandPairs& pairs) {
  Evaluation result;
  switch (problem) {
    case Problem::kSmla:
    case Problem::kSmcla: {
      const auto* a = std::get_if<Arrangement>(&solution);
      if (!a) throw std::invalid_argument("expected an arrangement");
      check_arrangement(g, terminals, *a);
      result.cost = problem == Problem::kSmla ? smla_cost(g, *a)
                                              : smcla_cost(g, *a, terminals.size());
      return result;
    }
    case Problem::kBisection: {
      const auto* b = std::get_if<Bipartition>(&solution);
      if (!b) throw std::invalid_argument("expected a bipartition");
      if (static_cast<int>(b->side_a.size()) != g.num_vertices()) {
        throw std::invalid_argument("bipartition size differs from vertex count");
      }
      int on_a = 0;
      for (Vertex t : terminals.vertices()) on_a += b->side_a[t] ? 1 : 0;
      if (on_a != k_prime) throw std::invalid_argument("bipartition violates |A ∩ K| = k'");
      result.cost = cut_weight(g, b->side_a);
      return result;
    }
    case Problem::kMulticut: {
      const auto* c = std::get_if<EdgeCutSet>(&solution);
      if (!c) throw std::invalid_argument("expected an edge cut set");
      for (EdgeId e : c->edges) {
        if (e < 0 || e >= g.num_edges()) throw std::invalid_argument("cut edge out of range");
      }
      auto actual = disconnected_pairs(g, c->edges, pairs);
      for (int p : c->separated_pairs) {
        if (!std::binary_search(actual.begin(), actual.end(), p)) {
          throw std::invalid_argument("cut does not separate claimed pair " +
                                      std::to_string(p));
        }
      }
      if (static_cast<int>(actual.size()) < k_prime) {
        throw std::invalid_argument("cut separates fewer than k' pairs");
      }
      result.cost = edge_set_weight(g, c->edges);
      result.separated_pairs = static_cast<int>(actual.size());
      return result;
    }
  }
  return result;
}

void write_solution(std::ostream& out, const WeightedGraph& g, const Solution& solution) {
  if (const auto* a = std::get_if<Arrangement>(&solution)) {
    for (std::size_t v = 0; v < a->position.size(); ++v) {
      out << "a " << v + 1 << ' ' << a->position[v] << '\n';
    }
  } else if (const auto* b = std::get_if<Bipartition>(&solution)) {
    for (std::size_t v = 0; v < b->side_a.size(); ++v) {
      out << "s " << v + 1 << ' ' << (b->side_a[v] ? 'A' : 'B') << '\n';
    }
  } else if (const auto* c = std::get_if<EdgeCutSet>(&solution)) {
    for (EdgeId e : c->edges) {
      out << "c " << g.edge(e).u + 1 << ' ' << g.edge(e).v + 1 << '\n';
    }
  }
}

std::string solution_to_string(const WeightedGraph& g, const Solution& solution) {
  std::ostringstream out;
  write_solution(out, g, solution);
  return out.str();
}

Solution parse_solution(std::istream& in, const WeightedGraph& g, Problem problem) {
  const int n = g.num_vertices();
  std::vector<int> position(n, 0);
  std::vector<int> side(n, -1);
  std::vector<EdgeId> edges;
  std::string raw;
  std::size_t line = 0;
  auto vertex = [&](std::istringstream& fields) {
    long long v = 0;
    if (!(fields >> v) || v < 1 || v > n) throw ParseError(line, "bad vertex id");
    return static_cast<Vertex>(v - 1);
  };
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream fields(raw);
    std::string kind;
    if (!(fields >> kind)) continue;
    if (kind == "a") {
      Vertex v = vertex(fields);
      if (!(fields >> position[v])) throw ParseError(line, "bad position");
    } else if (kind == "s") {
      Vertex v = vertex(fields);
      std::string s;
      fields >> s;
      if (s != "A" && s != "B") throw ParseError(line, "side must be A or B");
      side[v] = s == "A" ? 1 : 0;
    } else if (kind == "c") {
      Vertex u = vertex(fields);
      Vertex v = vertex(fields);
      auto e = g.find_edge(u, v);
      if (!e) throw ParseError(line, "cut edge not in graph");
      edges.push_back(*e);
    } else {
      throw ParseError(line, "unknown solution line '" + kind + "'");
    }
  }
  switch (problem) {
    case Problem::kSmla:
    case Problem::kSmcla:
      return Arrangement{std::move(position)};
    case Problem::kBisection: {
      Bipartition b;
      b.side_a.resize(n);
      for (int v = 0; v < n; ++v) b.side_a[v] = side[v] == 1;
      return b;
    }
    case Problem::kMulticut:
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
      return EdgeCutSet{std::move(edges), {}};
  }
  return Arrangement{};
}

}  // namespace stk
