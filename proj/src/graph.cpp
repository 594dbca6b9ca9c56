#include "stk/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stk {

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

bool is_connected(int n, std::span<const Edge> edges) {
  if (n <= 1) return true;
  DisjointSets sets(n);
  int components = n;
  for (const Edge& e : edges) {
    if (sets.unite(e.u, e.v)) --components;
  }
  return components == 1;
}

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  for (Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.u == e.v) throw std::invalid_argument("self-loop");
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw std::invalid_argument("edge weight must be positive");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (const Edge& e : edges) {
    if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
      edges_.back().w += e.w;
    } else {
      edges_.push_back(e);
    }
  }
  if (!is_connected(n_, edges_)) throw std::invalid_argument("graph is disconnected");

  std::vector<std::size_t> degree(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++degree[e.u + 1];
    ++degree[e.v + 1];
    total_weight_ += e.w;
  }
  std::partial_sum(degree.begin(), degree.end(), degree.begin());
  offsets_ = degree;
  arcs_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < num_edges(); ++id) {
    const Edge& e = edges_[id];
    arcs_[fill[e.u]++] = {e.v, id};
    arcs_[fill[e.v]++] = {e.u, id};
  }
  for (Vertex v = 0; v < n_; ++v) {
    std::sort(arcs_.begin() + offsets_[v], arcs_.begin() + offsets_[v + 1],
              [](const Arc& a, const Arc& b) { return a.to < b.to; });
  }
}

std::optional<EdgeId> WeightedGraph::find_edge(Vertex a, Vertex b) const {
  auto arcs = neighbors(a);
  auto it = std::lower_bound(arcs.begin(), arcs.end(), b,
                             [](const Arc& arc, Vertex x) { return arc.to < x; });
  if (it == arcs.end() || it->to != b) return std::nullopt;
  return it->edge;
}

bool WeightedGraph::integral_weights() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return std::floor(e.w) == e.w; });
}

bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.u != y.u || x.v != y.v || x.w != y.w) return false;
  }
  return true;
}

TerminalSet::TerminalSet(std::vector<Vertex> terminals, int num_vertices)
    : terminals_(std::move(terminals)), index_(num_vertices, -1) {
  if (terminals_.empty()) throw std::invalid_argument("no terminals");
  if (static_cast<int>(terminals_.size()) > num_vertices) {
    throw std::invalid_argument("more terminals than vertices");
  }
  for (int i = 0; i < size(); ++i) {
    Vertex t = terminals_[i];
    if (t < 0 || t >= num_vertices) {
      throw std::invalid_argument("terminal out of range");
    }
    if (index_[t] >= 0) throw std::invalid_argument("duplicate terminal");
    index_[t] = i;
  }
}

void validate_demands(const DemandPairs& pairs, int num_vertices) {
  for (const Demand& d : pairs) {
    if (d.s < 0 || d.s >= num_vertices || d.t < 0 || d.t >= num_vertices) {
      throw std::invalid_argument("demand endpoint out of range");
    }
    if (d.s == d.t) throw std::invalid_argument("demand endpoints coincide");
    if (!(d.amount > 0.0) || !std::isfinite(d.amount)) {
      throw std::invalid_argument("demand must be positive");
    }
  }
}

void validate_terminal_demands(const DemandPairs& pairs,
                               const TerminalSet& terminals) {
  for (const Demand& d : pairs) {
    if (!terminals.contains(d.s) || !terminals.contains(d.t)) {
      throw std::invalid_argument("demand between non-terminals: " +
                                  std::to_string(d.s + 1) + " " +
                                  std::to_string(d.t + 1));
    }
  }
}

}  // namespace stk
