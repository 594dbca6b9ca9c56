#include "stk/min_cut.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace stk {

namespace {

// Dinic's algorithm on an undirected network. Each undirected edge becomes a
// pair of arcs that are each other's reverse, both with capacity w.
class Dinic {
 public:
  explicit Dinic(int n) : head_(n, -1), level_(n), cursor_(n) {}

  void add_undirected(int u, int v, double cap) {
    add_arc(u, v, cap);
    add_arc(v, u, cap);
  }
  void add_directed(int u, int v, double cap) {
    add_arc(u, v, cap);
    add_arc(v, u, 0.0);
  }

  double run(int s, int t, double eps) {
    eps_ = eps;
    double flow = 0.0;
    while (bfs(s, t)) {
      std::copy(head_.begin(), head_.end(), cursor_.begin());
      for (;;) {
        double pushed = dfs(s, t, std::numeric_limits<double>::infinity());
        if (pushed <= eps_) break;
        flow += pushed;
      }
    }
    return flow;
  }

  std::vector<bool> reachable(int s) const {
    std::vector<bool> seen(head_.size(), false);
    std::vector<int> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int a = head_[u]; a >= 0; a = arcs_[a].next) {
        if (arcs_[a].cap > eps_ && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = true;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

  // Vertices that can still reach t through residual arcs.
  std::vector<bool> reaching(int t) const {
    std::vector<bool> seen(head_.size(), false);
    std::vector<int> stack{t};
    seen[t] = true;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int a = head_[x]; a >= 0; a = arcs_[a].next) {
        // arcs_[a ^ 1] runs from arcs_[a].to back into x.
        if (arcs_[a ^ 1].cap > eps_ && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = true;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

 private:
  struct ArcData {
    int to;
    int next;
    double cap;
  };

  void add_arc(int u, int v, double cap) {
    arcs_.push_back({v, head_[u], cap});
    head_[u] = static_cast<int>(arcs_.size()) - 1;
  }

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    level_[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (int a = head_[u]; a >= 0; a = arcs_[a].next) {
        if (arcs_[a].cap > eps_ && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[u] + 1;
          queue.push(arcs_[a].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  double dfs(int u, int t, double limit) {
    if (u == t) return limit;
    for (int& a = cursor_[u]; a >= 0; a = arcs_[a].next) {
      ArcData& arc = arcs_[a];
      if (arc.cap <= eps_ || level_[arc.to] != level_[u] + 1) continue;
      double pushed = dfs(arc.to, t, std::min(limit, arc.cap));
      if (pushed > eps_) {
        arc.cap -= pushed;
        arcs_[a ^ 1].cap += pushed;
        return pushed;
      }
    }
    return 0.0;
  }

  std::vector<int> head_;
  std::vector<ArcData> arcs_;
  std::vector<int> level_;
  std::vector<int> cursor_;
  double eps_ = 0.0;
};

}  // namespace

StCut min_st_cut(const WeightedGraph& g, std::span<const Vertex> sources,
                 std::span<const Vertex> sinks, CutSide which) {
  const int n = g.num_vertices();
  if (sources.empty() || sinks.empty()) {
    throw std::invalid_argument("min_st_cut: empty source or sink set");
  }
  std::vector<char> role(n, 0);
  for (Vertex s : sources) {
    if (s < 0 || s >= n) throw std::invalid_argument("min_st_cut: bad source");
    role[s] = 1;
  }
  for (Vertex t : sinks) {
    if (t < 0 || t >= n) throw std::invalid_argument("min_st_cut: bad sink");
    if (role[t] == 1) {
      throw std::invalid_argument("min_st_cut: sources and sinks overlap");
    }
    role[t] = 2;
  }

  const int super_source = n;
  const int super_sink = n + 1;
  Dinic net(n + 2);
  for (const Edge& e : g.edges()) net.add_undirected(e.u, e.v, e.w);
  // Anything above the total weight is effectively infinite.
  const double big = 2.0 * g.total_weight() + 1.0;
  for (Vertex v = 0; v < n; ++v) {
    if (role[v] == 1) net.add_directed(super_source, v, big);
    if (role[v] == 2) net.add_directed(v, super_sink, big);
  }
  // Residuals below this are rounding noise; integral weights never produce
  // residuals in (0, 1).
  const double eps = 1e-12 * std::max(1.0, g.total_weight());
  StCut cut;
  cut.value = net.run(super_source, super_sink, eps);
  if (which == CutSide::kMinimal) {
    auto side = net.reachable(super_source);
    cut.source_side.assign(side.begin(), side.begin() + n);
  } else {
    auto sink_side = net.reaching(super_sink);
    cut.source_side.resize(n);
    for (Vertex v = 0; v < n; ++v) cut.source_side[v] = !sink_side[v];
  }
  // Report the weight of the cut actually returned rather than the flow
  // total, so value and side agree exactly.
  double crossing = 0.0;
  for (const Edge& e : g.edges()) {
    if (cut.source_side[e.u] != cut.source_side[e.v]) crossing += e.w;
  }
  cut.value = crossing;
  return cut;
}

}  // namespace stk
