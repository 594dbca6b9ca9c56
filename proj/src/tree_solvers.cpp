#include "stk/tree_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "stk/error.hpp"

namespace stk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// out[p] = min_q in[q] + w * |p - q|, two-pass L1 distance transform.
std::vector<double> l1_envelope(const std::vector<double>& in, double w) {
  std::vector<double> out(in);
  for (std::size_t p = 1; p < out.size(); ++p) out[p] = std::min(out[p], out[p - 1] + w);
  for (std::size_t p = out.size(); p-- > 1;) out[p - 1] = std::min(out[p - 1], out[p] + w);
  return out;
}

// dp[v][p - 1]: best subtree cost with v at position p.
std::vector<std::vector<double>> steiner_label_table(const TerminalTree& tree,
                                                     std::span<const int> position, int k) {
  std::vector<std::vector<double>> dp(tree.size());
  for (int v = tree.size() - 1; v >= 0; --v) {
    std::vector<double> cost(k, 0.0);
    if (tree.is_terminal(v)) {
      std::fill(cost.begin(), cost.end(), kInf);
      cost[position[v] - 1] = 0.0;
    }
    for (int c : tree.node(v).children) {
      auto env = l1_envelope(dp[c], tree.load(c));
      for (int p = 0; p < k; ++p) cost[p] += env[p];
    }
    dp[v] = std::move(cost);
  }
  return dp;
}

double table_minimum(const std::vector<std::vector<double>>& dp) {
  return *std::min_element(dp[0].begin(), dp[0].end());
}

TreeArrangement extract_labels(const TerminalTree& tree,
                               const std::vector<std::vector<double>>& dp, int k) {
  TreeArrangement a;
  a.position.assign(tree.size(), 1);
  a.position[0] = static_cast<int>(std::min_element(dp[0].begin(), dp[0].end()) - dp[0].begin()) + 1;
  for (int v = 1; v < tree.size(); ++v) {
    const int p = a.position[tree.node(v).parent] - 1;
    const double w = tree.load(v);
    int best = 0;
    double best_cost = kInf;
    for (int q = 0; q < k; ++q) {
      double c = dp[v][q] + w * std::abs(p - q);
      if (c < best_cost) {
        best_cost = c;
        best = q;
      }
    }
    a.position[v] = best + 1;
  }
  return a;
}

std::vector<int> terminal_order_to_positions(const TerminalTree& tree,
                                             const std::vector<int>& order) {
  std::vector<int> position(tree.size(), 1);
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i) + 1;
  return position;
}

// Terminal nodes of a connected node set, ordered by recursive splitting at
// the tree edge that divides the set's terminals most evenly.
void balanced_order(const TerminalTree& tree, std::vector<char> member,
                    std::vector<int>& order) {
  const int size = tree.size();
  std::vector<int> count(size, 0);
  int top = -1;
  for (int v = size - 1; v >= 0; --v) {
    if (!member[v]) continue;
    count[v] += tree.is_terminal(v) ? 1 : 0;
    const int p = tree.node(v).parent;
    if (p >= 0 && member[p]) {
      count[p] += count[v];
    } else {
      top = v;
    }
  }
  const int total = count[top];
  if (total <= 1) {
    for (int v = 0; v < size; ++v) {
      if (member[v] && tree.is_terminal(v)) order.push_back(v);
    }
    return;
  }
  int best = -1;
  for (int c = 0; c < size; ++c) {
    if (!member[c] || c == top || count[c] == 0 || count[c] == total) continue;
    if (best < 0) {
      best = c;
      continue;
    }
    const int imbalance = std::abs(2 * count[c] - total);
    const int best_imbalance = std::abs(2 * count[best] - total);
    if (imbalance < best_imbalance ||
        (imbalance == best_imbalance && tree.load(c) < tree.load(best))) {
      best = c;
    }
  }
  std::vector<char> below(size, 0);
  below[best] = 1;
  for (int v = best + 1; v < size; ++v) {
    const int p = tree.node(v).parent;
    if (member[v] && p >= 0 && below[p]) below[v] = 1;
  }
  std::vector<char> rest(member);
  for (int v = 0; v < size; ++v) {
    if (below[v]) rest[v] = 0;
  }
  balanced_order(tree, std::move(below), order);
  balanced_order(tree, std::move(rest), order);
}

}  // namespace

double tree_smla_cost(const TerminalTree& tree, const TreeArrangement& a) {
  double total = 0.0;
  for (int e = 1; e < tree.size(); ++e) {
    total += tree.load(e) * std::abs(a.position[e] - a.position[tree.node(e).parent]);
  }
  return total;
}

double tree_smcla_cost(const TerminalTree& tree, const TreeArrangement& a) {
  const int k = tree.num_terminals();
  if (k <= 1) return 0.0;
  std::vector<double> delta(k + 1, 0.0);
  for (int e = 1; e < tree.size(); ++e) {
    int lo = a.position[e];
    int hi = a.position[tree.node(e).parent];
    if (lo == hi) continue;
    if (lo > hi) std::swap(lo, hi);
    delta[lo] += tree.load(e);
    delta[hi] -= tree.load(e);
  }
  double best = 0.0;
  double running = 0.0;
  for (int i = 1; i < k; ++i) {
    running += delta[i];
    best = std::max(best, running);
  }
  return best;
}

double tree_bisection_cost(const TerminalTree& tree, const TreeBipartition& b) {
  double total = 0.0;
  for (int e = 1; e < tree.size(); ++e) {
    if (b.side_a[e] != b.side_a[tree.node(e).parent]) total += tree.load(e);
  }
  return total;
}

double tree_cut_cost(const TerminalTree& tree, std::span<const int> edges) {
  double total = 0.0;
  for (int e : edges) total += tree.load(e);
  return total;
}

int host_node(const TerminalTree& tree, Vertex v) {
  return tree.retraction().empty() ? tree.node_of_terminal(v) : tree.node_of_vertex(v);
}

int count_separated_pairs(const TerminalTree& tree, std::span<const int> cut_edges,
                          const DemandPairs& pairs) {
  // Component label = nearest ancestor-or-self that is the child end of a cut
  // edge (or the root).
  std::vector<char> cut(tree.size(), 0);
  for (int e : cut_edges) cut[e] = 1;
  std::vector<int> label(tree.size(), 0);
  for (int v = 1; v < tree.size(); ++v) label[v] = cut[v] ? v : label[tree.node(v).parent];
  int separated = 0;
  for (const Demand& d : pairs) {
    if (label[host_node(tree, d.s)] != label[host_node(tree, d.t)]) ++separated;
  }
  return separated;
}

TreeArrangement place_steiner_nodes(const TerminalTree& tree,
                                    std::span<const int> terminal_position) {
  const int k = tree.num_terminals();
  auto dp = steiner_label_table(tree, terminal_position, k);
  return extract_labels(tree, dp, k);
}

TreeArrangement balanced_split_smla(const TerminalTree& tree) {
  std::vector<int> order;
  balanced_order(tree, std::vector<char>(tree.size(), 1), order);
  return place_steiner_nodes(tree, terminal_order_to_positions(tree, order));
}

TreeArrangement solve_tree_smla(const TerminalTree& tree) {
  const int k = tree.num_terminals();
  if (k > kExactSmlaTerminals) return balanced_split_smla(tree);
  std::vector<int> terminals(tree.terminal_nodes().begin(), tree.terminal_nodes().end());
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 1);
  std::vector<int> position(tree.size(), 1);
  std::vector<int> best_order;
  double best = kInf;
  do {
    for (int i = 0; i < k; ++i) position[terminals[i]] = order[i];
    double cost = table_minimum(steiner_label_table(tree, position, k));
    if (cost < best) {
      best = cost;
      best_order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  for (int i = 0; i < k; ++i) position[terminals[i]] = best_order[i];
  return place_steiner_nodes(tree, position);
}

TreeBipartition bisect_subforest(const TerminalTree& tree, const std::vector<bool>& in_group,
                                 const std::vector<bool>& counted, int k_prime,
                                 double* cost_out) {
  const int size = tree.size();
  const int width = k_prime + 1;
  // Tables are indexed side * width + j, side 0 = B, 1 = A. Ties keep the
  // first candidate in (B before A, smaller counts first) order.
  struct Step {
    int child;
    std::vector<int> child_count;
    std::vector<char> child_side;
  };
  std::vector<std::vector<double>> dp(size);
  std::vector<std::vector<Step>> steps(size);

  for (int v = size - 1; v >= 0; --v) {
    if (!in_group[v]) continue;
    std::vector<double> cur(2 * width, kInf);
    cur[0] = 0.0;
    const int own = counted[v] ? 1 : 0;
    if (own <= k_prime) cur[width + own] = 0.0;
    for (int c : tree.node(v).children) {
      if (!in_group[c]) continue;
      Step step{c, std::vector<int>(2 * width, -1), std::vector<char>(2 * width, 0)};
      std::vector<double> next(2 * width, kInf);
      const double w = tree.load(c);
      for (int s = 0; s < 2; ++s) {
        for (int j1 = 0; j1 < width; ++j1) {
          const double base = cur[s * width + j1];
          if (base == kInf) continue;
          for (int sc = 0; sc < 2; ++sc) {
            const double edge = s == sc ? 0.0 : w;
            for (int jc = 0; j1 + jc < width; ++jc) {
              const double sub = dp[c][sc * width + jc];
              if (sub == kInf) continue;
              const double value = base + sub + edge;
              const int slot = s * width + j1 + jc;
              if (value < next[slot]) {
                next[slot] = value;
                step.child_count[slot] = jc;
                step.child_side[slot] = static_cast<char>(sc);
              }
            }
          }
        }
      }
      cur = std::move(next);
      steps[v].push_back(std::move(step));
    }
    dp[v] = std::move(cur);
  }

  std::vector<int> roots;
  for (int v = 0; v < size; ++v) {
    const int p = tree.node(v).parent;
    if (in_group[v] && (p < 0 || !in_group[p])) roots.push_back(v);
  }
  std::vector<double> forest(width, kInf);
  forest[0] = 0.0;
  std::vector<std::vector<int>> root_count(roots.size(), std::vector<int>(width, -1));
  std::vector<std::vector<char>> root_side(roots.size(), std::vector<char>(width, 0));
  for (std::size_t r = 0; r < roots.size(); ++r) {
    std::vector<double> next(width, kInf);
    for (int j1 = 0; j1 < width; ++j1) {
      if (forest[j1] == kInf) continue;
      for (int s = 0; s < 2; ++s) {
        for (int jr = 0; j1 + jr < width; ++jr) {
          const double sub = dp[roots[r]][s * width + jr];
          if (sub == kInf) continue;
          const double value = forest[j1] + sub;
          if (value < next[j1 + jr]) {
            next[j1 + jr] = value;
            root_count[r][j1 + jr] = jr;
            root_side[r][j1 + jr] = static_cast<char>(s);
          }
        }
      }
    }
    forest = std::move(next);
  }
  if (forest[k_prime] == kInf) {
    throw std::invalid_argument("bisection: fewer than k' terminals available");
  }
  if (cost_out) *cost_out = forest[k_prime];

  TreeBipartition result;
  result.side_a.assign(size, false);
  struct Pending {
    int node;
    int side;
    int count;
  };
  std::vector<Pending> stack;
  int remaining = k_prime;
  for (std::size_t r = roots.size(); r-- > 0;) {
    const int jr = root_count[r][remaining];
    stack.push_back({roots[r], root_side[r][remaining], jr});
    remaining -= jr;
  }
  while (!stack.empty()) {
    auto [v, s, j] = stack.back();
    stack.pop_back();
    result.side_a[v] = s == 1;
    for (std::size_t i = steps[v].size(); i-- > 0;) {
      const Step& step = steps[v][i];
      const int slot = s * width + j;
      const int jc = step.child_count[slot];
      stack.push_back({step.child, step.child_side[slot], jc});
      j -= jc;
    }
  }
  return result;
}

TreeBipartition solve_tree_bisection(const TerminalTree& tree, int k_prime) {
  const int k = tree.num_terminals();
  if (k_prime < 0 || k_prime > k) {
    throw std::invalid_argument("bisection: k' = " + std::to_string(k_prime) +
                                " outside [0, " + std::to_string(k) + "]");
  }
  std::vector<bool> all(tree.size(), true);
  std::vector<bool> counted(tree.size(), false);
  for (int v : tree.terminal_nodes()) counted[v] = true;
  return bisect_subforest(tree, all, counted, k_prime);
}

TreeCutSet solve_tree_partial_multicut(const TerminalTree& tree, const DemandPairs& pairs,
                                       int k_prime) {
  if (k_prime < 0 || k_prime > static_cast<int>(pairs.size())) {
    throw std::invalid_argument("multicut: k' outside [0, #pairs]");
  }
  const int size = tree.size();
  std::vector<std::vector<int>> pairs_on_edge(size);
  int eligible = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const int a = host_node(tree, pairs[i].s);
    const int b = host_node(tree, pairs[i].t);
    if (a == b) continue;
    ++eligible;
    for (int e : tree.path_edges(a, b)) pairs_on_edge[e].push_back(static_cast<int>(i));
  }
  if (eligible < k_prime) {
    throw TreeInfeasible("only " + std::to_string(eligible) +
                         " pairs are separable on this tree, need " +
                         std::to_string(k_prime));
  }

  std::vector<char> separated(pairs.size(), 0);
  std::vector<char> cut(size, 0);
  int separated_count = 0;
  while (separated_count < k_prime) {
    int best = -1;
    int best_gain = 0;
    for (int e = 1; e < size; ++e) {
      if (cut[e]) continue;
      int gain = 0;
      for (int p : pairs_on_edge[e]) gain += separated[p] ? 0 : 1;
      if (gain == 0) continue;
      if (best < 0) {
        best = e;
        best_gain = gain;
        continue;
      }
      // Compare gain/load densities by cross-multiplication; zero load is
      // infinite density. Equal densities prefer the larger gain.
      const double lhs = gain * tree.load(best);
      const double rhs = best_gain * tree.load(e);
      if (lhs > rhs || (lhs == rhs && gain > best_gain)) {
        best = e;
        best_gain = gain;
      }
    }
    cut[best] = 1;
    for (int p : pairs_on_edge[best]) {
      if (!separated[p]) {
        separated[p] = 1;
        ++separated_count;
      }
    }
  }

  std::vector<int> chosen;
  for (int e = 1; e < size; ++e) {
    if (cut[e]) chosen.push_back(e);
  }
  // Prune: try dropping the most expensive edges first.
  std::vector<int> by_load(chosen);
  std::stable_sort(by_load.begin(), by_load.end(),
                   [&](int a, int b) { return tree.load(a) > tree.load(b); });
  for (int e : by_load) {
    std::vector<int> trial;
    for (int x : chosen) {
      if (x != e) trial.push_back(x);
    }
    if (count_separated_pairs(tree, trial, pairs) >= k_prime) chosen = std::move(trial);
  }

  TreeCutSet result;
  result.edges = std::move(chosen);
  result.separated = count_separated_pairs(tree, result.edges, pairs);
  result.cost = tree_cut_cost(tree, result.edges);
  return result;
}

TreeArrangement solve_tree_smcla(const TerminalTree& tree) {
  const int size = tree.size();
  TreeArrangement a;
  a.position.assign(size, 1);
  std::vector<bool> is_terminal(size, false);
  for (int v : tree.terminal_nodes()) is_terminal[v] = true;

  struct Group {
    std::vector<bool> nodes;
    int offset;
  };
  std::vector<Group> stack{{std::vector<bool>(size, true), 0}};
  while (!stack.empty()) {
    Group group = std::move(stack.back());
    stack.pop_back();
    std::vector<bool> counted(size, false);
    int terminals = 0;
    for (int v = 0; v < size; ++v) {
      if (group.nodes[v] && is_terminal[v]) {
        counted[v] = true;
        ++terminals;
      }
    }
    if (terminals <= 1) {
      for (int v = 0; v < size; ++v) {
        if (group.nodes[v]) a.position[v] = group.offset + 1;
      }
      continue;
    }
    const int half = (terminals + 1) / 2;
    TreeBipartition split = bisect_subforest(tree, group.nodes, counted, half);
    std::vector<bool> side_a(size, false);
    std::vector<bool> side_b(size, false);
    for (int v = 0; v < size; ++v) {
      if (!group.nodes[v]) continue;
      (split.side_a[v] ? side_a : side_b)[v] = true;
    }
    stack.push_back({std::move(side_b), group.offset + half});
    stack.push_back({std::move(side_a), group.offset});
  }
  return a;
}

}  // namespace stk
