#include "stk/terminal_tree.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "stk/instance_io.hpp"

namespace stk {

namespace {

// A Steiner root with two children is an internal degree-2 node. Make its
// first child the root and hang the second child below it, joined by one
// edge of the combined length. Ids are reassigned in preorder.
void splice_out_binary_root(std::vector<TerminalTreeNode>& nodes) {
  if (nodes.empty() || nodes[0].terminal >= 0 || nodes[0].children.size() != 2) return;
  const int first = nodes[0].children[0];
  const int second = nodes[0].children[1];
  nodes[second].length += nodes[first].length;
  nodes[first].length = 0.0;
  nodes[first].children.push_back(second);

  std::vector<TerminalTreeNode> order;
  order.reserve(nodes.size() - 1);
  std::vector<std::pair<int, int>> stack{{first, -1}};  // (old id, new parent)
  while (!stack.empty()) {
    auto [old_id, parent] = stack.back();
    stack.pop_back();
    const int id = static_cast<int>(order.size());
    TerminalTreeNode node = nodes[old_id];
    node.parent = parent;
    node.children.clear();
    order.push_back(node);
    if (parent >= 0) order[parent].children.push_back(id);
    const auto& kids = nodes[old_id].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back({*it, id});
  }
  nodes = std::move(order);
}

}  // namespace

TerminalTree::TerminalTree(std::vector<int> parent, std::vector<Vertex> terminal,
                           std::vector<double> loads, std::vector<Vertex> retraction)
    : retraction_(std::move(retraction)) {
  const std::size_t size = parent.size();
  if (size == 0 || terminal.size() != size || loads.size() != size) {
    throw std::invalid_argument("terminal tree: inconsistent node arrays");
  }
  if (parent[0] != -1) throw std::invalid_argument("terminal tree: node 0 must be the root");
  nodes_.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    if (i > 0 && (parent[i] < 0 || parent[i] >= static_cast<int>(i))) {
      throw std::invalid_argument("terminal tree: parent ids must precede children");
    }
    nodes_[i].parent = parent[i];
    nodes_[i].terminal = terminal[i];
    nodes_[i].load = loads[i];
    nodes_[i].length = i > 0 ? 1.0 : 0.0;
    if (i > 0) nodes_[parent[i]].children.push_back(static_cast<int>(i));
  }
  finalize();
}

void TerminalTree::finalize() {
  depth_.assign(nodes_.size(), 0);
  terminal_nodes_.clear();
  Vertex max_terminal = -1;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].parent >= 0) depth_[i] = depth_[nodes_[i].parent] + 1;
    if (nodes_[i].terminal >= 0) {
      terminal_nodes_.push_back(static_cast<int>(i));
      max_terminal = std::max(max_terminal, nodes_[i].terminal);
    }
  }
  node_of_terminal_.assign(max_terminal + 1, -1);
  for (int id : terminal_nodes_) {
    if (node_of_terminal_[nodes_[id].terminal] >= 0) {
      throw std::invalid_argument("terminal tree: terminal hosted twice");
    }
    node_of_terminal_[nodes_[id].terminal] = id;
  }
}

int TerminalTree::node_of_terminal(Vertex t) const {
  if (t < 0 || t >= static_cast<Vertex>(node_of_terminal_.size()) ||
      node_of_terminal_[t] < 0) {
    throw std::out_of_range("vertex is not a terminal of this tree");
  }
  return node_of_terminal_[t];
}

double TerminalTree::total_load() const {
  double total = 0.0;
  for (std::size_t i = 1; i < nodes_.size(); ++i) total += nodes_[i].load;
  return total;
}

int TerminalTree::lowest_common_ancestor(int a, int b) const {
  while (depth_[a] > depth_[b]) a = nodes_[a].parent;
  while (depth_[b] > depth_[a]) b = nodes_[b].parent;
  while (a != b) {
    a = nodes_[a].parent;
    b = nodes_[b].parent;
  }
  return a;
}

std::vector<int> TerminalTree::path_edges(int a, int b) const {
  std::vector<int> up;
  std::vector<int> down;
  while (depth_[a] > depth_[b]) {
    up.push_back(a);
    a = nodes_[a].parent;
  }
  while (depth_[b] > depth_[a]) {
    down.push_back(b);
    b = nodes_[b].parent;
  }
  while (a != b) {
    up.push_back(a);
    down.push_back(b);
    a = nodes_[a].parent;
    b = nodes_[b].parent;
  }
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

double TerminalTree::path_length(int a, int b) const {
  double total = 0.0;
  for (int e : path_edges(a, b)) total += nodes_[e].length;
  return total;
}

TerminalTree build_terminal_tree(const DecompositionTree& dt, const TerminalSet& terminals,
                                 bool contract_degree_two) {
  const int size = dt.size();
  const int n = static_cast<int>(dt.leaf_of.size());
  constexpr Vertex kNone = std::numeric_limits<Vertex>::max();

  // Minimum terminal in each cluster; decomposition ids are top-down.
  std::vector<Vertex> min_terminal(size, kNone);
  for (Vertex t : terminals.vertices()) min_terminal[dt.leaf_of[t]] = t;
  for (int x = size - 1; x > 0; --x) {
    int p = dt.nodes[x].parent;
    min_terminal[p] = std::min(min_terminal[p], min_terminal[x]);
  }

  TerminalTree tree;
  tree.retraction_.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    int x = dt.leaf_of[v];
    while (min_terminal[x] == kNone) x = dt.nodes[x].parent;
    tree.retraction_[v] = min_terminal[x];
  }

  auto kept_children = [&](int x) {
    std::vector<int> kept;
    for (int c : dt.nodes[x].children) {
      if (min_terminal[c] != kNone) kept.push_back(c);
    }
    return kept;
  };

  // Drop the chain above the lowest node that branches (or is a terminal).
  int top = dt.root;
  for (;;) {
    auto kept = kept_children(top);
    if (kept.size() != 1) break;
    top = kept[0];
  }

  struct Pending {
    int dt_node;
    int parent;
    double length;
  };
  std::vector<Pending> stack{{top, -1, 0.0}};
  while (!stack.empty()) {
    Pending item = stack.back();
    stack.pop_back();
    int x = item.dt_node;
    double length = item.length;
    auto kept = kept_children(x);
    if (contract_degree_two) {
      while (kept.size() == 1) {
        x = kept[0];
        length += dt.edge_length(x);
        kept = kept_children(x);
      }
    }
    const int id = static_cast<int>(tree.nodes_.size());
    TerminalTreeNode node;
    node.parent = item.parent;
    node.center = dt.nodes[x].center;
    node.level = dt.nodes[x].level;
    node.length = length;
    if (kept.empty()) node.terminal = min_terminal[x];
    tree.nodes_.push_back(node);
    if (item.parent >= 0) tree.nodes_[item.parent].children.push_back(id);
    // Push in reverse so children pop (and get ids) in decomposition order.
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
      stack.push_back({*it, id, dt.edge_length(*it)});
    }
  }
  if (contract_degree_two) splice_out_binary_root(tree.nodes_);
  tree.finalize();
  return tree;
}

TerminalTree compute_edge_loads(const WeightedGraph& g, TerminalTree tree) {
  for (int e = 0; e < tree.size(); ++e) tree.set_load(e, 0.0);
  for (const Edge& edge : g.edges()) {
    Vertex a = tree.retract(edge.u);
    Vertex b = tree.retract(edge.v);
    if (a == b) continue;
    int x = tree.node_of_terminal(a);
    int y = tree.node_of_terminal(b);
    while (tree.depth(x) > tree.depth(y)) {
      tree.set_load(x, tree.load(x) + edge.w);
      x = tree.node(x).parent;
    }
    while (tree.depth(y) > tree.depth(x)) {
      tree.set_load(y, tree.load(y) + edge.w);
      y = tree.node(y).parent;
    }
    while (x != y) {
      tree.set_load(x, tree.load(x) + edge.w);
      tree.set_load(y, tree.load(y) + edge.w);
      x = tree.node(x).parent;
      y = tree.node(y).parent;
    }
  }
  return tree;
}

void write_tree_dump(std::ostream& out, const TerminalTree& tree) {
  for (int id = 0; id < tree.size(); ++id) {
    const auto& node = tree.node(id);
    out << "n " << id + 1 << ' ' << node.parent + 1 << ' ' << node.level << ' '
        << node.center + 1 << '\n';
  }
  for (Vertex v = 0; v < static_cast<Vertex>(tree.retraction().size()); ++v) {
    out << "f " << v + 1 << ' ' << tree.retract(v) + 1 << '\n';
  }
  for (int id = 1; id < tree.size(); ++id) {
    out << "l " << id + 1 << ' ' << tree.node(id).parent + 1 << ' '
        << format_number(tree.node(id).load) << '\n';
  }
}

}  // namespace stk
