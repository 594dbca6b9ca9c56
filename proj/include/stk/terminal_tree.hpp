#ifndef STK_TERMINAL_TREE_HPP_
#define STK_TERMINAL_TREE_HPP_

#include <iosfwd>
#include <span>
#include <vector>

#include "stk/decomposition_tree.hpp"
#include "stk/graph.hpp"

namespace stk {

struct TerminalTreeNode {
  int parent = -1;
  std::vector<int> children;
  Vertex terminal = -1;  // -1 for Steiner (non-terminal) nodes
  Vertex center = 0;
  int level = 0;
  // Edge to the parent. A tree edge is named by its child node's id.
  double length = 0.0;
  double load = 0.0;
};

// Tree over the terminals together with a retraction V -> K. Node ids are in
// preorder (parent id < child id, root = 0), so iterating ids backwards visits
// children before parents.
class TerminalTree {
 public:
  TerminalTree() = default;

  // Synthetic trees for solvers and tests. parent[0] must be -1 and
  // parent[i] < i otherwise; terminal[i] is the vertex hosted by node i or -1.
  // `retraction` may be empty when no graph is attached.
  TerminalTree(std::vector<int> parent, std::vector<Vertex> terminal,
               std::vector<double> loads, std::vector<Vertex> retraction = {});

  int size() const { return static_cast<int>(nodes_.size()); }
  int root() const { return 0; }
  const TerminalTreeNode& node(int id) const { return nodes_[id]; }
  std::span<const TerminalTreeNode> nodes() const { return nodes_; }
  int depth(int id) const { return depth_[id]; }

  int num_terminals() const { return static_cast<int>(terminal_nodes_.size()); }
  // Terminal-hosting nodes in id order.
  std::span<const int> terminal_nodes() const { return terminal_nodes_; }
  bool is_terminal(int id) const { return nodes_[id].terminal >= 0; }
  int node_of_terminal(Vertex t) const;

  std::span<const Vertex> retraction() const { return retraction_; }
  Vertex retract(Vertex v) const { return retraction_[v]; }
  // Node hosting retraction(v).
  int node_of_vertex(Vertex v) const { return node_of_terminal(retraction_[v]); }

  double load(int edge) const { return nodes_[edge].load; }
  void set_load(int edge, double value) { nodes_[edge].load = value; }
  double total_load() const;

  int lowest_common_ancestor(int a, int b) const;
  // Edges (child ids) on the path between nodes a and b.
  std::vector<int> path_edges(int a, int b) const;
  double path_length(int a, int b) const;

 private:
  friend TerminalTree build_terminal_tree(const DecompositionTree&, const TerminalSet&,
                                          bool);
  void finalize();

  std::vector<TerminalTreeNode> nodes_;
  std::vector<int> depth_;
  std::vector<int> terminal_nodes_;
  std::vector<int> node_of_terminal_;  // indexed by vertex id, -1 if none
  std::vector<Vertex> retraction_;
};

// Retraction: each vertex walks up from its leaf to the lowest ancestor whose
// cluster holds a terminal and maps to that cluster's minimum-id terminal.
// The tree is the minimal subtree spanning the terminal leaves, with
// non-terminal degree-2 nodes contracted unless `contract_degree_two` is off.
// Loads are left at zero.
TerminalTree build_terminal_tree(const DecompositionTree& dt, const TerminalSet& terminals,
                                 bool contract_degree_two = true);

// Fills load(e) = sum of c_uv over G-edges whose retracted endpoints' tree
// path uses e.
TerminalTree compute_edge_loads(const WeightedGraph& g, TerminalTree tree);

// `n <id> <parent> <level> <center>` per node (ids 1-based, parent 0 at the
// root), `f <v> <terminal>` per vertex, `l <child> <parent> <load>` per edge.
void write_tree_dump(std::ostream& out, const TerminalTree& tree);

}  // namespace stk

#endif  // STK_TERMINAL_TREE_HPP_
