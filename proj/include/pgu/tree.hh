#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgu/graph.hh"

namespace pgu {

// A rooted tree with totally ordered children and every leaf at height d/2.
// Leaves are stored as branch vectors (topmost child index first), sorted
// strictly increasing in lexicographic order; this mirrors the
// identification of leaves with tuples and makes level-ancestor comparison a
// prefix operation.
struct OrderedTree {
  int d = 2;                            // even
  std::vector<std::vector<int>> leaves; // branch vectors of length d/2

  OrderedTree(int d, std::vector<std::vector<int>> leaves);

  int height() const { return d / 2; }
  int size() const { return static_cast<int>(leaves.size()); }

  bool operator==(const OrderedTree&) const = default;
};

// Outcome of checking the four tree-like axioms. `axiom` names the first
// violated one; the witness lists the vertices (and priority) involved.
struct TreeLikeReport {
  bool ok = true;
  std::string axiom;
  std::string witness;
};

// The four axioms: composition, even totality, even reflexivity, and the
// odd-relation definition. Requires even d.
TreeLikeReport check_tree_like(const PriorityGraph& g);
bool is_tree_like(const PriorityGraph& g);

// The graph whose vertices are the leaves of t: for even i, (v,i,v') when
// v's level-i ancestor is left of or equal to v''s; for odd i, (v,i,v') when
// (v,i-1,v') holds and (v',i-1,v) does not.
PriorityGraph graph_of_tree(const OrderedTree& t);

// Inverse transformation: leaves are the E_0 classes of g (one per vertex
// when E_0 is antisymmetric), level-i nodes the E_i classes.
// `leaf_of_vertex` maps each vertex to its leaf index; it is a bijection
// exactly when no two vertices are E_0-equivalent.
struct TreeOfGraph {
  OrderedTree tree;
  std::vector<int> leaf_of_vertex;
  bool collapsed() const { return tree.size() != static_cast<int>(leaf_of_vertex.size()); }
};
TreeOfGraph tree_of_graph(const PriorityGraph& g);

// Level- and order-preserving leaf injection of t into T, iff one exists.
// Entry i is the T-leaf index that leaf i of t maps to.
using LeafEmbedding = std::vector<int>;
std::optional<LeafEmbedding> embeds(const OrderedTree& t, const OrderedTree& T);

// All trees with exactly n leaves at height d/2, in (leaf-vector) lex order.
std::vector<OrderedTree> enumerate_trees(int n, int d, const EnumerationLimits& lim = {});

// Number of such trees ((d/2)^(n-1)), guarded by the budget.
std::uint64_t tree_space_size(int n, int d, const EnumerationLimits& lim);

struct UniversalTreeCheck {
  bool ok = true;
  std::optional<OrderedTree> counterexample;
};

// T embeds every tree with at most n leaves (set exactly_n to demand only
// exactly n; the two readings coincide, the toggle exists for experiments).
UniversalTreeCheck check_universal_tree(const OrderedTree& T, int n, int d,
                                        bool exactly_n = false,
                                        const EnumerationLimits& lim = {});

// The full n-ary tree of height d/2 (n^(d/2) leaves) — universal by
// construction.
OrderedTree complete_universal_tree(int n, int d, const EnumerationLimits& lim = {});

// First tree in (size, lex) order passing check_universal_tree.
OrderedTree minimal_universal_tree(int n, int d, const EnumerationLimits& lim = {});

}  // namespace pgu
