#include "oracles.hh"

#include <algorithm>
#include <map>

namespace pgu::oracle {

namespace {

void cycle_dfs(const std::vector<std::vector<Edge>>& adj, int root, int at, std::vector<bool>& on_path,
               std::vector<Edge>& steps, std::vector<Path>& out) {
  for (const Edge& e : adj[static_cast<std::size_t>(at)]) {
    if (e.to == root) {
      steps.push_back(e);
      out.push_back(Path{root, steps});
      steps.pop_back();
    } else if (e.to > root && !on_path[static_cast<std::size_t>(e.to)]) {
      on_path[static_cast<std::size_t>(e.to)] = true;
      steps.push_back(e);
      cycle_dfs(adj, root, e.to, on_path, steps, out);
      steps.pop_back();
      on_path[static_cast<std::size_t>(e.to)] = false;
    }
  }
}

}  // namespace

std::vector<Path> all_simple_cycles(const PriorityGraph& g) {
  std::vector<Path> cycles;
  auto adj = g.out_adjacency();
  std::vector<bool> on_path(static_cast<std::size_t>(g.vertex_count()), false);
  std::vector<Edge> steps;
  for (int root = 0; root < g.vertex_count(); ++root)
    cycle_dfs(adj, root, root, on_path, steps, cycles);
  return cycles;
}

bool satisfies_parity(const PriorityGraph& g) {
  for (const Path& cycle : all_simple_cycles(g))
    if (cycle.max_priority() % 2 == 1) return false;
  return true;
}

bool has_homomorphism(const PriorityGraph& g, const PriorityGraph& h) {
  const int n = g.vertex_count();
  const int hn = h.vertex_count();
  if (n == 0) return true;
  if (hn == 0) return false;
  VertexMap map(static_cast<std::size_t>(n), 0);
  for (;;) {
    if (is_homomorphism(g, h, map)) return true;
    int pos = 0;
    while (pos < n && map[static_cast<std::size_t>(pos)] == hn - 1) {
      map[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == n) return false;
    ++map[static_cast<std::size_t>(pos)];
  }
}

namespace {

struct Node {
  int parent = -1;
  int depth = 0;
  int order = 0;  // left-to-right position within this depth
};

struct ExplicitTree {
  std::vector<Node> nodes;
  std::vector<int> leaf_node;  // leaf index -> node id

  explicit ExplicitTree(const OrderedTree& t) {
    const int h = t.height();
    std::map<std::vector<int>, int> id_of_prefix;
    std::vector<int> per_depth(static_cast<std::size_t>(h) + 1, 0);
    nodes.push_back({-1, 0, per_depth[0]++});
    id_of_prefix[{}] = 0;
    for (int leaf = 0; leaf < t.size(); ++leaf) {
      std::vector<int> prefix;
      int parent = 0;
      for (int k = 0; k < h; ++k) {
        prefix.push_back(t.leaves[static_cast<std::size_t>(leaf)][static_cast<std::size_t>(k)]);
        auto it = id_of_prefix.find(prefix);
        if (it == id_of_prefix.end()) {
          nodes.push_back({parent, k + 1, per_depth[static_cast<std::size_t>(k) + 1]++});
          it = id_of_prefix.emplace(prefix, static_cast<int>(nodes.size()) - 1).first;
        }
        parent = it->second;
      }
      leaf_node.push_back(parent);
    }
  }

  int ancestor_at_depth(int leaf, int depth) const {
    int id = leaf_node[static_cast<std::size_t>(leaf)];
    while (nodes[static_cast<std::size_t>(id)].depth > depth) id = nodes[static_cast<std::size_t>(id)].parent;
    return id;
  }
};

}  // namespace

PriorityGraph graph_of_tree(const OrderedTree& t) {
  // Leaves are inserted left to right, so per-depth `order` numbers agree
  // with the child order; "to the left of" is an order comparison. The
  // level-i ancestor (i even) sits at node depth h - i/2; an odd priority i
  // compares the level-(i-1) ancestors strictly.
  ExplicitTree ex(t);
  const int h = t.height();
  std::vector<Edge> edges;
  for (int v = 0; v < t.size(); ++v)
    for (int w = 0; w < t.size(); ++w)
      for (int i = 0; i < t.d; ++i) {
        const int even = i - i % 2;
        const int depth = h - even / 2;
        const int a = ex.nodes[static_cast<std::size_t>(ex.ancestor_at_depth(v, depth))].order;
        const int b = ex.nodes[static_cast<std::size_t>(ex.ancestor_at_depth(w, depth))].order;
        const bool present = (i % 2 == 0) ? a <= b : a < b;
        if (present) edges.push_back({v, i, w});
      }
  return PriorityGraph(t.size(), t.d, std::move(edges));
}

std::uint64_t tree_count(int n, int h) {
  if (h == 0) return n == 1 ? 1 : 0;
  // forests[k]: ordered sequences of height-(h-1) trees with k leaves total
  std::vector<std::uint64_t> trees(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 1; k <= n; ++k) trees[static_cast<std::size_t>(k)] = tree_count(k, h - 1);
  std::vector<std::uint64_t> forests(static_cast<std::size_t>(n) + 1, 0);
  forests[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int c = 1; c <= k; ++c)
      forests[static_cast<std::size_t>(k)] +=
          trees[static_cast<std::size_t>(c)] * forests[static_cast<std::size_t>(k - c)];
  return forests[static_cast<std::size_t>(n)];
}

}  // namespace pgu::oracle
