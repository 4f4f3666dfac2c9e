#include "pgu/tree.hh"

#include <algorithm>
#include <map>
#include <string>

namespace pgu {

namespace {

std::string triple_str(int v, int i, int w) {
  return "(" + std::to_string(v) + "," + std::to_string(i) + "," + std::to_string(w) + ")";
}

// Child indices under every node must form an initial segment 0..c-1; the
// branch-vector lists are canonical representatives of trees.
void validate_children(const std::vector<std::vector<int>>& leaves, std::size_t lo, std::size_t hi,
                       int pos, int height) {
  if (pos == height) {
    if (hi - lo != 1) throw PreconditionError("duplicate leaf branch vector");
    return;
  }
  int expected = 0;
  std::size_t group_start = lo;
  for (std::size_t k = lo; k <= hi; ++k) {
    if (k < hi && leaves[k][static_cast<std::size_t>(pos)] == expected) continue;
    if (k == group_start) throw PreconditionError("child indices must start at 0 and have no gaps");
    validate_children(leaves, group_start, k, pos + 1, height);
    group_start = k;
    ++expected;
    if (k < hi && leaves[k][static_cast<std::size_t>(pos)] != expected)
      throw PreconditionError("child indices must start at 0 and have no gaps");
  }
}

}  // namespace

OrderedTree::OrderedTree(int d_, std::vector<std::vector<int>> leaves_)
    : d(d_), leaves(std::move(leaves_)) {
  if (d < 2 || d % 2 != 0) throw PreconditionError("trees need a positive even priority count");
  if (leaves.empty()) throw PreconditionError("a tree has at least one leaf");
  const int h = d / 2;
  for (const auto& bv : leaves) {
    if (static_cast<int>(bv.size()) != h)
      throw PreconditionError("every leaf must sit at height " + std::to_string(h));
    for (int c : bv)
      if (c < 0) throw PreconditionError("negative child index");
  }
  for (std::size_t k = 1; k < leaves.size(); ++k)
    if (!(leaves[k - 1] < leaves[k]))
      throw PreconditionError("leaf branch vectors must be strictly increasing");
  validate_children(leaves, 0, leaves.size(), 0, h);
}

// ---- tree-like axioms ------------------------------------------------------

namespace {

// Adjacency rows as bit words, one matrix per priority.
struct BitRelation {
  int n;
  int words;
  std::vector<std::uint64_t> bits;  // row-major

  BitRelation(int n_, const PriorityGraph& g, int pri)
      : n(n_), words((n_ + 63) / 64), bits(static_cast<std::size_t>(n_) * static_cast<std::size_t>(words), 0) {
    for (const Edge& e : g.edges())
      if (e.pri == pri) set(e.from, e.to);
  }
  void set(int v, int w) {
    bits[static_cast<std::size_t>(v) * static_cast<std::size_t>(words) + static_cast<std::size_t>(w / 64)] |=
        1ULL << (w % 64);
  }
  bool get(int v, int w) const {
    return bits[static_cast<std::size_t>(v) * static_cast<std::size_t>(words) +
                static_cast<std::size_t>(w / 64)] >>
               (w % 64) &
           1;
  }
  const std::uint64_t* row(int v) const {
    return bits.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(words);
  }
};

}  // namespace

TreeLikeReport check_tree_like(const PriorityGraph& g) {
  const int d = g.priority_count();
  if (d % 2 != 0)
    throw PreconditionError("tree-like check needs an even priority count, got " + std::to_string(d));
  const int n = g.vertex_count();

  std::vector<BitRelation> rel;
  rel.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) rel.emplace_back(n, g, i);

  // 1. composition: E_i ; E_j subset of E_max(i,j)
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const BitRelation& a = rel[static_cast<std::size_t>(i)];
      const BitRelation& b = rel[static_cast<std::size_t>(j)];
      const BitRelation& c = rel[static_cast<std::size_t>(std::max(i, j))];
      for (int v = 0; v < n; ++v)
        for (int x = 0; x < n; ++x) {
          if (!a.get(v, x)) continue;
          for (int w = 0; w < a.words; ++w) {
            std::uint64_t bad = b.row(x)[w] & ~c.row(v)[w];
            if (bad) {
              int z = w * 64 + __builtin_ctzll(bad);
              return {false, "composition",
                      triple_str(v, i, x) + " and " + triple_str(x, j, z) + " without " +
                          triple_str(v, std::max(i, j), z)};
            }
          }
        }
    }

  // 2. for even i, E_i total
  for (int i = 0; i < d; i += 2)
    for (int v = 0; v < n; ++v)
      for (int w = v + 1; w < n; ++w)
        if (!rel[static_cast<std::size_t>(i)].get(v, w) && !rel[static_cast<std::size_t>(i)].get(w, v))
          return {false, "even-totality",
                  "neither " + triple_str(v, i, w) + " nor " + triple_str(w, i, v)};

  // 3. for even i, E_i reflexive
  for (int i = 0; i < d; i += 2)
    for (int v = 0; v < n; ++v)
      if (!rel[static_cast<std::size_t>(i)].get(v, v))
        return {false, "even-reflexivity", "missing " + triple_str(v, i, v)};

  // 4. for odd i, (v,i,v') iff (v,i-1,v') and not (v',i-1,v)
  for (int i = 1; i < d; i += 2)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) {
        bool odd = rel[static_cast<std::size_t>(i)].get(v, w);
        bool strict = rel[static_cast<std::size_t>(i - 1)].get(v, w) &&
                      !rel[static_cast<std::size_t>(i - 1)].get(w, v);
        if (odd != strict)
          return {false, "odd-definition",
                  triple_str(v, i, w) + (odd ? " present but not a strict E_" : " absent despite strict E_") +
                      std::to_string(i - 1) + " pair"};
      }

  return {};
}

bool is_tree_like(const PriorityGraph& g) { return check_tree_like(g).ok; }

// ---- tree <-> graph --------------------------------------------------------

namespace {

// Lexicographic comparison of the length-`len` prefixes (the level
// ancestors).
int prefix_cmp(const std::vector<int>& a, const std::vector<int>& b, int len) {
  for (int k = 0; k < len; ++k) {
    if (a[static_cast<std::size_t>(k)] != b[static_cast<std::size_t>(k)])
      return a[static_cast<std::size_t>(k)] < b[static_cast<std::size_t>(k)] ? -1 : 1;
  }
  return 0;
}

}  // namespace

PriorityGraph graph_of_tree(const OrderedTree& t) {
  const int n = t.size();
  const int h = t.height();
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      for (int i = 0; i < t.d; ++i) {
        const int len = h - i / 2;  // ancestor depth for level i (odd i uses level i-1)
        const int cmp = prefix_cmp(t.leaves[static_cast<std::size_t>(v)],
                                   t.leaves[static_cast<std::size_t>(w)], len);
        const bool present = (i % 2 == 0) ? cmp <= 0 : cmp < 0;
        if (present) edges.push_back({v, i, w});
      }
  return PriorityGraph(n, t.d, std::move(edges));
}

TreeOfGraph tree_of_graph(const PriorityGraph& g) {
  TreeLikeReport rep = check_tree_like(g);
  if (!rep.ok)
    throw PreconditionError("graph is not tree-like: axiom " + rep.axiom + " fails at " + rep.witness);
  const int n = g.vertex_count();
  if (n == 0) throw PreconditionError("an empty graph has no tree");
  const int d = g.priority_count();
  const int h = d / 2;

  // Sort vertices by E_0 (a total preorder; ties are E_0-equivalent
  // vertices, which collapse onto one leaf).
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return g.has_edge(a, 0, b) && !g.has_edge(b, 0, a);
  });

  // Branch entry at level i: the position of the vertex's E_i class within
  // its E_{i+2} class, counted along the sorted order.
  std::vector<std::vector<int>> vec(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(h), 0));
  for (int lvl = 0; lvl < h; ++lvl) {
    const int i = d - 2 - 2 * lvl;  // priority of this node level, topmost first
    int index = 0;
    for (std::size_t k = 1; k < order.size(); ++k) {
      int prev = order[k - 1], cur = order[k];
      bool same_parent = i + 2 >= d || (g.has_edge(prev, i + 2, cur) && g.has_edge(cur, i + 2, prev));
      bool same_class = g.has_edge(prev, i, cur) && g.has_edge(cur, i, prev);
      if (!same_parent)
        index = 0;
      else if (!same_class)
        ++index;
      vec[static_cast<std::size_t>(cur)][static_cast<std::size_t>(lvl)] = index;
    }
  }

  std::vector<std::vector<int>> leaves;
  std::vector<int> leaf_of_vertex(static_cast<std::size_t>(n), -1);
  for (int v : order) {
    const auto& bv = vec[static_cast<std::size_t>(v)];
    if (leaves.empty() || leaves.back() != bv) leaves.push_back(bv);
    leaf_of_vertex[static_cast<std::size_t>(v)] = static_cast<int>(leaves.size()) - 1;
  }
  return {OrderedTree(d, std::move(leaves)), std::move(leaf_of_vertex)};
}

// ---- embeddings ------------------------------------------------------------

namespace {

// Explicit node structure: nodes grouped by depth, each with its children
// and covered leaf range.
struct TreeNodes {
  struct Node {
    int lo, hi;                // leaf range [lo, hi)
    std::vector<int> children; // ids at depth+1
  };
  std::vector<std::vector<Node>> by_depth;  // index 0 = root level

  explicit TreeNodes(const OrderedTree& t) {
    const int h = t.height();
    by_depth.resize(static_cast<std::size_t>(h) + 1);
    build(t, 0, t.size(), 0);
  }

  int build(const OrderedTree& t, int lo, int hi, int depth) {
    Node node{lo, hi, {}};
    if (depth < t.height()) {
      // Leaves in [lo, hi) share the prefix [0, depth); group by the next
      // entry to recover the children (contiguous because leaves are sorted).
      int start = lo;
      while (start < hi) {
        const int val = t.leaves[static_cast<std::size_t>(start)][static_cast<std::size_t>(depth)];
        int end = start;
        while (end < hi &&
               t.leaves[static_cast<std::size_t>(end)][static_cast<std::size_t>(depth)] == val)
          ++end;
        node.children.push_back(build(t, start, end, depth + 1));
        start = end;
      }
    }
    by_depth[static_cast<std::size_t>(depth)].push_back(node);
    return static_cast<int>(by_depth[static_cast<std::size_t>(depth)].size()) - 1;
  }
};

struct EmbedSolver {
  const TreeNodes& a;
  const TreeNodes& b;
  int height;
  // can[depth][x][y]: subtree x of a embeds into subtree y of b
  std::vector<std::vector<std::vector<bool>>> can;

  EmbedSolver(const TreeNodes& a_, const TreeNodes& b_, int h) : a(a_), b(b_), height(h) {
    can.resize(static_cast<std::size_t>(h) + 1);
    for (int depth = h; depth >= 0; --depth) {
      auto& layer = can[static_cast<std::size_t>(depth)];
      layer.assign(a.by_depth[static_cast<std::size_t>(depth)].size(),
                   std::vector<bool>(b.by_depth[static_cast<std::size_t>(depth)].size(), false));
      for (std::size_t x = 0; x < layer.size(); ++x)
        for (std::size_t y = 0; y < layer[x].size(); ++y)
          layer[x][y] = depth == h || children_match(depth, static_cast<int>(x), static_cast<int>(y));
    }
  }

  // Order-preserving injection of x's children into y's children with
  // recursive embeddability.
  bool children_match(int depth, int x, int y) const {
    const auto& xs = a.by_depth[static_cast<std::size_t>(depth)][static_cast<std::size_t>(x)].children;
    const auto& ys = b.by_depth[static_cast<std::size_t>(depth)][static_cast<std::size_t>(y)].children;
    const std::size_t na = xs.size(), nb = ys.size();
    // f[q] = can match xs[p..] into ys[q..]; computed for p descending.
    std::vector<bool> f(nb + 1, true);
    for (std::size_t p = na; p-- > 0;) {
      std::vector<bool> next(nb + 1, false);
      for (std::size_t q = nb; q-- > 0;) {
        bool take = can[static_cast<std::size_t>(depth) + 1][static_cast<std::size_t>(xs[p])]
                       [static_cast<std::size_t>(ys[q])] &&
                    f[q + 1];
        next[q] = take || next[q + 1];
      }
      f = std::move(next);
    }
    return f[0];
  }

  // Reconstruct the leaf injection, preferring the earliest target child.
  void assign(int depth, int x, int y, std::vector<int>& leaf_map) const {
    const auto& xn = a.by_depth[static_cast<std::size_t>(depth)][static_cast<std::size_t>(x)];
    const auto& yn = b.by_depth[static_cast<std::size_t>(depth)][static_cast<std::size_t>(y)];
    if (depth == height) {
      leaf_map[static_cast<std::size_t>(xn.lo)] = yn.lo;
      return;
    }
    const auto& xs = xn.children;
    const auto& ys = yn.children;
    std::size_t q = 0;
    for (std::size_t p = 0; p < xs.size(); ++p) {
      for (;; ++q) {
        if (can[static_cast<std::size_t>(depth) + 1][static_cast<std::size_t>(xs[p])]
               [static_cast<std::size_t>(ys[q])] &&
            rest_matches(depth, xs, ys, p + 1, q + 1)) {
          assign(depth + 1, xs[p], ys[q], leaf_map);
          ++q;
          break;
        }
      }
    }
  }

  bool rest_matches(int depth, const std::vector<int>& xs, const std::vector<int>& ys, std::size_t p,
                    std::size_t q) const {
    if (p == xs.size()) return true;
    if (ys.size() - q < xs.size() - p) return false;
    for (std::size_t j = q; j < ys.size(); ++j)
      if (can[static_cast<std::size_t>(depth) + 1][static_cast<std::size_t>(xs[p])]
             [static_cast<std::size_t>(ys[j])] &&
          rest_matches(depth, xs, ys, p + 1, j + 1))
        return true;
    return false;
  }
};

}  // namespace

std::optional<LeafEmbedding> embeds(const OrderedTree& t, const OrderedTree& T) {
  if (t.d != T.d)
    throw PreconditionError("embedding between trees with different priority counts");
  TreeNodes a(t), b(T);
  EmbedSolver solver(a, b, t.height());
  int ra = static_cast<int>(a.by_depth[0].size()) - 1;  // single root each
  int rb = static_cast<int>(b.by_depth[0].size()) - 1;
  if (!solver.can[0][static_cast<std::size_t>(ra)][static_cast<std::size_t>(rb)]) return std::nullopt;
  LeafEmbedding leaf_map(static_cast<std::size_t>(t.size()), -1);
  solver.assign(0, ra, rb, leaf_map);
  return leaf_map;
}

// ---- enumeration and universality -------------------------------------------

std::uint64_t tree_space_size(int n, int d, const EnumerationLimits& lim) {
  if (n < 1) throw PreconditionError("trees need at least one leaf");
  if (d < 2 || d % 2 != 0) throw PreconditionError("trees need a positive even priority count");
  const std::uint64_t h = static_cast<std::uint64_t>(d) / 2;
  std::uint64_t count = 1;
  for (int k = 1; k < n; ++k) {
    if (count > lim.max_candidates / std::max<std::uint64_t>(h, 1))
      throw BudgetError("tree space exceeds the budget of " + std::to_string(lim.max_candidates));
    count *= h;
  }
  if (count > lim.max_candidates)
    throw BudgetError("tree space exceeds the budget of " + std::to_string(lim.max_candidates));
  return count;
}

namespace {

// All leaf-vector lists for trees with k leaves of height h.
std::vector<std::vector<std::vector<int>>> tree_shapes(int k, int h) {
  if (h == 0) {
    if (k != 1) return {};
    return {{{}}};  // one tree: a single leaf with the empty branch vector
  }
  std::vector<std::vector<std::vector<int>>> result;
  // Compositions k = c_1 + ... + c_r, children recursively enumerated.
  struct Rec {
    int h;
    std::vector<std::vector<std::vector<int>>>* out;
    std::vector<std::vector<int>> acc;
    void go(int remaining, int child_index) {
      if (remaining == 0) {
        out->push_back(acc);
        return;
      }
      for (int c = 1; c <= remaining; ++c) {
        for (const auto& sub : tree_shapes(c, h - 1)) {
          std::size_t mark = acc.size();
          for (const auto& bv : sub) {
            std::vector<int> full{child_index};
            full.insert(full.end(), bv.begin(), bv.end());
            acc.push_back(std::move(full));
          }
          go(remaining - c, child_index + 1);
          acc.resize(mark);
        }
      }
    }
  } rec{h, &result, {}};
  rec.go(k, 0);
  return result;
}

}  // namespace

std::vector<OrderedTree> enumerate_trees(int n, int d, const EnumerationLimits& lim) {
  tree_space_size(n, d, lim);
  auto shapes = tree_shapes(n, d / 2);
  std::sort(shapes.begin(), shapes.end());
  std::vector<OrderedTree> trees;
  trees.reserve(shapes.size());
  for (auto& leaves : shapes) trees.emplace_back(d, std::move(leaves));
  return trees;
}

UniversalTreeCheck check_universal_tree(const OrderedTree& T, int n, int d, bool exactly_n,
                                        const EnumerationLimits& lim) {
  if (T.d != d)
    throw PreconditionError("tree height does not match the requested priority count");
  for (int k = exactly_n ? n : 1; k <= n; ++k)
    for (const OrderedTree& t : enumerate_trees(k, d, lim))
      if (!embeds(t, T)) return {false, t};
  return {};
}

OrderedTree complete_universal_tree(int n, int d, const EnumerationLimits& lim) {
  if (n < 1) throw PreconditionError("trees need at least one leaf");
  if (d < 2 || d % 2 != 0) throw PreconditionError("trees need a positive even priority count");
  const int h = d / 2;
  std::uint64_t count = 1;
  for (int k = 0; k < h; ++k) {
    count *= static_cast<std::uint64_t>(n);
    if (count > lim.max_candidates)
      throw BudgetError("complete tree of " + std::to_string(count) + "+ leaves exceeds the budget");
  }
  std::vector<std::vector<int>> leaves;
  std::vector<int> bv(static_cast<std::size_t>(h), 0);
  for (;;) {
    leaves.push_back(bv);
    int pos = h - 1;
    while (pos >= 0 && bv[static_cast<std::size_t>(pos)] == n - 1) {
      bv[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++bv[static_cast<std::size_t>(pos)];
  }
  return OrderedTree(d, std::move(leaves));
}

OrderedTree minimal_universal_tree(int n, int d, const EnumerationLimits& lim) {
  // Everything with at most n leaves must embed; the complete tree is an
  // upper bound, so the ascending search terminates.
  std::vector<OrderedTree> required;
  for (int k = 1; k <= n; ++k) {
    auto ts = enumerate_trees(k, d, lim);
    required.insert(required.end(), ts.begin(), ts.end());
  }
  std::uint64_t examined = 0;
  const std::uint64_t bound = static_cast<std::uint64_t>(complete_universal_tree(n, d, lim).size());
  for (std::uint64_t size = 1; size <= bound; ++size) {
    for (const OrderedTree& candidate : enumerate_trees(static_cast<int>(size), d, lim)) {
      if (++examined > lim.max_candidates)
        throw BudgetError("minimal universal tree search exceeded the budget; "
                          "complete_universal_tree always succeeds");
      bool ok = true;
      for (const OrderedTree& t : required)
        if (!embeds(t, candidate)) {
          ok = false;
          break;
        }
      if (ok) return candidate;
    }
  }
  return complete_universal_tree(n, d, lim);  // unreachable: the bound tree passes
}

}  // namespace pgu
