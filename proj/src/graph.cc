#include "pgu/graph.hh"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <string>

namespace pgu {

PriorityGraph::PriorityGraph(int n, int d, std::vector<Edge> edges)
    : n_(n), d_(d), edges_(std::move(edges)) {
  if (n < 0) throw PreconditionError("vertex count must be non-negative");
  if (d < 1) throw PreconditionError("priority count must be positive");
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const Edge& e : edges_) {
    if (e.pri < 0 || e.pri >= d_)
      throw PreconditionError("edge priority " + std::to_string(e.pri) +
                              " outside [0, " + std::to_string(d_ - 1) + "]");
    if (e.from < 0 || e.from >= n_ || e.to < 0 || e.to >= n_)
      throw PreconditionError("edge endpoint outside the vertex set");
  }
}

bool PriorityGraph::has_edge(int from, int pri, int to) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{from, pri, to});
}

PriorityGraph PriorityGraph::with_edge(const Edge& e) const {
  std::vector<Edge> es = edges_;
  es.push_back(e);
  return PriorityGraph(n_, d_, std::move(es));
}

std::vector<std::vector<Edge>> PriorityGraph::out_adjacency() const {
  std::vector<std::vector<Edge>> adj(static_cast<std::size_t>(n_));
  for (const Edge& e : edges_) adj[static_cast<std::size_t>(e.from)].push_back(e);
  return adj;
}

int Path::max_priority() const {
  int m = -1;
  for (const Edge& e : steps) m = std::max(m, e.pri);
  return m;
}

std::vector<int> Path::word() const {
  std::vector<int> w;
  w.reserve(steps.size());
  for (const Edge& e : steps) w.push_back(e.pri);
  return w;
}

bool Path::valid_in(const PriorityGraph& g) const {
  int at = start;
  if (at < 0 || at >= g.vertex_count()) return false;
  for (const Edge& e : steps) {
    if (e.from != at || !g.has_edge(e)) return false;
    at = e.to;
  }
  return true;
}

namespace {

// Tarjan SCC over the subgraph of edges with priority <= cap.
std::vector<int> scc_ids(const PriorityGraph& g, int cap) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : g.edges())
    if (e.pri <= cap) adj[static_cast<std::size_t>(e.from)].push_back(e.to);

  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
      comp(static_cast<std::size_t>(n), -1);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;

  // Iterative DFS: frame = (vertex, next child position).
  std::vector<std::pair<int, std::size_t>> frames;
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    frames.push_back({root, 0});
    while (!frames.empty()) {
      auto& [v, child] = frames.back();
      auto sv = static_cast<std::size_t>(v);
      if (child == 0) {
        index[sv] = low[sv] = next_index++;
        stack.push_back(v);
        on_stack[sv] = true;
      }
      if (child < adj[sv].size()) {
        int w = adj[sv][child++];
        auto sw = static_cast<std::size_t>(w);
        if (index[sw] == -1) {
          frames.push_back({w, 0});
        } else if (on_stack[sw]) {
          low[sv] = std::min(low[sv], index[sw]);
        }
      } else {
        if (low[sv] == index[sv]) {
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            comp[static_cast<std::size_t>(w)] = next_comp;
            if (w == v) break;
          }
          ++next_comp;
        }
        frames.pop_back();
        if (!frames.empty()) {
          int parent = frames.back().first;
          auto sp = static_cast<std::size_t>(parent);
          low[sp] = std::min(low[sp], low[sv]);
        }
      }
    }
  }
  return comp;
}

// BFS path from src to dst using edges with priority <= cap; empty path when
// src == dst.
std::optional<Path> bounded_path(const PriorityGraph& g, int cap, int src, int dst) {
  const int n = g.vertex_count();
  if (src == dst) return Path{src, {}};
  std::vector<std::optional<Edge>> parent(static_cast<std::size_t>(n));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<int> queue{src};
  seen[static_cast<std::size_t>(src)] = true;
  auto adj = g.out_adjacency();
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (const Edge& e : adj[static_cast<std::size_t>(v)]) {
      if (e.pri > cap || seen[static_cast<std::size_t>(e.to)]) continue;
      seen[static_cast<std::size_t>(e.to)] = true;
      parent[static_cast<std::size_t>(e.to)] = e;
      if (e.to == dst) {
        std::vector<Edge> steps;
        int at = dst;
        while (at != src) {
          Edge pe = *parent[static_cast<std::size_t>(at)];
          steps.push_back(pe);
          at = pe.from;
        }
        std::reverse(steps.begin(), steps.end());
        return Path{src, std::move(steps)};
      }
      queue.push_back(e.to);
    }
  }
  return std::nullopt;
}

}  // namespace

bool satisfies_parity(const PriorityGraph& g) {
  for (int p = 1; p < g.priority_count(); p += 2) {
    bool has_p = false;
    for (const Edge& e : g.edges())
      if (e.pri == p) {
        has_p = true;
        break;
      }
    if (!has_p) continue;
    std::vector<int> comp = scc_ids(g, p);
    for (const Edge& e : g.edges())
      if (e.pri == p && comp[static_cast<std::size_t>(e.from)] == comp[static_cast<std::size_t>(e.to)])
        return false;
  }
  return true;
}

std::optional<Path> find_odd_cycle(const PriorityGraph& g) {
  for (int p = 1; p < g.priority_count(); p += 2) {
    std::vector<int> comp = scc_ids(g, p);
    for (const Edge& e : g.edges()) {
      if (e.pri != p) continue;
      if (comp[static_cast<std::size_t>(e.from)] != comp[static_cast<std::size_t>(e.to)]) continue;
      // Close the cycle inside the SCC: e then a <=p path back to e.from.
      // Vertices outside the SCC cannot occur on such a path.
      std::optional<Path> back = bounded_path(g, p, e.to, e.from);
      Path cycle{e.from, {e}};
      cycle.steps.insert(cycle.steps.end(), back->steps.begin(), back->steps.end());
      return cycle;
    }
  }
  return std::nullopt;
}

bool is_homomorphism(const PriorityGraph& g, const PriorityGraph& h, const VertexMap& m) {
  if (g.priority_count() != h.priority_count())
    throw PreconditionError("homomorphism between graphs with different priority counts");
  if (static_cast<int>(m.size()) != g.vertex_count())
    throw PreconditionError("vertex map is not total on the source graph");
  for (int img : m)
    if (img < 0 || img >= h.vertex_count())
      throw PreconditionError("vertex map image outside the target graph");
  for (const Edge& e : g.edges())
    if (!h.has_edge(m[static_cast<std::size_t>(e.from)], e.pri, m[static_cast<std::size_t>(e.to)]))
      return false;
  return true;
}

// Defined in tree.cc; declared here to order homomorphism targets.
bool is_tree_like(const PriorityGraph& g);

std::optional<VertexMap> find_homomorphism(const PriorityGraph& g, const PriorityGraph& h) {
  if (g.priority_count() != h.priority_count())
    throw PreconditionError("homomorphism between graphs with different priority counts");
  const int n = g.vertex_count();
  const int hn = h.vertex_count();
  if (n == 0) return VertexMap{};
  if (hn == 0) return std::nullopt;

  // Try target vertices in E_0 order when the target is tree-like: the E_0
  // preorder sorts candidates so that dead assignments fail early.
  std::vector<int> target_order(static_cast<std::size_t>(hn));
  for (int i = 0; i < hn; ++i) target_order[static_cast<std::size_t>(i)] = i;
  if (h.priority_count() % 2 == 0 && is_tree_like(h)) {
    std::stable_sort(target_order.begin(), target_order.end(), [&](int a, int b) {
      bool ab = h.has_edge(a, 0, b), ba = h.has_edge(b, 0, a);
      return ab && !ba;
    });
  }

  // Source vertices in descending degree (most constrained first).
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (const Edge& e : g.edges()) {
    ++degree[static_cast<std::size_t>(e.from)];
    ++degree[static_cast<std::size_t>(e.to)];
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)]; });

  // Edges between a vertex and earlier-assigned vertices, checked on assign.
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  std::vector<std::vector<Edge>> constraints(static_cast<std::size_t>(n));
  for (const Edge& e : g.edges()) {
    int r = std::max(rank[static_cast<std::size_t>(e.from)], rank[static_cast<std::size_t>(e.to)]);
    constraints[static_cast<std::size_t>(r)].push_back(e);
  }

  VertexMap map(static_cast<std::size_t>(n), -1);
  std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
  int depth = 0;
  while (depth >= 0) {
    if (depth == n) return map;
    auto sd = static_cast<std::size_t>(depth);
    bool advanced = false;
    while (choice[sd] < target_order.size()) {
      int candidate = target_order[choice[sd]++];
      map[static_cast<std::size_t>(order[sd])] = candidate;
      bool ok = true;
      for (const Edge& e : constraints[sd]) {
        if (!h.has_edge(map[static_cast<std::size_t>(e.from)], e.pri, map[static_cast<std::size_t>(e.to)])) {
          ok = false;
          break;
        }
      }
      if (ok) {
        ++depth;
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      map[static_cast<std::size_t>(order[sd])] = -1;
      choice[sd] = 0;
      --depth;
    }
  }
  return std::nullopt;
}

std::uint64_t graph_space_size(int n, int d, const EnumerationLimits& lim) {
  const std::uint64_t bits = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) *
                             static_cast<std::uint64_t>(d);
  if (bits >= 63)
    throw BudgetError("graph space 2^" + std::to_string(bits) + " is not enumerable");
  const std::uint64_t count = 1ULL << bits;
  if (count > lim.max_candidates)
    throw BudgetError("graph space of " + std::to_string(count) +
                      " candidates exceeds the budget of " + std::to_string(lim.max_candidates) +
                      " (raise --budget or use sampling)");
  return count;
}

PriorityGraph graph_from_mask(int n, int d, std::uint64_t mask) {
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < d; ++i)
      for (int w = 0; w < n; ++w) {
        const int bit = (v * d + i) * n + w;
        if (mask >> bit & 1) edges.push_back({v, i, w});
      }
  return PriorityGraph(n, d, std::move(edges));
}

std::uint64_t for_each_graph(int n, int d, bool parity_only,
                             const std::function<bool(std::uint64_t, const PriorityGraph&)>& fn,
                             const EnumerationLimits& lim) {
  const std::uint64_t count = graph_space_size(n, d, lim);
  std::uint64_t visited = 0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    PriorityGraph g = graph_from_mask(n, d, mask);
    if (parity_only && !satisfies_parity(g)) continue;
    ++visited;
    if (!fn(mask, g)) break;
  }
  return visited;
}

const std::vector<PriorityGraph>& parity_graph_pool(int n, int d, const EnumerationLimits& lim) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<PriorityGraph>> pools;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(n, d);
  auto it = pools.find(key);
  if (it == pools.end()) {
    std::vector<PriorityGraph> pool;
    for_each_graph(
        n, d, /*parity_only=*/true,
        [&](std::uint64_t, const PriorityGraph& g) {
          pool.push_back(g);
          return true;
        },
        lim);
    it = pools.emplace(key, std::move(pool)).first;
  }
  return it->second;
}

PriorityGraph sample_graph(int n, int d, Rng& rng) {
  // Edge density 1/4 keeps small samples interesting without drowning in
  // odd cycles.
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < d; ++i)
      for (int w = 0; w < n; ++w)
        if (rng.chance(1, 4)) edges.push_back({v, i, w});
  return PriorityGraph(n, d, std::move(edges));
}

PriorityGraph sample_parity_graph(int n, int d, Rng& rng) {
  PriorityGraph g = sample_graph(n, d, rng);
  for (;;) {
    std::optional<Path> cycle = find_odd_cycle(g);
    if (!cycle) return g;
    // Drop one maximal-priority edge of the cycle, chosen by seed.
    std::vector<Edge> culprits;
    for (const Edge& e : cycle->steps)
      if (e.pri == cycle->max_priority()) culprits.push_back(e);
    const Edge victim = culprits[rng.below(culprits.size())];
    std::vector<Edge> rest;
    for (const Edge& e : g.edges())
      if (!(e == victim)) rest.push_back(e);
    g = PriorityGraph(n, d, std::move(rest));
  }
}

}  // namespace pgu
