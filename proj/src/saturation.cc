#include "pgu/saturation.hh"

#include <algorithm>
#include <deque>
#include <string>

namespace pgu {

namespace {

std::string path_str(const Path& p) {
  std::string s = "cycle:";
  for (const Edge& e : p.steps)
    s += " (" + std::to_string(e.from) + "," + std::to_string(e.pri) + "," + std::to_string(e.to) + ")";
  return s;
}

// Mutable adjacency used during saturation.
struct Work {
  int n;
  int d;
  std::vector<std::vector<std::pair<int, int>>> out;  // (pri, to) per vertex
  std::vector<std::vector<std::pair<int, int>>> in;   // (pri, from) per vertex

  Work(const PriorityGraph& g)
      : n(g.vertex_count()), d(g.priority_count()),
        out(static_cast<std::size_t>(n)), in(static_cast<std::size_t>(n)) {
    for (const Edge& e : g.edges()) add(e);
  }
  void add(const Edge& e) {
    out[static_cast<std::size_t>(e.from)].push_back({e.pri, e.to});
    in[static_cast<std::size_t>(e.to)].push_back({e.pri, e.from});
  }

  // Vertices reachable from src over edges with priority <= cap (forward) —
  // `extra` is a tentative edge taking part in the search.
  std::vector<bool> reach(int src, int cap, const Edge& extra, bool forward) const {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::deque<int> queue{src};
    seen[static_cast<std::size_t>(src)] = true;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      const auto& nbrs = forward ? out[static_cast<std::size_t>(v)] : in[static_cast<std::size_t>(v)];
      for (auto [pri, w] : nbrs) {
        if (pri <= cap && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          queue.push_back(w);
        }
      }
      if (extra.pri <= cap) {
        int from = forward ? extra.from : extra.to;
        int to = forward ? extra.to : extra.from;
        if (v == from && !seen[static_cast<std::size_t>(to)]) {
          seen[static_cast<std::size_t>(to)] = true;
          queue.push_back(to);
        }
      }
    }
    return seen;
  }

  // Does inserting e close a cycle of odd maximal priority? Only cycles
  // through e are new, so it suffices to look, for each odd p >= pri(e), for
  // a p-edge on a <=p path from e's head back to its tail (with p = pri(e)
  // the inserted edge itself is that p-edge).
  bool creates_odd_cycle(const Edge& e) const {
    for (int p = e.pri % 2 == 1 ? e.pri : e.pri + 1; p < d; p += 2) {
      std::vector<bool> fwd = reach(e.to, p, e, true);
      if (p == e.pri && fwd[static_cast<std::size_t>(e.from)]) return true;
      if (p > e.pri) {
        std::vector<bool> bwd = reach(e.from, p, e, false);
        for (int v = 0; v < n; ++v) {
          if (!fwd[static_cast<std::size_t>(v)]) continue;
          for (auto [pri, w] : out[static_cast<std::size_t>(v)])
            if (pri == p && bwd[static_cast<std::size_t>(w)]) return true;
        }
      }
    }
    return false;
  }

  PriorityGraph to_graph() const {
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v)
      for (auto [pri, w] : out[static_cast<std::size_t>(v)]) edges.push_back({v, pri, w});
    return PriorityGraph(n, d, std::move(edges));
  }
};

}  // namespace

PriorityGraph saturate(const PriorityGraph& g, const SaturationOptions& opts) {
  if (g.priority_count() % 2 != 0)
    throw PreconditionError("saturation needs an even priority count");
  if (auto cycle = find_odd_cycle(g))
    throw PreconditionError("saturation input must satisfy parity; " + path_str(*cycle));

  Work work(g);
  // A skipped edge stays unsafe forever (odd-cycle creation is monotone in
  // the edge set), so one pass over the fixed order reaches the fixpoint.
  for (int p = g.priority_count() - 1; p >= 0; --p)
    for (int v = 0; v < g.vertex_count(); ++v)
      for (int w = 0; w < g.vertex_count(); ++w) {
        Edge e{v, p, w};
        bool present = false;
        for (auto [pri, to] : work.out[static_cast<std::size_t>(v)])
          if (pri == p && to == w) {
            present = true;
            break;
          }
        if (present) continue;
        bool unsafe = work.creates_odd_cycle(e);
        if (opts.global_recheck) {
          bool global_unsafe = !satisfies_parity(work.to_graph().with_edge(e));
          if (unsafe != global_unsafe)
            throw Error("incremental and global odd-cycle checks disagree on (" +
                        std::to_string(v) + "," + std::to_string(p) + "," + std::to_string(w) + ")");
        }
        if (!unsafe) work.add(e);
      }
  return work.to_graph();
}

bool is_maximal(const PriorityGraph& g) {
  if (!satisfies_parity(g))
    throw PreconditionError("maximality is defined for graphs satisfying parity");
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int p = 0; p < g.priority_count(); ++p)
      for (int w = 0; w < g.vertex_count(); ++w) {
        if (g.has_edge(v, p, w)) continue;
        if (satisfies_parity(g.with_edge({v, p, w}))) return false;
      }
  return true;
}

}  // namespace pgu
