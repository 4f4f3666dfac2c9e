#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pgu/errors.hh"
#include "pgu/rng.hh"

namespace pgu {

// A directed edge labelled with a priority in [0, d-1].
struct Edge {
  int from = 0;
  int pri = 0;
  int to = 0;
  auto operator<=>(const Edge&) const = default;
};

// A finite graph over vertices 0..n-1 with d priority-labelled edge
// relations. Vertices carry their insertion order (the integer id), so
// enumerations, min/max selections and serialized output are deterministic.
// Values are immutable after construction and safe to share across threads.
class PriorityGraph {
 public:
  PriorityGraph(int n, int d, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int priority_count() const { return d_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(int from, int pri, int to) const;
  bool has_edge(const Edge& e) const { return has_edge(e.from, e.pri, e.to); }

  // Value-semantic edge insertion (no-op if already present).
  PriorityGraph with_edge(const Edge& e) const;

  // Outgoing edges per vertex, in (pri, to) order.
  std::vector<std::vector<Edge>> out_adjacency() const;

  bool operator==(const PriorityGraph&) const = default;

 private:
  int n_;
  int d_;
  std::vector<Edge> edges_;  // sorted, duplicate-free
};

// A chain of edges; consecutive steps share endpoints. An empty-step path is
// just its start vertex.
struct Path {
  int start = 0;
  std::vector<Edge> steps;

  int end() const { return steps.empty() ? start : steps.back().to; }
  bool is_cycle() const { return end() == start; }
  int max_priority() const;            // -1 for the empty path
  std::vector<int> word() const;       // the priority projection
  bool valid_in(const PriorityGraph& g) const;
};

// Total map from the vertices of a source graph into a target graph,
// indexed by source vertex id.
using VertexMap = std::vector<int>;

// True iff every cycle has even maximal priority: for each odd p, the
// subgraph of edges with priority <= p has no cycle through a p-edge.
bool satisfies_parity(const PriorityGraph& g);

// A cycle of odd maximal priority, iff one exists.
std::optional<Path> find_odd_cycle(const PriorityGraph& g);

// True iff every edge (v,i,v') of g has image edge (m(v),i,m(v')) in h.
// Throws PreconditionError when the priority ranges differ or m is not total.
bool is_homomorphism(const PriorityGraph& g, const PriorityGraph& h, const VertexMap& m);

// Backtracking search for a homomorphism g -> h. When h is tree-like the
// candidate targets are tried in E_0 order (fail-fast); the result is
// correct for any order.
std::optional<VertexMap> find_homomorphism(const PriorityGraph& g, const PriorityGraph& h);

// ---- exhaustive / sampled generation -------------------------------------

struct EnumerationLimits {
  std::uint64_t max_candidates = (1ULL << 22);
};

// Number of labelled graphs on exactly n vertices: 2^(d*n^2).
// Throws BudgetError when the count does not fit the limit (or 64 bits).
std::uint64_t graph_space_size(int n, int d, const EnumerationLimits& lim);

// Bijection between bitmasks and labelled graphs on n vertices. Bit
// ((v*d)+i)*n+v' encodes edge (v,i,v').
PriorityGraph graph_from_mask(int n, int d, std::uint64_t mask);

// Calls fn for every labelled graph on n vertices (all edge subsets, mask
// ascending), optionally restricted to graphs satisfying parity. Smaller
// graphs occur as the masks with isolated vertices. fn returns false to stop
// early. Returns the number of graphs visited.
std::uint64_t for_each_graph(int n, int d, bool parity_only,
                             const std::function<bool(std::uint64_t, const PriorityGraph&)>& fn,
                             const EnumerationLimits& lim = {});

// Memoized list of the parity-satisfying labelled graphs on n vertices, in
// mask order. Shared by the exhaustive verifiers, which scan it repeatedly.
const std::vector<PriorityGraph>& parity_graph_pool(int n, int d, const EnumerationLimits& lim = {});

// Seeded uniform draw over the labelled-graph space.
PriorityGraph sample_graph(int n, int d, Rng& rng);

// Seeded draw of a parity-satisfying graph: sample, then delete a maximal
// edge of each remaining odd cycle until parity holds.
PriorityGraph sample_parity_graph(int n, int d, Rng& rng);

}  // namespace pgu
