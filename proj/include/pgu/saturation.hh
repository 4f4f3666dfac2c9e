#pragma once

#include "pgu/graph.hh"

namespace pgu {

struct SaturationOptions {
  // Re-run the global parity test for every candidate edge instead of the
  // incremental reachability check, and assert the two agree.
  bool global_recheck = false;
};

// Greedily add edges while the graph keeps satisfying parity, scanning
// candidates by priority descending, then source, then target. The result
// is the unique maximal super graph for that order; by maximality it is
// tree-like. Requires satisfies_parity(g) and even d.
PriorityGraph saturate(const PriorityGraph& g, const SaturationOptions& opts = {});

// Every absent triple would close an odd cycle. Requires satisfies_parity(g).
// Checked definitionally (insert and re-test), independent of the
// incremental path used by saturate.
bool is_maximal(const PriorityGraph& g);

}  // namespace pgu
