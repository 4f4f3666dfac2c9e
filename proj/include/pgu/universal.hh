#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgu/automaton.hh"
#include "pgu/graph.hh"
#include "pgu/tree.hh"

namespace pgu {

struct UniversalCheckOptions {
  enum class Mode { Exhaustive, Sample };
  Mode mode = Mode::Exhaustive;
  std::uint64_t seed = 0;
  int sample_count = 0;
  EnumerationLimits limits;
  int jobs = 1;
};

struct UniversalGraphCheck {
  bool ok = true;
  bool parity_failure = false;               // the candidate itself has an odd cycle
  std::optional<PriorityGraph> counterexample;  // parity graph with no homomorphism in
  std::uint64_t graphs_checked = 0;
};

// U satisfies parity and every parity-satisfying graph on at most n vertices
// maps homomorphically into it.
UniversalGraphCheck check_universal_graph(const PriorityGraph& u, int n, int d,
                                          const UniversalCheckOptions& opts = {});

// tree_of_graph(saturate(u)). Sizes are preserved; E_0-equivalent vertices
// in the saturation (possible only for non-minimal inputs) would shrink the
// tree and raise an error instead.
OrderedTree universal_tree_from_universal_graph(const PriorityGraph& u);

struct FromAutomatonOptions {
  bool verify_separating = true;  // exhaustive check before converting
  EnumerationLimits limits;
};

// saturate(graph_of_automaton(a)): same carrier, universal when a is
// (n,d)-separating. Throws with the separation report when verification is
// on and fails.
PriorityGraph universal_graph_from_automaton(const SafetyAutomaton& a, int n, int d,
                                             const FromAutomatonOptions& opts = {});

// The two-step route: the identity of g into its saturation (a tree), then
// the embedding of that tree into T. Requires satisfies_parity(g) and a
// target embedding every tree with |g| leaves.
VertexMap homomorphism_into_universal(const PriorityGraph& g, const OrderedTree& t);

// States reachable along some run over some path of h, propagated to a
// fixpoint; the image vertex is the E_0-maximum of that set inside the
// saturated automaton graph. Works for nondeterministic automata as well
// (the run set replaces the single run). `saturated` must be
// saturate(graph_of_automaton(a)).
VertexMap homomorphism_via_automaton(const PriorityGraph& h, const SafetyAutomaton& a,
                                     const PriorityGraph& saturated);

// Smallest universal graph by ascending vertex count. Sizes below the
// minimal universal tree's are refuted by enumeration; at that size the
// tree's own graph is the witness (verified exhaustively).
PriorityGraph minimal_universal_graph(int n, int d, const EnumerationLimits& lim = {}, int jobs = 1);

// Minimal sizes of the three object kinds plus the size trace of the
// construction cycle tree -> automaton -> graph -> tree.
struct EquivalenceLedger {
  int n = 0;
  int d = 0;
  std::optional<int> tree_size;
  std::optional<int> det_automaton_size;
  std::optional<int> nondet_automaton_size;
  std::optional<int> graph_size;
  std::optional<OrderedTree> tree;
  std::optional<SafetyAutomaton> det_automaton;
  std::optional<PriorityGraph> graph;
  std::vector<int> chain_sizes;  // tree, automaton, graph, tree again
  std::vector<std::string> budget_notes;

  bool complete() const {
    return tree_size && det_automaton_size && nondet_automaton_size && graph_size;
  }
  bool sizes_equal() const {
    return complete() && *tree_size == *det_automaton_size &&
           *tree_size == *nondet_automaton_size && *tree_size == *graph_size;
  }
};

EquivalenceLedger theorem1_ledger(int n, int d, const EnumerationLimits& lim = {}, int jobs = 1);

}  // namespace pgu
