#include "pgu/universal.hh"

#include <algorithm>
#include <deque>
#include <string>

#include "pgu/saturation.hh"

namespace pgu {

UniversalGraphCheck check_universal_graph(const PriorityGraph& u, int n, int d,
                                          const UniversalCheckOptions& opts) {
  UniversalGraphCheck result;
  if (u.priority_count() != d)
    throw PreconditionError("universal-graph check with mismatched priority count");
  if (!satisfies_parity(u)) {
    result.ok = false;
    result.parity_failure = true;
    return result;
  }
  auto try_graph = [&](const PriorityGraph& g) {
    ++result.graphs_checked;
    if (!find_homomorphism(g, u)) {
      result.ok = false;
      result.counterexample = g;
      return false;
    }
    return true;
  };
  if (opts.mode == UniversalCheckOptions::Mode::Exhaustive) {
    for (const PriorityGraph& g : parity_graph_pool(n, d, opts.limits))
      if (!try_graph(g)) break;
  } else {
    if (opts.sample_count <= 0) throw PreconditionError("sample mode needs a positive count");
    Rng rng(opts.seed);
    for (int k = 0; k < opts.sample_count; ++k)
      if (!try_graph(sample_parity_graph(n, d, rng))) break;
  }
  return result;
}

OrderedTree universal_tree_from_universal_graph(const PriorityGraph& u) {
  TreeOfGraph result = tree_of_graph(saturate(u));
  if (result.collapsed())
    throw Error("saturation identified E_0-equivalent vertices; the tree would be smaller "
                "than the graph (the input was not a minimal universal graph)");
  return result.tree;
}

PriorityGraph universal_graph_from_automaton(const SafetyAutomaton& a, int n, int d,
                                             const FromAutomatonOptions& opts) {
  if (opts.verify_separating) {
    SeparationOptions sep;
    sep.limits = opts.limits;
    SeparationReport report = is_separating(a, n, d, sep);
    if (!report.separating) {
      std::string what = "automaton is not separating: ";
      what += report.kind == SeparationReport::Kind::AcceptedOddLasso
                  ? "it accepts a word with an odd loop"
                  : "it misses a path of a parity graph";
      throw PreconditionError(what);
    }
  }
  PriorityGraph base = graph_of_automaton(a);
  PriorityGraph result = saturate(base);
  if (result.vertex_count() != a.state_count())
    throw Error("saturation changed the carrier size");
  return result;
}

VertexMap homomorphism_into_universal(const PriorityGraph& g, const OrderedTree& t) {
  if (g.priority_count() != t.d)
    throw PreconditionError("graph and tree have different priority counts");
  if (auto cycle = find_odd_cycle(g))
    throw PreconditionError("source graph has an odd cycle through priority " +
                            std::to_string(cycle->max_priority()));
  if (g.vertex_count() == 0) return {};

  TreeOfGraph saturated = tree_of_graph(saturate(g));
  std::optional<LeafEmbedding> embedding = embeds(saturated.tree, t);
  if (!embedding)
    throw PreconditionError("the saturated source does not embed into the target tree; "
                            "the tree is not universal for graphs of this size");
  VertexMap map(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v)
    map[static_cast<std::size_t>(v)] =
        (*embedding)[static_cast<std::size_t>(saturated.leaf_of_vertex[static_cast<std::size_t>(v)])];
  if (!is_homomorphism(g, graph_of_tree(t), map))
    throw Error("composed map failed the homomorphism check");
  return map;
}

VertexMap homomorphism_via_automaton(const PriorityGraph& h, const SafetyAutomaton& a,
                                     const PriorityGraph& saturated) {
  if (h.priority_count() != a.alphabet_size())
    throw PreconditionError("graph and automaton have different priority counts");
  if (saturated.vertex_count() != a.state_count())
    throw PreconditionError("saturated graph does not match the automaton carrier");

  // Relaxation over (vertex, state): the empty path puts the initial state
  // at every vertex, and an edge (u,i,v) transports every state of u through
  // the letter i.
  const int n = h.vertex_count();
  const int k = a.state_count();
  std::vector<bool> reached(static_cast<std::size_t>(n) * static_cast<std::size_t>(k), false);
  std::deque<std::pair<int, int>> queue;
  auto mark = [&](int v, int q) {
    auto idx = static_cast<std::size_t>(v) * static_cast<std::size_t>(k) + static_cast<std::size_t>(q);
    if (!reached[idx]) {
      reached[idx] = true;
      queue.push_back({v, q});
    }
  };
  for (int v = 0; v < n; ++v) mark(v, a.initial());
  auto adj = h.out_adjacency();
  while (!queue.empty()) {
    auto [v, q] = queue.front();
    queue.pop_front();
    for (const Edge& e : adj[static_cast<std::size_t>(v)])
      for (int to : a.successors(q, e.pri)) mark(e.to, to);
  }

  VertexMap map(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    int best = -1;
    for (int q = 0; q < k; ++q) {
      if (!reached[static_cast<std::size_t>(v) * static_cast<std::size_t>(k) + static_cast<std::size_t>(q)])
        continue;
      if (best == -1 || (saturated.has_edge(best, 0, q) && !saturated.has_edge(q, 0, best))) best = q;
    }
    if (best == -1)
      throw PreconditionError("a path of the source dies in the automaton; the source must "
                              "satisfy parity and the automaton must be separating");
    map[static_cast<std::size_t>(v)] = best;
  }
  return map;
}

PriorityGraph minimal_universal_graph(int n, int d, const EnumerationLimits& lim, int jobs) {
  (void)jobs;
  const OrderedTree witness_tree = minimal_universal_tree(n, d, lim);
  const int upper = witness_tree.size();

  std::vector<std::size_t> cache;  // pool indices of refuting graphs
  const std::vector<PriorityGraph>& pool = parity_graph_pool(n, d, lim);
  auto refuted = [&](const PriorityGraph& candidate) {
    if (!satisfies_parity(candidate)) return true;
    for (std::size_t idx : cache)
      if (!find_homomorphism(pool[idx], candidate)) return true;
    for (std::size_t idx = 0; idx < pool.size(); ++idx)
      if (!find_homomorphism(pool[idx], candidate)) {
        cache.push_back(idx);
        return true;
      }
    return false;
  };

  for (int k = 1; k < upper; ++k) {
    const std::uint64_t space = graph_space_size(k, d, lim);
    for (std::uint64_t mask = 0; mask < space; ++mask)
      if (!refuted(graph_from_mask(k, d, mask))) return graph_from_mask(k, d, mask);
  }

  PriorityGraph witness = graph_of_tree(witness_tree);
  UniversalCheckOptions check;
  check.limits = lim;
  if (!check_universal_graph(witness, n, d, check).ok)
    throw Error("tree-built graph failed the universality check");
  return witness;
}

EquivalenceLedger theorem1_ledger(int n, int d, const EnumerationLimits& lim, int jobs) {
  EquivalenceLedger ledger;
  ledger.n = n;
  ledger.d = d;

  try {
    OrderedTree tree = minimal_universal_tree(n, d, lim);
    ledger.tree = tree;
    ledger.tree_size = tree.size();
  } catch (const BudgetError& e) {
    ledger.budget_notes.push_back(std::string("universal tree: ") + e.what());
  }
  try {
    SafetyAutomaton det = minimal_separating_automaton(n, d, /*deterministic_only=*/true, lim, jobs);
    ledger.det_automaton = det;
    ledger.det_automaton_size = det.state_count();
  } catch (const BudgetError& e) {
    ledger.budget_notes.push_back(std::string("deterministic automaton: ") + e.what());
  }
  try {
    SafetyAutomaton nondet =
        minimal_separating_automaton(n, d, /*deterministic_only=*/false, lim, jobs);
    ledger.nondet_automaton_size = nondet.state_count();
  } catch (const BudgetError& e) {
    ledger.budget_notes.push_back(std::string("nondeterministic automaton: ") + e.what());
  }
  try {
    PriorityGraph graph = minimal_universal_graph(n, d, lim, jobs);
    ledger.graph = graph;
    ledger.graph_size = graph.vertex_count();
  } catch (const BudgetError& e) {
    ledger.budget_notes.push_back(std::string("universal graph: ") + e.what());
  }

  // Size trace of the full construction cycle, each artifact verified.
  if (ledger.tree) {
    ledger.chain_sizes.push_back(ledger.tree->size());
    SafetyAutomaton automaton = automaton_from_tree(*ledger.tree);
    ledger.chain_sizes.push_back(automaton.state_count());
    FromAutomatonOptions from;
    from.limits = lim;
    PriorityGraph graph = universal_graph_from_automaton(automaton, n, d, from);
    ledger.chain_sizes.push_back(graph.vertex_count());
    OrderedTree back = universal_tree_from_universal_graph(graph);
    if (!check_universal_tree(back, n, d, false, lim).ok)
      throw Error("the cycled tree lost universality");
    ledger.chain_sizes.push_back(back.size());
  }
  return ledger;
}

}  // namespace pgu
