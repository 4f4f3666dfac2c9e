#include "pgu/automaton.hh"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

namespace pgu {

SafetyAutomaton::SafetyAutomaton(int d, int n_states, int initial, std::vector<Transition> transitions)
    : d_(d), n_states_(n_states), initial_(initial), transitions_(std::move(transitions)) {
  if (d_ < 1) throw PreconditionError("alphabet size must be positive");
  if (n_states_ < 1) throw PreconditionError("an automaton has at least its initial state");
  if (initial_ < 0 || initial_ >= n_states_) throw PreconditionError("initial state out of range");
  for (const Transition& t : transitions_) {
    if (t.letter < 0 || t.letter >= d_) throw PreconditionError("transition letter out of range");
    if (t.from < 0 || t.from >= n_states_ || t.to < 0 || t.to >= n_states_)
      throw PreconditionError("transition state out of range");
  }

  // Trim to the states reachable from the initial one, keeping relative order.
  std::vector<bool> reachable(static_cast<std::size_t>(n_states_), false);
  reachable[static_cast<std::size_t>(initial_)] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Transition& t : transitions_)
      if (reachable[static_cast<std::size_t>(t.from)] && !reachable[static_cast<std::size_t>(t.to)]) {
        reachable[static_cast<std::size_t>(t.to)] = true;
        changed = true;
      }
  }
  std::vector<int> renumber(static_cast<std::size_t>(n_states_), -1);
  int next = 0;
  for (int q = 0; q < n_states_; ++q)
    if (reachable[static_cast<std::size_t>(q)]) renumber[static_cast<std::size_t>(q)] = next++;
  if (next != n_states_) {
    std::vector<Transition> kept;
    for (const Transition& t : transitions_)
      if (reachable[static_cast<std::size_t>(t.from)] && reachable[static_cast<std::size_t>(t.to)])
        kept.push_back({renumber[static_cast<std::size_t>(t.from)], t.letter,
                        renumber[static_cast<std::size_t>(t.to)]});
    transitions_ = std::move(kept);
    initial_ = renumber[static_cast<std::size_t>(initial_)];
    n_states_ = next;
  }

  std::sort(transitions_.begin(), transitions_.end());
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());

  succ_.assign(static_cast<std::size_t>(n_states_) * static_cast<std::size_t>(d_), {});
  for (const Transition& t : transitions_)
    succ_[static_cast<std::size_t>(t.from) * static_cast<std::size_t>(d_) +
          static_cast<std::size_t>(t.letter)]
        .push_back(t.to);
  deterministic_ = true;
  for (const auto& targets : succ_)
    if (targets.size() > 1) {
      deterministic_ = false;
      break;
    }
}

const std::vector<int>& SafetyAutomaton::successors(int state, int letter) const {
  return succ_[static_cast<std::size_t>(state) * static_cast<std::size_t>(d_) +
               static_cast<std::size_t>(letter)];
}

std::optional<int> SafetyAutomaton::det_step(int state, int letter) const {
  const auto& targets = successors(state, letter);
  if (targets.empty()) return std::nullopt;
  return targets.front();
}

std::vector<int> run_word(const SafetyAutomaton& a, std::span<const int> word) {
  std::vector<int> current{a.initial()};
  for (int letter : word) {
    if (letter < 0 || letter >= a.alphabet_size())
      throw PreconditionError("letter " + std::to_string(letter) + " outside the alphabet");
    std::vector<int> next;
    for (int q : current)
      for (int to : a.successors(q, letter)) next.push_back(to);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
    if (current.empty()) break;
  }
  return current;
}

SafetyAutomaton automaton_from_tree(const OrderedTree& t) {
  // Leaves are sorted, so the E_0 order of the tree's graph is the index
  // order; the E_0-minimum is leaf 0 and minima are plain min indices.
  PriorityGraph g = graph_of_tree(t);
  std::vector<Transition> transitions;
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int i = 0; i < g.priority_count(); ++i)
      for (int w = 0; w < g.vertex_count(); ++w)
        if (g.has_edge(v, i, w)) {
          transitions.push_back({v, i, w});
          break;
        }
  return SafetyAutomaton(t.d, g.vertex_count(), 0, std::move(transitions));
}

PriorityGraph graph_of_automaton(const SafetyAutomaton& a) {
  std::vector<Edge> edges;
  for (const Transition& t : a.transitions()) edges.push_back({t.from, t.letter, t.to});
  return PriorityGraph(a.state_count(), a.alphabet_size(), std::move(edges));
}

namespace {

// Shortest letter path between states within the restriction to letters
// <= cap (cap = d for no restriction). Returns nullopt when unreachable.
std::optional<std::vector<int>> letter_path(const SafetyAutomaton& a, int src, int dst, int cap) {
  if (src == dst) return std::vector<int>{};
  std::vector<std::pair<int, int>> parent(static_cast<std::size_t>(a.state_count()), {-1, -1});
  std::vector<bool> seen(static_cast<std::size_t>(a.state_count()), false);
  seen[static_cast<std::size_t>(src)] = true;
  std::deque<int> queue{src};
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int letter = 0; letter <= std::min(cap, a.alphabet_size() - 1); ++letter)
      for (int to : a.successors(q, letter)) {
        if (seen[static_cast<std::size_t>(to)]) continue;
        seen[static_cast<std::size_t>(to)] = true;
        parent[static_cast<std::size_t>(to)] = {q, letter};
        if (to == dst) {
          std::vector<int> word;
          int at = dst;
          while (at != src) {
            word.push_back(parent[static_cast<std::size_t>(at)].second);
            at = parent[static_cast<std::size_t>(at)].first;
          }
          std::reverse(word.begin(), word.end());
          return word;
        }
        queue.push_back(to);
      }
  }
  return std::nullopt;
}

std::vector<int> automaton_scc_ids(const SafetyAutomaton& a, int cap) {
  // Small iterative Kosaraju over the letter-restricted transition graph.
  const int n = a.state_count();
  std::vector<std::vector<int>> fwd(static_cast<std::size_t>(n)), bwd(static_cast<std::size_t>(n));
  for (const Transition& t : a.transitions())
    if (t.letter <= cap) {
      fwd[static_cast<std::size_t>(t.from)].push_back(t.to);
      bwd[static_cast<std::size_t>(t.to)].push_back(t.from);
    }
  std::vector<int> order;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int root = 0; root < n; ++root) {
    if (seen[static_cast<std::size_t>(root)]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    seen[static_cast<std::size_t>(root)] = true;
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      if (idx < fwd[static_cast<std::size_t>(v)].size()) {
        int w = fwd[static_cast<std::size_t>(v)][idx++];
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          stack.push_back({w, 0});
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int next_comp = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[static_cast<std::size_t>(*it)] != -1) continue;
    std::vector<int> stack{*it};
    comp[static_cast<std::size_t>(*it)] = next_comp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : bwd[static_cast<std::size_t>(v)])
        if (comp[static_cast<std::size_t>(w)] == -1) {
          comp[static_cast<std::size_t>(w)] = next_comp;
          stack.push_back(w);
        }
    }
    ++next_comp;
  }
  return comp;
}

}  // namespace

std::optional<Lasso> find_odd_lasso(const SafetyAutomaton& a) {
  for (int p = 1; p < a.alphabet_size(); p += 2) {
    std::vector<int> comp = automaton_scc_ids(a, p);
    for (const Transition& t : a.transitions()) {
      if (t.letter != p) continue;
      if (comp[static_cast<std::size_t>(t.from)] != comp[static_cast<std::size_t>(t.to)]) continue;
      // All states are reachable, so a prefix to t.from always exists; the
      // loop closes inside the <=p component, making its maximum exactly p.
      std::vector<int> prefix = *letter_path(a, a.initial(), t.from, a.alphabet_size() - 1);
      std::vector<int> loop{p};
      std::vector<int> back = *letter_path(a, t.to, t.from, p);
      loop.insert(loop.end(), back.begin(), back.end());
      return Lasso{std::move(prefix), std::move(loop)};
    }
  }
  return std::nullopt;
}

bool language_subset_parity(const SafetyAutomaton& a) { return !find_odd_lasso(a).has_value(); }

AcceptAllCheck accepts_all_paths(const SafetyAutomaton& a, const PriorityGraph& g) {
  if (a.alphabet_size() != g.priority_count())
    throw PreconditionError("automaton alphabet and graph priorities differ");
  if (a.state_count() > 64)
    throw PreconditionError("state-set product supports at most 64 states");

  std::vector<std::uint64_t> step(static_cast<std::size_t>(a.state_count()) *
                                      static_cast<std::size_t>(a.alphabet_size()),
                                  0);
  for (const Transition& t : a.transitions())
    step[static_cast<std::size_t>(t.from) * static_cast<std::size_t>(a.alphabet_size()) +
         static_cast<std::size_t>(t.letter)] |= 1ULL << t.to;

  auto advance = [&](std::uint64_t mask, int letter) {
    std::uint64_t next = 0;
    while (mask) {
      int q = __builtin_ctzll(mask);
      mask &= mask - 1;
      next |= step[static_cast<std::size_t>(q) * static_cast<std::size_t>(a.alphabet_size()) +
                   static_cast<std::size_t>(letter)];
    }
    return next;
  };

  const std::uint64_t init = 1ULL << a.initial();
  auto adj = g.out_adjacency();

  // BFS over (vertex, state set); parents reconstruct the witness path.
  struct Item {
    int vertex;
    std::uint64_t states;
    int parent;  // index into items
    Edge via;
  };
  std::vector<Item> items;
  std::map<std::pair<int, std::uint64_t>, int> index_of;
  std::deque<int> queue;
  for (int v = 0; v < g.vertex_count(); ++v) {
    items.push_back({v, init, -1, {}});
    index_of[{v, init}] = static_cast<int>(items.size()) - 1;
    queue.push_back(static_cast<int>(items.size()) - 1);
  }
  while (!queue.empty()) {
    int at = queue.front();
    queue.pop_front();
    const Item item = items[static_cast<std::size_t>(at)];
    for (const Edge& e : adj[static_cast<std::size_t>(item.vertex)]) {
      std::uint64_t next = advance(item.states, e.pri);
      if (next == 0) {
        // The extended path has no run: rebuild it.
        std::vector<Edge> steps{e};
        int walk = at;
        while (items[static_cast<std::size_t>(walk)].parent != -1) {
          steps.push_back(items[static_cast<std::size_t>(walk)].via);
          walk = items[static_cast<std::size_t>(walk)].parent;
        }
        std::reverse(steps.begin(), steps.end());
        return {false, Path{items[static_cast<std::size_t>(walk)].vertex, std::move(steps)}};
      }
      auto key = std::make_pair(e.to, next);
      if (index_of.contains(key)) continue;
      items.push_back({e.to, next, at, e});
      index_of[key] = static_cast<int>(items.size()) - 1;
      queue.push_back(static_cast<int>(items.size()) - 1);
    }
  }
  return {};
}

SeparationReport is_separating(const SafetyAutomaton& a, int n, int d, const SeparationOptions& opts) {
  SeparationReport report;
  if (a.alphabet_size() != d)
    throw PreconditionError("automaton alphabet does not match the requested d");

  if (auto lasso = find_odd_lasso(a)) {
    report.kind = SeparationReport::Kind::AcceptedOddLasso;
    report.lasso = std::move(lasso);
    return report;
  }

  switch (opts.mode) {
    case SeparationMode::Exhaustive: {
      for (const PriorityGraph& g : parity_graph_pool(n, d, opts.limits)) {
        ++report.graphs_checked;
        AcceptAllCheck check = accepts_all_paths(a, g);
        if (!check.ok) {
          report.kind = SeparationReport::Kind::MissedParityPath;
          report.missed = PathWitness{g, *check.witness};
          return report;
        }
      }
      break;
    }
    case SeparationMode::UniversalWitness: {
      const PriorityGraph& witness =
          opts.witness ? *opts.witness : graph_of_tree(complete_universal_tree(n, d, opts.limits));
      AcceptAllCheck check = accepts_all_paths(a, witness);
      report.graphs_checked = 1;
      if (!check.ok) {
        report.kind = SeparationReport::Kind::MissedParityPath;
        report.missed = PathWitness{witness, *check.witness};
        return report;
      }
      break;
    }
    case SeparationMode::Sample: {
      if (opts.sample_count <= 0) throw PreconditionError("sample mode needs a positive count");
      Rng rng(opts.seed);
      for (int k = 0; k < opts.sample_count; ++k) {
        PriorityGraph g = sample_parity_graph(n, d, rng);
        ++report.graphs_checked;
        AcceptAllCheck check = accepts_all_paths(a, g);
        if (!check.ok) {
          report.kind = SeparationReport::Kind::MissedParityPath;
          report.missed = PathWitness{g, *check.witness};
          return report;
        }
      }
      break;
    }
  }
  report.separating = true;
  return report;
}

// ---- brute-force minimal search ---------------------------------------------

namespace {

// Shared counterexample cache: graphs that refuted earlier candidates are
// tried first, which kills most candidates on their first or second check.
struct SeparationSieve {
  int n, d;
  EnumerationLimits limits;
  std::vector<std::size_t> cache;  // pool indices that refuted earlier candidates

  bool passes(const SafetyAutomaton& a) {
    if (find_odd_lasso(a)) return false;
    const std::vector<PriorityGraph>& pool = parity_graph_pool(n, d, limits);
    for (std::size_t idx : cache)
      if (!accepts_all_paths(a, pool[idx]).ok) return false;
    for (std::size_t idx = 0; idx < pool.size(); ++idx)
      if (!accepts_all_paths(a, pool[idx]).ok) {
        cache.push_back(idx);
        return false;
      }
    return true;
  }
};

// Enumerates deterministic partial transition tables in canonical form:
// states are numbered by first appearance as a target (initial = 0), which
// yields every initially-connected automaton once up to renaming.
struct DetEnumerator {
  int k, d;
  std::uint64_t budget;
  std::uint64_t examined = 0;
  std::vector<int> slot;  // (q*d + i) -> target or -1
  std::optional<SafetyAutomaton> found;
  const std::function<bool(const SafetyAutomaton&)>* test;

  bool run(int k_, int d_, std::uint64_t budget_, const std::function<bool(const SafetyAutomaton&)>& t) {
    k = k_;
    d = d_;
    budget = budget_;
    test = &t;
    slot.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(d), -1);
    fill(0, 0);
    return found.has_value();
  }

  void fill(int pos, int max_seen) {
    if (found) return;
    if (pos == k * d) {
      if (max_seen != k - 1) return;  // all k states must be used
      if (++examined > budget)
        throw BudgetError("deterministic automaton search exceeded the budget");
      std::vector<Transition> ts;
      for (int q = 0; q < k; ++q)
        for (int i = 0; i < d; ++i) {
          int to = slot[static_cast<std::size_t>(q * d + i)];
          if (to != -1) ts.push_back({q, i, to});
        }
      SafetyAutomaton a(d, k, 0, std::move(ts));
      if (a.state_count() == k && (*test)(a)) found = a;
      return;
    }
    const int q = pos / d;
    if (q > max_seen) return;  // q never introduced: not initially connected
    for (int target = -1; target <= std::min(max_seen + 1, k - 1); ++target) {
      slot[static_cast<std::size_t>(pos)] = target;
      fill(pos + 1, std::max(max_seen, target));
      if (found) return;
    }
    slot[static_cast<std::size_t>(pos)] = -1;
  }
};

std::uint64_t pow_u64_capped(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

}  // namespace

SafetyAutomaton minimal_separating_automaton(int n, int d, bool deterministic_only,
                                             const EnumerationLimits& lim, int jobs) {
  (void)jobs;  // candidate checks are cheap; the scan itself is sequential
  SeparationSieve sieve{n, d, lim, {}};
  auto confirm = [&](const SafetyAutomaton& a) {
    SeparationOptions opts;
    opts.limits = lim;
    return is_separating(a, n, d, opts).separating;
  };
  auto test = std::function<bool(const SafetyAutomaton&)>(
      [&](const SafetyAutomaton& a) { return sieve.passes(a) && confirm(a); });

  // A deterministic separating automaton of the minimal universal tree's
  // size always exists, so the ascending search terminates by then.
  const int upper = minimal_universal_tree(n, d, lim).size();

  for (int k = 1; k <= upper; ++k) {
    if (deterministic_only) {
      DetEnumerator det;
      if (det.run(k, d, lim.max_candidates, test)) return *det.found;
    } else {
      const std::uint64_t slots =
          static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(d);
      const std::uint64_t space = pow_u64_capped(2, slots, lim.max_candidates);
      if (space > lim.max_candidates) {
        if (k == upper) break;  // fall through to the deterministic witness
        throw BudgetError("nondeterministic automaton space at " + std::to_string(k) +
                          " states exceeds the budget");
      }
      for (std::uint64_t mask = 0; mask < space; ++mask) {
        std::vector<Transition> ts;
        for (std::uint64_t bit = 0; bit < slots; ++bit)
          if (mask >> bit & 1) {
            int from = static_cast<int>(bit / (static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(d)));
            int rest = static_cast<int>(bit % (static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(d)));
            ts.push_back({from, rest / k, rest % k});
          }
        SafetyAutomaton a(d, k, 0, std::move(ts));
        if (a.state_count() != k) continue;  // unreachable states: seen at smaller k
        if (test(a)) return a;
      }
    }
  }

  // No smaller automaton exists; the tree construction provides a minimal
  // witness in either class.
  SafetyAutomaton witness = automaton_from_tree(minimal_universal_tree(n, d, lim));
  if (!confirm(witness)) throw Error("tree-built automaton failed the separation check");
  return witness;
}

}  // namespace pgu
