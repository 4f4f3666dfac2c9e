#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pgu/graph.hh"
#include "pgu/tree.hh"

namespace pgu {

struct Transition {
  int from = 0;
  int letter = 0;
  int to = 0;
  auto operator<=>(const Transition&) const = default;
};

// Nondeterministic safety automaton over the alphabet [0, d-1]: every state
// accepts, so a word is rejected exactly when it has no run. States are
// trimmed to the reachable part on construction (order-preserving
// renumbering), keeping the standing assumption that everything is
// reachable from the initial state.
class SafetyAutomaton {
 public:
  SafetyAutomaton(int d, int n_states, int initial, std::vector<Transition> transitions);

  int alphabet_size() const { return d_; }
  int state_count() const { return n_states_; }
  int initial() const { return initial_; }
  bool deterministic() const { return deterministic_; }
  const std::vector<Transition>& transitions() const { return transitions_; }

  const std::vector<int>& successors(int state, int letter) const;
  std::optional<int> det_step(int state, int letter) const;

  bool operator==(const SafetyAutomaton&) const = default;

 private:
  int d_;
  int n_states_;
  int initial_;
  std::vector<Transition> transitions_;           // sorted, duplicate-free
  std::vector<std::vector<int>> succ_;            // indexed state*d + letter
  bool deterministic_;
};

// States reachable from the initial state on u (sorted); empty means u is
// rejected.
std::vector<int> run_word(const SafetyAutomaton& a, std::span<const int> word);

// The deterministic automaton whose states are the leaves of T: the initial
// state is the E_0-least leaf and reading i moves to the E_0-least i-successor
// in the tree's graph.
SafetyAutomaton automaton_from_tree(const OrderedTree& t);

// Vertices = states, edges = transitions.
PriorityGraph graph_of_automaton(const SafetyAutomaton& a);

// An ultimately periodic word: prefix then loop repeated forever.
struct Lasso {
  std::vector<int> prefix;
  std::vector<int> loop;
};

// A reachable lasso whose loop has odd maximal letter, iff the automaton
// accepts some word outside the parity language.
std::optional<Lasso> find_odd_lasso(const SafetyAutomaton& a);
bool language_subset_parity(const SafetyAutomaton& a);

struct AcceptAllCheck {
  bool ok = true;
  std::optional<Path> witness;  // a path of g with no run
};

// Every finite path of g (from every start vertex) has a run: product
// reachability over (vertex, state-set) pairs. Requires matching d and at
// most 64 states.
AcceptAllCheck accepts_all_paths(const SafetyAutomaton& a, const PriorityGraph& g);

enum class SeparationMode { Exhaustive, UniversalWitness, Sample };

struct SeparationOptions {
  SeparationMode mode = SeparationMode::Exhaustive;
  // UniversalWitness: the verified universal graph to test against. A
  // "separating" verdict from that mode is always sound (parity paths embed
  // homomorphically into the witness with the same priority word); a
  // "not-separating" verdict is sound when the witness has at most n
  // vertices, and conservative otherwise.
  std::optional<PriorityGraph> witness;
  std::uint64_t seed = 0;       // Sample mode: required, echoed in reports
  int sample_count = 0;
  EnumerationLimits limits;
  int jobs = 1;
};

struct PathWitness {
  PriorityGraph graph;
  Path path;
};

struct SeparationReport {
  enum class Kind { None, MissedParityPath, AcceptedOddLasso };
  bool separating = false;
  Kind kind = Kind::None;
  std::optional<PathWitness> missed;   // parity-graph path with no run
  std::optional<Lasso> lasso;          // accepted word with odd loop
  std::uint64_t graphs_checked = 0;
};

// Both halves of the separation property: the automaton accepts every path
// of every parity-satisfying graph on at most n vertices, and rejects every
// word violating parity.
SeparationReport is_separating(const SafetyAutomaton& a, int n, int d, const SeparationOptions& opts = {});

// Smallest automaton (ascending state count, canonical enumeration within a
// count) passing is_separating in exhaustive mode. For the nondeterministic
// class, sizes at which the raw space exceeds the budget fall back to the
// deterministic witness once all smaller sizes are refuted (the
// deterministic automaton belongs to the class).
SafetyAutomaton minimal_separating_automaton(int n, int d, bool deterministic_only,
                                             const EnumerationLimits& lim = {}, int jobs = 1);

}  // namespace pgu
