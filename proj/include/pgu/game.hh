#pragma once

#include <optional>
#include <vector>

#include "pgu/automaton.hh"
#include "pgu/graph.hh"

namespace pgu {

enum class Player { Eve, Adam };
inline Player opponent(Player p) { return p == Player::Eve ? Player::Adam : Player::Eve; }

// A priority graph whose vertices are split between the two players. Games
// must be dead-end-free: a vertex without outgoing edges is rejected (the
// loader offers explicit arena completion instead).
struct ParityGame {
  PriorityGraph graph;
  std::vector<Player> owner;
};

std::vector<int> dead_ends(const ParityGame& game);
void validate_game(const ParityGame& game);

// One outgoing edge per vertex of the strategy's owner.
struct PositionalStrategy {
  Player owner = Player::Eve;
  std::vector<std::optional<Edge>> choice;  // indexed by vertex
};

// Keeps every edge of the opponent and exactly the chosen edge at each of
// the owner's vertices. Every owner vertex needs a valid choice.
PriorityGraph restrict_to_strategy(const ParityGame& game, const PositionalStrategy& strategy);

// Restriction of a game to a vertex set (used to check strategies on their
// winning regions). The kept set must leave no dead ends.
struct Subgame {
  ParityGame game;
  std::vector<int> original_vertex;
};
Subgame induced_subgame(const ParityGame& game, const std::vector<bool>& keep);

// Positions are either pairs (game vertex, track vertex) or intermediate
// positions where Eve owes the track component a matching step: after a
// game edge (v,i,v') from (v,u), Eve must pick u' with (u,i,u'). Positions
// without moves lose for their owner; Eve's objective is to play forever.
class SafetyArena {
 public:
  struct Meta {
    bool primary;
    int game_vertex;
    int track_vertex;
    int edge_index;  // -1 for primaries
  };

  std::vector<Player> owner;
  std::vector<std::vector<int>> succ;
  std::vector<Meta> meta;
  int game_vertices = 0;
  int track_vertices = 0;

  int primary(int v, int u) const { return v * track_vertices + u; }
  int size() const { return static_cast<int>(owner.size()); }
};

SafetyArena product_safety_game(const ParityGame& game, const PriorityGraph& track);

struct SafetySolution {
  std::vector<bool> eve_wins;
  std::vector<int> eve_choice;  // successor position at Eve's winning positions, else -1
};

// Complement of the opponent's attractor to Eve's dead ends (worklist,
// linear in the arena edges).
SafetySolution solve_safety(const SafetyArena& arena);

struct SolveResult {
  std::vector<Player> winner;
  PositionalStrategy eve_strategy;  // defined on Eve's vertices in her region
};

// Reduction through a universal graph: Eve wins v iff some pair (v,u)
// survives. The track must satisfy parity and have even d; it is saturated
// internally when not tree-like so that a positional strategy can be read
// off the E_0-maximal surviving track vertices. Winners are correct only
// for universal tracks (pass verify_universal to check that first).
struct ViaUniversalOptions {
  bool verify_universal = false;
  EnumerationLimits limits;
};
SolveResult solve_parity_via_universal(const ParityGame& game, const PriorityGraph& universal,
                                       const ViaUniversalOptions& opts = {});

// Reduction through a deterministic separating automaton: Eve wins v iff
// (v, initial) survives; a move on a letter without transition strands the
// automaton and loses for Eve.
SolveResult solve_parity_via_automaton(const ParityGame& game, const SafetyAutomaton& automaton);

// Classical recursive attractor decomposition; the independent reference
// solver. Returns exact regions and positional strategies for both players.
struct ZielonkaResult {
  std::vector<Player> winner;
  PositionalStrategy eve_strategy;
  PositionalStrategy adam_strategy;
};
ZielonkaResult zielonka(const ParityGame& game);

// Seeded dead-end-free game.
ParityGame random_game(int n, int d, Rng& rng);

}  // namespace pgu
