#include <catch2/catch_amalgamated.hpp>

#include "oracles.hh"
#include "pgu/saturation.hh"
#include "pgu/tree.hh"

using namespace pgu;

TEST_CASE("saturate on the smallest graphs") {
  PriorityGraph lone = saturate(PriorityGraph(1, 2, {}));
  CHECK(lone.edges() == std::vector<Edge>{{0, 0, 0}});

  // Everything beyond these four edges closes an odd cycle.
  PriorityGraph pair = saturate(PriorityGraph(2, 2, {{0, 1, 1}}));
  CHECK(pair.edges() == std::vector<Edge>{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 0, 1}});
  for (int v = 0; v < 2; ++v)
    for (int p = 0; p < 2; ++p)
      for (int w = 0; w < 2; ++w)
        if (!pair.has_edge(v, p, w)) CHECK_FALSE(satisfies_parity(pair.with_edge({v, p, w})));
}

TEST_CASE("saturate rejects bad inputs") {
  CHECK_THROWS_AS(saturate(PriorityGraph(1, 2, {{0, 1, 0}})), PreconditionError);
  CHECK_THROWS_AS(saturate(PriorityGraph(1, 3, {})), PreconditionError);
  try {
    saturate(PriorityGraph(2, 2, {{0, 1, 1}, {1, 0, 0}}));
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("cycle") != std::string::npos);
  }
}

TEST_CASE("maximality") {
  CHECK_FALSE(is_maximal(PriorityGraph(1, 2, {})));            // (0,0,0) is addable
  CHECK_FALSE(is_maximal(PriorityGraph(2, 2, {{0, 1, 1}})));   // even self-loops addable
  CHECK(is_maximal(saturate(PriorityGraph(2, 2, {{0, 1, 1}}))));
}

TEST_CASE("tree graphs are already maximal") {
  for (int d : {2, 4})
    for (int n = 1; n <= 3; ++n)
      for (const OrderedTree& t : enumerate_trees(n, d)) {
        PriorityGraph g = graph_of_tree(t);
        CHECK(saturate(g) == g);
        CHECK(is_maximal(g));
      }
}

TEST_CASE("saturation is a closure and keeps the identity homomorphism") {
  Rng rng(314);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng.below(5));
    int d = rng.below(2) == 0 ? 2 : 4;
    PriorityGraph g = sample_parity_graph(n, d, rng);
    PriorityGraph s = saturate(g);
    CAPTURE(trial, n, d);

    CHECK(saturate(s) == s);
    CHECK(is_maximal(s));

    VertexMap identity(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) identity[static_cast<std::size_t>(v)] = v;
    CHECK(is_homomorphism(g, s, identity));
  }
}

TEST_CASE("a maximal graph satisfying parity is tree-like") {
  Rng rng(2718);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng.below(5));
    int d = rng.below(2) == 0 ? 2 : 4;
    PriorityGraph s = saturate(sample_parity_graph(n, d, rng));
    CAPTURE(trial, n, d);
    CHECK(satisfies_parity(s));
    CHECK(check_tree_like(s).ok);
  }
}

TEST_CASE("incremental and global odd-cycle checks agree") {
  Rng rng(161803);
  SaturationOptions differential{.global_recheck = true};
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng.below(4));
    int d = rng.below(2) == 0 ? 2 : 4;
    PriorityGraph g = sample_parity_graph(n, d, rng);
    CHECK(saturate(g, differential) == saturate(g));
  }
}
