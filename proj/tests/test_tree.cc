#include <catch2/catch_amalgamated.hpp>

#include "oracles.hh"
#include "pgu/graph.hh"
#include "pgu/tree.hh"

using namespace pgu;

TEST_CASE("tree construction validates shape") {
  CHECK_NOTHROW(OrderedTree(2, {{0}, {1}}));
  CHECK_NOTHROW(OrderedTree(4, {{0, 0}, {0, 1}, {1, 0}}));
  CHECK_THROWS_AS(OrderedTree(3, {{0}}), PreconditionError);           // odd d
  CHECK_THROWS_AS(OrderedTree(2, {}), PreconditionError);              // no leaves
  CHECK_THROWS_AS(OrderedTree(2, {{0}, {0}}), PreconditionError);      // duplicate leaf
  CHECK_THROWS_AS(OrderedTree(2, {{1}}), PreconditionError);           // gap in child indices
  CHECK_THROWS_AS(OrderedTree(2, {{0}, {2}}), PreconditionError);      // gap in child indices
  CHECK_THROWS_AS(OrderedTree(4, {{0}}), PreconditionError);           // wrong height
  CHECK_THROWS_AS(OrderedTree(2, {{1}, {0}}), PreconditionError);      // unsorted
}

TEST_CASE("graph_of_tree on the smallest trees") {
  PriorityGraph one = graph_of_tree(OrderedTree(2, {{0}}));
  CHECK(one.edges() == std::vector<Edge>{{0, 0, 0}});

  PriorityGraph two = graph_of_tree(OrderedTree(2, {{0}, {1}}));
  CHECK(two.edges() == std::vector<Edge>{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 0, 1}});
}

TEST_CASE("graph_of_tree matches the ancestor-comparison oracle") {
  for (int d : {2, 4}) {
    for (int n = 1; n <= 4; ++n) {
      for (const OrderedTree& t : enumerate_trees(n, d)) {
        CAPTURE(d, n);
        CHECK(graph_of_tree(t) == oracle::graph_of_tree(t));
      }
    }
  }
  // One taller spot check.
  for (const OrderedTree& t : enumerate_trees(3, 6)) CHECK(graph_of_tree(t) == oracle::graph_of_tree(t));
}

TEST_CASE("tree-like axioms") {
  CHECK(is_tree_like(PriorityGraph(1, 2, {{0, 0, 0}})));

  TreeLikeReport missing_loop = check_tree_like(PriorityGraph(1, 2, {}));
  CHECK_FALSE(missing_loop.ok);
  CHECK(missing_loop.axiom == "even-reflexivity");

  TreeLikeReport not_total = check_tree_like(PriorityGraph(2, 2, {{0, 0, 0}, {1, 0, 1}}));
  CHECK_FALSE(not_total.ok);
  CHECK(not_total.axiom == "even-totality");

  // (0,1,1) absent although (0,0,1) is a strict E_0 pair.
  TreeLikeReport bad_odd = check_tree_like(PriorityGraph(2, 2, {{0, 0, 0}, {1, 0, 1}, {0, 0, 1}}));
  CHECK_FALSE(bad_odd.ok);
  CHECK(bad_odd.axiom == "odd-definition");

  CHECK_THROWS_AS(check_tree_like(PriorityGraph(1, 3, {})), PreconditionError);

  for (int d : {2, 4}) {
    for (int n = 1; n <= 4; ++n) {
      for (const OrderedTree& t : enumerate_trees(n, d)) {
        CAPTURE(d, n);
        CHECK(is_tree_like(graph_of_tree(t)));
      }
    }
  }
}

TEST_CASE("tree-like consequences hold for tree graphs") {
  for (const OrderedTree& t : enumerate_trees(3, 4)) {
    PriorityGraph g = graph_of_tree(t);
    const int n = g.vertex_count();
    // transitivity per relation, the E_0 subset chain, odd non-reflexivity
    for (int i = 0; i < g.priority_count(); ++i) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            if (g.has_edge(a, i, b) && g.has_edge(b, i, c)) CHECK(g.has_edge(a, i, c));
      if (i % 2 == 1) {
        for (int a = 0; a < n; ++a) CHECK_FALSE(g.has_edge(a, i, a));
      }
      if (i + 2 < g.priority_count() && i % 2 == 0) {
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            if (g.has_edge(a, i, b)) CHECK(g.has_edge(a, i + 2, b));
      }
    }
    CHECK(satisfies_parity(g));
  }
}

TEST_CASE("tree_of_graph round-trips graph_of_tree") {
  for (int d : {2, 4}) {
    for (int n = 1; n <= 4; ++n) {
      for (const OrderedTree& t : enumerate_trees(n, d)) {
        TreeOfGraph back = tree_of_graph(graph_of_tree(t));
        CHECK(back.tree == t);
        CHECK_FALSE(back.collapsed());
        for (int v = 0; v < t.size(); ++v)
          CHECK(back.leaf_of_vertex[static_cast<std::size_t>(v)] == v);
      }
    }
  }
}

TEST_CASE("tree_of_graph rejects non-tree-like graphs with the axiom report") {
  try {
    tree_of_graph(PriorityGraph(1, 2, {}));
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("even-reflexivity") != std::string::npos);
  }
}

TEST_CASE("E_0-equivalent vertices collapse onto one leaf") {
  // Both 0-edges between two vertices: tree-like by the axioms, but the
  // quotient tree has a single leaf.
  PriorityGraph g(2, 2, {{0, 0, 0}, {1, 0, 1}, {0, 0, 1}, {1, 0, 0}});
  REQUIRE(is_tree_like(g));
  TreeOfGraph result = tree_of_graph(g);
  CHECK(result.tree.size() == 1);
  CHECK(result.collapsed());
  CHECK(result.leaf_of_vertex == std::vector<int>{0, 0});
}

TEST_CASE("embeds on the smallest cases") {
  OrderedTree flat2(2, {{0}, {1}});
  OrderedTree flat1(2, {{0}});

  auto identity = embeds(flat2, flat2);
  REQUIRE(identity.has_value());
  CHECK(*identity == LeafEmbedding{0, 1});

  CHECK_FALSE(embeds(flat2, flat1).has_value());  // pigeonhole
  CHECK(embeds(flat1, flat2).has_value());
  CHECK_THROWS_AS(embeds(flat1, OrderedTree(4, {{0, 0}})), PreconditionError);
}

TEST_CASE("embedding agrees with homomorphism existence between tree graphs") {
  for (int d : {2, 4}) {
    std::vector<OrderedTree> trees;
    for (int n = 1; n <= 3; ++n)
      for (const OrderedTree& t : enumerate_trees(n, d)) trees.push_back(t);
    for (const OrderedTree& t : trees)
      for (const OrderedTree& T : trees) {
        auto em = embeds(t, T);
        bool hom = find_homomorphism(graph_of_tree(t), graph_of_tree(T)).has_value();
        CAPTURE(d, t.leaves, T.leaves);
        CHECK(em.has_value() == hom);
        if (em) {
          // The leaf injection is itself a homomorphism and preserves order.
          CHECK(is_homomorphism(graph_of_tree(t), graph_of_tree(T), *em));
          for (std::size_t k = 1; k < em->size(); ++k) CHECK((*em)[k - 1] < (*em)[k]);
        }
      }
  }
}

TEST_CASE("embedding is reflexive and transitive, and antisymmetric at equal size") {
  for (const OrderedTree& t : enumerate_trees(3, 4)) CHECK(embeds(t, t).has_value());

  std::vector<OrderedTree> pool;
  for (int n = 1; n <= 4; ++n)
    for (const OrderedTree& t : enumerate_trees(n, 4)) pool.push_back(t);
  for (const OrderedTree& a : pool)
    for (const OrderedTree& b : pool) {
      if (!embeds(a, b).has_value()) continue;
      if (a.size() == b.size() && embeds(b, a).has_value()) CHECK(a == b);
      for (const OrderedTree& c : pool)
        if (embeds(b, c).has_value()) CHECK(embeds(a, c).has_value());
    }
}

TEST_CASE("tree enumeration counts match the forest recurrence") {
  CHECK(enumerate_trees(1, 2).size() == 1);
  CHECK(enumerate_trees(1, 6).size() == 1);
  CHECK(enumerate_trees(2, 2).size() == 1);
  CHECK(enumerate_trees(3, 4).size() == 4);

  for (int d : {2, 4, 6}) {
    for (int n = 1; n <= 5; ++n) {
      auto trees = enumerate_trees(n, d);
      CAPTURE(d, n);
      CHECK(trees.size() == oracle::tree_count(n, d / 2));
      for (const OrderedTree& t : trees) CHECK(t.size() == n);
      for (std::size_t k = 1; k < trees.size(); ++k) CHECK(trees[k - 1].leaves < trees[k].leaves);
    }
  }

  EnumerationLimits tight{10};
  CHECK_THROWS_AS(enumerate_trees(12, 6, tight), BudgetError);
}

TEST_CASE("complete universal trees") {
  CHECK(complete_universal_tree(1, 4).size() == 1);
  CHECK(complete_universal_tree(2, 2).size() == 2);
  OrderedTree c24 = complete_universal_tree(2, 4);
  CHECK(c24.size() == 4);
  CHECK(check_universal_tree(c24, 2, 4).ok);
  for (int n = 1; n <= 3; ++n)
    for (int d : {2, 4}) CHECK(check_universal_tree(complete_universal_tree(n, d), n, d).ok);
}

TEST_CASE("universality checks and witnesses") {
  UniversalTreeCheck bad = check_universal_tree(OrderedTree(2, {{0}}), 2, 2);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.counterexample.has_value());
  CHECK(*bad.counterexample == OrderedTree(2, {{0}, {1}}));

  // Flat trees are universal for d = 2.
  OrderedTree flat5(2, {{0}, {1}, {2}, {3}, {4}});
  CHECK(check_universal_tree(flat5, 5, 2).ok);

  // The "at most" reading contains every "exactly k" reading.
  for (int k = 1; k <= 5; ++k) CHECK(check_universal_tree(flat5, k, 2, /*exactly_n=*/true).ok);
}

TEST_CASE("minimal universal trees at desk scale") {
  CHECK(minimal_universal_tree(1, 2).size() == 1);
  CHECK(minimal_universal_tree(2, 2).size() == 2);
  CHECK(minimal_universal_tree(1, 4).size() == 1);
  CHECK(minimal_universal_tree(2, 4).size() == 3);
  CHECK(minimal_universal_tree(3, 4).size() == 5);

  // Canonical output: first success in (size, lex) order.
  CHECK(minimal_universal_tree(2, 4) == OrderedTree(4, {{0, 0}, {0, 1}, {1, 0}}));

  CHECK_THROWS_AS(minimal_universal_tree(6, 6, EnumerationLimits{50}), BudgetError);
}
