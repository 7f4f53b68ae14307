#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "graph.hpp"
#include "io.hpp"
#include "test_support.hpp"
#include "util.hpp"

using namespace interplan;

TEST_CASE("is_acyclic") {
  CHECK(is_acyclic(3, {{0, 1}, {1, 2}}));
  CHECK_FALSE(is_acyclic(2, {{0, 1}, {1, 0}}));
  CHECK_FALSE(is_acyclic(3, {{0, 1}, {1, 2}, {2, 0}}));
  CHECK(is_acyclic(0, {}));
  CHECK_THROWS_AS(is_acyclic(2, {{0, 5}}), std::invalid_argument);
}

TEST_CASE("manipulate breaks exactly the in-edges of the intervened set") {
  Dag chain = Dag::from_edges(3, {{0, 1}, {1, 2}});  // X -> Y -> Z
  Dag cut = manipulate(chain, VertexSet::of({1}));
  CHECK(cut.edge_count() == 1);
  CHECK(cut.has_edge(1, 2));
  CHECK_FALSE(cut.has_edge(0, 1));

  CHECK(manipulate(chain, VertexSet{}) == chain);
  CHECK(manipulate(chain, VertexSet::of({0, 1, 2})).edge_count() == 0);
  CHECK_THROWS_AS(manipulate(chain, VertexSet::of({5})), std::invalid_argument);

  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(6));
    Dag g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.bernoulli(0.4)) g.add_edge(i, j);
    VertexSet iv;
    for (int v = 0; v < n; ++v)
      if (rng.bernoulli(0.3)) iv.add(v);
    Dag once = manipulate(g, iv);
    CHECK(manipulate(once, iv) == once);  // idempotent
    int broken = 0;
    iv.for_each([&](int v) { broken += g.parents(v).count(); });
    CHECK(once.edge_count() == g.edge_count() - broken);
  }
}

TEST_CASE("combine_marks refinement table") {
  Mark nk = Mark::no_knowledge();
  Mark un = Mark::undirected();
  Mark na = Mark::non_adjacent();
  Mark d01 = Mark::directed(0, 1), d10 = Mark::directed(1, 0);
  Mark s01 = Mark::semi_directed(0, 1), s10 = Mark::semi_directed(1, 0);

  CHECK(combine_marks(nk, un) == un);
  CHECK(combine_marks(s01, un) == d01);
  CHECK(combine_marks(s01, na) == na);
  CHECK(combine_marks(s01, s10) == na);
  CHECK(combine_marks(s01, d01) == d01);
  CHECK(combine_marks(un, d10) == d10);
  CHECK_THROWS_AS(combine_marks(d01, na), ConflictError);
  CHECK_THROWS_AS(combine_marks(d01, d10), ConflictError);
  CHECK_THROWS_AS(combine_marks(un, na), ConflictError);
  CHECK_THROWS_AS(combine_marks(s01, d10), ConflictError);

  std::vector<Mark> all{nk, un, na, d01, d10, s01, s10};
  auto rank = [](const Mark& m) {
    switch (m.kind) {
      case MarkKind::NoKnowledge: return 0;
      case MarkKind::Undirected:
      case MarkKind::SemiDirected: return 1;
      default: return 2;
    }
  };
  for (const Mark& a : all)
    for (const Mark& b : all) {
      bool conflict_ab = false, conflict_ba = false;
      Mark ab, ba;
      try {
        ab = combine_marks(a, b);
      } catch (const ConflictError&) {
        conflict_ab = true;
      }
      try {
        ba = combine_marks(b, a);
      } catch (const ConflictError&) {
        conflict_ba = true;
      }
      CHECK(conflict_ab == conflict_ba);  // conflicts are symmetric
      if (conflict_ab) continue;
      CHECK(ab == ba);                         // commutative
      CHECK(combine_marks(ab, ab) == ab);      // idempotent
      CHECK(rank(ab) >= rank(a));              // monotone
      CHECK(rank(ab) >= rank(b));
      CHECK(refines(a, ab));
      CHECK(refines(b, ab));
    }
}

namespace {

KnowledgeGraph ome5() { return read_kg_file(std::string(INTERPLAN_DATA_DIR) + "/ome5.kg"); }

}  // namespace

TEST_CASE("maximal unknown cliques of the five-variable pattern") {
  KnowledgeGraph kg = ome5();
  auto cliques = maximal_unknown_cliques(kg);
  REQUIRE(cliques.size() == 3);
  // V W X Y Z = 0 1 2 3 4
  CHECK(cliques[0] == VertexSet::of({0, 1, 2}));
  CHECK(cliques[1] == VertexSet::of({1, 2, 3}));
  CHECK(cliques[2] == VertexSet::of({3, 4}));
}

TEST_CASE("cliques: fully known graph and the five-cycle") {
  KnowledgeGraph known(4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < y; ++x) known.set_mark(x, y, Mark::non_adjacent());
  CHECK(maximal_unknown_cliques(known).empty());

  // A chordless undirected five-cycle has five maximal 2-cliques, one per
  // edge (not four: C5 has five edges).
  KnowledgeGraph cyc = read_kg_file(std::string(INTERPLAN_DATA_DIR) + "/cycle5.kg");
  auto cliques = maximal_unknown_cliques(cyc);
  REQUIRE(cliques.size() == 5);
  for (VertexSet c : cliques) CHECK(c.count() == 2);
}

TEST_CASE("clique enumeration matches subset brute force") {
  using testsupport::brute_force_cliques;
  using testsupport::unknown_adjacency;

  // Exhaustive over every unknown-edge graph for small n.
  for (int n = 2; n <= 6; ++n) {
    int m = pair_count(n);
    for (uint64_t mask = 0; mask < (1ull << m); ++mask) {
      KnowledgeGraph kg(n);
      int idx = 0;
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < y; ++x, ++idx)
          kg.set_mark(x, y, (mask >> idx & 1) ? Mark::undirected() : Mark::non_adjacent());
      CHECK(maximal_unknown_cliques(kg) == brute_force_cliques(n, unknown_adjacency(kg)));
    }
  }

  // Randomized at n = 7, mixing all three unknown kinds.
  Rng rng(2024);
  for (int trial = 0; trial < 3000; ++trial) {
    int n = 7;
    KnowledgeGraph kg(n);
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < y; ++x) {
        double r = rng.next_double();
        if (r < 0.35)
          kg.set_mark(x, y, Mark::undirected());
        else if (r < 0.45)
          kg.set_mark(x, y, Mark::semi_directed(x, y));
        else if (r < 0.55)
          kg.set_mark(x, y, Mark::no_knowledge());
        else
          kg.set_mark(x, y, Mark::non_adjacent());
      }
    CHECK(maximal_unknown_cliques(kg) == brute_force_cliques(n, unknown_adjacency(kg)));
  }
}

TEST_CASE("kg text format round-trips all five marks") {
  std::string text =
      "# all five marks\n"
      "vertices: A B C D\n"
      "A -> B\n"
      "A -- C\n"
      "B ~> C\n"
      "A !! D\n"
      "B ?? D\n";
  KnowledgeGraph kg = parse_kg(text);
  CHECK(kg.mark(0, 1) == Mark::directed(0, 1));
  CHECK(kg.mark(0, 2) == Mark::undirected());
  CHECK(kg.mark(1, 2) == Mark::semi_directed(1, 2));
  CHECK(kg.mark(0, 3) == Mark::non_adjacent());
  CHECK(kg.mark(1, 3) == Mark::no_knowledge());
  CHECK(kg.mark(2, 3) == Mark::no_knowledge());

  std::string dumped = format_kg(kg);
  KnowledgeGraph again = parse_kg(dumped);
  CHECK(again == kg);
  CHECK(again.names() == kg.names());
  CHECK(format_kg(again) == dumped);
}

TEST_CASE("dag text format round-trips") {
  Dag g = read_dag_file(std::string(INTERPLAN_DATA_DIR) + "/chain3.dag");
  CHECK(g.size() == 3);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK(parse_dag(format_dag(g)) == g);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_kg("vertices: A B\nA -> B\nB -> A\n"),
                       doctest::Contains("line 3"), ParseError);
  CHECK_THROWS_WITH_AS(parse_kg("vertices: A B\nA xx B\n"), doctest::Contains("line 2"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_kg("vertices: A B\nA -> C\n"), doctest::Contains("line 2"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_kg("vertices: A A\n"), doctest::Contains("line 1"), ParseError);
  CHECK_THROWS_AS(parse_kg("A -> B\n"), ParseError);
  CHECK_THROWS_AS(parse_dag("vertices: A B\nA -- B\n"), ParseError);
  // Cyclic directed marks are a knowledge conflict, not a syntax error.
  CHECK_THROWS_AS(parse_kg("vertices: A B C\nA -> B\nB -> C\nC -> A\n"), ConflictError);
  CHECK_THROWS_AS(parse_dag("vertices: A B C\nA -> B\nB -> C\nC -> A\n"), ParseError);
}

TEST_CASE("dag edges serialize lexicographically") {
  Dag g(3, {"a", "b", "c"});
  g.add_edge(2, 0);
  g.add_edge(1, 0);
  g.add_edge(1, 2);
  auto es = g.edges();
  REQUIRE(es.size() == 3);
  CHECK(es[0] == std::pair<int, int>{1, 0});
  CHECK(es[1] == std::pair<int, int>{1, 2});
  CHECK(es[2] == std::pair<int, int>{2, 0});
}
