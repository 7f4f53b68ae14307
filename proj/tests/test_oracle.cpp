#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "equivalence.hpp"
#include "oracle.hpp"
#include "test_support.hpp"
#include "util.hpp"

using namespace interplan;
using testsupport::conditioning_sets;
using testsupport::dsep_moral;
using testsupport::dsep_paths;

namespace {

Dag chain() { return Dag::from_edges(3, {{0, 1}, {1, 2}}); }    // X -> Y -> Z
Dag collider() { return Dag::from_edges(3, {{0, 1}, {2, 1}}); } // X -> Y <- Z

}  // namespace

TEST_CASE("d-separation basics") {
  CHECK(d_separated(chain(), 0, 2, VertexSet::of({1})));
  CHECK_FALSE(d_separated(chain(), 0, 2, VertexSet{}));
  CHECK_FALSE(d_separated(collider(), 0, 2, VertexSet::of({1})));  // conditioning opens it
  CHECK(d_separated(collider(), 0, 2, VertexSet{}));

  CHECK_THROWS_AS(d_separated(chain(), 0, 0, VertexSet{}), std::invalid_argument);
  CHECK_THROWS_AS(d_separated(chain(), 0, 1, VertexSet::of({1})), std::invalid_argument);

  // Descendant of a collider opens it too.
  Dag g = Dag::from_edges(4, {{0, 1}, {2, 1}, {1, 3}});
  CHECK_FALSE(d_separated(g, 0, 2, VertexSet::of({3})));
}

TEST_CASE("d-separation agrees with both brute-force oracles") {
  for (int n = 2; n <= 4; ++n) {
    enumerate_dags(n, [&](const Dag& g) {
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < y; ++x)
          for (VertexSet s : conditioning_sets(n, x, y)) {
            bool fast = d_separated(g, x, y, s);
            CHECK(fast == dsep_moral(g, x, y, s));
            CHECK(fast == dsep_paths(g, x, y, s));
            CHECK(fast == d_separated(g, y, x, s));  // symmetric
          }
    });
  }
}

TEST_CASE("d-separation agrees with the moral-graph oracle on every 5-vertex DAG") {
  int n = 5;
  enumerate_dags(n, [&](const Dag& g) {
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < y; ++x)
        for (VertexSet s : conditioning_sets(n, x, y))
          CHECK(d_separated(g, x, y, s) == dsep_moral(g, x, y, s));
  });
}

TEST_CASE("d-separation vs path enumeration, sampled at n = 5") {
  Rng rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    Dag g(5);
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        if (rng.bernoulli(0.5)) g.add_edge(i, j);
    for (int y = 0; y < 5; ++y)
      for (int x = 0; x < y; ++x)
        for (VertexSet s : conditioning_sets(5, x, y))
          CHECK(d_separated(g, x, y, s) == dsep_paths(g, x, y, s));
  }
}

TEST_CASE("oracle queries reflect the manipulated distribution") {
  // truth X -> Y -> Z, randomize Y: X and Y become independent.
  CiOracle o1(chain(), VertexSet::of({1}));
  CHECK(o1.query(0, 1, VertexSet{}));

  // truth X <- Y <- Z, randomize Y: Y and Z become independent.
  Dag rev = Dag::from_edges(3, {{2, 1}, {1, 0}});
  CiOracle o2(rev, VertexSet::of({1}));
  CHECK(o2.query(1, 2, VertexSet{}));

  // truth X <- Y -> Z, randomize Y: Y and Z stay dependent.
  Dag fork = Dag::from_edges(3, {{1, 0}, {1, 2}});
  CiOracle o3(fork, VertexSet::of({1}));
  CHECK_FALSE(o3.query(1, 2, VertexSet{}));
}

TEST_CASE("oracle adjacency examples") {
  CiOracle plain(chain(), VertexSet{});
  CHECK_FALSE(plain.adjacent(0, 2));  // separated by the middle vertex
  CHECK(plain.adjacent(0, 1));
  CiOracle cut(chain(), VertexSet::of({1}));
  CHECK_FALSE(cut.adjacent(0, 1));  // edge-breaking removed X -> Y
}

TEST_CASE("graphical adjacency equals exhaustive subset search") {
  auto check_all_pairs = [](const Dag& truth, VertexSet iv) {
    CiOracle o(truth, iv);
    int n = truth.size();
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < y; ++x) {
        bool separable = false;
        for (VertexSet s : conditioning_sets(n, x, y))
          if (o.query(x, y, s)) separable = true;
        CHECK(o.adjacent(x, y) == !separable);
      }
  };

  for (int n = 2; n <= 4; ++n) {
    enumerate_dags(n, [&](const Dag& g) {
      for (uint64_t m = 0; m < (1ull << n); ++m) check_all_pairs(g, VertexSet::from_mask(m));
    });
  }
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 5 + static_cast<int>(rng.next_below(2));
    Dag g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.bernoulli(0.5)) g.add_edge(i, j);
    check_all_pairs(g, VertexSet::from_mask(rng.next_below(1ull << n)));
  }
}

TEST_CASE("find_separating_set returns a genuine separator") {
  Rng rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 3 + static_cast<int>(rng.next_below(4));
    Dag g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.bernoulli(0.5)) g.add_edge(i, j);
    CiOracle o(g, VertexSet{});
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < y; ++x) {
        auto s = find_separating_set(o, x, y);
        if (o.adjacent(x, y)) {
          CHECK_FALSE(s.has_value());
        } else {
          REQUIRE(s.has_value());
          CHECK(o.query(x, y, *s));
        }
      }
  }
}
