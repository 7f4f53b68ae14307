#pragma once

#include <optional>

#include "graph.hpp"

namespace interplan {

// Standard d-separation test, implemented as a reachability sweep (Bayes-ball
// style) in O(edges) rather than by path enumeration. An independent
// brute-force oracle lives in the test suite.
bool d_separated(const Dag& g, int x, int y, VertexSet conditioning);

// Answers conditional-independence queries for the manipulated distribution
// of a hidden true DAG. Only the manipulated graph is retained; planners see
// nothing but query() and adjacent().
class CiOracle {
 public:
  CiOracle(const Dag& truth, VertexSet intervened)
      : manipulated_(manipulate(truth, intervened)), intervened_(intervened) {}

  int size() const { return manipulated_.size(); }
  VertexSet intervened() const { return intervened_; }
  const std::vector<std::string>& names() const { return manipulated_.names(); }

  // True iff x and y are independent given `conditioning` in the manipulated
  // distribution.
  bool query(int x, int y, VertexSet conditioning) const {
    return d_separated(manipulated_, x, y, conditioning);
  }

  // True iff no conditioning set separates x and y, i.e. the pair is adjacent
  // in the manipulated graph. d-separation is complete, so the graphical
  // check is the honest answer without a subset search; the equivalence is
  // property-tested against exhaustive search.
  bool adjacent(int x, int y) const { return manipulated_.adjacent(x, y); }

  VertexSet adjacency(int v) const { return manipulated_.adjacency(v); }

 private:
  Dag manipulated_;
  VertexSet intervened_;
};

// Some set that separates a non-adjacent pair, found by searching subsets of
// either endpoint's neighborhood in increasing size. For oracle-backed
// queries a separator is guaranteed: one of Pa(x), Pa(y) always works.
// Returns nullopt when the pair is adjacent.
std::optional<VertexSet> find_separating_set(const CiOracle& o, int x, int y);

}  // namespace interplan
