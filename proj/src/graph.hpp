#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "vertex_set.hpp"

namespace interplan {

// Index of an unordered pair {x, y}, x != y, into a flat triangular array.
inline int pair_index(int x, int y) {
  if (x > y) std::swap(x, y);
  return y * (y - 1) / 2 + x;
}
inline int pair_count(int n) { return n * (n - 1) / 2; }

std::vector<std::string> default_names(int n);

enum class MarkKind : uint8_t { NoKnowledge, Undirected, SemiDirected, Directed, NonAdjacent };

// Knowledge about one unordered vertex pair. `from`/`to` are set for the two
// oriented kinds: Directed means "from is a direct cause of to"; SemiDirected
// means "either from is a direct cause of to, or the pair is non-adjacent"
// (from is the only possible cause).
struct Mark {
  MarkKind kind = MarkKind::NoKnowledge;
  int from = -1;
  int to = -1;

  static Mark no_knowledge() { return {}; }
  static Mark undirected() { return {MarkKind::Undirected, -1, -1}; }
  static Mark non_adjacent() { return {MarkKind::NonAdjacent, -1, -1}; }
  static Mark directed(int from, int to) { return {MarkKind::Directed, from, to}; }
  static Mark semi_directed(int from, int to) { return {MarkKind::SemiDirected, from, to}; }

  // Known marks pin the pair completely; everything else still needs evidence.
  bool known() const { return kind == MarkKind::Directed || kind == MarkKind::NonAdjacent; }
  bool unknown() const { return !known(); }

  friend bool operator==(const Mark& a, const Mark& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == MarkKind::Directed || a.kind == MarkKind::SemiDirected)
      return a.from == b.from && a.to == b.to;
    return true;
  }
  friend bool operator!=(const Mark& a, const Mark& b) { return !(a == b); }
};

std::string describe_mark(const Mark& m);
std::string describe_mark(const Mark& m, const std::vector<std::string>& names);

// Most informative mark consistent with both inputs, which must concern the
// same unordered pair. Throws ConflictError when they contradict each other.
Mark combine_marks(const Mark& a, const Mark& b);

// True iff the mark refinement a -> b is legal, i.e. b carries at least the
// information of a (combine_marks(a, b) == b without conflict).
bool refines(const Mark& a, const Mark& b);

bool is_acyclic(int n, const std::vector<std::pair<int, int>>& edges);

// Directed acyclic graph over a fixed vertex set, with parent and child
// adjacency kept as bitsets for O(1) neighborhood queries.
class Dag {
 public:
  Dag() = default;
  explicit Dag(int n, std::vector<std::string> names = {});

  static Dag from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                        std::vector<std::string> names = {});

  int size() const { return n_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int v) const { return names_[v]; }

  void add_edge(int parent, int child);
  void remove_edge(int parent, int child);
  bool has_edge(int parent, int child) const;
  bool adjacent(int x, int y) const { return has_edge(x, y) || has_edge(y, x); }

  VertexSet parents(int v) const { return parents_[v]; }
  VertexSet children(int v) const { return children_[v]; }
  VertexSet adjacency(int v) const { return parents_[v] | children_[v]; }

  int edge_count() const;
  // Edges in lexicographic (parent, child) order; the canonical serialization.
  std::vector<std::pair<int, int>> edges() const;

  bool acyclic() const;

  // seed plus every ancestor / descendant of it.
  VertexSet ancestors_of(VertexSet seed) const;
  VertexSet descendants_of(VertexSet seed) const;

  // Structure equality; display names are not part of it.
  friend bool operator==(const Dag& a, const Dag& b) {
    return a.n_ == b.n_ && a.parents_ == b.parents_;
  }

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<VertexSet> parents_;
  std::vector<VertexSet> children_;
};

// Removes every edge into an intervened vertex ("edge-breaking"): randomizing
// a variable cuts it off from its normal causes.
Dag manipulate(const Dag& g, VertexSet intervened);

// Mixed graph holding exactly one mark per unordered vertex pair.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;
  explicit KnowledgeGraph(int n, std::vector<std::string> names = {});

  static KnowledgeGraph complete_undirected(int n, std::vector<std::string> names = {});

  int size() const { return n_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int v) const { return names_[v]; }

  const Mark& mark(int x, int y) const;
  void set_mark(int x, int y, Mark m);
  // combine_marks against the stored mark; throws ConflictError on contradiction.
  void combine(int x, int y, const Mark& m);

  bool unknown_adjacent(int x, int y) const { return mark(x, y).unknown(); }
  bool known_adjacent(int x, int y) const;  // Directed or Undirected

  VertexSet unknown_neighbors(int v) const;
  VertexSet vertices_with_unknown_edges() const;
  int known_count() const;

  std::vector<std::pair<int, int>> directed_edges() const;
  bool directed_acyclic() const;

  // Marks only; names are not part of equality.
  friend bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) {
    return a.n_ == b.n_ && a.marks_ == b.marks_;
  }

 private:
  void check_pair(int x, int y) const;

  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<Mark> marks_;
};

// All maximal cliques of the graph whose edges are the unknown-mark pairs,
// enumerated Bron-Kerbosch style with pivoting. Isolated vertices are not
// reported: a vertex without unknown edges needs no experiment. Output is
// sorted by mask for determinism.
std::vector<VertexSet> maximal_unknown_cliques(const KnowledgeGraph& kg);

}  // namespace interplan
