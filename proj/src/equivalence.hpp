#pragma once

#include <functional>
#include <vector>

#include "oracle.hpp"

namespace interplan {

// The raw marks one experiment yields, before combination with any prior
// knowledge. Pairs with both endpoints intervened contribute nothing.
struct ExperimentResult {
  VertexSet intervened;
  std::vector<Mark> derived;  // pair-indexed, see pair_index()

  const Mark& mark(int x, int y) const { return derived[pair_index(x, y)]; }
};

// Runs one experiment against the oracle and derives a mark per pair:
//   - both endpoints intervened: no knowledge;
//   - exactly one endpoint v intervened: adjacency survives only as an edge
//     out of v, so dependence gives Directed(v, other) and independence
//     refutes v -> other, leaving SemiDirected(other, v);
//   - neither intervened: plain adjacency gives Undirected / NonAdjacent, and
//     unshielded colliders among untouched triples are oriented (a vertex is
//     a collider for a non-adjacent pair exactly when it is missing from a
//     separating set of that pair).
ExperimentResult observe_experiment(const CiOracle& o);

// Observational pattern (CPDAG) of the oracle's hidden DAG: skeleton from
// adjacency, unshielded colliders oriented, then closed under the orientation
// rules. Requires an oracle with an empty intervention set.
KnowledgeGraph pattern_from_oracle(const CiOracle& o);

// Meek's four orientation rules applied to Undirected marks until fixpoint.
// SemiDirected and NoKnowledge marks never participate: the rules presuppose
// known adjacency. Throws ConflictError if closing the graph creates a
// directed cycle or an unshielded collider that was not already present.
KnowledgeGraph meek_closure(const KnowledgeGraph& kg);

// Combines one experiment's marks into kg and closes under the orientation
// rules. Knowledge only ever refines; a contradiction with prior marks throws
// ConflictError naming the pair.
KnowledgeGraph update_knowledge(const KnowledgeGraph& kg, VertexSet intervened,
                                const CiOracle& o);

// True iff every mark is Directed or NonAdjacent and the directed marks are
// acyclic, i.e. the graph pins down exactly one causal structure.
bool is_unique(const KnowledgeGraph& kg);

inline constexpr int kDagEnumerationGuard = 6;
inline constexpr uint64_t kMemberGuard = 1ull << 20;

// Every labeled DAG on n vertices, exactly once. Refuses n above the guard
// (the count grows super-exponentially: 25 at n=3, 543 at n=4, 29281 at n=5).
void enumerate_dags(int n, const std::function<void(const Dag&)>& fn,
                    int guard = kDagEnumerationGuard);

// DAGs structurally consistent with the marks: Directed marks are edges,
// NonAdjacent marks are non-edges, Undirected marks are edges of either
// orientation, SemiDirected(x, y) is absent or x -> y, NoKnowledge is free.
// Extensions that would introduce an unshielded collider not already recorded
// as two Directed marks are excluded; orienting an Undirected mark into a
// fresh collider would contradict how the mark was learned. Enumeration walks
// only the unknown marks and refuses when the combination count exceeds the
// guard.
std::vector<Dag> members(const KnowledgeGraph& kg, uint64_t guard = kMemberGuard);
uint64_t count_members(const KnowledgeGraph& kg, uint64_t guard = kMemberGuard);

// Independent route to the pattern: enumerate all DAGs, keep the ones with
// the same conditional-independence signature as `truth`, and read off the
// invariant edges. Pure oracle for cross-checking pattern_from_oracle.
KnowledgeGraph ome_by_enumeration(const Dag& truth, int guard = kDagEnumerationGuard);

// All equivalence classes over n vertices, grouped by CI signature.
std::vector<std::vector<Dag>> ome_classes(int n, int guard = kDagEnumerationGuard);

// Pattern of an explicitly given equivalence class (invariant edges Directed,
// varying edges Undirected, absent edges NonAdjacent).
KnowledgeGraph class_pattern(const std::vector<Dag>& cls);

}  // namespace interplan
