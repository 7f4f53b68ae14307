#pragma once

#include <string>
#include <vector>

#include "graph.hpp"

namespace interplan {

struct PlanOptions {
  int max_inter = 0;        // maximum intervention-set size; 0 = unlimited
  uint64_t seed = 0;        // drives tie-breaks; equal seeds, equal output
  bool post_process = true; // fill the set to resolve additional cliques
  bool lowest_index_ties = false;  // deterministic tie-break instead of seeded

  // Optional preference ranks for the deterministic tie-break (lower rank
  // wins); identity order when null. Lets tests check relabeling invariance.
  const std::vector<int>* tie_order = nullptr;
};

// Step-by-step account of a planner run, for diagnostics.
struct PlanTrace {
  std::vector<VertexSet> cliques;   // all maximal unknown-edge cliques
  int cmax = 0;
  int h = 0;
  std::vector<VertexSet> relevant;  // cliques larger than h
  struct Pick {
    int vertex = -1;
    VertexSet clique;               // the clique being filled (empty for post-process)
    std::vector<std::pair<int, int>> counts;  // (vertex, membership count) at selection
    bool post = false;
  };
  std::vector<Pick> picks;
  std::vector<VertexSet> unresolved;  // cliques still unresolved at return

  std::string format(const std::vector<std::string>& names) const;
};

// h = 2^(ceil(log2 cmax) - 1): the largest power of two strictly below cmax
// (half of cmax when cmax is itself a power of two). Requires cmax >= 2.
int halving_threshold(int cmax);

// ceil(log2 of the largest unknown-edge clique size); 0 when no unknown
// clique of size >= 2 exists.
int conjectured_bound(const KnowledgeGraph& kg);

// floor(log2 n) + 1: worst case over the unrestricted space of all DAGs.
int full_space_bound(int n);

// Sum of (|C| - 1) over a greedily packed family of pairwise-disjoint maximal
// unknown cliques (largest first, ties by lowest vertex). Bounds the number
// of single-intervention experiments.
int single_intervention_bound(const KnowledgeGraph& kg);

// Greedy intervention-set selection. Splits every unknown-edge clique larger
// than the halving threshold h so that at most h vertices stay on either
// side, preferring vertices shared by many unresolved cliques. Returns the
// empty set when the graph has no unknown-edge clique.
VertexSet optinter(const KnowledgeGraph& kg, const PlanOptions& opt, PlanTrace* trace = nullptr);

// Control planner: a uniformly random half of the vertices that touch an
// unknown edge.
VertexSet baseline_random(const KnowledgeGraph& kg, const PlanOptions& opt);

// Control planner: seeded local-search bipartition of the unknown-edge graph
// maximizing the cut; the smaller side (capped at max_inter) is intervened.
VertexSet baseline_maxcut(const KnowledgeGraph& kg, const PlanOptions& opt);

}  // namespace interplan
