#pragma once

#include <string>
#include <vector>

#include "equivalence.hpp"
#include "planner.hpp"
#include "util.hpp"

namespace interplan {

enum class SamplerKind { Uniform, Dense };
enum class PlannerKind { OptInter, Random, MaxCut };

struct StudyConfig {
  int n = 0;
  SamplerKind sampler = SamplerKind::Uniform;
  double edge_prob = 0.5;  // uniform sampler
  int deletions = 2;       // dense sampler
  uint64_t samples = 0;
  PlannerKind planner = PlannerKind::OptInter;
  PlanOptions plan;
  uint64_t master_seed = 0;
  int guard = 0;  // max experiments per sequence; 0 = full_space_bound(n) + 2
};

// One simulated discovery run: experiments against the oracle of a hidden
// truth until the knowledge graph is unique.
struct StudyRecord {
  Dag truth;
  int max_clique_size = 1;  // largest unknown clique of the initial pattern
  std::vector<VertexSet> experiments;
  int count = 0;
  int bound = 0;  // ceil(log2 max_clique_size), 0 when the pattern is unique
  bool met_bound = true;
  bool guard_exceeded = false;
  uint64_t seed = 0;
};

struct StudyBucket {
  int clique_size = 0;
  uint64_t samples = 0;
  uint64_t total_experiments = 0;
  int max_experiments = 0;
  int bound = 0;
  uint64_t violations = 0;
};

struct StudyTable {
  std::vector<StudyBucket> buckets;  // ascending clique size
  uint64_t violations = 0;

  void add(const StudyRecord& r);
  std::string to_csv() const;  // fixed schema, 6-decimal means
};

struct StudyResult {
  StudyTable table;
  std::string records_csv;  // per-record sidecar: seed,clique_size,count,met_bound
};

// Random topological order, then each forward pair independently with the
// given probability.
Dag sample_dag_uniform(int n, double edge_prob, Rng& rng);

// Complete DAG over a random topological order with `deletions` distinct
// edges removed.
Dag sample_dag_dense(int n, int deletions, Rng& rng);

// Plan / experiment / update until the knowledge graph is unique. Starts from
// the observational pattern of `truth` unless an initial graph is supplied.
// Exceeding `guard` experiments flags the record instead of looping; that
// marks a planner/update bug or a genuine bound violation, never silence.
StudyRecord run_sequence(const Dag& truth, PlannerKind planner, const PlanOptions& opt,
                         int guard, const KnowledgeGraph* initial = nullptr);

StudyResult run_study(const StudyConfig& cfg);

// Runs every DAG on n vertices through run_sequence under both tie-break
// modes and tallies experiments per initial max-clique size.
struct ExhaustiveReport {
  int n = 0;
  uint64_t dags = 0;
  StudyTable table;
};
ExhaustiveReport verify_conjecture_exhaustive(int n, uint64_t seed = 0);

}  // namespace interplan
