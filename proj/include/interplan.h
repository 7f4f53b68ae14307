/*
 * interplan - causal experiment planning over knowledge graphs.
 *
 * C API of the shared library. All objects are opaque handles created and
 * destroyed here; every fallible call returns an ip_status and leaves a
 * human-readable message in ip_last_error() on failure. Vertex subsets are
 * bitmasks (bit v = vertex v in file order); graphs are capped at 64
 * vertices.
 */
#ifndef INTERPLAN_H
#define INTERPLAN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ip_status {
  IP_OK = 0,
  IP_ERR_USAGE = 1,    /* invalid argument or precondition */
  IP_ERR_PARSE = 2,    /* malformed .kg/.dag text or unreadable file */
  IP_ERR_CONFLICT = 3, /* contradictory knowledge */
  IP_ERR_GUARD = 4,    /* enumeration or experiment guard exceeded */
  IP_ERR_INTERNAL = 5
} ip_status;

typedef struct ip_dag ip_dag;
typedef struct ip_kg ip_kg;

/* Message for the calling thread's most recent failing call. */
const char* ip_last_error(void);

void ip_string_free(char* s);
void ip_buffer_free(void* p);

/* ---- DAGs (.dag format: "vertices:" header, then "A -> B" lines) ---- */

ip_status ip_dag_parse(const char* text, ip_dag** out);
ip_status ip_dag_read_file(const char* path, ip_dag** out);
ip_status ip_dag_format(const ip_dag* dag, char** out);
void ip_dag_free(ip_dag* dag);
int ip_dag_vertex_count(const ip_dag* dag);
const char* ip_dag_vertex_name(const ip_dag* dag, int v);

/* ---- Knowledge graphs (.kg format: ->, --, ~>, !!, ?? pair lines) ---- */

ip_status ip_kg_parse(const char* text, ip_kg** out);
ip_status ip_kg_read_file(const char* path, ip_kg** out);
ip_status ip_kg_format(const ip_kg* kg, char** out);
void ip_kg_free(ip_kg* kg);
int ip_kg_vertex_count(const ip_kg* kg);
const char* ip_kg_vertex_name(const ip_kg* kg, int v);

/* 1 iff every pair is directed or non-adjacent and the directed marks are
 * acyclic. */
int ip_kg_is_unique(const ip_kg* kg);

/* Number of DAGs structurally consistent with the marks. Fails with
 * IP_ERR_GUARD when the unknown marks span too many combinations. */
ip_status ip_kg_member_count(const ip_kg* kg, uint64_t* out);

/* Size of the largest clique connected by unknown marks (0 if none). */
int ip_kg_max_unknown_clique(const ip_kg* kg);

/* ceil(log2 of the largest unknown clique); 0 when nothing is unknown. */
int ip_kg_conjectured_bound(const ip_kg* kg);

/* Maximal unknown-edge cliques as bitmasks; free with ip_buffer_free. */
ip_status ip_kg_unknown_cliques(const ip_kg* kg, uint64_t** sets, int* count);

/* Observational pattern of a DAG's equivalence class. */
ip_status ip_ome_from_dag(const ip_dag* truth, ip_kg** out);

/* One simulated experiment: randomize `intervened` in the world described by
 * `truth`, read off the implied independence facts, combine them into kg. */
ip_status ip_kg_update_with_oracle(const ip_kg* kg, const ip_dag* truth, uint64_t intervened,
                                   ip_kg** out);

/* One reported adjacency verdict for a pair under an intervention:
 * dep != 0 means the pair stayed dependent for every conditioning set.
 * Applies the single-pair update rule without orientation propagation; the
 * caller keeps the old handle, so a conflict is a clean rollback. */
ip_status ip_kg_apply_verdict(const ip_kg* kg, uint64_t intervened, int x, int y, int dep,
                              ip_kg** out);

/* Orientation-rule closure (run after all of an experiment's verdicts). */
ip_status ip_kg_close_orientations(const ip_kg* kg, ip_kg** out);

/* ---- Planning ---- */

typedef struct ip_plan_options {
  int max_inter;         /* <= 0: unlimited */
  uint64_t seed;
  int post_process;      /* nonzero: fill the set to resolve extra cliques */
  int lowest_index_ties; /* nonzero: deterministic tie-break */
} ip_plan_options;

/* Greedy clique-splitting intervention set. `trace` (optional) receives a
 * human-readable account: cliques, threshold, per-pick counts, warnings. */
ip_status ip_plan(const ip_kg* kg, const ip_plan_options* opt, uint64_t* out_set, char** trace);

/* ---- Simulation study ---- */

typedef struct ip_study_options {
  int n;
  int sampler; /* 0 = uniform(edge_prob), 1 = dense(deletions) */
  double edge_prob;
  int deletions;
  uint64_t samples;
  int planner; /* 0 = optinter, 1 = random, 2 = maxcut */
  ip_plan_options plan;
  uint64_t master_seed;
  int guard; /* <= 0: floor(log2 n) + 3 */
} ip_study_options;

/* Bucketed CSV table (clique_size,samples,mean_experiments,max_experiments,
 * conjectured_bound,violations) plus a per-record sidecar CSV
 * (seed,clique_size,count,met_bound). Either output pointer may be NULL. */
ip_status ip_run_study(const ip_study_options* opt, char** table_csv, char** records_csv,
                       uint64_t* violations);

/* Runs every DAG on n (<= 5) vertices under both tie-break modes. */
ip_status ip_verify_exhaustive(int n, uint64_t seed, char** table_csv, uint64_t* violations);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* INTERPLAN_H */
