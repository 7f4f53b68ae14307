// extern "C" face of the library: opaque handles over the core types, with
// exceptions mapped to status codes and a thread-local error message.

#include "interplan.h"

#include <cstring>
#include <new>
#include <string>

#include "equivalence.hpp"
#include "io.hpp"
#include "planner.hpp"
#include "study.hpp"

using namespace interplan;

struct ip_dag {
  Dag g;
};
struct ip_kg {
  KnowledgeGraph g;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
ip_status guarded(F&& f) {
  try {
    f();
    return IP_OK;
  } catch (const ParseError& e) {
    g_last_error = e.what();
    return IP_ERR_PARSE;
  } catch (const ConflictError& e) {
    g_last_error = e.what();
    return IP_ERR_CONFLICT;
  } catch (const GuardError& e) {
    g_last_error = e.what();
    return IP_ERR_GUARD;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return IP_ERR_USAGE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return IP_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ip_status require(bool ok, const char* msg) {
  if (ok) return IP_OK;
  g_last_error = msg;
  return IP_ERR_USAGE;
}

VertexSet set_from_mask(uint64_t mask, int n) {
  VertexSet s = VertexSet::from_mask(mask);
  if (!s.subset_of(VertexSet::full(n)))
    throw std::invalid_argument("vertex mask references vertices outside the graph");
  return s;
}

PlanOptions convert(const ip_plan_options* opt) {
  PlanOptions out;
  if (opt) {
    out.max_inter = opt->max_inter > 0 ? opt->max_inter : 0;
    out.seed = opt->seed;
    out.post_process = opt->post_process != 0;
    out.lowest_index_ties = opt->lowest_index_ties != 0;
  }
  return out;
}

}  // namespace

extern "C" {

const char* ip_last_error(void) { return g_last_error.c_str(); }

void ip_string_free(char* s) { delete[] s; }
void ip_buffer_free(void* p) { ::operator delete[](p); }

ip_status ip_dag_parse(const char* text, ip_dag** out) {
  if (auto st = require(text && out, "null argument")) return st;
  return guarded([&] { *out = new ip_dag{parse_dag(text)}; });
}

ip_status ip_dag_read_file(const char* path, ip_dag** out) {
  if (auto st = require(path && out, "null argument")) return st;
  return guarded([&] { *out = new ip_dag{read_dag_file(path)}; });
}

ip_status ip_dag_format(const ip_dag* dag, char** out) {
  if (auto st = require(dag && out, "null argument")) return st;
  return guarded([&] { *out = dup_string(format_dag(dag->g)); });
}

void ip_dag_free(ip_dag* dag) { delete dag; }

int ip_dag_vertex_count(const ip_dag* dag) { return dag ? dag->g.size() : 0; }

const char* ip_dag_vertex_name(const ip_dag* dag, int v) {
  if (!dag || v < 0 || v >= dag->g.size()) return nullptr;
  return dag->g.name(v).c_str();
}

ip_status ip_kg_parse(const char* text, ip_kg** out) {
  if (auto st = require(text && out, "null argument")) return st;
  return guarded([&] { *out = new ip_kg{parse_kg(text)}; });
}

ip_status ip_kg_read_file(const char* path, ip_kg** out) {
  if (auto st = require(path && out, "null argument")) return st;
  return guarded([&] { *out = new ip_kg{read_kg_file(path)}; });
}

ip_status ip_kg_format(const ip_kg* kg, char** out) {
  if (auto st = require(kg && out, "null argument")) return st;
  return guarded([&] { *out = dup_string(format_kg(kg->g)); });
}

void ip_kg_free(ip_kg* kg) { delete kg; }

int ip_kg_vertex_count(const ip_kg* kg) { return kg ? kg->g.size() : 0; }

const char* ip_kg_vertex_name(const ip_kg* kg, int v) {
  if (!kg || v < 0 || v >= kg->g.size()) return nullptr;
  return kg->g.name(v).c_str();
}

int ip_kg_is_unique(const ip_kg* kg) { return kg && is_unique(kg->g) ? 1 : 0; }

ip_status ip_kg_member_count(const ip_kg* kg, uint64_t* out) {
  if (auto st = require(kg && out, "null argument")) return st;
  return guarded([&] { *out = count_members(kg->g); });
}

int ip_kg_max_unknown_clique(const ip_kg* kg) {
  if (!kg) return 0;
  int cmax = 0;
  for (const VertexSet& c : maximal_unknown_cliques(kg->g))
    if (c.count() > cmax) cmax = c.count();
  return cmax;
}

int ip_kg_conjectured_bound(const ip_kg* kg) { return kg ? conjectured_bound(kg->g) : 0; }

ip_status ip_kg_unknown_cliques(const ip_kg* kg, uint64_t** sets, int* count) {
  if (auto st = require(kg && sets && count, "null argument")) return st;
  return guarded([&] {
    auto cliques = maximal_unknown_cliques(kg->g);
    auto* out = static_cast<uint64_t*>(::operator new[](sizeof(uint64_t) * cliques.size()));
    for (size_t i = 0; i < cliques.size(); ++i) out[i] = cliques[i].mask();
    *sets = out;
    *count = static_cast<int>(cliques.size());
  });
}

ip_status ip_ome_from_dag(const ip_dag* truth, ip_kg** out) {
  if (auto st = require(truth && out, "null argument")) return st;
  return guarded([&] {
    *out = new ip_kg{pattern_from_oracle(CiOracle(truth->g, VertexSet{}))};
  });
}

ip_status ip_kg_update_with_oracle(const ip_kg* kg, const ip_dag* truth, uint64_t intervened,
                                   ip_kg** out) {
  if (auto st = require(kg && truth && out, "null argument")) return st;
  return guarded([&] {
    VertexSet iv = set_from_mask(intervened, truth->g.size());
    *out = new ip_kg{update_knowledge(kg->g, iv, CiOracle(truth->g, iv))};
  });
}

ip_status ip_kg_apply_verdict(const ip_kg* kg, uint64_t intervened, int x, int y, int dep,
                              ip_kg** out) {
  if (auto st = require(kg && out, "null argument")) return st;
  return guarded([&] {
    int n = kg->g.size();
    if (x < 0 || x >= n || y < 0 || y >= n || x == y)
      throw std::invalid_argument("verdict needs two distinct vertices of the graph");
    VertexSet iv = set_from_mask(intervened, n);
    bool xi = iv.contains(x), yi = iv.contains(y);
    Mark m;
    if (xi && yi) {
      m = Mark::no_knowledge();
    } else if (xi || yi) {
      int v = xi ? x : y;
      int u = xi ? y : x;
      m = dep ? Mark::directed(v, u) : Mark::semi_directed(u, v);
    } else {
      m = dep ? Mark::undirected() : Mark::non_adjacent();
    }
    KnowledgeGraph next = kg->g;
    try {
      next.combine(x, y, m);
    } catch (const ConflictError&) {
      throw ConflictError("pair " + kg->g.name(x) + ", " + kg->g.name(y) + ": " +
                          describe_mark(kg->g.mark(x, y), kg->g.names()) + " vs " +
                          describe_mark(m, kg->g.names()));
    }
    *out = new ip_kg{std::move(next)};
  });
}

ip_status ip_kg_close_orientations(const ip_kg* kg, ip_kg** out) {
  if (auto st = require(kg && out, "null argument")) return st;
  return guarded([&] { *out = new ip_kg{meek_closure(kg->g)}; });
}

ip_status ip_plan(const ip_kg* kg, const ip_plan_options* opt, uint64_t* out_set, char** trace) {
  if (auto st = require(kg && out_set, "null argument")) return st;
  return guarded([&] {
    PlanTrace t;
    VertexSet picked = optinter(kg->g, convert(opt), trace ? &t : nullptr);
    *out_set = picked.mask();
    if (trace) *trace = dup_string(t.format(kg->g.names()));
  });
}

ip_status ip_run_study(const ip_study_options* opt, char** table_csv, char** records_csv,
                       uint64_t* violations) {
  if (auto st = require(opt != nullptr, "null argument")) return st;
  return guarded([&] {
    StudyConfig cfg;
    cfg.n = opt->n;
    cfg.sampler = opt->sampler == 1 ? SamplerKind::Dense : SamplerKind::Uniform;
    cfg.edge_prob = opt->edge_prob;
    cfg.deletions = opt->deletions;
    cfg.samples = opt->samples;
    cfg.planner = opt->planner == 1   ? PlannerKind::Random
                  : opt->planner == 2 ? PlannerKind::MaxCut
                                      : PlannerKind::OptInter;
    cfg.plan = convert(&opt->plan);
    cfg.master_seed = opt->master_seed;
    cfg.guard = opt->guard;
    StudyResult res = run_study(cfg);
    if (table_csv) *table_csv = dup_string(res.table.to_csv());
    if (records_csv) *records_csv = dup_string(res.records_csv);
    if (violations) *violations = res.table.violations;
  });
}

ip_status ip_verify_exhaustive(int n, uint64_t seed, char** table_csv, uint64_t* violations) {
  return guarded([&] {
    ExhaustiveReport report = verify_conjecture_exhaustive(n, seed);
    if (table_csv) *table_csv = dup_string(report.table.to_csv());
    if (violations) *violations = report.table.violations;
  });
}

}  // extern "C"
