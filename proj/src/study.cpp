#include "study.hpp"

#include <algorithm>
#include <cstdio>

namespace interplan {

Dag sample_dag_uniform(int n, double edge_prob, Rng& rng) {
  if (edge_prob < 0.0 || edge_prob > 1.0)
    throw std::invalid_argument("edge probability must be in [0, 1]");
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  Dag g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge_prob >= 1.0 || (edge_prob > 0.0 && rng.bernoulli(edge_prob)))
        g.add_edge(order[i], order[j]);
  return g;
}

Dag sample_dag_dense(int n, int deletions, Rng& rng) {
  int m = pair_count(n);
  if (deletions < 0 || deletions > m)
    throw std::invalid_argument("deletion count must be in [0, n(n-1)/2]");
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  // Pick the deleted pair slots before building the graph.
  std::vector<int> slots(m);
  for (int i = 0; i < m; ++i) slots[i] = i;
  rng.shuffle(slots);
  std::vector<bool> deleted(m, false);
  for (int i = 0; i < deletions; ++i) deleted[slots[i]] = true;
  Dag g(n);
  int slot = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++slot)
      if (!deleted[slot]) g.add_edge(order[i], order[j]);
  return g;
}

namespace {

VertexSet plan_by_kind(const KnowledgeGraph& kg, PlannerKind kind, const PlanOptions& opt) {
  switch (kind) {
    case PlannerKind::OptInter: return optinter(kg, opt);
    case PlannerKind::Random: return baseline_random(kg, opt);
    case PlannerKind::MaxCut: return baseline_maxcut(kg, opt);
  }
  return {};
}

}  // namespace

StudyRecord run_sequence(const Dag& truth, PlannerKind planner, const PlanOptions& opt,
                         int guard, const KnowledgeGraph* initial) {
  if (guard < 1) throw std::invalid_argument("experiment guard must be positive");
  StudyRecord rec;
  rec.truth = truth;
  rec.seed = opt.seed;

  KnowledgeGraph kg =
      initial ? *initial : pattern_from_oracle(CiOracle(truth, VertexSet{}));
  int cmax = 0;
  for (const VertexSet& c : maximal_unknown_cliques(kg)) cmax = std::max(cmax, c.count());
  rec.max_clique_size = std::max(cmax, 1);
  rec.bound = rec.max_clique_size <= 1 ? 0 : ceil_log2(rec.max_clique_size);

  while (!is_unique(kg)) {
    if (rec.count >= guard) {
      rec.guard_exceeded = true;
      break;
    }
    PlanOptions step = opt;
    step.seed = child_seed(opt.seed, rec.count + 1);
    VertexSet intervention = plan_by_kind(kg, planner, step);
    if (intervention.empty()) {
      // A non-unique graph always has an unknown edge to attack; an empty
      // plan would loop forever, so surface it like a guard failure.
      rec.guard_exceeded = true;
      break;
    }
    kg = update_knowledge(kg, intervention, CiOracle(truth, intervention));
    rec.experiments.push_back(intervention);
    rec.count += 1;
  }
  rec.met_bound = !rec.guard_exceeded && rec.count <= rec.bound;
  return rec;
}

void StudyTable::add(const StudyRecord& r) {
  auto it = std::find_if(buckets.begin(), buckets.end(),
                         [&](const StudyBucket& b) { return b.clique_size == r.max_clique_size; });
  if (it == buckets.end()) {
    StudyBucket b;
    b.clique_size = r.max_clique_size;
    b.bound = r.bound;
    it = buckets.insert(std::upper_bound(buckets.begin(), buckets.end(), b,
                                         [](const StudyBucket& x, const StudyBucket& y) {
                                           return x.clique_size < y.clique_size;
                                         }),
                        b);
  }
  it->samples += 1;
  it->total_experiments += r.count;
  it->max_experiments = std::max(it->max_experiments, r.count);
  if (!r.met_bound) {
    it->violations += 1;
    violations += 1;
  }
}

std::string StudyTable::to_csv() const {
  std::string out = "clique_size,samples,mean_experiments,max_experiments,conjectured_bound,violations\n";
  char line[160];
  for (const StudyBucket& b : buckets) {
    double mean = b.samples ? static_cast<double>(b.total_experiments) / b.samples : 0.0;
    std::snprintf(line, sizeof line, "%d,%llu,%.6f,%d,%d,%llu\n", b.clique_size,
                  static_cast<unsigned long long>(b.samples), mean, b.max_experiments, b.bound,
                  static_cast<unsigned long long>(b.violations));
    out += line;
  }
  return out;
}

StudyResult run_study(const StudyConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("vertex count must be positive");
  if (cfg.samples < 1) throw std::invalid_argument("sample count must be positive");
  if (cfg.guard > 0 && cfg.guard < full_space_bound(cfg.n))
    throw std::invalid_argument("guard must cover at least floor(log2 n) + 1 experiments");
  int guard = cfg.guard > 0 ? cfg.guard : full_space_bound(cfg.n) + 2;

  StudyResult result;
  result.records_csv = "seed,clique_size,count,met_bound\n";
  char line[96];
  for (uint64_t i = 0; i < cfg.samples; ++i) {
    uint64_t seed = child_seed(cfg.master_seed, i);
    Rng rng(seed);
    Dag truth = cfg.sampler == SamplerKind::Uniform
                    ? sample_dag_uniform(cfg.n, cfg.edge_prob, rng)
                    : sample_dag_dense(cfg.n, cfg.deletions, rng);
    PlanOptions opt = cfg.plan;
    opt.seed = seed;
    StudyRecord rec = run_sequence(truth, cfg.planner, opt, guard);
    result.table.add(rec);
    std::snprintf(line, sizeof line, "%llu,%d,%d,%d\n",
                  static_cast<unsigned long long>(seed), rec.max_clique_size, rec.count,
                  rec.met_bound ? 1 : 0);
    result.records_csv += line;
  }
  return result;
}

ExhaustiveReport verify_conjecture_exhaustive(int n, uint64_t seed) {
  if (n < 1 || n > 5)
    throw std::invalid_argument("exhaustive verification is limited to 1 <= n <= 5");
  ExhaustiveReport report;
  report.n = n;
  int guard = full_space_bound(n) + 2;
  enumerate_dags(n, [&](const Dag& truth) {
    report.dags += 1;
    PlanOptions det;
    det.lowest_index_ties = true;
    report.table.add(run_sequence(truth, PlannerKind::OptInter, det, guard));
    PlanOptions seeded;
    seeded.seed = child_seed(seed, report.dags);
    report.table.add(run_sequence(truth, PlannerKind::OptInter, seeded, guard));
  });
  return report;
}

}  // namespace interplan
