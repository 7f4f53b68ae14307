#include "equivalence.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace interplan {

ExperimentResult observe_experiment(const CiOracle& o) {
  int n = o.size();
  VertexSet iv = o.intervened();
  ExperimentResult res{iv, std::vector<Mark>(pair_count(n))};

  auto set = [&](int x, int y, const Mark& m) { res.derived[pair_index(x, y)] = m; };

  for (int y = 0; y < n; ++y)
    for (int x = 0; x < y; ++x) {
      bool xi = iv.contains(x), yi = iv.contains(y);
      if (xi && yi) {
        set(x, y, Mark::no_knowledge());
      } else if (xi || yi) {
        int v = xi ? x : y;   // the intervened endpoint
        int u = xi ? y : x;
        set(x, y, o.adjacent(v, u) ? Mark::directed(v, u) : Mark::semi_directed(u, v));
      } else {
        set(x, y, o.adjacent(x, y) ? Mark::undirected() : Mark::non_adjacent());
      }
    }

  // Collider orientation among untouched triples.
  for (int z = 0; z < n; ++z) {
    if (iv.contains(z)) continue;
    for (int x = 0; x < z; ++x) {
      if (iv.contains(x) || o.adjacent(x, z)) continue;
      auto sep = find_separating_set(o, x, z);
      if (!sep) throw ConflictError("oracle reported a non-separable non-adjacent pair");
      for (int y = 0; y < n; ++y) {
        if (y == x || y == z || iv.contains(y) || sep->contains(y)) continue;
        if (!o.adjacent(x, y) || !o.adjacent(z, y)) continue;
        res.derived[pair_index(x, y)] =
            combine_marks(res.mark(x, y), Mark::directed(x, y));
        res.derived[pair_index(z, y)] =
            combine_marks(res.mark(z, y), Mark::directed(z, y));
      }
    }
  }
  return res;
}

namespace {

using Collider = std::tuple<int, int, int>;  // (x, y, z), x < z, x -> y <- z

std::vector<Collider> unshielded_colliders(const KnowledgeGraph& kg) {
  std::vector<Collider> out;
  int n = kg.size();
  for (int y = 0; y < n; ++y) {
    VertexSet in;
    for (int v = 0; v < n; ++v) {
      if (v == y) continue;
      const Mark& m = kg.mark(v, y);
      if (m.kind == MarkKind::Directed && m.from == v) in.add(v);
    }
    in.for_each([&](int x) {
      in.for_each([&](int z) {
        if (x < z && kg.mark(x, z).kind == MarkKind::NonAdjacent) out.emplace_back(x, y, z);
      });
    });
  }
  return out;
}

}  // namespace

KnowledgeGraph meek_closure(const KnowledgeGraph& kg) {
  KnowledgeGraph g = kg;
  int n = g.size();

  auto directed = [&](int a, int b) {
    const Mark& m = g.mark(a, b);
    return m.kind == MarkKind::Directed && m.from == a && m.to == b;
  };
  auto undirected = [&](int a, int b) { return g.mark(a, b).kind == MarkKind::Undirected; };
  auto non_adjacent = [&](int a, int b) { return g.mark(a, b).kind == MarkKind::NonAdjacent; };
  auto adjacent = [&](int a, int b) { return g.known_adjacent(a, b); };

  auto before = unshielded_colliders(g);

  // a -> b may only be committed if it neither manufactures an unshielded
  // collider at b nor closes a directed cycle. For marks learned from a
  // genuine equivalence class the rules never trip either guard (their
  // soundness theorem), so the guards only matter for graphs that no
  // observation could have produced, where the edge is left open instead of
  // guessed.
  auto orientation_safe = [&](int a, int b) {
    for (int z = 0; z < n; ++z)
      if (z != a && z != b && directed(z, b) && non_adjacent(z, a)) return false;
    VertexSet reached = VertexSet::of({b});
    std::vector<int> work{b};
    while (!work.empty()) {
      int v = work.back();
      work.pop_back();
      if (v == a) return false;
      for (int w = 0; w < n; ++w)
        if (w != v && directed(v, w) && !reached.contains(w)) {
          reached.add(w);
          work.push_back(w);
        }
    }
    return true;
  };

  // Should a -> b be added? Rules 1-4; each is sound given that the true
  // graph lies in the class the marks were learned from.
  auto implied = [&](int a, int b) {
    // R1: c -> a, with c and b non-adjacent.
    for (int c = 0; c < n; ++c)
      if (c != a && c != b && directed(c, a) && non_adjacent(c, b)) return true;
    // R2: a -> c -> b.
    for (int c = 0; c < n; ++c)
      if (c != a && c != b && directed(a, c) && directed(c, b)) return true;
    // R3: a - c -> b and a - d -> b with c, d non-adjacent.
    for (int c = 0; c < n; ++c) {
      if (c == a || c == b || !undirected(a, c) || !directed(c, b)) continue;
      for (int d = c + 1; d < n; ++d)
        if (d != a && d != b && undirected(a, d) && directed(d, b) && non_adjacent(c, d))
          return true;
    }
    // R4: a - c -> d -> b with c, b non-adjacent and a, d adjacent.
    for (int c = 0; c < n; ++c) {
      if (c == a || c == b || !undirected(a, c) || !non_adjacent(c, b)) continue;
      for (int d = 0; d < n; ++d)
        if (d != a && d != b && d != c && directed(c, d) && directed(d, b) && adjacent(a, d))
          return true;
    }
    return false;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b || !undirected(a, b)) continue;
        if (implied(a, b) && orientation_safe(a, b)) {
          g.set_mark(a, b, Mark::directed(a, b));
          changed = true;
        }
      }
  }

  if (!g.directed_acyclic())
    throw ConflictError("orientation propagation produced a directed cycle");
  auto after = unshielded_colliders(g);
  for (const auto& c : after)
    if (std::find(before.begin(), before.end(), c) == before.end()) {
      auto [x, y, z] = c;
      throw ConflictError("orientation propagation created an unshielded collider " +
                          g.name(x) + " -> " + g.name(y) + " <- " + g.name(z));
    }
  return g;
}

KnowledgeGraph pattern_from_oracle(const CiOracle& o) {
  if (!o.intervened().empty())
    throw std::invalid_argument("the pattern is defined for an observational oracle");
  ExperimentResult res = observe_experiment(o);
  KnowledgeGraph kg(o.size(), o.names());
  int n = kg.size();
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < y; ++x) kg.set_mark(x, y, res.mark(x, y));
  return meek_closure(kg);
}

KnowledgeGraph update_knowledge(const KnowledgeGraph& kg, VertexSet intervened,
                                const CiOracle& o) {
  if (o.size() != kg.size())
    throw std::invalid_argument("oracle and knowledge graph sizes differ");
  if (o.intervened() != intervened)
    throw std::invalid_argument("oracle was built for a different intervention set");
  ExperimentResult res = observe_experiment(o);
  KnowledgeGraph next = kg;
  int n = kg.size();
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < y; ++x) {
      try {
        next.combine(x, y, res.mark(x, y));
      } catch (const ConflictError& e) {
        throw ConflictError("pair " + kg.name(x) + ", " + kg.name(y) + ": " + e.what());
      }
    }
  return meek_closure(next);
}

bool is_unique(const KnowledgeGraph& kg) {
  int n = kg.size();
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < y; ++x)
      if (kg.mark(x, y).unknown()) return false;
  return kg.directed_acyclic();
}

namespace {

// Depth-first enumeration over per-pair choices with incremental cycle
// pruning. choice: 0 = no edge, 1 = lo -> hi, 2 = hi -> lo.
struct PairChoice {
  int lo, hi;
  std::vector<int> options;
};

bool reaches(const Dag& g, int from, int to) {
  return g.descendants_of(VertexSet::of({from})).contains(to);
}

void walk_choices(Dag& g, std::vector<PairChoice>& pairs, size_t idx,
                  const std::function<void(const Dag&)>& fn) {
  if (idx == pairs.size()) {
    fn(g);
    return;
  }
  const auto& pc = pairs[idx];
  for (int opt : pc.options) {
    if (opt == 0) {
      walk_choices(g, pairs, idx + 1, fn);
    } else {
      int from = opt == 1 ? pc.lo : pc.hi;
      int to = opt == 1 ? pc.hi : pc.lo;
      if (reaches(g, to, from)) continue;  // would close a cycle
      g.add_edge(from, to);
      walk_choices(g, pairs, idx + 1, fn);
      g.remove_edge(from, to);
    }
  }
}

}  // namespace

void enumerate_dags(int n, const std::function<void(const Dag&)>& fn, int guard) {
  if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
  if (n > guard)
    throw GuardError("DAG enumeration refused for n = " + std::to_string(n) +
                     " (guard " + std::to_string(guard) + ")");
  std::vector<PairChoice> pairs;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < y; ++x) pairs.push_back({x, y, {0, 1, 2}});
  Dag g(n);
  walk_choices(g, pairs, 0, fn);
}

namespace {

void walk_members(const KnowledgeGraph& kg, uint64_t guard,
                  const std::function<void(const Dag&)>& fn) {
  int n = kg.size();
  Dag g(n, kg.names());
  std::vector<PairChoice> pairs;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < y; ++x) {
      const Mark& m = kg.mark(x, y);
      switch (m.kind) {
        case MarkKind::Directed:
          g.add_edge(m.from, m.to);
          break;
        case MarkKind::NonAdjacent:
          break;
        case MarkKind::Undirected:
          pairs.push_back({x, y, {1, 2}});
          break;
        case MarkKind::SemiDirected:
          pairs.push_back({x, y, {0, m.from == x ? 1 : 2}});
          break;
        case MarkKind::NoKnowledge:
          pairs.push_back({x, y, {0, 1, 2}});
          break;
      }
    }
  uint64_t combos = 1;
  for (const auto& pc : pairs) {
    combos *= pc.options.size();
    if (combos > guard)
      throw GuardError("member enumeration would exceed the combination guard");
  }
  if (!g.acyclic()) return;  // contradictory fixed marks admit no member

  auto check_and_emit = [&](const Dag& cand) {
    // Reject extensions whose unshielded colliders were not already known:
    // an Undirected (or weaker) mark was learned from data in which such a
    // collider would have shown up.
    for (int y = 0; y < n; ++y) {
      VertexSet ps = cand.parents(y);
      bool bad = false;
      ps.for_each([&](int x) {
        ps.for_each([&](int z) {
          if (x >= z || cand.adjacent(x, z) || bad) return;
          const Mark& mx = kg.mark(x, y);
          const Mark& mz = kg.mark(z, y);
          bool known = mx.kind == MarkKind::Directed && mx.from == x &&
                       mz.kind == MarkKind::Directed && mz.from == z;
          if (!known) bad = true;
        });
      });
      if (bad) return;
    }
    fn(cand);
  };
  walk_choices(g, pairs, 0, check_and_emit);
}

}  // namespace

std::vector<Dag> members(const KnowledgeGraph& kg, uint64_t guard) {
  std::vector<Dag> out;
  walk_members(kg, guard, [&](const Dag& g) { out.push_back(g); });
  return out;
}

uint64_t count_members(const KnowledgeGraph& kg, uint64_t guard) {
  uint64_t count = 0;
  walk_members(kg, guard, [&](const Dag&) { ++count; });
  return count;
}

namespace {

// One bit per (pair, conditioning set) d-separation fact.
std::vector<uint64_t> ci_signature(const Dag& g) {
  int n = g.size();
  std::vector<uint64_t> bits;
  uint64_t word = 0;
  int used = 0;
  auto push = [&](bool b) {
    word = word << 1 | (b ? 1 : 0);
    if (++used == 64) {
      bits.push_back(word);
      word = 0;
      used = 0;
    }
  };
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < y; ++x) {
      VertexSet rest = VertexSet::full(n).without(x).without(y);
      std::vector<int> others;
      rest.for_each([&](int v) { others.push_back(v); });
      for (uint64_t m = 0; m < (1ull << others.size()); ++m) {
        VertexSet s;
        for (size_t i = 0; i < others.size(); ++i)
          if (m >> i & 1) s.add(others[i]);
        push(d_separated(g, x, y, s));
      }
    }
  if (used > 0) bits.push_back(word);
  return bits;
}

}  // namespace

KnowledgeGraph class_pattern(const std::vector<Dag>& cls) {
  if (cls.empty()) throw std::invalid_argument("empty equivalence class");
  int n = cls.front().size();
  KnowledgeGraph kg(n, cls.front().names());
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < y; ++x) {
      int fwd = 0, bwd = 0;
      for (const Dag& g : cls) {
        if (g.has_edge(x, y)) ++fwd;
        if (g.has_edge(y, x)) ++bwd;
      }
      int total = static_cast<int>(cls.size());
      if (fwd + bwd == 0)
        kg.set_mark(x, y, Mark::non_adjacent());
      else if (fwd == total)
        kg.set_mark(x, y, Mark::directed(x, y));
      else if (bwd == total)
        kg.set_mark(x, y, Mark::directed(y, x));
      else if (fwd + bwd == total)
        kg.set_mark(x, y, Mark::undirected());
      else
        throw ConflictError("class members disagree on the skeleton");
    }
  return kg;
}

KnowledgeGraph ome_by_enumeration(const Dag& truth, int guard) {
  auto sig = ci_signature(truth);
  std::vector<Dag> cls;
  enumerate_dags(truth.size(), [&](const Dag& g) {
    if (ci_signature(g) == sig) cls.push_back(g);
  }, guard);
  KnowledgeGraph kg = class_pattern(cls);
  // Preserve the truth's display names.
  KnowledgeGraph named(truth.size(), truth.names());
  for (int y = 0; y < truth.size(); ++y)
    for (int x = 0; x < y; ++x) named.set_mark(x, y, kg.mark(x, y));
  return named;
}

std::vector<std::vector<Dag>> ome_classes(int n, int guard) {
  std::map<std::vector<uint64_t>, std::vector<Dag>> groups;
  enumerate_dags(n, [&](const Dag& g) { groups[ci_signature(g)].push_back(g); }, guard);
  std::vector<std::vector<Dag>> out;
  out.reserve(groups.size());
  for (auto& [sig, cls] : groups) out.push_back(std::move(cls));
  return out;
}

}  // namespace interplan
