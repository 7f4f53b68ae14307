#include "planner.hpp"

#include <algorithm>
#include <climits>

#include "util.hpp"

namespace interplan {

int halving_threshold(int cmax) {
  if (cmax < 2) throw std::invalid_argument("halving threshold needs a clique of size >= 2");
  return 1 << (ceil_log2(cmax) - 1);
}

int conjectured_bound(const KnowledgeGraph& kg) {
  int cmax = 0;
  for (const VertexSet& c : maximal_unknown_cliques(kg)) cmax = std::max(cmax, c.count());
  return cmax < 2 ? 0 : ceil_log2(cmax);
}

int full_space_bound(int n) {
  if (n < 1) throw std::invalid_argument("vertex count must be positive");
  return floor_log2(n) + 1;
}

namespace {

int rank_of(int v, const PlanOptions& opt) {
  return opt.tie_order ? (*opt.tie_order)[v] : v;
}

// Lexicographic comparison of cliques by rank-sorted vertex lists.
bool clique_lex_less(VertexSet a, VertexSet b, const PlanOptions& opt) {
  std::vector<int> ra, rb;
  a.for_each([&](int v) { ra.push_back(rank_of(v, opt)); });
  b.for_each([&](int v) { rb.push_back(rank_of(v, opt)); });
  std::sort(ra.begin(), ra.end());
  std::sort(rb.begin(), rb.end());
  return ra < rb;
}

int pick_tied(const std::vector<int>& tied, const PlanOptions& opt, Rng& rng) {
  if (tied.size() == 1) return tied.front();
  if (opt.lowest_index_ties) {
    return *std::min_element(tied.begin(), tied.end(), [&](int a, int b) {
      return rank_of(a, opt) < rank_of(b, opt);
    });
  }
  return tied[rng.next_below(tied.size())];
}

std::string set_to_string(VertexSet s, const std::vector<std::string>& names) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](int v) {
    if (!first) out += ",";
    out += names[v];
    first = false;
  });
  return out + "}";
}

}  // namespace

int single_intervention_bound(const KnowledgeGraph& kg) {
  auto cliques = maximal_unknown_cliques(kg);
  PlanOptions identity;
  std::sort(cliques.begin(), cliques.end(), [&](VertexSet a, VertexSet b) {
    if (a.count() != b.count()) return a.count() > b.count();
    return clique_lex_less(a, b, identity);
  });
  VertexSet used;
  int sum = 0;
  for (VertexSet c : cliques)
    if (!c.intersects(used)) {
      used = used | c;
      sum += c.count() - 1;
    }
  return sum;
}

VertexSet optinter(const KnowledgeGraph& kg, const PlanOptions& opt, PlanTrace* trace) {
  auto cliques = maximal_unknown_cliques(kg);
  if (trace) {
    *trace = PlanTrace{};
    trace->cliques = cliques;
  }
  if (cliques.empty()) return {};

  int n = kg.size();
  int cmax = 0;
  for (const VertexSet& c : cliques) cmax = std::max(cmax, c.count());
  int h = halving_threshold(cmax);

  std::vector<VertexSet> relevant;
  for (const VertexSet& c : cliques)
    if (c.count() > h) relevant.push_back(c);
  if (trace) {
    trace->cmax = cmax;
    trace->h = h;
    trace->relevant = relevant;
  }

  std::vector<bool> resolved(relevant.size(), false);
  std::vector<bool> admissible(n, true);
  VertexSet picked;
  int cap = opt.max_inter > 0 ? opt.max_inter : n;
  Rng rng(opt.seed);

  auto membership_count = [&](int v) {
    int count = 0;
    for (size_t i = 0; i < relevant.size(); ++i)
      if (!resolved[i] && relevant[i].contains(v)) ++count;
    return count;
  };

  auto bookkeeping = [&]() {
    for (size_t i = 0; i < relevant.size(); ++i) {
      int inside = (relevant[i] & picked).count();
      if (inside >= relevant[i].count() - h) resolved[i] = true;
      if (inside >= h)
        relevant[i].minus(picked).for_each([&](int u) { admissible[u] = false; });
    }
  };

  // Fill one clique at a time, largest first, re-sorting after each clique.
  for (;;) {
    std::vector<size_t> order;
    for (size_t i = 0; i < relevant.size(); ++i)
      if (!resolved[i]) order.push_back(i);
    if (order.empty()) break;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      if (relevant[a].count() != relevant[b].count())
        return relevant[a].count() > relevant[b].count();
      int ia = 0, ib = 0;
      relevant[a].for_each([&](int v) { ia += admissible[v] ? 0 : 1; });
      relevant[b].for_each([&](int v) { ib += admissible[v] ? 0 : 1; });
      if (ia != ib) return ia > ib;  // most inadmissible vertices first
      return clique_lex_less(relevant[a], relevant[b], opt);
    });

    bool picked_any = false;
    for (size_t ci : order) {
      VertexSet c = relevant[ci];
      bool progressed = false;
      while (static_cast<int>(picked.count()) < cap &&
             (c & picked).count() < c.count() - h && !resolved[ci]) {
        std::vector<int> candidates;
        c.minus(picked).for_each([&](int v) {
          if (admissible[v]) candidates.push_back(v);
        });
        if (candidates.empty()) break;
        int best = -1;
        std::vector<int> tied;
        std::vector<std::pair<int, int>> counts;
        for (int v : candidates) {
          int count = membership_count(v);
          counts.emplace_back(v, count);
          if (count > best) {
            best = count;
            tied.clear();
          }
          if (count == best) tied.push_back(v);
        }
        int v = pick_tied(tied, opt, rng);
        picked.add(v);
        progressed = true;
        if (trace) trace->picks.push_back({v, c, counts, false});
        bookkeeping();
      }
      if (progressed) {
        picked_any = true;
        break;
      }
    }
    if (!picked_any) break;
  }

  // Post-process: spend leftover budget on cliques the main loop did not
  // touch (sizes at or below h), each toward its own halving target, without
  // pushing any clique past the target the main loop was protecting.
  if (opt.post_process) {
    auto target = [&](VertexSet c) {
      return c.count() > h ? c.count() - h : c.count() - halving_threshold(c.count());
    };
    auto blocked = [&](int v) {
      for (const VertexSet& d : cliques)
        if (d.contains(v) && (d & picked).count() >= target(d)) return true;
      return false;
    };
    std::vector<VertexSet> order = cliques;
    std::sort(order.begin(), order.end(), [&](VertexSet a, VertexSet b) {
      if (a.count() != b.count()) return a.count() > b.count();
      return clique_lex_less(a, b, opt);
    });
    bool changed = true;
    while (changed && static_cast<int>(picked.count()) < cap) {
      changed = false;
      for (VertexSet c : order) {
        while (static_cast<int>(picked.count()) < cap && (c & picked).count() < target(c)) {
          std::vector<int> candidates;
          c.minus(picked).for_each([&](int v) {
            if (admissible[v] && !blocked(v)) candidates.push_back(v);
          });
          if (candidates.empty()) break;
          int best = -1;
          std::vector<int> tied;
          for (int v : candidates) {
            int helps = 0;
            for (const VertexSet& d : cliques)
              if (d.contains(v) && (d & picked).count() < target(d)) ++helps;
            if (helps > best) {
              best = helps;
              tied.clear();
            }
            if (helps == best) tied.push_back(v);
          }
          int v = pick_tied(tied, opt, rng);
          picked.add(v);
          changed = true;
          if (trace) trace->picks.push_back({v, c, {}, true});
          bookkeeping();
        }
      }
    }
  }

  if (trace) {
    for (size_t i = 0; i < relevant.size(); ++i)
      if (!resolved[i]) trace->unresolved.push_back(relevant[i]);
    for (const VertexSet& c : cliques) {
      if (c.count() > h) continue;
      int own = c.count() - halving_threshold(c.count());
      if ((c & picked).count() < own) trace->unresolved.push_back(c);
    }
  }
  return picked;
}

std::string PlanTrace::format(const std::vector<std::string>& names) const {
  std::string out = "cliques:";
  for (VertexSet c : cliques) out += " " + set_to_string(c, names);
  out += "\ncmax: " + std::to_string(cmax) + "  h: " + std::to_string(h) + "\nrelevant:";
  for (VertexSet c : relevant) out += " " + set_to_string(c, names);
  out += "\n";
  for (const Pick& p : picks) {
    if (p.post) {
      out += "post-process pick " + names[p.vertex] + " for " + set_to_string(p.clique, names) + "\n";
    } else {
      out += "pick " + names[p.vertex] + " from " + set_to_string(p.clique, names) + "  counts:";
      for (auto [v, c] : p.counts) out += " " + names[v] + "=" + std::to_string(c);
      out += "\n";
    }
  }
  if (!unresolved.empty()) {
    out += "warning: cliques left unresolved this round:";
    for (VertexSet c : unresolved) out += " " + set_to_string(c, names);
    out += "\n";
  }
  return out;
}

VertexSet baseline_random(const KnowledgeGraph& kg, const PlanOptions& opt) {
  VertexSet verts = kg.vertices_with_unknown_edges();
  int k = verts.count();
  if (k == 0) return {};
  int cap = opt.max_inter > 0 ? opt.max_inter : INT_MAX;
  int take = std::min(cap, k / 2);
  std::vector<int> vs;
  verts.for_each([&](int v) { vs.push_back(v); });
  Rng rng(opt.seed);
  rng.shuffle(vs);
  VertexSet out;
  for (int i = 0; i < take; ++i) out.add(vs[i]);
  return out;
}

VertexSet baseline_maxcut(const KnowledgeGraph& kg, const PlanOptions& opt) {
  int n = kg.size();
  VertexSet verts = kg.vertices_with_unknown_edges();
  if (verts.empty()) return {};
  std::vector<VertexSet> adj(n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < y; ++x)
      if (kg.mark(x, y).unknown()) {
        adj[x].add(y);
        adj[y].add(x);
      }
  std::vector<int> vs;
  verts.for_each([&](int v) { vs.push_back(v); });

  auto cut_value = [&](VertexSet side) {
    int cut = 0;
    for (int v : vs) {
      bool in = side.contains(v);
      adj[v].for_each([&](int u) {
        if (u > v && side.contains(u) != in) ++cut;
      });
    }
    return cut;
  };

  Rng rng(opt.seed);
  constexpr int kRestarts = 8;
  VertexSet best_side;
  int best_cut = -1;
  for (int r = 0; r < kRestarts; ++r) {
    VertexSet side;
    for (int v : vs)
      if (rng.bernoulli(0.5)) side.add(v);
    // Single-vertex flips to a local optimum.
    bool improved = true;
    while (improved) {
      improved = false;
      for (int v : vs) {
        bool in = side.contains(v);
        int same = 0, cross = 0;
        adj[v].for_each([&](int u) { (side.contains(u) == in ? same : cross) += 1; });
        if (same > cross) {
          if (in)
            side.remove(v);
          else
            side.add(v);
          improved = true;
        }
      }
    }
    int cut = cut_value(side);
    if (cut > best_cut) {
      best_cut = cut;
      best_side = side;
    }
  }

  VertexSet a = best_side & verts;
  VertexSet b = verts.minus(a);
  VertexSet small = a.count() < b.count() ? a : (b.count() < a.count() ? b : std::min(a, b));
  int cap = opt.max_inter > 0 ? opt.max_inter : small.count();
  if (small.count() > cap) {
    VertexSet trimmed;
    small.for_each([&](int v) {
      if (trimmed.count() < cap) trimmed.add(v);
    });
    small = trimmed;
  }
  return small;
}

}  // namespace interplan
