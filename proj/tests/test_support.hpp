// Brute-force reference implementations used to cross-check the production
// code. These stay deliberately naive and share no logic with src/.
#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "graph.hpp"
#include "util.hpp"

namespace testsupport {

using interplan::Dag;
using interplan::KnowledgeGraph;
using interplan::VertexSet;

// d-separation via the moral graph of the relevant ancestral set: x and y are
// separated by s iff they are disconnected after conditioning vertices are
// removed from the moralized ancestral graph.
inline bool dsep_moral(const Dag& g, int x, int y, VertexSet s) {
  int n = g.size();
  VertexSet relevant = g.ancestors_of(s.with(x).with(y));
  std::vector<VertexSet> adj(n);
  auto connect = [&](int a, int b) {
    adj[a].add(b);
    adj[b].add(a);
  };
  for (int v = 0; v < n; ++v) {
    if (!relevant.contains(v)) continue;
    VertexSet ps = g.parents(v) & relevant;
    ps.for_each([&](int p) { connect(p, v); });
    // Marry parents that share the child v.
    ps.for_each([&](int p) {
      ps.for_each([&](int q) {
        if (p < q) connect(p, q);
      });
    });
  }
  VertexSet seen = VertexSet::of({x});
  std::vector<int> work{x};
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    adj[v].for_each([&](int u) {
      if (s.contains(u) || seen.contains(u)) return;
      seen.add(u);
      work.push_back(u);
    });
  }
  return !seen.contains(y);
}

// d-separation by enumerating every simple path in the skeleton and checking
// the blocking rules vertex by vertex.
inline bool dsep_paths(const Dag& g, int x, int y, VertexSet s) {
  int n = g.size();
  std::vector<int> path{x};
  VertexSet on_path = VertexSet::of({x});

  auto path_open = [&]() {
    for (size_t i = 1; i + 1 < path.size(); ++i) {
      int prev = path[i - 1], v = path[i], next = path[i + 1];
      bool collider = g.has_edge(prev, v) && g.has_edge(next, v);
      if (collider) {
        if (!g.descendants_of(VertexSet::of({v})).intersects(s)) return false;
      } else {
        if (s.contains(v)) return false;
      }
    }
    return true;
  };

  // Depth-first over simple paths; an open one refutes separation.
  std::function<bool(int)> dfs = [&](int v) -> bool {
    if (v == y) return path_open();
    for (int u = 0; u < n; ++u) {
      if (on_path.contains(u) || !g.adjacent(v, u)) continue;
      path.push_back(u);
      on_path.add(u);
      bool open = dfs(u);
      path.pop_back();
      on_path.remove(u);
      if (open) return true;
    }
    return false;
  };
  return !dfs(x);
}

// Maximal cliques (size >= 2) of an undirected adjacency by checking every
// vertex subset.
inline std::vector<VertexSet> brute_force_cliques(int n, const std::vector<VertexSet>& adj) {
  auto is_clique = [&](VertexSet c) {
    bool ok = true;
    c.for_each([&](int v) {
      if (!c.without(v).subset_of(adj[v])) ok = false;
    });
    return ok;
  };
  std::vector<VertexSet> cliques;
  for (uint64_t m = 1; m < (1ull << n); ++m) {
    VertexSet c = VertexSet::from_mask(m);
    if (c.count() >= 2 && is_clique(c)) cliques.push_back(c);
  }
  std::vector<VertexSet> maximal;
  for (VertexSet c : cliques) {
    bool strict_superset = false;
    for (VertexSet d : cliques)
      if (c != d && c.subset_of(d)) strict_superset = true;
    if (!strict_superset) maximal.push_back(c);
  }
  std::sort(maximal.begin(), maximal.end());
  return maximal;
}

// Unknown-mark adjacency of a knowledge graph, for the clique cross-check.
inline std::vector<VertexSet> unknown_adjacency(const KnowledgeGraph& kg) {
  std::vector<VertexSet> adj(kg.size());
  for (int y = 0; y < kg.size(); ++y)
    for (int x = 0; x < y; ++x)
      if (kg.mark(x, y).unknown()) {
        adj[x].add(y);
        adj[y].add(x);
      }
  return adj;
}

// All subsets of [0, n) \ {x, y}.
inline std::vector<VertexSet> conditioning_sets(int n, int x, int y) {
  std::vector<int> rest;
  for (int v = 0; v < n; ++v)
    if (v != x && v != y) rest.push_back(v);
  std::vector<VertexSet> out;
  for (uint64_t m = 0; m < (1ull << rest.size()); ++m) {
    VertexSet s;
    for (size_t i = 0; i < rest.size(); ++i)
      if (m >> i & 1) s.add(rest[i]);
    out.push_back(s);
  }
  return out;
}

}  // namespace testsupport
