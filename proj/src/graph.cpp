#include "graph.hpp"

#include <algorithm>
#include <queue>

namespace interplan {

std::vector<std::string> default_names(int n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 0; i < n; ++i) names.push_back("X" + std::to_string(i + 1));
  return names;
}

std::string describe_mark(const Mark& m) {
  return describe_mark(m, {});
}

std::string describe_mark(const Mark& m, const std::vector<std::string>& names) {
  auto nm = [&](int v) {
    if (v >= 0 && v < static_cast<int>(names.size())) return names[v];
    return std::to_string(v);
  };
  switch (m.kind) {
    case MarkKind::NoKnowledge: return "no-knowledge";
    case MarkKind::Undirected: return "undirected";
    case MarkKind::NonAdjacent: return "non-adjacent";
    case MarkKind::Directed: return "directed(" + nm(m.from) + "->" + nm(m.to) + ")";
    case MarkKind::SemiDirected: return "semi-directed(" + nm(m.from) + "~>" + nm(m.to) + ")";
  }
  return "?";
}

Mark combine_marks(const Mark& a, const Mark& b) {
  using K = MarkKind;
  if (a.kind == K::NoKnowledge) return b;
  if (b.kind == K::NoKnowledge) return a;
  if (a == b) return a;

  auto conflict = [&]() -> Mark {
    throw ConflictError("cannot combine " + describe_mark(a) + " with " + describe_mark(b));
  };
  // Normalize so that a.kind <= b.kind in declaration order.
  if (static_cast<int>(a.kind) > static_cast<int>(b.kind)) return combine_marks(b, a);

  switch (a.kind) {
    case K::Undirected:
      switch (b.kind) {
        case K::SemiDirected:  // adjacency known, only one cause possible
          return Mark::directed(b.from, b.to);
        case K::Directed:
          return b;
        case K::NonAdjacent:
          return conflict();
        default: break;
      }
      break;
    case K::SemiDirected:
      switch (b.kind) {
        case K::SemiDirected:
          // Opposite possible causes: the only consistent option is no edge.
          return Mark::non_adjacent();
        case K::Directed:
          return (a.from == b.from && a.to == b.to) ? b : conflict();
        case K::NonAdjacent:
          return b;
        default: break;
      }
      break;
    case K::Directed:
      // b is Directed with the other orientation, or NonAdjacent.
      return conflict();
    default: break;
  }
  return conflict();
}

bool refines(const Mark& a, const Mark& b) {
  try {
    return combine_marks(a, b) == b;
  } catch (const ConflictError&) {
    return false;
  }
}

bool is_acyclic(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<int>> children(n);
  for (const auto& [p, c] : edges) {
    if (p < 0 || p >= n || c < 0 || c >= n)
      throw std::invalid_argument("edge references vertex outside [0, n)");
    children[p].push_back(c);
    ++indegree[c];
  }
  std::queue<int> ready;
  for (int v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);
  int seen = 0;
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop();
    ++seen;
    for (int c : children[v])
      if (--indegree[c] == 0) ready.push(c);
  }
  return seen == n;
}

Dag::Dag(int n, std::vector<std::string> names)
    : n_(n), names_(std::move(names)), parents_(n), children_(n) {
  if (n < 0 || n > 64) throw std::invalid_argument("vertex count must be in [0, 64]");
  if (names_.empty()) names_ = default_names(n);
  if (static_cast<int>(names_.size()) != n)
    throw std::invalid_argument("name count does not match vertex count");
}

Dag Dag::from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                    std::vector<std::string> names) {
  Dag g(n, std::move(names));
  for (const auto& [p, c] : edges) g.add_edge(p, c);
  if (!g.acyclic()) throw std::invalid_argument("edge set contains a directed cycle");
  return g;
}

void Dag::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw std::invalid_argument("vertex index out of range");
}

void Dag::add_edge(int parent, int child) {
  check_vertex(parent);
  check_vertex(child);
  if (parent == child) throw std::invalid_argument("self-loops are not allowed");
  if (has_edge(child, parent))
    throw std::invalid_argument("pair already has the opposite orientation");
  children_[parent].add(child);
  parents_[child].add(parent);
}

void Dag::remove_edge(int parent, int child) {
  check_vertex(parent);
  check_vertex(child);
  children_[parent].remove(child);
  parents_[child].remove(parent);
}

bool Dag::has_edge(int parent, int child) const {
  check_vertex(parent);
  check_vertex(child);
  return children_[parent].contains(child);
}

int Dag::edge_count() const {
  int total = 0;
  for (const auto& cs : children_) total += cs.count();
  return total;
}

std::vector<std::pair<int, int>> Dag::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count());
  for (int p = 0; p < n_; ++p)
    children_[p].for_each([&](int c) { out.emplace_back(p, c); });
  return out;
}

bool Dag::acyclic() const { return is_acyclic(n_, edges()); }

VertexSet Dag::ancestors_of(VertexSet seed) const {
  VertexSet result = seed;
  std::vector<int> work;
  seed.for_each([&](int v) { work.push_back(v); });
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    parents_[v].for_each([&](int p) {
      if (!result.contains(p)) {
        result.add(p);
        work.push_back(p);
      }
    });
  }
  return result;
}

VertexSet Dag::descendants_of(VertexSet seed) const {
  VertexSet result = seed;
  std::vector<int> work;
  seed.for_each([&](int v) { work.push_back(v); });
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    children_[v].for_each([&](int c) {
      if (!result.contains(c)) {
        result.add(c);
        work.push_back(c);
      }
    });
  }
  return result;
}

Dag manipulate(const Dag& g, VertexSet intervened) {
  if (!intervened.subset_of(VertexSet::full(g.size())))
    throw std::invalid_argument("intervention set references vertices outside the graph");
  Dag out = g;
  intervened.for_each([&](int v) {
    g.parents(v).for_each([&](int p) { out.remove_edge(p, v); });
  });
  return out;
}

KnowledgeGraph::KnowledgeGraph(int n, std::vector<std::string> names)
    : n_(n), names_(std::move(names)), marks_(pair_count(n)) {
  if (n < 0 || n > 64) throw std::invalid_argument("vertex count must be in [0, 64]");
  if (names_.empty()) names_ = default_names(n);
  if (static_cast<int>(names_.size()) != n)
    throw std::invalid_argument("name count does not match vertex count");
}

KnowledgeGraph KnowledgeGraph::complete_undirected(int n, std::vector<std::string> names) {
  KnowledgeGraph kg(n, std::move(names));
  for (auto& m : kg.marks_) m = Mark::undirected();
  return kg;
}

void KnowledgeGraph::check_pair(int x, int y) const {
  if (x < 0 || x >= n_ || y < 0 || y >= n_) throw std::invalid_argument("vertex index out of range");
  if (x == y) throw std::invalid_argument("a pair needs two distinct vertices");
}

const Mark& KnowledgeGraph::mark(int x, int y) const {
  check_pair(x, y);
  return marks_[pair_index(x, y)];
}

void KnowledgeGraph::set_mark(int x, int y, Mark m) {
  check_pair(x, y);
  if (m.kind == MarkKind::Directed || m.kind == MarkKind::SemiDirected) {
    bool matches = (m.from == x && m.to == y) || (m.from == y && m.to == x);
    if (!matches) throw std::invalid_argument("oriented mark endpoints do not match the pair");
  }
  marks_[pair_index(x, y)] = m;
}

void KnowledgeGraph::combine(int x, int y, const Mark& m) {
  set_mark(x, y, combine_marks(mark(x, y), m));
}

bool KnowledgeGraph::known_adjacent(int x, int y) const {
  MarkKind k = mark(x, y).kind;
  return k == MarkKind::Directed || k == MarkKind::Undirected;
}

VertexSet KnowledgeGraph::unknown_neighbors(int v) const {
  VertexSet out;
  for (int u = 0; u < n_; ++u)
    if (u != v && mark(u, v).unknown()) out.add(u);
  return out;
}

VertexSet KnowledgeGraph::vertices_with_unknown_edges() const {
  VertexSet out;
  for (int v = 0; v < n_; ++v)
    if (!unknown_neighbors(v).empty()) out.add(v);
  return out;
}

int KnowledgeGraph::known_count() const {
  int total = 0;
  for (const auto& m : marks_)
    if (m.known()) ++total;
  return total;
}

std::vector<std::pair<int, int>> KnowledgeGraph::directed_edges() const {
  std::vector<std::pair<int, int>> out;
  for (int y = 0; y < n_; ++y)
    for (int x = 0; x < y; ++x) {
      const Mark& m = marks_[pair_index(x, y)];
      if (m.kind == MarkKind::Directed) out.emplace_back(m.from, m.to);
    }
  return out;
}

bool KnowledgeGraph::directed_acyclic() const { return is_acyclic(n_, directed_edges()); }

namespace {

void bron_kerbosch(VertexSet r, VertexSet p, VertexSet x, const std::vector<VertexSet>& adj,
                   std::vector<VertexSet>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(r);
    return;
  }
  // Pivot on the vertex covering the most of p; only its non-neighbors branch.
  int pivot = -1, best = -1;
  (p | x).for_each([&](int u) {
    int c = (adj[u] & p).count();
    if (c > best) {
      best = c;
      pivot = u;
    }
  });
  VertexSet candidates = p.minus(adj[pivot]);
  candidates.for_each([&](int v) {
    bron_kerbosch(r.with(v), p & adj[v], x & adj[v], adj, out);
    p.remove(v);
    x.add(v);
  });
}

}  // namespace

std::vector<VertexSet> maximal_unknown_cliques(const KnowledgeGraph& kg) {
  int n = kg.size();
  std::vector<VertexSet> adj(n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < y; ++x)
      if (kg.mark(x, y).unknown()) {
        adj[x].add(y);
        adj[y].add(x);
      }
  std::vector<VertexSet> out;
  bron_kerbosch(VertexSet{}, VertexSet::full(n), VertexSet{}, adj, out);
  std::erase_if(out, [](VertexSet c) { return c.count() < 2; });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace interplan
