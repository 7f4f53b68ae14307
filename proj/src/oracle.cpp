#include "oracle.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace interplan {

bool d_separated(const Dag& g, int x, int y, VertexSet conditioning) {
  int n = g.size();
  if (x < 0 || x >= n || y < 0 || y >= n) throw std::invalid_argument("vertex index out of range");
  if (x == y) throw std::invalid_argument("d-separation needs two distinct vertices");
  if (conditioning.contains(x) || conditioning.contains(y))
    throw std::invalid_argument("conditioning set must not contain the endpoints");

  // Phase 1: the conditioning set and its ancestors open colliders.
  VertexSet anc = g.ancestors_of(conditioning);

  // Phase 2: breadth-first sweep over (vertex, entry direction) states.
  // "up" = reached against an edge (from a child or as the start vertex),
  // "down" = reached along an edge (from a parent).
  enum { kUp = 0, kDown = 1 };
  std::vector<std::array<bool, 2>> visited(n, {false, false});
  std::vector<std::pair<int, int>> work;
  work.emplace_back(x, kUp);
  while (!work.empty()) {
    auto [v, dir] = work.back();
    work.pop_back();
    if (visited[v][dir]) continue;
    visited[v][dir] = true;
    if (v == y) return false;
    bool in_cond = conditioning.contains(v);
    if (dir == kUp && !in_cond) {
      g.parents(v).for_each([&](int p) { work.emplace_back(p, kUp); });
      g.children(v).for_each([&](int c) { work.emplace_back(c, kDown); });
    } else if (dir == kDown) {
      if (!in_cond) g.children(v).for_each([&](int c) { work.emplace_back(c, kDown); });
      // Collider (or ancestor of a conditioned vertex): pass back up.
      if (anc.contains(v)) g.parents(v).for_each([&](int p) { work.emplace_back(p, kUp); });
    }
  }
  return true;
}

namespace {

// Subsets of `base`, ordered by size then mask, applied to `fn` until it
// returns true. Returns the accepted subset.
std::optional<VertexSet> first_subset(VertexSet base, const std::function<bool(VertexSet)>& fn) {
  std::vector<int> bits;
  base.for_each([&](int v) { bits.push_back(v); });
  int k = static_cast<int>(bits.size());
  if (k > 24) throw GuardError("separating-set search space too large");
  std::vector<uint64_t> masks(1ull << k);
  for (uint64_t m = 0; m < masks.size(); ++m) masks[m] = m;
  std::sort(masks.begin(), masks.end(), [](uint64_t a, uint64_t b) {
    int ca = std::popcount(a), cb = std::popcount(b);
    return ca != cb ? ca < cb : a < b;
  });
  for (uint64_t m : masks) {
    VertexSet s;
    for (int i = 0; i < k; ++i)
      if (m >> i & 1) s.add(bits[i]);
    if (fn(s)) return s;
  }
  return std::nullopt;
}

}  // namespace

std::optional<VertexSet> find_separating_set(const CiOracle& o, int x, int y) {
  if (o.adjacent(x, y)) return std::nullopt;
  auto try_base = [&](VertexSet base) {
    return first_subset(base, [&](VertexSet s) { return o.query(x, y, s); });
  };
  if (auto s = try_base(o.adjacency(x).without(y))) return s;
  if (auto s = try_base(o.adjacency(y).without(x))) return s;
  // Unreachable for a graph-backed oracle; non-adjacency guarantees that the
  // parents of one endpoint separate the pair.
  throw ConflictError("non-adjacent pair has no separating set");
}

}  // namespace interplan
