#pragma once

// Fault injection for predecessor arrays: each mutation class targets one
// tree check. A mutation returns false when the tree has no suitable site.

#include <cstdint>
#include <random>
#include <vector>

#include "bfsvec/traversal.hpp"
#include "bfsvec/validate.hpp"
#include "support.hpp"

namespace bfsvec::testing {

using Parents = std::vector<std::int32_t>;

inline std::vector<std::int64_t> depths(const Parents& p, VertexId root) {
  std::vector<std::int64_t> d(p.size(), -1);
  for (std::size_t v = 0; v < p.size(); ++v) {
    if (p[v] == kUnreached) continue;
    std::int64_t k = 0;
    for (std::size_t x = v; static_cast<VertexId>(x) != root; x = static_cast<std::size_t>(p[x])) ++k;
    d[v] = k;
  }
  return d;
}

inline bool is_ancestor(const Parents& p, VertexId root, VertexId a, VertexId v) {
  for (VertexId x = v;; x = p[x]) {
    if (x == a) return true;
    if (x == root) return false;
  }
}

inline std::vector<VertexId> reached_non_root(const Parents& p, VertexId root) {
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < p.size(); ++v)
    if (p[v] != kUnreached && static_cast<VertexId>(v) != root) out.push_back(static_cast<VertexId>(v));
  return out;
}

template <class T>
const T& pick(const std::vector<T>& items, std::mt19937& rng) {
  return items[rng() % items.size()];
}

// Root points at some other reached vertex.
inline bool mutate_root(const CsrGraph&, VertexId root, Parents& p, std::mt19937& rng) {
  const auto reached = reached_non_root(p, root);
  if (reached.empty()) return false;
  p[root] = pick(reached, rng);
  return true;
}

// A reached vertex's parent becomes unreached or an out-of-range value.
inline bool mutate_closure(const CsrGraph&, VertexId root, Parents& p, std::mt19937& rng) {
  const auto reached = reached_non_root(p, root);
  if (reached.empty()) return false;
  std::vector<VertexId> unreached;
  for (std::size_t v = 0; v < p.size(); ++v)
    if (p[v] == kUnreached) unreached.push_back(static_cast<VertexId>(v));
  const VertexId v = pick(reached, rng);
  if (!unreached.empty() && rng() % 2 == 0) {
    p[v] = pick(unreached, rng);
  } else {
    p[v] = rng() % 2 ? -1 - static_cast<std::int32_t>(rng() % 1000)
                     : static_cast<std::int32_t>(p.size() + rng() % 1000);
  }
  return true;
}

// A reached vertex hangs off a non-adjacent, non-descendant reached vertex.
inline bool mutate_edge(const CsrGraph& g, VertexId root, Parents& p, std::mt19937& rng) {
  auto reached = reached_non_root(p, root);
  reached.push_back(root);
  for (int attempt = 0; attempt < 200; ++attempt) {
    const VertexId v = pick(reached, rng);
    const VertexId u = pick(reached, rng);
    if (v == root || u == v || has_edge(g, u, v) || is_ancestor(p, root, v, u)) continue;
    p[v] = u;
    return true;
  }
  return false;
}

// A reached vertex is reparented to a neighbour at its own depth or deeper,
// outside its subtree; the tree stays a tree but is no longer breadth-first.
inline bool mutate_level(const CsrGraph& g, VertexId root, Parents& p, std::mt19937& rng) {
  const auto d = depths(p, root);
  auto reached = reached_non_root(p, root);
  std::shuffle(reached.begin(), reached.end(), rng);
  for (VertexId v : reached) {
    std::vector<VertexId> options;
    for (VertexId u : g.neighbors(v))
      if (p[u] != kUnreached && d[u] >= d[v] && !is_ancestor(p, root, v, u)) options.push_back(u);
    if (options.empty()) continue;
    p[v] = pick(options, rng);
    return true;
  }
  return false;
}

// Two adjacent reached vertices point at each other.
inline bool mutate_cycle(const CsrGraph& g, VertexId root, Parents& p, std::mt19937& rng) {
  auto reached = reached_non_root(p, root);
  std::shuffle(reached.begin(), reached.end(), rng);
  for (VertexId v : reached) {
    for (VertexId w : g.neighbors(v)) {
      if (w == root || p[w] == kUnreached) continue;
      p[v] = w;
      p[w] = v;
      return true;
    }
  }
  return false;
}

using Mutation = bool (*)(const CsrGraph&, VertexId, Parents&, std::mt19937&);

struct MutationClass {
  const char* name;
  Mutation apply;
  TreeCheck target;
};

inline const std::vector<MutationClass>& mutation_classes() {
  static const std::vector<MutationClass> classes{
      {"root_remapped", mutate_root, TreeCheck::root_self_parent},
      {"closure_broken", mutate_closure, TreeCheck::reachability_closure},
      {"non_adjacent_parent", mutate_edge, TreeCheck::tree_edge_exists},
      {"deeper_reparent", mutate_level, TreeCheck::level_consistency},
      {"two_cycle", mutate_cycle, TreeCheck::cycle_free},
  };
  return classes;
}

}  // namespace bfsvec::testing
