#pragma once

// Test-only oracles and graph builders. Nothing here goes through the CSR
// traversal code it is used to check.

#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "bfsvec/graph.hpp"
#include "bfsvec/traversal.hpp"

namespace bfsvec::testing {

inline EdgeList edges_of(std::size_t n, std::initializer_list<std::pair<int, int>> pairs) {
  EdgeList list;
  list.num_vertices = n;
  for (auto [u, v] : pairs) list.edges.push_back(Edge{u, v});
  return list;
}

inline CsrGraph path_graph(std::size_t n) {
  EdgeList list;
  list.num_vertices = n;
  for (std::size_t i = 0; i + 1 < n; ++i) list.edges.push_back(Edge{VertexId(i), VertexId(i + 1)});
  return build_csr(list);
}

inline CsrGraph star_graph(std::size_t leaves) {
  EdgeList list;
  list.num_vertices = leaves + 1;
  for (std::size_t i = 1; i <= leaves; ++i) list.edges.push_back(Edge{0, VertexId(i)});
  return build_csr(list);
}

inline CsrGraph clique_graph(std::size_t n) {
  EdgeList list;
  list.num_vertices = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) list.edges.push_back(Edge{VertexId(i), VertexId(j)});
  return build_csr(list);
}

/// A path, a clique and a star side by side, plus isolated vertices.
inline CsrGraph disconnected_union() {
  EdgeList list;
  list.num_vertices = 120;
  for (int i = 0; i < 39; ++i) list.edges.push_back(Edge{i, i + 1});
  for (int i = 40; i < 60; ++i)
    for (int j = i + 1; j < 60; ++j) list.edges.push_back(Edge{i, j});
  for (int i = 61; i < 100; ++i) list.edges.push_back(Edge{60, i});
  return build_csr(list);
}

inline CsrGraph empty_graph(std::size_t n) {
  EdgeList list;
  list.num_vertices = n;
  return build_csr(list);
}

inline CsrGraph rmat_graph(unsigned scale, unsigned edgefactor = 16, std::uint64_t seed = 7) {
  RmatParams p;
  p.scale = scale;
  p.edgefactor = edgefactor;
  p.seed = seed;
  return build_csr(generate_rmat(p));
}

/// Plain queue BFS over an adjacency map rebuilt from the CSR arrays.
inline std::vector<std::int64_t> oracle_distances(const CsrGraph& g, VertexId root) {
  const std::size_t n = g.num_vertices();
  std::vector<std::set<VertexId>> adj(n);
  const auto cs = g.colstarts();
  const auto rows = g.rows();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t i = cs[u]; i < cs[u + 1]; ++i) adj[u].insert(rows[i]);
  std::vector<std::int64_t> dist(n, -1);
  std::queue<VertexId> q;
  dist[root] = 0;
  q.push(root);
  while (!q.empty()) {
    const VertexId u = q.front();
    q.pop();
    for (VertexId v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

/// Depth of each vertex obtained by walking parents to the root; -1 for
/// unreached, -2 when a walk exceeds n steps or hits an invalid parent.
inline std::vector<std::int64_t> induced_levels(const PredecessorArray& p, VertexId root) {
  const std::size_t n = p.size();
  std::vector<std::int64_t> level(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    if (p[v] == kUnreached) continue;
    std::int64_t depth = 0;
    std::size_t x = v;
    while (static_cast<VertexId>(x) != root) {
      const std::int32_t parent = p[x];
      if (parent < 0 || static_cast<std::size_t>(parent) >= n || depth > static_cast<std::int64_t>(n)) {
        depth = -2;
        break;
      }
      x = static_cast<std::size_t>(parent);
      ++depth;
    }
    level[v] = depth;
  }
  return level;
}

inline bool has_edge(const CsrGraph& g, VertexId u, VertexId v) {
  for (VertexId w : g.neighbors(u))
    if (w == v) return true;
  return false;
}

/// Every reached vertex's parent is adjacent and exactly one level closer.
inline bool parents_valid(const CsrGraph& g, const PredecessorArray& p, VertexId root) {
  const auto dist = oracle_distances(g, root);
  if (p[root] != root) return false;
  for (std::size_t v = 0; v < p.size(); ++v) {
    const std::int32_t parent = p[v];
    if (dist[v] < 0) {
      if (parent != kUnreached) return false;
      continue;
    }
    if (static_cast<VertexId>(v) == root) continue;
    if (parent < 0 || static_cast<std::size_t>(parent) >= p.size()) return false;
    if (!has_edge(g, parent, static_cast<VertexId>(v))) return false;
    if (dist[parent] + 1 != dist[v]) return false;
  }
  return true;
}

}  // namespace bfsvec::testing
