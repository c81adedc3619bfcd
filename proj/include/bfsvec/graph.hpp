#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bfsvec/common.hpp"

namespace bfsvec {

/// Recursive-matrix generator parameters. Defaults are the Graph500 initiator.
struct RmatParams {
  unsigned scale = 16;
  unsigned edgefactor = 16;
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  double d = 0.05;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument describing the first broken field.
  void check() const;
  std::size_t num_vertices() const;
  std::size_t num_edges() const;

  bool operator==(const RmatParams&) const = default;
};

struct Edge {
  VertexId source;
  VertexId target;
  bool operator==(const Edge&) const = default;
};

/// Raw generator output; self-loops and repeated pairs are kept.
struct EdgeList {
  std::size_t num_vertices = 0;
  std::vector<Edge> edges;
};

/// Compressed sparse row adjacency. The neighbours of u are
/// rows[colstarts[u] .. colstarts[u + 1]).
class CsrGraph {
 public:
  CsrGraph() = default;
  CsrGraph(std::size_t num_vertices, std::vector<std::size_t> colstarts, AlignedVector<VertexId> rows);

  std::size_t num_vertices() const noexcept { return num_vertices_; }
  std::size_t num_adjacencies() const noexcept { return rows_.size(); }

  std::span<const VertexId> rows() const noexcept { return rows_; }
  std::span<const std::size_t> colstarts() const noexcept { return colstarts_; }

  std::size_t degree(VertexId u) const {
    BFSVEC_EXPECTS(u >= 0 && static_cast<std::size_t>(u) < num_vertices_, "vertex out of range");
    return colstarts_[u + 1] - colstarts_[u];
  }

  std::span<const VertexId> neighbors(VertexId u) const {
    BFSVEC_EXPECTS(u >= 0 && static_cast<std::size_t>(u) < num_vertices_, "vertex out of range");
    return std::span<const VertexId>(rows_).subspan(colstarts_[u], colstarts_[u + 1] - colstarts_[u]);
  }

 private:
  std::size_t num_vertices_ = 0;
  std::vector<std::size_t> colstarts_{0};
  AlignedVector<VertexId> rows_;
};

/// Emits 2^scale * edgefactor pairs, each by `scale` quadrant draws. The same
/// parameters always produce the same list.
EdgeList generate_rmat(const RmatParams& params);

struct CsrOptions {
  bool symmetrize = true;
  bool dedup = true;
};

/// With dedup, every adjacency list is sorted ascending with duplicates and
/// self-loops removed.
CsrGraph build_csr(const EdgeList& edges, CsrOptions options = {});

inline std::size_t degree(const CsrGraph& g, VertexId u) { return g.degree(u); }

}  // namespace bfsvec
