#include "bfsvec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bfsvec/rng.hpp"

namespace bfsvec {

namespace {

// Largest scale whose ids (and the 0x7FFFFFFF sentinel) fit a signed 32-bit lane.
constexpr unsigned kMaxScale = 30;

}  // namespace

void RmatParams::check() const {
  if (scale < 1 || scale > kMaxScale) {
    throw std::invalid_argument("scale must be in [1, " + std::to_string(kMaxScale) + "], got " +
                                std::to_string(scale));
  }
  if (edgefactor < 1) throw std::invalid_argument("edgefactor must be at least 1");
  if (a < 0 || b < 0 || c < 0 || d < 0) throw std::invalid_argument("quadrant probabilities must be non-negative");
  if (std::abs(a + b + c + d - 1.0) > 1e-9) throw std::invalid_argument("quadrant probabilities must sum to 1");
  if (edgefactor > std::numeric_limits<std::size_t>::max() >> scale) {
    throw std::invalid_argument("2^scale * edgefactor overflows the edge count type");
  }
}

std::size_t RmatParams::num_vertices() const { return std::size_t{1} << scale; }

std::size_t RmatParams::num_edges() const { return num_vertices() * edgefactor; }

EdgeList generate_rmat(const RmatParams& params) {
  params.check();
  EdgeList out;
  out.num_vertices = params.num_vertices();
  const std::size_t m = params.num_edges();
  if (m > out.edges.max_size()) throw std::invalid_argument("edge list does not fit in memory");
  out.edges.resize(m);

  const double ab = params.a + params.b;
  const double abc = ab + params.c;
  SplitMix64 rng(params.seed);
  for (Edge& e : out.edges) {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    for (unsigned level = 0; level < params.scale; ++level) {
      const double r = rng.uniform01();
      row <<= 1;
      col <<= 1;
      if (r < params.a) {
      } else if (r < ab) {
        col |= 1;
      } else if (r < abc) {
        row |= 1;
      } else {
        row |= 1;
        col |= 1;
      }
    }
    e = Edge{static_cast<VertexId>(row), static_cast<VertexId>(col)};
  }
  return out;
}

CsrGraph::CsrGraph(std::size_t num_vertices, std::vector<std::size_t> colstarts, AlignedVector<VertexId> rows)
    : num_vertices_(num_vertices), colstarts_(std::move(colstarts)), rows_(std::move(rows)) {
  BFSVEC_EXPECTS(colstarts_.size() == num_vertices_ + 1, "colstarts must have num_vertices + 1 entries");
  BFSVEC_EXPECTS(colstarts_.front() == 0 && colstarts_.back() == rows_.size(), "colstarts must span rows");
  BFSVEC_EXPECTS(std::is_sorted(colstarts_.begin(), colstarts_.end()), "colstarts must be non-decreasing");
  BFSVEC_EXPECTS(std::all_of(rows_.begin(), rows_.end(),
                             [n = num_vertices_](VertexId v) { return v >= 0 && static_cast<std::size_t>(v) < n; }),
                 "row entry out of range");
}

CsrGraph build_csr(const EdgeList& list, CsrOptions options) {
  const std::size_t n = list.num_vertices;
  BFSVEC_EXPECTS(n <= (std::size_t{1} << kMaxScale), "too many vertices for 32-bit ids");
  for (const Edge& e : list.edges) {
    BFSVEC_EXPECTS(e.source >= 0 && static_cast<std::size_t>(e.source) < n && e.target >= 0 &&
                       static_cast<std::size_t>(e.target) < n,
                   "edge endpoint out of range");
  }

  std::vector<std::size_t> colstarts(n + 1, 0);
  for (const Edge& e : list.edges) {
    ++colstarts[e.source + 1];
    if (options.symmetrize) ++colstarts[e.target + 1];
  }
  for (std::size_t u = 0; u < n; ++u) colstarts[u + 1] += colstarts[u];

  AlignedVector<VertexId> rows(colstarts[n]);
  std::vector<std::size_t> cursor(colstarts.begin(), colstarts.end() - 1);
  for (const Edge& e : list.edges) {
    rows[cursor[e.source]++] = e.target;
    if (options.symmetrize) rows[cursor[e.target]++] = e.source;
  }

  if (options.dedup) {
    std::size_t write = 0;
    std::size_t begin = colstarts[0];
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t end = colstarts[u + 1];
      std::sort(rows.begin() + begin, rows.begin() + end);
      const std::size_t start = write;
      for (std::size_t i = begin; i < end; ++i) {
        const VertexId v = rows[i];
        if (static_cast<std::size_t>(v) == u) continue;
        if (write > start && rows[write - 1] == v) continue;
        rows[write++] = v;
      }
      colstarts[u] = start;
      begin = end;
    }
    colstarts[n] = write;
    rows.resize(write);
    rows.shrink_to_fit();
  }
  return CsrGraph(n, std::move(colstarts), std::move(rows));
}

}  // namespace bfsvec
