#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bfsvec/bitmap.hpp"
#include "bfsvec/graph.hpp"
#include "bfsvec/lane.hpp"
#include "bfsvec/worker_pool.hpp"

namespace bfsvec {

/// Parent value of a vertex not (yet) reached. Larger than any vertex id.
inline constexpr std::int32_t kUnreached = 0x7FFFFFFF;

/// Per-vertex parent store. While a layer is being explored, a newly found
/// vertex holds parent - num_vertices (always negative); the restoration pass
/// adds num_vertices back.
class PredecessorArray {
 public:
  PredecessorArray() = default;
  explicit PredecessorArray(std::size_t n) : values_(n, kUnreached) {}

  std::size_t size() const noexcept { return values_.size(); }
  std::int32_t operator[](std::size_t v) const noexcept { return relaxed_load(values_[v]); }
  void set(std::size_t v, std::int32_t parent) noexcept { relaxed_store(values_[v], parent); }

  std::span<std::int32_t> values() noexcept { return values_; }
  std::span<const std::int32_t> values() const noexcept { return values_; }

  bool operator==(const PredecessorArray& other) const { return values_ == other.values_; }

 private:
  AlignedVector<std::int32_t> values_;
};

enum class Mode { serial, parallel_naive, parallel_restored, vectorized };

std::string_view mode_name(Mode mode) noexcept;
std::optional<Mode> parse_mode(std::string_view name) noexcept;

struct LayerPolicy {
  Mode mode = Mode::vectorized;
  /// Layers [0, vectorized_layers) use the lane kernels in vectorized mode.
  std::size_t vectorized_layers = 2;
};

struct LayerStats {
  std::uint64_t input_vertices = 0;
  /// Adjacency entries examined, filtered ones included.
  std::uint64_t edges_examined = 0;
  std::uint64_t discovered = 0;
  bool operator==(const LayerStats&) const = default;
};

struct BfsResult {
  PredecessorArray predecessors;
  std::vector<LayerStats> layers;
  std::uint64_t traversed_edge_count = 0;
};

/// State handed to BfsOptions::before_restore between the exploration and
/// restoration steps of a bitmap layer.
struct LayerProbe {
  std::size_t layer;
  bool vectorized;
  Bitmap& out;
  Bitmap& vis;
  PredecessorArray& predecessors;
};

struct BfsOptions {
  lane::Backend backend = lane::best_backend();
  /// Frontier words (bitmap variants) or frontier vertices (naive variant)
  /// claimed per scheduling step.
  std::size_t chunk_words = 64;
  /// Test instrumentation; runs single-threaded after each exploration step.
  std::function<void(LayerProbe&)> before_restore;
};

BfsResult bfs_serial(const CsrGraph& g, VertexId root);

BfsResult bfs_parallel_naive(const CsrGraph& g, VertexId root, WorkerPool& pool, const BfsOptions& options = {});
BfsResult bfs_parallel_naive(const CsrGraph& g, VertexId root, std::size_t threads, const BfsOptions& options = {});

BfsResult bfs_parallel_restored(const CsrGraph& g, VertexId root, WorkerPool& pool, const BfsOptions& options = {});
BfsResult bfs_parallel_restored(const CsrGraph& g, VertexId root, std::size_t threads,
                                const BfsOptions& options = {});

BfsResult bfs_vectorized(const CsrGraph& g, VertexId root, WorkerPool& pool, LayerPolicy policy = {},
                         const BfsOptions& options = {});
BfsResult bfs_vectorized(const CsrGraph& g, VertexId root, std::size_t threads, LayerPolicy policy = {},
                         const BfsOptions& options = {});

/// Dispatches on policy.mode.
BfsResult run_bfs(const CsrGraph& g, VertexId root, WorkerPool& pool, LayerPolicy policy,
                  const BfsOptions& options = {});

/// Scalar exploration of adj(u): every neighbour absent from both `vis` and
/// `out` gets its out bit set and parent u - num_vertices. Returns the number
/// of neighbours marked.
std::size_t explore_adjacency_scalar(const CsrGraph& g, VertexId u, const Bitmap& vis, Bitmap& out,
                                     PredecessorArray& p);

/// Same filter over 16-lane chunks: load neighbours, split into word index and
/// bit offset, gather vis/out words, mask out seen vertices, then scatter the
/// parent marks and the updated out words. Lanes of one chunk that share an
/// out word can drop each other's bits; restoration repairs that.
std::size_t explore_adjacency_vectorized(const CsrGraph& g, VertexId u, const Bitmap& vis, Bitmap& out,
                                         PredecessorArray& p, lane::Backend backend = lane::best_backend());

/// For every nonzero word of `out`, each vertex of that word with a negative
/// parent gets its out and vis bits set and num_vertices added back. Returns
/// the number of vertices restored.
std::size_t restore_layer(Bitmap& out, Bitmap& vis, PredecessorArray& p, std::size_t nodes);
std::size_t restore_words(Bitmap& out, Bitmap& vis, PredecessorArray& p, std::size_t nodes, std::size_t word_begin,
                          std::size_t word_end);

/// Restoration processing each word as a low and a high 16-lane half.
std::size_t restore_layer_vectorized(Bitmap& out, Bitmap& vis, PredecessorArray& p, std::size_t nodes,
                                     lane::Backend backend = lane::best_backend());
std::size_t restore_words_vectorized(Bitmap& out, Bitmap& vis, PredecessorArray& p, std::size_t nodes,
                                     std::size_t word_begin, std::size_t word_end,
                                     lane::Backend backend = lane::best_backend());

}  // namespace bfsvec
