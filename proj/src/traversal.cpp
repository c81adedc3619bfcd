#include "bfsvec/traversal.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <utility>

#include "lane_kernels.hpp"

namespace bfsvec {

namespace {

struct alignas(64) WorkerTally {
  std::uint64_t edges = 0;
  std::uint64_t count = 0;
};

void check_root(const CsrGraph& g, VertexId root) {
  BFSVEC_EXPECTS(root >= 0 && static_cast<std::size_t>(root) < g.num_vertices(), "root out of range");
}

std::int32_t pending_mark(VertexId parent, std::size_t nodes) {
  return static_cast<std::int32_t>(static_cast<std::int64_t>(parent) - static_cast<std::int64_t>(nodes));
}

// Hands out [begin, end) ranges of `chunk` units until `total` is exhausted.
class ChunkDispenser {
 public:
  ChunkDispenser(std::size_t total, std::size_t chunk) : total_(total), chunk_(std::max<std::size_t>(chunk, 1)) {}

  bool next(std::size_t& begin, std::size_t& end) {
    begin = cursor_.fetch_add(chunk_, std::memory_order_relaxed);
    if (begin >= total_) return false;
    end = std::min(begin + chunk_, total_);
    return true;
  }

 private:
  std::size_t total_;
  std::size_t chunk_;
  std::atomic<std::size_t> cursor_{0};
};

template <class Fn>
void for_each_set_bit(std::uint32_t word, std::size_t word_index, Fn&& fn) {
  while (word != 0) {
    const unsigned b = static_cast<unsigned>(std::countr_zero(word));
    fn(static_cast<VertexId>(word_index * Bitmap::kBitsPerWord + b));
    word &= word - 1;
  }
}

std::size_t explore_scalar_raw(const CsrGraph& g, VertexId u, std::span<const std::uint32_t> vis,
                               std::span<std::uint32_t> out, std::span<std::int32_t> parents) {
  const std::int32_t mark = pending_mark(u, g.num_vertices());
  std::size_t marked = 0;
  for (const VertexId v : g.neighbors(u)) {
    const std::size_t w = static_cast<std::size_t>(v) / 32;
    const std::uint32_t bit = std::uint32_t{1} << (v % 32);
    if ((vis[w] & bit) != 0) continue;
    const std::uint32_t current = relaxed_load(out[w]);
    if ((current & bit) != 0) continue;
    relaxed_store(out[w], current | bit);
    relaxed_store(parents[v], mark);
    ++marked;
  }
  return marked;
}

std::size_t restore_scalar_raw(std::span<std::uint32_t> out, std::span<std::uint32_t> vis,
                               std::span<std::int32_t> parents, std::size_t nodes, std::size_t word_begin,
                               std::size_t word_end) {
  std::size_t restored = 0;
  for (std::size_t w = word_begin; w < word_end; ++w) {
    const std::uint32_t word = relaxed_load(out[w]);
    if (word == 0) continue;
    std::uint32_t repaired = 0;
    for (unsigned b = 0; b < 32; ++b) {
      const std::size_t v = w * 32 + b;
      if (v >= parents.size()) break;
      const std::int32_t parent = relaxed_load(parents[v]);
      if (parent < 0) {
        relaxed_store(parents[v], static_cast<std::int32_t>(parent + static_cast<std::int64_t>(nodes)));
        repaired |= std::uint32_t{1} << b;
        ++restored;
      }
    }
    if (repaired != 0) {
      relaxed_store(out[w], word | repaired);
      relaxed_store(vis[w], relaxed_load(vis[w]) | repaired);
    }
  }
  return restored;
}

void check_layer_state(const Bitmap& out, const Bitmap& vis, const PredecessorArray& p, std::size_t nodes) {
  BFSVEC_EXPECTS(out.capacity() == vis.capacity() && out.capacity() == p.size(), "layer state sizes differ");
  BFSVEC_EXPECTS(nodes == p.size(), "nodes must equal the vertex count");
}

std::size_t explore_dispatch(const CsrGraph& g, VertexId u, std::span<const std::uint32_t> vis,
                             std::span<std::uint32_t> out, std::span<std::int32_t> parents, lane::Backend backend) {
  if (backend == lane::Backend::avx512) return detail::explore_adjacency_avx512(g, u, vis, out, parents);
  return detail::explore_adjacency_with<detail::ScalarOps>(g, u, vis, out, parents);
}

std::size_t restore_dispatch(std::span<std::uint32_t> out, std::span<std::uint32_t> vis,
                             std::span<std::int32_t> parents, std::size_t nodes, std::size_t word_begin,
                             std::size_t word_end, lane::Backend backend) {
  if (backend == lane::Backend::avx512) {
    return detail::restore_words_avx512(out, vis, parents, nodes, word_begin, word_end);
  }
  return detail::restore_words_with<detail::ScalarOps>(out, vis, parents, nodes, word_begin, word_end);
}

lane::Backend checked_backend(lane::Backend backend) {
  BFSVEC_EXPECTS(backend == lane::Backend::scalar || lane::accelerated_available(),
                 "requested lane backend is unavailable");
  return backend;
}

void fill_unreached(PredecessorArray& p, WorkerPool& pool) {
  auto values = p.values();
  const std::size_t share = (values.size() + pool.size() - 1) / pool.size();
  pool.run([&](std::size_t w) {
    const std::size_t begin = std::min(values.size(), w * share);
    const std::size_t end = std::min(values.size(), begin + share);
    std::fill(values.begin() + begin, values.begin() + end, kUnreached);
  });
}

// Level-synchronous bitmap traversal. Each layer explores without atomics,
// then repairs lost out bits from the negative parent marks.
BfsResult bitmap_bfs(const CsrGraph& g, VertexId root, WorkerPool& pool, std::size_t vectorized_layers,
                     const BfsOptions& options) {
  check_root(g, root);
  const std::size_t n = g.num_vertices();
  const lane::Backend backend = vectorized_layers > 0 ? checked_backend(options.backend) : lane::Backend::scalar;

  BfsResult result;
  result.predecessors = PredecessorArray(n);
  PredecessorArray& p = result.predecessors;
  fill_unreached(p, pool);

  Bitmap in(n);
  Bitmap out(n);
  Bitmap vis(n);
  in.set_bit(static_cast<std::size_t>(root));
  vis.set_bit(static_cast<std::size_t>(root));
  p.set(static_cast<std::size_t>(root), root);

  std::vector<WorkerTally> tallies(pool.size());
  std::uint64_t frontier = 1;
  for (std::size_t layer = 0; frontier > 0; ++layer) {
    const bool vectorized = layer < vectorized_layers;
    std::fill(tallies.begin(), tallies.end(), WorkerTally{});

    ChunkDispenser explore_chunks(in.word_count(), options.chunk_words);
    pool.run([&](std::size_t worker) {
      WorkerTally local;
      const std::span<const std::uint32_t> in_words = std::as_const(in).words();
      const std::span<const std::uint32_t> vis_words = std::as_const(vis).words();
      const std::span<std::uint32_t> out_words = out.words();
      const std::span<std::int32_t> parents = p.values();
      std::size_t begin = 0;
      std::size_t end = 0;
      while (explore_chunks.next(begin, end)) {
        for (std::size_t w = begin; w < end; ++w) {
          for_each_set_bit(in_words[w], w, [&](VertexId u) {
            local.edges += g.degree(u);
            local.count += vectorized ? explore_dispatch(g, u, vis_words, out_words, parents, backend)
                                      : explore_scalar_raw(g, u, vis_words, out_words, parents);
          });
        }
      }
      tallies[worker] = local;
    });

    if (options.before_restore) {
      LayerProbe probe{layer, vectorized, out, vis, p};
      options.before_restore(probe);
    }

    ChunkDispenser restore_chunks(out.word_count(), options.chunk_words);
    pool.run([&](std::size_t worker) {
      std::size_t begin = 0;
      std::size_t end = 0;
      std::size_t restored = 0;
      while (restore_chunks.next(begin, end)) {
        restored += vectorized ? restore_dispatch(out.words(), vis.words(), p.values(), n, begin, end, backend)
                               : restore_scalar_raw(out.words(), vis.words(), p.values(), n, begin, end);
      }
      tallies[worker].count = restored;
    });

    LayerStats stats;
    stats.input_vertices = frontier;
    for (const WorkerTally& t : tallies) {
      stats.edges_examined += t.edges;
      stats.discovered += t.count;
    }
    result.layers.push_back(stats);
    result.traversed_edge_count += stats.edges_examined;
    frontier = stats.discovered;
    swap_and_clear(in, out);
  }
  return result;
}

}  // namespace

std::string_view mode_name(Mode mode) noexcept {
  switch (mode) {
    case Mode::serial:
      return "serial";
    case Mode::parallel_naive:
      return "parallel_naive";
    case Mode::parallel_restored:
      return "parallel_restored";
    case Mode::vectorized:
      return "vectorized";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(std::string_view name) noexcept {
  for (Mode m : {Mode::serial, Mode::parallel_naive, Mode::parallel_restored, Mode::vectorized}) {
    if (mode_name(m) == name) return m;
  }
  return std::nullopt;
}

BfsResult bfs_serial(const CsrGraph& g, VertexId root) {
  check_root(g, root);
  const std::size_t n = g.num_vertices();
  BfsResult result;
  result.predecessors = PredecessorArray(n);
  PredecessorArray& p = result.predecessors;

  Bitmap vis(n);
  std::vector<VertexId> in{root};
  std::vector<VertexId> out;
  vis.set_bit(static_cast<std::size_t>(root));
  p.set(static_cast<std::size_t>(root), root);

  while (!in.empty()) {
    LayerStats stats;
    stats.input_vertices = in.size();
    for (const VertexId u : in) {
      const auto adj = g.neighbors(u);
      stats.edges_examined += adj.size();
      for (const VertexId v : adj) {
        if (vis.test_bit(static_cast<std::size_t>(v))) continue;
        vis.set_bit(static_cast<std::size_t>(v));
        out.push_back(v);
        p.set(static_cast<std::size_t>(v), u);
      }
    }
    stats.discovered = out.size();
    result.layers.push_back(stats);
    result.traversed_edge_count += stats.edges_examined;
    in.swap(out);
    out.clear();
  }
  return result;
}

BfsResult bfs_parallel_naive(const CsrGraph& g, VertexId root, WorkerPool& pool, const BfsOptions& options) {
  check_root(g, root);
  const std::size_t n = g.num_vertices();
  BfsResult result;
  result.predecessors = PredecessorArray(n);
  PredecessorArray& p = result.predecessors;
  fill_unreached(p, pool);

  // Per-vertex flags instead of bits, so concurrent marking never loses a
  // neighbour's update; the parent race stays.
  std::vector<std::uint8_t> visited(n, 0);
  std::vector<std::uint32_t> queued_in_layer(n, 0);
  std::vector<std::vector<VertexId>> local_out(pool.size());
  std::vector<WorkerTally> tallies(pool.size());
  std::vector<VertexId> in{root};
  std::vector<VertexId> next;
  visited[root] = 1;
  p.set(static_cast<std::size_t>(root), root);

  for (std::uint32_t layer = 1; !in.empty(); ++layer) {
    ChunkDispenser chunks(in.size(), options.chunk_words);
    pool.run([&](std::size_t worker) {
      auto& queue = local_out[worker];
      queue.clear();
      WorkerTally local;
      std::size_t begin = 0;
      std::size_t end = 0;
      while (chunks.next(begin, end)) {
        for (std::size_t i = begin; i < end; ++i) {
          const VertexId u = in[i];
          const auto adj = g.neighbors(u);
          local.edges += adj.size();
          for (const VertexId v : adj) {
            if (relaxed_load(visited[v]) != 0) continue;
            relaxed_store(visited[v], std::uint8_t{1});
            queue.push_back(v);
            p.set(static_cast<std::size_t>(v), u);
          }
        }
      }
      tallies[worker] = local;
    });

    // Two workers may both have claimed a vertex; keep one copy.
    next.clear();
    for (const auto& queue : local_out) {
      for (const VertexId v : queue) {
        if (queued_in_layer[v] == layer) continue;
        queued_in_layer[v] = layer;
        next.push_back(v);
      }
    }

    LayerStats stats;
    stats.input_vertices = in.size();
    for (const WorkerTally& t : tallies) stats.edges_examined += t.edges;
    stats.discovered = next.size();
    result.layers.push_back(stats);
    result.traversed_edge_count += stats.edges_examined;
    in.swap(next);
  }
  return result;
}

BfsResult bfs_parallel_naive(const CsrGraph& g, VertexId root, std::size_t threads, const BfsOptions& options) {
  WorkerPool pool(threads);
  return bfs_parallel_naive(g, root, pool, options);
}

BfsResult bfs_parallel_restored(const CsrGraph& g, VertexId root, WorkerPool& pool, const BfsOptions& options) {
  return bitmap_bfs(g, root, pool, 0, options);
}

BfsResult bfs_parallel_restored(const CsrGraph& g, VertexId root, std::size_t threads, const BfsOptions& options) {
  WorkerPool pool(threads);
  return bfs_parallel_restored(g, root, pool, options);
}

BfsResult bfs_vectorized(const CsrGraph& g, VertexId root, WorkerPool& pool, LayerPolicy policy,
                         const BfsOptions& options) {
  return bitmap_bfs(g, root, pool, policy.vectorized_layers, options);
}

BfsResult bfs_vectorized(const CsrGraph& g, VertexId root, std::size_t threads, LayerPolicy policy,
                         const BfsOptions& options) {
  WorkerPool pool(threads);
  return bfs_vectorized(g, root, pool, policy, options);
}

BfsResult run_bfs(const CsrGraph& g, VertexId root, WorkerPool& pool, LayerPolicy policy, const BfsOptions& options) {
  switch (policy.mode) {
    case Mode::serial:
      return bfs_serial(g, root);
    case Mode::parallel_naive:
      return bfs_parallel_naive(g, root, pool, options);
    case Mode::parallel_restored:
      return bfs_parallel_restored(g, root, pool, options);
    case Mode::vectorized:
      return bfs_vectorized(g, root, pool, policy, options);
  }
  BFSVEC_EXPECTS(false, "unknown traversal mode");
  return {};
}

std::size_t explore_adjacency_scalar(const CsrGraph& g, VertexId u, const Bitmap& vis, Bitmap& out,
                                     PredecessorArray& p) {
  check_root(g, u);
  check_layer_state(out, vis, p, g.num_vertices());
  return explore_scalar_raw(g, u, vis.words(), out.words(), p.values());
}

std::size_t explore_adjacency_vectorized(const CsrGraph& g, VertexId u, const Bitmap& vis, Bitmap& out,
                                         PredecessorArray& p, lane::Backend backend) {
  check_root(g, u);
  check_layer_state(out, vis, p, g.num_vertices());
  return explore_dispatch(g, u, vis.words(), out.words(), p.values(), checked_backend(backend));
}

std::size_t restore_words(Bitmap& out, Bitmap& vis, PredecessorArray& p, std::size_t nodes, std::size_t word_begin,
                          std::size_t word_end) {
  check_layer_state(out, vis, p, nodes);
  BFSVEC_EXPECTS(word_begin <= word_end && word_end <= out.word_count(), "word range out of bounds");
  return restore_scalar_raw(out.words(), vis.words(), p.values(), nodes, word_begin, word_end);
}

std::size_t restore_layer(Bitmap& out, Bitmap& vis, PredecessorArray& p, std::size_t nodes) {
  return restore_words(out, vis, p, nodes, 0, out.word_count());
}

std::size_t restore_words_vectorized(Bitmap& out, Bitmap& vis, PredecessorArray& p, std::size_t nodes,
                                     std::size_t word_begin, std::size_t word_end, lane::Backend backend) {
  check_layer_state(out, vis, p, nodes);
  BFSVEC_EXPECTS(word_begin <= word_end && word_end <= out.word_count(), "word range out of bounds");
  return restore_dispatch(out.words(), vis.words(), p.values(), nodes, word_begin, word_end,
                          checked_backend(backend));
}

std::size_t restore_layer_vectorized(Bitmap& out, Bitmap& vis, PredecessorArray& p, std::size_t nodes,
                                     lane::Backend backend) {
  return restore_words_vectorized(out, vis, p, nodes, 0, out.word_count(), backend);
}

}  // namespace bfsvec
