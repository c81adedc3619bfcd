#pragma once

// Backend-generic vectorized exploration and restoration. `Ops` supplies the
// lane vocabulary (Vec, Mask and the operations of bfsvec/lane.hpp); the
// scalar instantiation lives in traversal.cpp and the AVX-512 one in
// explore_avx512.cpp.

#include <cstddef>
#include <cstdint>
#include <span>

#include "bfsvec/graph.hpp"
#include "bfsvec/lane.hpp"

namespace bfsvec::detail {

struct ScalarOps {
  using Vec = lane::LaneVector;
  using Mask = lane::LaneMask;

  static Vec broadcast(std::int32_t x) { return lane::scalar::broadcast(x); }
  static Vec iota(std::int32_t s) { return lane::scalar::iota(s); }
  template <class W>
  static Vec load(std::span<const W> base, std::size_t off) { return lane::scalar::load_contiguous(base, off); }
  static Vec add(const Vec& a, const Vec& b) { return lane::scalar::add_lanes(a, b); }
  static Vec div(const Vec& a, const Vec& b) { return lane::scalar::div_lanes(a, b); }
  static Vec rem(const Vec& a, const Vec& b) { return lane::scalar::rem_lanes(a, b); }
  static Vec sllv(const Vec& a, const Vec& b) { return lane::scalar::shift_left_variable(a, b); }
  template <class W>
  static Vec gather(const Vec& idx, std::span<const W> base, Mask m) { return lane::scalar::gather(idx, base, m); }
  template <class W>
  static void scatter(std::span<W> base, const Vec& idx, const Vec& v, Mask m) { lane::scalar::scatter(base, idx, v, m); }
  static Mask test(const Vec& a, const Vec& b) { return lane::scalar::test_nonzero_and(a, b); }
  static Mask less(const Vec& a, const Vec& b) { return lane::scalar::compare_less(a, b); }
  static Mask mor(Mask a, Mask b) { return lane::scalar::mask_or(a, b); }
  static Mask mand(Mask a, Mask b) { return lane::scalar::mask_and(a, b); }
  static Mask mnot(Mask a) { return lane::scalar::mask_not(a); }
  static Vec masked_or(const Vec& f, Mask m, const Vec& a, const Vec& b) {
    return lane::scalar::masked_or_lanes(f, m, a, b);
  }
  static Mask first(std::size_t n) { return Mask::first(n); }
  static std::uint32_t bits(Mask m) { return m.bits(); }
  template <class W>
  static void prefetch_gather(std::span<const W> base, const Vec& idx, Mask m) {
    lane::scalar::prefetch_hint(lane::PrefetchKind::gather, base, idx, m, lane::CacheLevel::L1);
  }
  static void prefetch_rows(std::span<const std::int32_t>) {}
};

/// Processes one 16-lane chunk of u's neighbours. `active` marks lanes that
/// hold real neighbours.
template <class Ops>
inline std::size_t explore_chunk(typename Ops::Vec neighbors, typename Ops::Mask active,
                                 std::span<const std::uint32_t> vis, std::span<std::uint32_t> out,
                                 std::span<std::int32_t> parents, const typename Ops::Vec& parent_mark) {
  const auto bits_per_word = Ops::broadcast(32);
  const auto word = Ops::div(neighbors, bits_per_word);
  const auto offset = Ops::rem(neighbors, bits_per_word);

  const std::span<const std::uint32_t> out_view(out.data(), out.size());
  Ops::prefetch_gather(vis, word, active);
  Ops::prefetch_gather(out_view, word, active);
  const auto vis_words = Ops::gather(word, vis, active);
  const auto out_words = Ops::gather(word, out_view, active);

  const auto bit = Ops::sllv(Ops::broadcast(1), offset);
  const auto fresh =
      Ops::mand(active, Ops::mnot(Ops::mor(Ops::test(vis_words, bit), Ops::test(out_words, bit))));

  Ops::scatter(parents, neighbors, parent_mark, fresh);
  const auto updated = Ops::masked_or(Ops::broadcast(0), fresh, out_words, bit);
  Ops::scatter(out, word, updated, fresh);
  return static_cast<std::size_t>(std::popcount(Ops::bits(fresh)));
}

template <class Ops>
std::size_t explore_adjacency_with(const CsrGraph& g, VertexId u, std::span<const std::uint32_t> vis,
                                   std::span<std::uint32_t> out, std::span<std::int32_t> parents) {
  const auto rows = g.rows();
  const std::size_t begin = g.colstarts()[u];
  const std::size_t end = g.colstarts()[u + 1];
  const auto parent_mark = Ops::broadcast(static_cast<std::int32_t>(u - static_cast<std::int64_t>(g.num_vertices())));
  const lane::RunPartition part = lane::partition_run(begin, end, 0);

  std::size_t marked = 0;
  // Partial chunks index rows through a masked gather.
  auto partial = [&](lane::IndexRange r) {
    if (r.empty()) return;
    const auto active = Ops::first(r.size());
    const auto neighbors = Ops::gather(Ops::iota(static_cast<std::int32_t>(r.begin)), rows, active);
    marked += explore_chunk<Ops>(neighbors, active, vis, out, parents, parent_mark);
  };

  partial(part.peel);
  constexpr std::size_t kPrefetchAhead = 4;
  const std::size_t vectors = part.body_vector_count();
  for (std::size_t i = 0; i < vectors; ++i) {
    if (i + kPrefetchAhead < vectors) {
      Ops::prefetch_rows(rows.subspan(part.body_vector(i + kPrefetchAhead).begin, lane::kWidth));
    }
    const auto neighbors = Ops::load(rows, part.body_vector(i).begin);
    marked += explore_chunk<Ops>(neighbors, Ops::first(lane::kWidth), vis, out, parents, parent_mark);
  }
  partial(part.remainder);
  return marked;
}

template <class Ops>
std::size_t restore_words_with(std::span<std::uint32_t> out, std::span<std::uint32_t> vis,
                               std::span<std::int32_t> parents, std::size_t nodes, std::size_t word_begin,
                               std::size_t word_end) {
  const std::span<const std::int32_t> parents_view(parents.data(), parents.size());
  const auto zero = Ops::broadcast(0);
  const auto back = Ops::broadcast(static_cast<std::int32_t>(nodes));
  std::size_t restored = 0;
  for (std::size_t w = word_begin; w < word_end; ++w) {
    const std::uint32_t word = relaxed_load(out[w]);
    if (word == 0) continue;
    std::uint32_t repaired = 0;
    for (std::size_t half = 0; half < 2; ++half) {
      const std::size_t first_id = w * 32 + half * lane::kWidth;
      if (first_id >= nodes) break;
      const auto ids = Ops::iota(static_cast<std::int32_t>(first_id));
      const auto active = Ops::first(nodes - first_id);
      const auto parent = Ops::gather(ids, parents_view, active);
      const auto pending = Ops::mand(active, Ops::less(parent, zero));
      const std::uint32_t pending_bits = Ops::bits(pending);
      if (pending_bits == 0) continue;
      Ops::scatter(parents, ids, Ops::add(parent, back), pending);
      repaired |= pending_bits << (half * lane::kWidth);
      restored += static_cast<std::size_t>(std::popcount(pending_bits));
    }
    if (repaired != 0) {
      relaxed_store(out[w], word | repaired);
      relaxed_store(vis[w], relaxed_load(vis[w]) | repaired);
    }
  }
  return restored;
}

std::size_t explore_adjacency_avx512(const CsrGraph& g, VertexId u, std::span<const std::uint32_t> vis,
                                     std::span<std::uint32_t> out, std::span<std::int32_t> parents);
std::size_t restore_words_avx512(std::span<std::uint32_t> out, std::span<std::uint32_t> vis,
                                 std::span<std::int32_t> parents, std::size_t nodes, std::size_t word_begin,
                                 std::size_t word_end);

}  // namespace bfsvec::detail
