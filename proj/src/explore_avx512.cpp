#include "lane_avx512_impl.hpp"
#include "lane_kernels.hpp"

namespace bfsvec::detail {

namespace {

namespace inl = lane::avx512_inline;

struct Avx512Ops {
  using Vec = __m512i;
  using Mask = __mmask16;

  static Vec broadcast(std::int32_t x) { return inl::broadcast(x); }
  static Vec iota(std::int32_t s) { return inl::iota(s); }
  template <class W>
  static Vec load(std::span<const W> base, std::size_t off) { return inl::load_contiguous(base, off); }
  static Vec add(Vec a, Vec b) { return inl::add_lanes(a, b); }
  static Vec div(Vec a, Vec b) { return inl::div_lanes(a, b); }
  static Vec rem(Vec a, Vec b) { return inl::rem_lanes(a, b); }
  static Vec sllv(Vec a, Vec b) { return inl::shift_left_variable(a, b); }
  template <class W>
  static Vec gather(Vec idx, std::span<const W> base, Mask m) { return inl::gather(idx, base, m); }
  template <class W>
  static void scatter(std::span<W> base, Vec idx, Vec v, Mask m) { inl::scatter(base, idx, v, m); }
  static Mask test(Vec a, Vec b) { return inl::test_nonzero_and(a, b); }
  static Mask less(Vec a, Vec b) { return inl::compare_less(a, b); }
  static Mask mor(Mask a, Mask b) { return inl::mask_or(a, b); }
  static Mask mand(Mask a, Mask b) { return inl::mask_and(a, b); }
  static Mask mnot(Mask a) { return inl::mask_not(a); }
  static Vec masked_or(Vec f, Mask m, Vec a, Vec b) { return inl::masked_or_lanes(f, m, a, b); }
  static Mask first(std::size_t n) { return lane::LaneMask::first(n).bits(); }
  static std::uint32_t bits(Mask m) { return m; }
  template <class W>
  static void prefetch_gather(std::span<const W>, Vec, Mask) {}
  static void prefetch_rows(std::span<const std::int32_t> rows) {
    inl::prefetch_range(rows.data(), rows.size_bytes(), lane::CacheLevel::L1);
  }
};

}  // namespace

std::size_t explore_adjacency_avx512(const CsrGraph& g, VertexId u, std::span<const std::uint32_t> vis,
                                     std::span<std::uint32_t> out, std::span<std::int32_t> parents) {
  return explore_adjacency_with<Avx512Ops>(g, u, vis, out, parents);
}

std::size_t restore_words_avx512(std::span<std::uint32_t> out, std::span<std::uint32_t> vis,
                                 std::span<std::int32_t> parents, std::size_t nodes, std::size_t word_begin,
                                 std::size_t word_end) {
  return restore_words_with<Avx512Ops>(out, vis, parents, nodes, word_begin, word_end);
}

}  // namespace bfsvec::detail
