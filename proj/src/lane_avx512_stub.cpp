// Built when the compiler cannot target AVX-512: every entry point reports the
// backend as unavailable.

#include "bfsvec/lane.hpp"

namespace bfsvec::lane::avx512 {

namespace {

[[noreturn]] void unavailable() { BFSVEC_EXPECTS(false, "AVX-512 backend not compiled in"); __builtin_unreachable(); }

}  // namespace

LaneVector broadcast(std::int32_t) { unavailable(); }
LaneVector iota(std::int32_t) { unavailable(); }
LaneVector load_contiguous(std::span<const std::int32_t>, std::size_t) { unavailable(); }
LaneVector load_contiguous(std::span<const std::uint32_t>, std::size_t) { unavailable(); }
LaneVector add_lanes(const LaneVector&, const LaneVector&) { unavailable(); }
LaneVector div_lanes(const LaneVector&, const LaneVector&) { unavailable(); }
LaneVector rem_lanes(const LaneVector&, const LaneVector&) { unavailable(); }
LaneVector shift_left_variable(const LaneVector&, const LaneVector&) { unavailable(); }
LaneVector gather(const LaneVector&, std::span<const std::int32_t>, LaneMask) { unavailable(); }
LaneVector gather(const LaneVector&, std::span<const std::uint32_t>, LaneMask) { unavailable(); }
void scatter(std::span<std::int32_t>, const LaneVector&, const LaneVector&, LaneMask) { unavailable(); }
void scatter(std::span<std::uint32_t>, const LaneVector&, const LaneVector&, LaneMask) { unavailable(); }
LaneMask test_nonzero_and(const LaneVector&, const LaneVector&) { unavailable(); }
LaneMask compare_less(const LaneVector&, const LaneVector&) { unavailable(); }
LaneMask mask_or(LaneMask, LaneMask) { unavailable(); }
LaneMask mask_and(LaneMask, LaneMask) { unavailable(); }
LaneMask mask_not(LaneMask) { unavailable(); }
LaneVector masked_or_lanes(const LaneVector&, LaneMask, const LaneVector&, const LaneVector&) { unavailable(); }
void prefetch_hint(PrefetchKind, std::span<const std::int32_t>, const LaneVector&, LaneMask, CacheLevel) {
  unavailable();
}
void prefetch_hint(PrefetchKind, std::span<const std::uint32_t>, const LaneVector&, LaneMask, CacheLevel) {
  unavailable();
}
void prefetch_hint(std::span<const std::int32_t>, CacheLevel) { unavailable(); }

}  // namespace bfsvec::lane::avx512

#include "lane_kernels.hpp"

namespace bfsvec::detail {

std::size_t explore_adjacency_avx512(const CsrGraph&, VertexId, std::span<const std::uint32_t>,
                                     std::span<std::uint32_t>, std::span<std::int32_t>) {
  BFSVEC_EXPECTS(false, "AVX-512 backend not compiled in");
  return 0;
}

std::size_t restore_words_avx512(std::span<std::uint32_t>, std::span<std::uint32_t>, std::span<std::int32_t>,
                                 std::size_t, std::size_t, std::size_t) {
  BFSVEC_EXPECTS(false, "AVX-512 backend not compiled in");
  return 0;
}

}  // namespace bfsvec::detail
