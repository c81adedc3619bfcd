#pragma once

// Inline AVX-512F implementations of the lane operations. Only include from
// translation units compiled with -mavx512f.

#include <immintrin.h>

#include <limits>

#include "bfsvec/lane.hpp"

namespace bfsvec::lane::avx512_inline {

inline __m512i to_reg(const LaneVector& v) noexcept { return _mm512_load_si512(v.lanes.data()); }

inline LaneVector from_reg(__m512i r) noexcept {
  LaneVector v;
  _mm512_store_si512(v.lanes.data(), r);
  return v;
}

inline __mmask16 to_k(LaneMask m) noexcept { return static_cast<__mmask16>(m.bits()); }
inline LaneMask from_k(__mmask16 k) noexcept { return LaneMask(static_cast<std::uint16_t>(k)); }

// Active lanes whose unsigned index is >= size.
inline __mmask16 out_of_range(__mmask16 active, __m512i idx, std::size_t size) noexcept {
  if (size > std::numeric_limits<std::uint32_t>::max()) {
    return _mm512_mask_cmplt_epi32_mask(active, idx, _mm512_setzero_si512());
  }
  return _mm512_mask_cmpge_epu32_mask(active, idx, _mm512_set1_epi32(static_cast<std::int32_t>(size)));
}

inline __m512i broadcast(std::int32_t x) noexcept { return _mm512_set1_epi32(x); }

inline __m512i iota(std::int32_t start) noexcept {
  return _mm512_add_epi32(_mm512_set1_epi32(start),
                          _mm512_set_epi32(15, 14, 13, 12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0));
}

template <class W>
inline __m512i load_contiguous(std::span<const W> base, std::size_t offset) {
  BFSVEC_EXPECTS(offset <= base.size() && base.size() - offset >= kWidth, "contiguous load overruns base");
  return _mm512_loadu_si512(base.data() + offset);
}

inline __m512i add_lanes(__m512i a, __m512i b) noexcept { return _mm512_add_epi32(a, b); }

// Truncating quotient through double precision; exact for all 32-bit operands
// since the rounding error stays below the distance to the next integer.
inline __m512i div_lanes(__m512i v, __m512i d) {
  BFSVEC_EXPECTS(_mm512_test_epi32_mask(d, d) == 0xFFFF, "zero divisor lane");
  const __m512d vlo = _mm512_cvtepi32_pd(_mm512_castsi512_si256(v));
  const __m512d vhi = _mm512_cvtepi32_pd(_mm512_extracti64x4_epi64(v, 1));
  const __m512d dlo = _mm512_cvtepi32_pd(_mm512_castsi512_si256(d));
  const __m512d dhi = _mm512_cvtepi32_pd(_mm512_extracti64x4_epi64(d, 1));
  const __m256i qlo = _mm512_cvttpd_epi32(_mm512_div_pd(vlo, dlo));
  const __m256i qhi = _mm512_cvttpd_epi32(_mm512_div_pd(vhi, dhi));
  return _mm512_inserti64x4(_mm512_castsi256_si512(qlo), qhi, 1);
}

inline __m512i rem_lanes(__m512i v, __m512i d) { return _mm512_sub_epi32(v, _mm512_mullo_epi32(div_lanes(v, d), d)); }

// Divisor 32 is the only one the traversal uses; shifts avoid the double path
// for the non-negative ids it divides.
inline __m512i div_by_32_nonneg(__m512i v) noexcept { return _mm512_srli_epi32(v, 5); }
inline __m512i rem_by_32_nonneg(__m512i v) noexcept { return _mm512_and_si512(v, _mm512_set1_epi32(31)); }

inline __m512i shift_left_variable(__m512i ones, __m512i counts) {
  BFSVEC_EXPECTS(_mm512_cmpgt_epu32_mask(counts, _mm512_set1_epi32(31)) == 0, "shift count outside 0..31");
  return _mm512_sllv_epi32(ones, counts);
}

template <class W>
inline __m512i gather(__m512i idx, std::span<const W> base, __mmask16 mask) {
  BFSVEC_EXPECTS(out_of_range(mask, idx, base.size()) == 0, "gather index out of range");
  return _mm512_mask_i32gather_epi32(_mm512_setzero_si512(), mask, idx, base.data(), 4);
}

// Hardware scatter orders overlapping writes from the lowest to the highest
// lane, which is the highest-lane-wins rule.
template <class W>
inline void scatter(std::span<W> base, __m512i idx, __m512i values, __mmask16 mask) {
  BFSVEC_EXPECTS(out_of_range(mask, idx, base.size()) == 0, "scatter index out of range");
  _mm512_mask_i32scatter_epi32(base.data(), mask, idx, values, 4);
}

inline __mmask16 test_nonzero_and(__m512i a, __m512i b) noexcept { return _mm512_test_epi32_mask(a, b); }
inline __mmask16 compare_less(__m512i a, __m512i b) noexcept { return _mm512_cmplt_epi32_mask(a, b); }
inline __mmask16 mask_or(__mmask16 a, __mmask16 b) noexcept { return _mm512_kor(a, b); }
inline __mmask16 mask_and(__mmask16 a, __mmask16 b) noexcept { return _mm512_kand(a, b); }
inline __mmask16 mask_not(__mmask16 a) noexcept { return _mm512_knot(a); }

inline __m512i masked_or_lanes(__m512i fallback, __mmask16 mask, __m512i a, __m512i b) noexcept {
  return _mm512_mask_or_epi32(fallback, mask, a, b);
}

inline void prefetch_range(const void* begin, std::size_t bytes, CacheLevel level) noexcept {
  const char* p = static_cast<const char*>(begin);
  for (std::size_t off = 0; off < bytes; off += 64) {
    if (level == CacheLevel::L1) {
      _mm_prefetch(p + off, _MM_HINT_T0);
    } else {
      _mm_prefetch(p + off, _MM_HINT_T1);
    }
  }
}

}  // namespace bfsvec::lane::avx512_inline
