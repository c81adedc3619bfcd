#include "lane_avx512_impl.hpp"

namespace bfsvec::lane::avx512 {

namespace inl = avx512_inline;

namespace {

void require_cpu() { BFSVEC_EXPECTS(accelerated_available(), "AVX-512 backend unavailable on this CPU"); }

}  // namespace

LaneVector broadcast(std::int32_t x) {
  require_cpu();
  return inl::from_reg(inl::broadcast(x));
}

LaneVector iota(std::int32_t start) {
  require_cpu();
  return inl::from_reg(inl::iota(start));
}

LaneVector load_contiguous(std::span<const std::int32_t> base, std::size_t offset) {
  require_cpu();
  return inl::from_reg(inl::load_contiguous(base, offset));
}

LaneVector load_contiguous(std::span<const std::uint32_t> base, std::size_t offset) {
  require_cpu();
  return inl::from_reg(inl::load_contiguous(base, offset));
}

LaneVector add_lanes(const LaneVector& a, const LaneVector& b) {
  require_cpu();
  return inl::from_reg(inl::add_lanes(inl::to_reg(a), inl::to_reg(b)));
}

LaneVector div_lanes(const LaneVector& v, const LaneVector& d) {
  require_cpu();
  return inl::from_reg(inl::div_lanes(inl::to_reg(v), inl::to_reg(d)));
}

LaneVector rem_lanes(const LaneVector& v, const LaneVector& d) {
  require_cpu();
  return inl::from_reg(inl::rem_lanes(inl::to_reg(v), inl::to_reg(d)));
}

LaneVector shift_left_variable(const LaneVector& ones, const LaneVector& counts) {
  require_cpu();
  return inl::from_reg(inl::shift_left_variable(inl::to_reg(ones), inl::to_reg(counts)));
}

LaneVector gather(const LaneVector& indices, std::span<const std::int32_t> base, LaneMask mask) {
  require_cpu();
  return inl::from_reg(inl::gather(inl::to_reg(indices), base, inl::to_k(mask)));
}

LaneVector gather(const LaneVector& indices, std::span<const std::uint32_t> base, LaneMask mask) {
  require_cpu();
  return inl::from_reg(inl::gather(inl::to_reg(indices), base, inl::to_k(mask)));
}

void scatter(std::span<std::int32_t> base, const LaneVector& indices, const LaneVector& values, LaneMask mask) {
  require_cpu();
  inl::scatter(base, inl::to_reg(indices), inl::to_reg(values), inl::to_k(mask));
}

void scatter(std::span<std::uint32_t> base, const LaneVector& indices, const LaneVector& values, LaneMask mask) {
  require_cpu();
  inl::scatter(base, inl::to_reg(indices), inl::to_reg(values), inl::to_k(mask));
}

LaneMask test_nonzero_and(const LaneVector& a, const LaneVector& b) {
  require_cpu();
  return inl::from_k(inl::test_nonzero_and(inl::to_reg(a), inl::to_reg(b)));
}

LaneMask compare_less(const LaneVector& a, const LaneVector& b) {
  require_cpu();
  return inl::from_k(inl::compare_less(inl::to_reg(a), inl::to_reg(b)));
}

LaneMask mask_or(LaneMask a, LaneMask b) {
  require_cpu();
  return inl::from_k(inl::mask_or(inl::to_k(a), inl::to_k(b)));
}

LaneMask mask_and(LaneMask a, LaneMask b) {
  require_cpu();
  return inl::from_k(inl::mask_and(inl::to_k(a), inl::to_k(b)));
}

LaneMask mask_not(LaneMask a) {
  require_cpu();
  return inl::from_k(inl::mask_not(inl::to_k(a)));
}

LaneVector masked_or_lanes(const LaneVector& fallback, LaneMask mask, const LaneVector& a, const LaneVector& b) {
  require_cpu();
  return inl::from_reg(inl::masked_or_lanes(inl::to_reg(fallback), inl::to_k(mask), inl::to_reg(a), inl::to_reg(b)));
}

// AVX-512F has no gather/scatter prefetch instruction; indexed hints are no-ops.
void prefetch_hint(PrefetchKind, std::span<const std::int32_t>, const LaneVector&, LaneMask, CacheLevel) {
  require_cpu();
}

void prefetch_hint(PrefetchKind, std::span<const std::uint32_t>, const LaneVector&, LaneMask, CacheLevel) {
  require_cpu();
}

void prefetch_hint(std::span<const std::int32_t> range, CacheLevel level) {
  require_cpu();
  inl::prefetch_range(range.data(), range.size_bytes(), level);
}

}  // namespace bfsvec::lane::avx512
