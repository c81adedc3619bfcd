#pragma once

// Portable 16-lane 32-bit integer vector semantics: every operation the
// vectorized traversal needs, implemented once as scalar emulation (the
// reference) and once over AVX-512 when the build and CPU allow it. Both
// backends expose the same function set under lane::scalar and lane::avx512.

#include <array>
#include <bit>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>

#include "bfsvec/common.hpp"

namespace bfsvec::lane {

inline constexpr std::size_t kWidth = 16;

struct LaneVector {
  alignas(64) std::array<std::int32_t, kWidth> lanes{};

  constexpr std::int32_t& operator[](std::size_t i) noexcept { return lanes[i]; }
  constexpr std::int32_t operator[](std::size_t i) const noexcept { return lanes[i]; }
  bool operator==(const LaneVector&) const = default;
};

/// One predicate bit per lane; bit i controls lane i.
class LaneMask {
 public:
  constexpr LaneMask() noexcept = default;
  constexpr explicit LaneMask(std::uint16_t bits) noexcept : bits_(bits) {}

  static constexpr LaneMask all() noexcept { return LaneMask(0xFFFF); }
  static constexpr LaneMask none() noexcept { return LaneMask(0); }
  /// Lanes [0, n) active.
  static constexpr LaneMask first(std::size_t n) noexcept {
    return LaneMask(n >= kWidth ? std::uint16_t{0xFFFF} : static_cast<std::uint16_t>((1U << n) - 1));
  }

  constexpr bool test(std::size_t lane) const noexcept { return (bits_ >> lane) & 1U; }
  constexpr void set(std::size_t lane, bool on) noexcept {
    bits_ = on ? static_cast<std::uint16_t>(bits_ | (1U << lane)) : static_cast<std::uint16_t>(bits_ & ~(1U << lane));
  }
  constexpr std::uint16_t bits() const noexcept { return bits_; }
  constexpr int count() const noexcept { return std::popcount(bits_); }
  constexpr bool any() const noexcept { return bits_ != 0; }

  bool operator==(const LaneMask&) const = default;

 private:
  std::uint16_t bits_ = 0;
};

template <class W>
concept LaneWord = std::same_as<W, std::int32_t> || std::same_as<W, std::uint32_t>;

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  constexpr std::size_t size() const noexcept { return end - begin; }
  constexpr bool empty() const noexcept { return begin == end; }
  bool operator==(const IndexRange&) const = default;
};

/// Split of [start, end) into an unaligned head, whole aligned vectors, and a
/// short tail. `body` always has a length that is a multiple of kWidth.
struct RunPartition {
  IndexRange peel;
  IndexRange body;
  IndexRange remainder;

  constexpr std::size_t body_vector_count() const noexcept { return body.size() / kWidth; }
  constexpr IndexRange body_vector(std::size_t i) const noexcept {
    return {body.begin + i * kWidth, body.begin + (i + 1) * kWidth};
  }
  bool operator==(const RunPartition&) const = default;
};

/// Peel ends at the first index >= start that is a multiple of kWidth
/// relative to `alignment_origin` (clamped to end).
RunPartition partition_run(std::size_t start, std::size_t end, std::size_t alignment_origin = 0);

enum class PrefetchKind { gather, scatter, contiguous };
enum class CacheLevel { L1, L2 };

enum class Backend { scalar, avx512 };

const char* backend_name(Backend backend) noexcept;
/// True when the AVX-512 backend was compiled in and the CPU supports it.
bool accelerated_available() noexcept;
/// avx512 when available, otherwise scalar.
Backend best_backend() noexcept;

namespace scalar {

inline LaneVector broadcast(std::int32_t x) noexcept {
  LaneVector r;
  r.lanes.fill(x);
  return r;
}

/// Lane i = start + i.
inline LaneVector iota(std::int32_t start) noexcept {
  LaneVector r;
  for (std::size_t i = 0; i < kWidth; ++i) r[i] = static_cast<std::int32_t>(start + static_cast<std::int32_t>(i));
  return r;
}

template <LaneWord W>
inline LaneVector load_contiguous(std::span<const W> base, std::size_t offset) {
  BFSVEC_EXPECTS(offset <= base.size() && base.size() - offset >= kWidth, "contiguous load overruns base");
  LaneVector r;
  for (std::size_t i = 0; i < kWidth; ++i) r[i] = static_cast<std::int32_t>(relaxed_load(base[offset + i]));
  return r;
}

inline LaneVector add_lanes(const LaneVector& a, const LaneVector& b) noexcept {
  LaneVector r;
  for (std::size_t i = 0; i < kWidth; ++i) {
    r[i] = static_cast<std::int32_t>(static_cast<std::uint32_t>(a[i]) + static_cast<std::uint32_t>(b[i]));
  }
  return r;
}

// Truncating division. INT32_MIN / -1 wraps to INT32_MIN (remainder 0), as the
// hardware conversion does.
inline LaneVector div_lanes(const LaneVector& v, const LaneVector& d) {
  LaneVector r;
  for (std::size_t i = 0; i < kWidth; ++i) {
    BFSVEC_EXPECTS(d[i] != 0, "zero divisor lane");
    r[i] = (d[i] == -1) ? static_cast<std::int32_t>(0U - static_cast<std::uint32_t>(v[i])) : v[i] / d[i];
  }
  return r;
}

inline LaneVector rem_lanes(const LaneVector& v, const LaneVector& d) {
  LaneVector r;
  for (std::size_t i = 0; i < kWidth; ++i) {
    BFSVEC_EXPECTS(d[i] != 0, "zero divisor lane");
    r[i] = (d[i] == -1) ? 0 : v[i] % d[i];
  }
  return r;
}

inline LaneVector shift_left_variable(const LaneVector& ones, const LaneVector& counts) {
  LaneVector r;
  for (std::size_t i = 0; i < kWidth; ++i) {
    BFSVEC_EXPECTS(counts[i] >= 0 && counts[i] < 32, "shift count outside 0..31");
    r[i] = static_cast<std::int32_t>(static_cast<std::uint32_t>(ones[i]) << counts[i]);
  }
  return r;
}

/// Inactive lanes read as 0 and never touch memory.
template <LaneWord W>
inline LaneVector gather(const LaneVector& indices, std::span<const W> base, LaneMask mask) {
  LaneVector r;
  for (std::size_t i = 0; i < kWidth; ++i) {
    if (!mask.test(i)) continue;
    BFSVEC_EXPECTS(indices[i] >= 0 && static_cast<std::size_t>(indices[i]) < base.size(), "gather index out of range");
    r[i] = static_cast<std::int32_t>(relaxed_load(base[indices[i]]));
  }
  return r;
}

/// Active lanes store in lane order, so among lanes sharing an index the
/// highest one wins.
template <LaneWord W>
inline void scatter(std::span<W> base, const LaneVector& indices, const LaneVector& values, LaneMask mask) {
  for (std::size_t i = 0; i < kWidth; ++i) {
    if (!mask.test(i)) continue;
    BFSVEC_EXPECTS(indices[i] >= 0 && static_cast<std::size_t>(indices[i]) < base.size(), "scatter index out of range");
    relaxed_store(base[indices[i]], static_cast<W>(values[i]));
  }
}

inline LaneMask test_nonzero_and(const LaneVector& a, const LaneVector& b) noexcept {
  LaneMask m;
  for (std::size_t i = 0; i < kWidth; ++i) m.set(i, (a[i] & b[i]) != 0);
  return m;
}

inline LaneMask compare_less(const LaneVector& a, const LaneVector& b) noexcept {
  LaneMask m;
  for (std::size_t i = 0; i < kWidth; ++i) m.set(i, a[i] < b[i]);
  return m;
}

inline LaneMask mask_or(LaneMask a, LaneMask b) noexcept { return LaneMask(a.bits() | b.bits()); }
inline LaneMask mask_and(LaneMask a, LaneMask b) noexcept { return LaneMask(a.bits() & b.bits()); }
inline LaneMask mask_not(LaneMask a) noexcept { return LaneMask(static_cast<std::uint16_t>(~a.bits())); }

inline LaneVector masked_or_lanes(const LaneVector& fallback, LaneMask mask, const LaneVector& a,
                                  const LaneVector& b) noexcept {
  LaneVector r;
  for (std::size_t i = 0; i < kWidth; ++i) r[i] = mask.test(i) ? (a[i] | b[i]) : fallback[i];
  return r;
}

template <LaneWord W>
inline void prefetch_hint(PrefetchKind, std::span<const W>, const LaneVector&, LaneMask, CacheLevel) noexcept {}

template <LaneWord W>
inline void prefetch_hint(std::span<const W>, CacheLevel) noexcept {}

}  // namespace scalar

// Out-of-line AVX-512 entry points with the same semantics as lane::scalar.
// Calling them when accelerated_available() is false throws ContractViolation.
namespace avx512 {

LaneVector broadcast(std::int32_t x);
LaneVector iota(std::int32_t start);
LaneVector load_contiguous(std::span<const std::int32_t> base, std::size_t offset);
LaneVector load_contiguous(std::span<const std::uint32_t> base, std::size_t offset);
LaneVector add_lanes(const LaneVector& a, const LaneVector& b);
LaneVector div_lanes(const LaneVector& v, const LaneVector& d);
LaneVector rem_lanes(const LaneVector& v, const LaneVector& d);
LaneVector shift_left_variable(const LaneVector& ones, const LaneVector& counts);
LaneVector gather(const LaneVector& indices, std::span<const std::int32_t> base, LaneMask mask);
LaneVector gather(const LaneVector& indices, std::span<const std::uint32_t> base, LaneMask mask);
void scatter(std::span<std::int32_t> base, const LaneVector& indices, const LaneVector& values, LaneMask mask);
void scatter(std::span<std::uint32_t> base, const LaneVector& indices, const LaneVector& values, LaneMask mask);
LaneMask test_nonzero_and(const LaneVector& a, const LaneVector& b);
LaneMask compare_less(const LaneVector& a, const LaneVector& b);
LaneMask mask_or(LaneMask a, LaneMask b);
LaneMask mask_and(LaneMask a, LaneMask b);
LaneMask mask_not(LaneMask a);
LaneVector masked_or_lanes(const LaneVector& fallback, LaneMask mask, const LaneVector& a, const LaneVector& b);
void prefetch_hint(PrefetchKind kind, std::span<const std::int32_t> base, const LaneVector& indices, LaneMask mask,
                   CacheLevel level);
void prefetch_hint(PrefetchKind kind, std::span<const std::uint32_t> base, const LaneVector& indices, LaneMask mask,
                   CacheLevel level);
void prefetch_hint(std::span<const std::int32_t> range, CacheLevel level);

}  // namespace avx512

}  // namespace bfsvec::lane
