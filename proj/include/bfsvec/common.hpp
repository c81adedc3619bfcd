#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <new>
#include <stdexcept>
#include <vector>

namespace bfsvec {

using VertexId = std::int32_t;

/// Thrown when a caller breaks a documented precondition (out-of-range index,
/// mismatched capacities, ...). These are programming errors, not input errors.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {
[[noreturn]] void contract_failure(const char* expr, const char* file, int line, const char* what);
}  // namespace detail

#define BFSVEC_EXPECTS(cond, what)                                             \
  ((cond) ? static_cast<void>(0)                                               \
          : ::bfsvec::detail::contract_failure(#cond, __FILE__, __LINE__, what))

/// Allocator handing out storage on `Align`-byte boundaries.
template <class T, std::size_t Align = 64>
struct AlignedAllocator {
  using value_type = T;

  template <class U>
  struct rebind {
    using other = AlignedAllocator<U, Align>;
  };

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U, Align>&) noexcept {}

  T* allocate(std::size_t n) {
    if (n > std::numeric_limits<std::size_t>::max() / sizeof(T)) throw std::bad_array_new_length();
    return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t{Align}));
  }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, std::align_val_t{Align}); }

  template <class U>
  bool operator==(const AlignedAllocator<U, Align>&) const noexcept {
    return true;
  }
};

template <class T>
using AlignedVector = std::vector<T, AlignedAllocator<T>>;

// Word-granular accesses to memory shared between traversal threads. Stores
// are indivisible but carry no ordering; a load/modify/store sequence built
// from these may lose a concurrent writer's bits, which is intended.
template <class T>
inline T relaxed_load(const T& slot) noexcept {
  return std::atomic_ref<T>(const_cast<T&>(slot)).load(std::memory_order_relaxed);
}

template <class T>
inline void relaxed_store(T& slot, T value) noexcept {
  std::atomic_ref<T>(slot).store(value, std::memory_order_relaxed);
}

}  // namespace bfsvec
