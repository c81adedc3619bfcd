#include <algorithm>

#include "bfsvec/lane.hpp"

namespace bfsvec::lane {

RunPartition partition_run(std::size_t start, std::size_t end, std::size_t alignment_origin) {
  BFSVEC_EXPECTS(start <= end, "run start after end");
  // Unsigned wrap keeps the misalignment correct when start < origin.
  const std::size_t misalignment = (start - alignment_origin) % kWidth;
  const std::size_t first_aligned = start + (kWidth - misalignment) % kWidth;
  const std::size_t peel_end = std::min(first_aligned, end);
  const std::size_t body_end = peel_end + (end - peel_end) / kWidth * kWidth;
  return RunPartition{{start, peel_end}, {peel_end, body_end}, {body_end, end}};
}

const char* backend_name(Backend backend) noexcept {
  switch (backend) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx512:
      return "avx512";
  }
  return "unknown";
}

bool accelerated_available() noexcept {
#if defined(BFSVEC_HAVE_AVX512) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx512f");
  return supported;
#else
  return false;
#endif
}

Backend best_backend() noexcept { return accelerated_available() ? Backend::avx512 : Backend::scalar; }

}  // namespace bfsvec::lane
