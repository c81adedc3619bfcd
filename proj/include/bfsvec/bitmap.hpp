#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "bfsvec/common.hpp"

namespace bfsvec {

/// Fixed-capacity bit array over 32-bit words. Bit n lives in word n / 32 at
/// offset n % 32, least significant bit first.
///
/// Distinct words may be written concurrently. Concurrent set_bit calls that
/// hit the same word are allowed and may drop bits; whole-word stores are
/// never torn. There are no atomic bit operations.
class Bitmap {
 public:
  using Word = std::uint32_t;
  static constexpr std::size_t kBitsPerWord = 32;

  Bitmap() = default;
  explicit Bitmap(std::size_t capacity);

  static constexpr std::size_t words_for(std::size_t capacity) noexcept {
    return (capacity + kBitsPerWord - 1) / kBitsPerWord;
  }

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::size_t storage_bytes() const noexcept { return words_.size() * sizeof(Word); }

  void set_bit(std::size_t n) {
    BFSVEC_EXPECTS(n < capacity_, "bit position out of range");
    Word& w = words_[n / kBitsPerWord];
    relaxed_store(w, static_cast<Word>(relaxed_load(w) | (Word{1} << (n % kBitsPerWord))));
  }

  bool test_bit(std::size_t n) const {
    BFSVEC_EXPECTS(n < capacity_, "bit position out of range");
    return (relaxed_load(words_[n / kBitsPerWord]) >> (n % kBitsPerWord)) & 1U;
  }

  /// Vertex id addressed by `bit_offset` inside word `word_index`.
  VertexId bit_to_vertex(std::size_t word_index, unsigned bit_offset) const {
    BFSVEC_EXPECTS(bit_offset < kBitsPerWord, "bit offset must be below 32");
    const std::size_t n = word_index * kBitsPerWord + bit_offset;
    BFSVEC_EXPECTS(n < capacity_, "vertex id beyond bitmap capacity");
    return static_cast<VertexId>(n);
  }

  Word word_at(std::size_t word_index) const {
    BFSVEC_EXPECTS(word_index < words_.size(), "word index out of range");
    return relaxed_load(words_[word_index]);
  }

  void store_word(std::size_t word_index, Word value);

  void clear_all() noexcept;
  std::size_t popcount() const noexcept;
  bool any() const noexcept;

  /// Raw word storage for kernels that compute word indices themselves.
  std::span<Word> words() noexcept { return words_; }
  std::span<const Word> words() const noexcept { return words_; }

  friend void swap(Bitmap& a, Bitmap& b) noexcept {
    std::swap(a.capacity_, b.capacity_);
    a.words_.swap(b.words_);
  }

 private:
  Word tail_mask() const noexcept;

  std::size_t capacity_ = 0;
  AlignedVector<Word> words_;
};

/// Exchanges `in` and `out`, then clears the bitmap now playing `out`.
void swap_and_clear(Bitmap& in, Bitmap& out);

}  // namespace bfsvec
