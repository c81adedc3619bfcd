#include "bfsvec/bitmap.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <string>

namespace bfsvec {

namespace detail {

void contract_failure(const char* expr, const char* file, int line, const char* what) {
  std::ostringstream os;
  os << file << ":" << line << ": contract violated: " << what << " (" << expr << ")";
  throw ContractViolation(os.str());
}

}  // namespace detail

Bitmap::Bitmap(std::size_t capacity) : capacity_(capacity), words_(words_for(capacity), 0) {}

Bitmap::Word Bitmap::tail_mask() const noexcept {
  const std::size_t used = capacity_ % kBitsPerWord;
  return used == 0 ? ~Word{0} : static_cast<Word>((Word{1} << used) - 1);
}

void Bitmap::store_word(std::size_t word_index, Word value) {
  BFSVEC_EXPECTS(word_index < words_.size(), "word index out of range");
  if (word_index + 1 == words_.size()) {
    BFSVEC_EXPECTS((value & ~tail_mask()) == 0, "word sets bits beyond capacity");
  }
  relaxed_store(words_[word_index], value);
}

void Bitmap::clear_all() noexcept { std::fill(words_.begin(), words_.end(), Word{0}); }

std::size_t Bitmap::popcount() const noexcept {
  return std::accumulate(words_.begin(), words_.end(), std::size_t{0},
                         [](std::size_t acc, Word w) { return acc + std::popcount(w); });
}

bool Bitmap::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

void swap_and_clear(Bitmap& in, Bitmap& out) {
  BFSVEC_EXPECTS(in.capacity() == out.capacity(), "bitmap capacities differ");
  swap(in, out);
  out.clear_all();
}

}  // namespace bfsvec
