#include "direach/bitmatrix.hpp"

#include <stdexcept>

namespace direach {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows),
      cols_(cols),
      words_per_row_((cols + kWordBits - 1) / kWordBits),
      words_(rows * words_per_row_, Word{0}) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, i);
  return out;
}

void BitMatrix::or_into_row(std::size_t r, std::span<const Word> src) {
  if (src.size() != words_per_row_) {
    throw std::invalid_argument("or_into_row: row width mismatch");
  }
  Word* dst = words_.data() + r * words_per_row_;
  for (std::size_t w = 0; w < words_per_row_; ++w) dst[w] |= src[w];
}

std::size_t BitMatrix::count() const {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::size_t BitMatrix::row_count(std::size_t r) const {
  std::size_t total = 0;
  for (Word w : row(r)) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<std::size_t> BitMatrix::row_indices(std::size_t r) const {
  std::vector<std::size_t> out;
  out.reserve(row_count(r));
  for_each_in_row(r, [&](std::size_t c) { out.push_back(c); });
  return out;
}

}  // namespace direach
