#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace direach {

/// Row-major Boolean matrix packed 64 entries per word.
///
/// Pad bits past `cols()` in the last word of each row are always zero, so two
/// matrices holding the same entries compare equal word for word.
class BitMatrix {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_per_row_; }

  bool test(std::size_t r, std::size_t c) const {
    return (words_[r * words_per_row_ + c / kWordBits] >> (c % kWordBits)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool value = true) {
    Word& w = words_[r * words_per_row_ + c / kWordBits];
    const Word mask = Word{1} << (c % kWordBits);
    w = value ? (w | mask) : (w & ~mask);
  }

  std::span<const Word> row(std::size_t r) const {
    return {words_.data() + r * words_per_row_, words_per_row_};
  }
  /// Mutable row words. Callers must leave the pad bits zero.
  std::span<Word> row_words(std::size_t r) {
    return {words_.data() + r * words_per_row_, words_per_row_};
  }

  /// ORs `src` (a row of a matrix with the same column count) into row `r`.
  void or_into_row(std::size_t r, std::span<const Word> src);

  std::size_t count() const;
  std::size_t row_count(std::size_t r) const;
  /// Column indices of the set entries of row `r`, ascending.
  std::vector<std::size_t> row_indices(std::size_t r) const;

  /// Calls `fn(c)` for every set column of row `r`, ascending.
  template <typename Fn>
  void for_each_in_row(std::size_t r, Fn&& fn) const {
    const auto words = row(r);
    for (std::size_t w = 0; w < words.size(); ++w) {
      Word bits = words[w];
      while (bits != 0) {
        const int tz = std::countr_zero(bits);
        fn(w * kWordBits + static_cast<std::size_t>(tz));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<Word> words_;
};

/// Dense copy with 0/1 entries, e.g. for integer-product cross-checks.
template <typename Scalar = int>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_dense(const BitMatrix& m) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(
          static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    m.for_each_in_row(r, [&](std::size_t c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Scalar(1);
    });
  }
  return out;
}

/// Packs a dense matrix; any nonzero entry becomes a set bit.
template <typename Derived>
BitMatrix from_dense(const Eigen::MatrixBase<Derived>& dense) {
  BitMatrix out(static_cast<std::size_t>(dense.rows()), static_cast<std::size_t>(dense.cols()));
  for (Eigen::Index r = 0; r < dense.rows(); ++r) {
    for (Eigen::Index c = 0; c < dense.cols(); ++c) {
      if (dense(r, c) != typename Derived::Scalar(0)) {
        out.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      }
    }
  }
  return out;
}

}  // namespace direach
