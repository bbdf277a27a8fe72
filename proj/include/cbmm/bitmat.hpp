#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cbmm {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) noexcept { return (bits + kWordBits - 1) / kWordBits; }

// Calls fn(index) for every set bit of a word span, in increasing order.
template <typename Fn>
void for_each_set_bit(std::span<const Word> words, Fn&& fn) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    Word x = words[w];
    while (x != 0) {
      fn(w * kWordBits + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
}

inline bool spans_intersect(std::span<const Word> x, std::span<const Word> y) noexcept {
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t w = 0; w < n; ++w) {
    if ((x[w] & y[w]) != 0) return true;
  }
  return false;
}

// Lowest set bit of x & y, or npos.
inline std::size_t first_common_bit(std::span<const Word> x, std::span<const Word> y) noexcept {
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t w = 0; w < n; ++w) {
    const Word both = x[w] & y[w];
    if (both != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(both));
  }
  return static_cast<std::size_t>(-1);
}

inline std::size_t popcount_and(std::span<const Word> x, std::span<const Word> y) noexcept {
  const std::size_t n = std::min(x.size(), y.size());
  std::size_t total = 0;
  for (std::size_t w = 0; w < n; ++w) total += static_cast<std::size_t>(std::popcount(x[w] & y[w]));
  return total;
}

/// Row-major bit-packed Boolean matrix.
///
/// Bit j of row i lives in word i*words_per_row() + j/64 at position j%64.
/// Pad bits past cols() in the last word of every row are always zero, so
/// word-level AND/OR/popcount never need masking.
class BitMatrix {
 public:
  BitMatrix() = default;

  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_per_row_(words_for(cols)), data_(rows * words_per_row_, Word{0}) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  static BitMatrix all_ones(std::size_t rows, std::size_t cols) {
    BitMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m.set(i, j, true);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return words_per_row_; }

  std::span<const Word> data() const noexcept { return data_; }

  std::span<const Word> row(std::size_t i) const noexcept {
    assert(i < rows_);
    return {data_.data() + i * words_per_row_, words_per_row_};
  }

  bool get(std::size_t i, std::size_t j) const noexcept {
    assert(i < rows_ && j < cols_);
    return (data_[i * words_per_row_ + j / kWordBits] >> (j % kWordBits)) & Word{1};
  }

  void set(std::size_t i, std::size_t j, bool v) noexcept {
    assert(i < rows_ && j < cols_);
    Word& w = data_[i * words_per_row_ + j / kWordBits];
    const Word bit = Word{1} << (j % kWordBits);
    w = v ? (w | bit) : (w & ~bit);
  }

  // OR a packed row (same width, pad-clean) into row i.
  void or_into_row(std::size_t i, std::span<const Word> src) noexcept {
    assert(i < rows_ && src.size() == words_per_row_);
    Word* dst = data_.data() + i * words_per_row_;
    for (std::size_t w = 0; w < words_per_row_; ++w) dst[w] |= src[w];
  }

  std::size_t count() const noexcept {
    std::size_t total = 0;
    for (Word w : data_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  BitMatrix transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for_each_set_bit(row(i), [&](std::size_t j) { t.set(j, i, true); });
    }
    return t;
  }

  bool pad_bits_clear() const noexcept {
    const std::size_t used = cols_ % kWordBits;
    if (used == 0 || words_per_row_ == 0) return true;
    const Word pad = ~((Word{1} << used) - 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      if ((data_[i * words_per_row_ + words_per_row_ - 1] & pad) != 0) return false;
    }
    return true;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<Word> data_;
};

/// True iff row i of m and row k of m2 share a set column.
inline bool rows_intersect(const BitMatrix& m, std::size_t i, const BitMatrix& m2, std::size_t k) {
  if (m.cols() != m2.cols()) {
    throw std::invalid_argument("rows_intersect: column mismatch (" + std::to_string(m.cols()) + " vs " +
                                std::to_string(m2.cols()) + ")");
  }
  return spans_intersect(m.row(i), m2.row(k));
}

/// Boolean product by OR-ing the rows of b selected by each row of a.
inline BitMatrix multiply_bitpacked(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("multiply_bitpacked: inner dimensions differ (" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + ")");
  }
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for_each_set_bit(a.row(i), [&](std::size_t k) { out.or_into_row(i, b.row(k)); });
  }
  return out;
}

}  // namespace cbmm
