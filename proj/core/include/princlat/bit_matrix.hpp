#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace princlat {

/// Dense square boolean matrix stored as packed rows. Row `i` is the set
/// {j : m(i, j)}, so row-wise OR is the workhorse of every closure.
class BitMatrix {
 public:
  using Word = std::uint64_t;

  BitMatrix() = default;
  explicit BitMatrix(std::size_t n)
      : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool test(std::size_t i, std::size_t j) const noexcept {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
  }
  void set(std::size_t i, std::size_t j, bool value = true) noexcept {
    Word& w = bits_[i * words_ + j / 64];
    const Word mask = Word{1} << (j % 64);
    w = value ? (w | mask) : (w & ~mask);
  }

  std::span<const Word> row(std::size_t i) const noexcept {
    return {bits_.data() + i * words_, words_};
  }
  std::span<Word> row(std::size_t i) noexcept {
    return {bits_.data() + i * words_, words_};
  }

  /// row(dst) |= row(src); returns true if row(dst) changed.
  bool or_row(std::size_t dst, std::size_t src) noexcept {
    bool changed = false;
    Word* d = bits_.data() + dst * words_;
    const Word* s = bits_.data() + src * words_;
    for (std::size_t k = 0; k < words_; ++k) {
      const Word next = d[k] | s[k];
      changed |= next != d[k];
      d[k] = next;
    }
    return changed;
  }

  std::size_t row_count(std::size_t i) const noexcept {
    std::size_t c = 0;
    for (Word w : row(i)) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  BitMatrix transposed() const {
    BitMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (test(i, j)) t.set(j, i);
    return t;
  }

  /// Indices set in row `i`, ascending.
  std::vector<std::size_t> row_indices(std::size_t i) const {
    std::vector<std::size_t> out;
    const auto r = row(i);
    for (std::size_t k = 0; k < words_; ++k) {
      Word w = r[k];
      while (w != 0) {
        out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  bool subset_of(const BitMatrix& other) const noexcept {
    if (other.n_ != n_) return false;
    for (std::size_t k = 0; k < bits_.size(); ++k)
      if ((bits_[k] & ~other.bits_[k]) != 0) return false;
    return true;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> bits_;
};

}  // namespace princlat
