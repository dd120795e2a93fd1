#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cfft {

/// Dense binary matrix, one packed bit row per matrix row. Entry (i, j) is
/// bit j of row i. Unused high bits of the last word are always zero.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  /// Build from one mask per row; requires cols <= 64.
  static BitMatrix from_row_masks(std::size_t cols, std::span<const std::uint64_t> masks);
  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_; }

  bool get(std::size_t i, std::size_t j) const {
    return (data_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool value = true) {
    auto& w = data_[i * words_ + j / 64];
    const std::uint64_t bit = std::uint64_t{1} << (j % 64);
    w = value ? (w | bit) : (w & ~bit);
  }
  void flip(std::size_t i, std::size_t j) {
    data_[i * words_ + j / 64] ^= std::uint64_t{1} << (j % 64);
  }

  std::span<const std::uint64_t> row_words(std::size_t i) const {
    return {data_.data() + i * words_, words_};
  }
  std::span<std::uint64_t> row_words(std::size_t i) {
    return {data_.data() + i * words_, words_};
  }
  /// Row as a single mask; requires cols <= 64.
  std::uint64_t row_mask(std::size_t i) const;
  void set_row_mask(std::size_t i, std::uint64_t mask);

  std::size_t row_popcount(std::size_t i) const;
  bool row_is_zero(std::size_t i) const;
  bool is_zero() const;
  /// Indices of set bits in row i, ascending.
  std::vector<std::size_t> row_support(std::size_t i) const;

  /// Lowercase hex, most significant nibble first; ceil(cols/4) digits.
  std::string row_hex(std::size_t i) const;
  void set_row_hex(std::size_t i, std::string_view hex);

  BitMatrix transposed() const;
  BitMatrix& operator^=(const BitMatrix& other);

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

/// y = M x where x holds XOR-able values (field elements, or 64-lane GF(2)
/// words). Adds one per XOR actually performed, i.e. sum over nonzero rows
/// of popcount - 1, to `*additions` when non-null.
template <class V>
std::vector<V> xor_apply(const BitMatrix& M, std::span<const V> x,
                         std::uint64_t* additions = nullptr) {
  if (x.size() != M.cols()) {
    throw std::invalid_argument("xor_apply: vector length does not match matrix columns");
  }
  std::vector<V> y(M.rows(), V{});
  std::uint64_t adds = 0;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    const auto words = M.row_words(i);
    bool first = true;
    V acc{};
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t bits = words[w];
      while (bits != 0) {
        const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        if (first) {
          acc = x[j];
          first = false;
        } else {
          acc = acc ^ x[j];
          ++adds;
        }
      }
    }
    y[i] = acc;
  }
  if (additions != nullptr) *additions += adds;
  return y;
}

/// Static XOR count of xor_apply(M, .): sum over nonzero rows of popcount - 1.
std::uint64_t xor_apply_cost(const BitMatrix& M);

}  // namespace cfft
