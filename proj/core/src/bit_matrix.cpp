#include "cfft/bit_matrix.hpp"

#include <algorithm>

namespace cfft {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

BitMatrix BitMatrix::from_row_masks(std::size_t cols, std::span<const std::uint64_t> masks) {
  if (cols > 64) throw std::invalid_argument("from_row_masks: more than 64 columns");
  BitMatrix M(masks.size(), cols);
  for (std::size_t i = 0; i < masks.size(); ++i) M.set_row_mask(i, masks[i]);
  return M;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix M(n, n);
  for (std::size_t i = 0; i < n; ++i) M.set(i, i);
  return M;
}

std::uint64_t BitMatrix::row_mask(std::size_t i) const {
  if (cols_ > 64) throw std::invalid_argument("row_mask: more than 64 columns");
  return cols_ == 0 ? 0 : data_[i * words_];
}

void BitMatrix::set_row_mask(std::size_t i, std::uint64_t mask) {
  if (cols_ > 64) throw std::invalid_argument("set_row_mask: more than 64 columns");
  if (cols_ < 64 && (mask >> cols_) != 0) {
    throw std::invalid_argument("set_row_mask: mask has bits beyond the column count");
  }
  if (cols_ > 0) data_[i * words_] = mask;
}

std::size_t BitMatrix::row_popcount(std::size_t i) const {
  std::size_t c = 0;
  for (auto w : row_words(i)) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitMatrix::row_is_zero(std::size_t i) const {
  const auto r = row_words(i);
  return std::all_of(r.begin(), r.end(), [](std::uint64_t w) { return w == 0; });
}

bool BitMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<std::size_t> BitMatrix::row_support(std::size_t i) const {
  std::vector<std::size_t> out;
  const auto r = row_words(i);
  for (std::size_t w = 0; w < r.size(); ++w) {
    std::uint64_t bits = r[w];
    while (bits != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::string BitMatrix::row_hex(std::size_t i) const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = std::max<std::size_t>(1, (cols_ + 3) / 4);
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    unsigned nibble = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t j = d * 4 + b;
      if (j < cols_ && get(i, j)) nibble |= 1u << b;
    }
    out[digits - 1 - d] = kDigits[nibble];
  }
  return out;
}

void BitMatrix::set_row_hex(std::size_t i, std::string_view hex) {
  auto row = row_words(i);
  std::fill(row.begin(), row.end(), 0);
  const std::size_t n = hex.size();
  for (std::size_t d = 0; d < n; ++d) {
    const int v = hex_value(hex[n - 1 - d]);
    if (v < 0) throw std::invalid_argument("set_row_hex: not a hexadecimal digit");
    for (std::size_t b = 0; b < 4; ++b) {
      if (((v >> b) & 1) == 0) continue;
      const std::size_t j = d * 4 + b;
      if (j >= cols_) throw std::invalid_argument("set_row_hex: bit beyond the column count");
      set(i, j);
    }
  }
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix T(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j : row_support(i)) T.set(j, i);
  }
  return T;
}

BitMatrix& BitMatrix::operator^=(const BitMatrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) {
    throw std::invalid_argument("BitMatrix ^=: shape mismatch");
  }
  for (std::size_t w = 0; w < data_.size(); ++w) data_[w] ^= other.data_[w];
  return *this;
}

std::uint64_t xor_apply_cost(const BitMatrix& M) {
  std::uint64_t adds = 0;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    const auto pc = M.row_popcount(i);
    if (pc > 0) adds += pc - 1;
  }
  return adds;
}

}  // namespace cfft
