#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cfft/bit_matrix.hpp"

namespace cfft {

/// Binary k x k matrix-vector product by the method of Four Russians.
///
/// Columns are cut into groups of s = ceil(log2 k) consecutive columns (the
/// last group may be narrower). Stage 1 forms every XOR combination of each
/// group's inputs in Gray-code order, one addition per combination with two
/// or more members. Stage 2 looks up, for every output row, the combination
/// selected by that row's bits in the group. Stage 3 sums the looked-up
/// values of each row.
///
/// Inputs flagged dead are known to be zero: their columns are cleared and
/// they take no part in stage 1.
class FourRussiansTableau {
 public:
  struct Group {
    std::size_t first_col = 0;
    unsigned width = 0;
    std::uint32_t live_mask = 0;  // bits of the group whose input is live
    /// Row c lists the output rows whose chunk in this group equals c.
    BitMatrix selection;  // 2^width x k
  };

  std::size_t k() const { return matrix_.rows(); }
  unsigned s() const { return s_; }
  const BitMatrix& matrix() const { return matrix_; }
  const std::vector<Group>& groups() const { return groups_; }

  std::uint32_t chunk(std::size_t row, std::size_t group) const {
    return chunks_[row * groups_.size() + group];
  }

  std::uint64_t table_additions() const { return table_adds_; }
  std::uint64_t lookup_additions() const { return lookup_adds_; }
  std::uint64_t add_count() const { return table_adds_ + lookup_adds_; }

  template <class V>
  std::vector<V> eval(std::span<const V> x, std::uint64_t* additions = nullptr) const;

 private:
  friend FourRussiansTableau build_four_russians(const BitMatrix&, const std::vector<bool>&);

  BitMatrix matrix_;
  unsigned s_ = 1;
  std::vector<Group> groups_;
  std::vector<std::uint32_t> chunks_;  // k x groups, row-major
  std::uint64_t table_adds_ = 0;
  std::uint64_t lookup_adds_ = 0;
};

/// ceil(log2 k), at least 1.
unsigned four_russians_chunk_width(std::size_t k);

/// Requires a square matrix with 1 <= k <= 4096. `dead` is empty or has k
/// entries.
FourRussiansTableau build_four_russians(const BitMatrix& M, const std::vector<bool>& dead = {});

/// Spreads the low bits of `compact` onto the set bits of `mask` (bit
/// deposit): bit i of compact lands on the i-th set bit of mask.
constexpr std::uint32_t deposit_bits(std::uint32_t compact, std::uint32_t mask) {
  std::uint32_t out = 0;
  for (std::uint32_t bit = 1; mask != 0 && compact != 0; bit <<= 1) {
    const std::uint32_t low = mask & (~mask + 1);
    if (compact & bit) out |= low;
    mask &= mask - 1;
    compact &= ~bit;
  }
  return out;
}

template <class V>
std::vector<V> FourRussiansTableau::eval(std::span<const V> x, std::uint64_t* additions) const {
  if (x.size() != k()) throw std::invalid_argument("four russians eval: dimension mismatch");
  std::vector<V> y(k(), V{});
  std::vector<bool> started(k(), false);
  std::vector<V> table;
  std::uint64_t adds = 0;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const Group& grp = groups_[g];
    const unsigned live = static_cast<unsigned>(std::popcount(grp.live_mask));
    table.assign(std::size_t{1} << grp.width, V{});
    // Stage 1: Gray-code walk over the live inputs of the group.
    for (std::uint32_t i = 1; i < (std::uint32_t{1} << live); ++i) {
      const std::uint32_t gray = i ^ (i >> 1);
      const std::uint32_t combo = deposit_bits(gray, grp.live_mask);
      if (std::has_single_bit(gray)) {
        table[combo] = x[grp.first_col + static_cast<std::size_t>(std::countr_zero(combo))];
        continue;
      }
      const std::uint32_t prev_gray = (i - 1) ^ ((i - 1) >> 1);
      const std::uint32_t prev = deposit_bits(prev_gray, grp.live_mask);
      const std::uint32_t changed = combo ^ prev;
      table[combo] = table[prev] ^ x[grp.first_col + static_cast<std::size_t>(std::countr_zero(changed))];
      ++adds;
    }
    // Stages 2 and 3: look up each row's chunk and accumulate.
    for (std::size_t row = 0; row < k(); ++row) {
      const std::uint32_t c = chunk(row, g);
      if (c == 0) continue;
      if (!started[row]) {
        y[row] = table[c];
        started[row] = true;
      } else {
        y[row] = y[row] ^ table[c];
        ++adds;
      }
    }
  }
  if (additions != nullptr) *additions += adds;
  return y;
}

}  // namespace cfft
