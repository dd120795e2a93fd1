#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bridge.hpp"
#include "cfft/four_russians.hpp"
#include "oracles.hpp"

using namespace cfft;
using testing_bridge::to_bits;
using testing_bridge::to_field;

namespace {

BitMatrix random_square(std::size_t k, std::mt19937_64& rng, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  BitMatrix M(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) M.set(i, j, bit(rng));
  return M;
}

std::vector<std::uint64_t> row_masks(const BitMatrix& M) {
  std::vector<std::uint64_t> rows;
  for (std::size_t i = 0; i < M.rows(); ++i) rows.push_back(M.row_mask(i));
  return rows;
}

}  // namespace

TEST(FourRussians, ChunkWidth) {
  EXPECT_EQ(four_russians_chunk_width(1), 1u);
  EXPECT_EQ(four_russians_chunk_width(2), 1u);
  EXPECT_EQ(four_russians_chunk_width(5), 3u);
  EXPECT_EQ(four_russians_chunk_width(8), 3u);
  EXPECT_EQ(four_russians_chunk_width(9), 4u);
  EXPECT_EQ(build_four_russians(BitMatrix::identity(5)).s(), 3u);
}

TEST(FourRussians, Trivial) {
  const FieldVector v{FieldElement{1}, FieldElement{2}, FieldElement{3}, FieldElement{4}, FieldElement{5}};
  const auto id = build_four_russians(BitMatrix::identity(5));
  EXPECT_EQ(id.eval(std::span<const FieldElement>(v)), v);

  const std::vector<std::uint64_t> ones{7, 7, 7};
  const auto all = build_four_russians(BitMatrix::from_row_masks(3, ones));
  const FieldVector abc{FieldElement{3}, FieldElement{5}, FieldElement{6}};
  for (auto y : all.eval(std::span<const FieldElement>(abc))) EXPECT_EQ(y, FieldElement{3 ^ 5 ^ 6});

  const FieldVector zero(5);
  EXPECT_EQ(id.eval(std::span<const FieldElement>(zero)), zero);
  EXPECT_THROW(id.eval(std::span<const FieldElement>(abc)), std::invalid_argument);
  EXPECT_THROW(build_four_russians(BitMatrix(0, 0)), std::invalid_argument);
  EXPECT_THROW(build_four_russians(BitMatrix(3, 4)), std::invalid_argument);
}

TEST(FourRussians, MatchesNaiveProductAndStaticCount) {
  std::mt19937_64 rng(77);
  for (std::size_t k = 1; k <= 64; ++k) {
    const BitMatrix M = random_square(k, rng);
    const auto t = build_four_russians(M);
    const auto rows = row_masks(M);
    for (int i = 0; i < 50; ++i) {
      const auto x = oracle::random_elements(rng, k, 8);
      std::uint64_t adds = 0;
      const auto y = t.eval(std::span<const FieldElement>(to_field(x)), &adds);
      ASSERT_EQ(to_bits(y), oracle::mvp(rows, x)) << "k=" << k;
      ASSERT_EQ(adds, t.add_count());
    }
  }
}

TEST(FourRussians, GrayCodeTableCost) {
  std::mt19937_64 rng(1);
  for (std::size_t k : {8u, 16u, 27u, 64u}) {
    const auto t = build_four_russians(random_square(k, rng));
    std::uint64_t expected = 0;
    for (const auto& g : t.groups()) expected += (std::uint64_t{1} << g.width) - g.width - 1;
    EXPECT_EQ(t.table_additions(), expected);
    EXPECT_EQ(t.groups().size(), (k + t.s() - 1) / t.s());
    EXPECT_EQ(t.groups().back().selection.rows(), std::size_t{1} << t.groups().back().width);
  }
}

TEST(FourRussians, DeadInputsAreCleared) {
  std::mt19937_64 rng(6);
  const std::size_t k = 12;
  const BitMatrix M = random_square(k, rng, 0.9);
  std::vector<bool> dead(k, false);
  dead[1] = dead[5] = dead[6] = true;
  const auto t = build_four_russians(M, dead);
  for (std::size_t i = 0; i < k; ++i) {
    EXPECT_FALSE(t.matrix().get(i, 1));
    EXPECT_FALSE(t.matrix().get(i, 6));
  }
  auto x = oracle::random_elements(rng, k, 8);
  x[1] = x[5] = x[6] = 0;
  std::uint64_t adds = 0;
  EXPECT_EQ(to_bits(t.eval(std::span<const FieldElement>(to_field(x)), &adds)), oracle::mvp(row_masks(M), x));
  EXPECT_EQ(adds, t.add_count());
}

TEST(FourRussians, AdditionBound) {
  std::mt19937_64 rng(256);
  for (std::size_t k = 8; k <= 256; ++k) {
    const auto t = build_four_russians(random_square(k, rng));
    const double bound = 3.0 * static_cast<double>(k * k) / std::log2(static_cast<double>(k));
    EXPECT_LE(static_cast<double>(t.add_count()), bound) << "k=" << k;
    const BitMatrix full = [&] {
      BitMatrix F(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) F.set(i, j);
      return F;
    }();
    EXPECT_LE(static_cast<double>(build_four_russians(full).add_count()), bound) << "k=" << k;
  }
}

TEST(FourRussians, BitLanes) {
  std::mt19937_64 rng(13);
  const BitMatrix M = random_square(70, rng);
  const auto t = build_four_russians(M);
  std::vector<std::uint64_t> x(70);
  for (auto& w : x) w = rng();
  EXPECT_EQ(t.eval(std::span<const std::uint64_t>(x)), xor_apply(M, std::span<const std::uint64_t>(x)));
}

TEST(DepositBits, SpreadsOntoMask) {
  static_assert(deposit_bits(0b11, 0b1010) == 0b1010);
  static_assert(deposit_bits(0b01, 0b1010) == 0b0010);
  static_assert(deposit_bits(0b10, 0b1010) == 0b1000);
  static_assert(deposit_bits(0b101, 0b111) == 0b101);
}
