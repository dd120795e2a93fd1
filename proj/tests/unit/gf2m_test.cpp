#include <random>

#include <gtest/gtest.h>

#include "cfft/bit_matrix.hpp"
#include "cfft/gf2m.hpp"
#include "oracles.hpp"

using namespace cfft;

TEST(Field, ShippedPolynomialsArePrimitive) {
  for (unsigned m = 2; m <= 20; ++m) {
    const std::uint32_t poly = default_primitive_poly(m);
    EXPECT_EQ(oracle::degree(poly), static_cast<int>(m));
    if (m <= 16) {
      EXPECT_EQ(oracle::order_of_x(poly, m), (1u << m) - 1) << "m=" << m;
      EXPECT_FALSE(oracle::reducible(poly)) << "m=" << m;
    }
    EXPECT_TRUE(is_primitive(poly)) << "m=" << m;
  }
}

TEST(Field, PrimitivityAgreesWithBruteForce) {
  for (std::uint64_t poly = 0b100; poly < (1u << 9); ++poly) {
    const int d = oracle::degree(poly);
    const bool brute = d >= 2 && (poly & 1u) && !oracle::reducible(poly) &&
                       oracle::order_of_x(static_cast<std::uint32_t>(poly), d) == (1u << d) - 1;
    EXPECT_EQ(is_primitive(poly), brute) << std::hex << poly;
    if (d >= 2) EXPECT_EQ(is_irreducible(poly), !oracle::reducible(poly)) << std::hex << poly;
  }
}

TEST(Field, MakeField) {
  const Field f3 = make_field(3, 0b1011);
  EXPECT_EQ(f3.degree(), 3u);
  EXPECT_EQ(f3.order(), 7u);
  const Field f4 = make_field(4, 0b10011);
  EXPECT_EQ(f4.order(), 15u);
  EXPECT_THROW(make_field(3, 0b1111), std::invalid_argument);
  EXPECT_THROW(make_field(4, 0b11111), std::invalid_argument);  // irreducible, x has order 5
  EXPECT_THROW(make_field(1), std::invalid_argument);
  EXPECT_THROW(make_field(21), std::invalid_argument);
  EXPECT_THROW(make_field(4, 0b1011), std::invalid_argument);  // degree mismatch
}

TEST(Field, MultiplicationMatchesLogTable) {
  for (unsigned m : {2u, 3u, 4u, 5u, 8u}) {
    const Field f = make_field(m);
    const oracle::LogTable t(f.poly(), m);
    for (std::uint32_t a = 0; a <= f.order(); ++a) {
      for (std::uint32_t b = 0; b <= f.order(); ++b) {
        ASSERT_EQ(f.mul(FieldElement{a}, FieldElement{b}).bits(), t.mul(a, b)) << "m=" << m;
      }
    }
  }
  const Field f = make_field(16);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto a = static_cast<std::uint32_t>(rng() & 0xffff), b = static_cast<std::uint32_t>(rng() & 0xffff);
    ASSERT_EQ(f.mul(FieldElement{a}, FieldElement{b}).bits(), oracle::mul(a, b, f.poly(), 16));
  }
}

TEST(Field, SmallFieldExample) {
  const Field f = make_field(3, 0b1011);
  EXPECT_EQ(f.mul(FieldElement{0b010}, FieldElement{0b100}), FieldElement{0b011});
}

TEST(Field, Identities) {
  std::mt19937_64 rng(11);
  for (unsigned m : {3u, 8u, 13u, 20u}) {
    const Field f = make_field(m);
    for (int i = 0; i < 20; ++i) {
      const FieldElement a{static_cast<std::uint32_t>(rng() & f.order())};
      EXPECT_EQ(f.mul(a, f.one()), a);
      EXPECT_EQ(Field::add(a, a), f.zero());
      if (!a.is_zero()) EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
      EXPECT_EQ(f.pow(a, f.size()), a);
    }
    EXPECT_THROW(f.inv(f.zero()), std::domain_error);
    EXPECT_EQ(f.pow(f.primitive(), f.order()), f.one());
  }
}

TEST(Gf2Solve, Examples) {
  const BitMatrix id = BitMatrix::identity(3);
  EXPECT_EQ(gf2_solve(id, 0b101), 0b101u);

  const std::vector<std::uint64_t> rows{0b011, 0b101, 0b111};
  const BitMatrix M = BitMatrix::from_row_masks(3, rows);
  const auto x = gf2_solve(M, 0b010);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, 0b110u);  // rows 2 and 3
  EXPECT_EQ(oracle::exhaustive_solve(rows, 0b010), std::optional<std::uint64_t>(0b110));

  const std::vector<std::uint64_t> singular{0b011, 0b011, 0b100};
  EXPECT_FALSE(gf2_solve(BitMatrix::from_row_masks(3, singular), 0b001).has_value());
}

TEST(Gf2Solve, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    std::vector<std::uint64_t> rows(r);
    for (auto& row : rows) row = rng() & ((1u << c) - 1);
    const std::uint64_t rhs = rng() & ((1u << c) - 1);
    const BitMatrix M = BitMatrix::from_row_masks(c, rows);
    const auto got = gf2_solve(M, rhs);
    const auto want = oracle::exhaustive_solve(rows, rhs);
    ASSERT_EQ(got.has_value(), want.has_value());
    if (got) EXPECT_EQ(gf2_combine_rows(M, *got), rhs);
  }
}
