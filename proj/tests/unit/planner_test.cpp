#include <random>

#include <gtest/gtest.h>

#include "bridge.hpp"
#include "cfft/plan_document.hpp"
#include "cfft/planner.hpp"
#include "oracles.hpp"

using namespace cfft;
using testing_bridge::to_bits;
using testing_bridge::to_field;

namespace {

CfftPlan plan_for(unsigned m) {
  const Field f = make_field(m);
  return build_plan(f, f.order());
}

}  // namespace

TEST(Plan, SmallFieldLayout) {
  const CfftPlan plan = build_plan(make_field(3, 0b1011), 7);
  EXPECT_EQ(plan.k(), 3u);
  EXPECT_EQ(plan.perm_in, (std::vector<std::uint32_t>{0, 1, 2, 4, 3, 6, 5}));
  EXPECT_EQ(plan.block_offset, (std::vector<std::size_t>{0, 1, 4}));
  EXPECT_EQ(plan.A.rows(), 7u);
  EXPECT_EQ(plan.A.cols(), 7u);
  // Row 0 holds the coordinates of 1, the sum of all conjugates.
  EXPECT_EQ(plan.A.row_mask(0), 0b1111111u);

  const CfftPlan p15 = build_plan(make_field(4, 0b10011), 15);
  std::vector<unsigned> widths;
  for (std::size_t i = 0; i < p15.k(); ++i) widths.push_back(p15.coset_size(i));
  EXPECT_EQ(widths, (std::vector<unsigned>{1, 4, 4, 2, 4}));
}

TEST(Plan, RejectsLengthsThatDoNotDivide) {
  const Field f = make_field(4);
  EXPECT_THROW(build_plan(f, 7), std::invalid_argument);
  EXPECT_THROW(build_plan(f, 0), std::invalid_argument);
  EXPECT_NO_THROW(build_plan(f, 5));
  EXPECT_NO_THROW(build_plan(f, 3));
}

TEST(Plan, CosetGroups) {
  const auto g4 = coset_group_profile(plan_for(4));
  ASSERT_EQ(g4.size(), 3u);
  EXPECT_EQ(g4[0].size, 1u);
  EXPECT_EQ(g4[0].count, 1u);
  EXPECT_EQ(g4[1].size, 2u);
  EXPECT_EQ(g4[1].count, 1u);
  EXPECT_EQ(g4[2].size, 4u);
  EXPECT_EQ(g4[2].count, 3u);
  EXPECT_EQ(coset_group_profile(plan_for(2)).size(), 2u);
  for (unsigned m = 2; m <= 12; ++m) EXPECT_LE(coset_group_profile(plan_for(m)).size(), m);
}

TEST(Plan, ConvolutionsReproduceExplicitL) {
  std::mt19937_64 rng(21);
  for (unsigned m = 2; m <= 9; ++m) {
    const CfftPlan plan = plan_for(m);
    const oracle::LogTable t(plan.field.poly(), m);
    for (int trial = 0; trial < 5; ++trial) {
      const auto fp = oracle::random_elements(rng, plan.n, m);
      BilinearTally tally;
      const auto v = to_bits(apply_L(plan, to_field(fp), &tally));
      for (std::size_t i = 0; i < plan.k(); ++i) {
        const auto L = circulant_L(plan, i);
        const std::size_t off = plan.block_offset[i];
        for (std::size_t s = 0; s < L.size(); ++s) {
          std::uint32_t acc = 0;
          for (std::size_t c = 0; c < L.size(); ++c) acc ^= t.mul(L[s][c].bits(), fp[off + c]);
          ASSERT_EQ(v[off + s], acc) << "m=" << m << " coset " << i << " row " << s;
        }
      }
    }
  }
}

TEST(Plan, ReconstructionIdentity) {
  for (unsigned m = 2; m <= 10; ++m) EXPECT_TRUE(reconstruction_identity_holds(plan_for(m))) << "m=" << m;
}

TEST(Plan, SubLengthPlansRunTheSamePipeline) {
  const CfftPlan plan = build_plan(make_field(6), 21);
  EXPECT_TRUE(reconstruction_identity_holds(plan));
  EXPECT_FALSE(plan.full_length());
}

TEST(BlockForm, IndexMapExample) {
  EXPECT_EQ(extended_to_b(5, 7, 3, 3), (std::pair<std::size_t, std::size_t>{7, 5}));
}

TEST(BlockForm, StructuralInvariants) {
  for (unsigned m = 3; m <= 8; ++m) {
    const CfftPlan plan = plan_for(m);
    const BlockCyclicForm form = build_block_form(plan);
    EXPECT_EQ(form.k, plan.k());
    EXPECT_FALSE(form.experimental);

    // Every A' block is cyclic: row j+1 is row j with squared coordinates.
    for (std::size_t bi = 0; bi < plan.k(); ++bi) {
      const unsigned d = plan.coset_size(bi);
      for (std::size_t br = 0; br < plan.k(); ++br) {
        const unsigned rows = plan.coset_size(br);
        const auto& elems = plan.partition.cosets[br].elements;
        for (std::size_t s = 0; s + 1 < rows; ++s) {
          std::uint64_t a = 0, b = 0;
          for (unsigned c = 0; c < d; ++c) {
            a |= std::uint64_t{plan.A.get(elems[s], plan.block_offset[bi] + c)} << c;
            b |= std::uint64_t{plan.A.get(elems[s + 1], plan.block_offset[bi] + c)} << c;
          }
          ASSERT_EQ(b, rotate_coords(a, d)) << "m=" << m;
        }
      }
    }

    const BitMatrix ext = materialize_extended(plan);
    const BitMatrix B = reorder_extended(ext, form.k, form.m);
    EXPECT_EQ(B, materialize_b(form)) << "m=" << m;
    const std::size_t k = form.k;
    for (std::size_t i2 = 0; i2 < m; ++i2)
      for (std::size_t j2 = 0; j2 < m; ++j2)
        for (std::size_t i1 = 0; i1 < k; ++i1)
          for (std::size_t j1 = 0; j1 < k; ++j1)
            ASSERT_EQ(B.get(i2 * k + i1, j2 * k + j1), B.get(i1, ((j2 + m - i2) % m) * k + j1));

    // Each tiled block of A'' is cyclic over its full m x m extent.
    for (std::size_t i1 = 0; i1 < k; ++i1)
      for (std::size_t j1 = 0; j1 < k; ++j1)
        for (std::size_t i2 = 0; i2 < m; ++i2)
          for (std::size_t j2 = 0; j2 < m; ++j2)
            ASSERT_EQ(ext.get(i1 * m + i2, j1 * m + j2), ext.get(i1 * m + (i2 + 1) % m, j1 * m + (j2 + 1) % m));
  }
}

TEST(BlockForm, ExtractionEqualsAv) {
  std::mt19937_64 rng(33);
  for (unsigned m = 3; m <= 8; ++m) {
    const CfftPlan plan = plan_for(m);
    const BlockCyclicForm form = build_block_form(plan);
    for (int trial = 0; trial < 100; ++trial) {
      const FieldVector v = to_field(oracle::random_elements(rng, plan.n, m));
      ASSERT_EQ(block_form_apply(form, std::span<const FieldElement>(v)),
                xor_apply(plan.A, std::span<const FieldElement>(v)));
    }
    const FieldVector zero(plan.n);
    EXPECT_EQ(block_form_apply(form, std::span<const FieldElement>(zero)), zero);
  }
}

TEST(BlockForm, FlaggedExperimentalBelowFullLength) {
  const CfftPlan plan = build_plan(make_field(4), 5);
  try {
    const BlockCyclicForm form = build_block_form(plan);
    EXPECT_TRUE(form.experimental);
  } catch (const InvariantViolation&) {
    SUCCEED() << "sub-length plan has no block-cyclic form";
  }
}

TEST(PlanDocument, RoundTrip) {
  const CfftPlan plan = plan_for(5);
  const BlockCyclicForm form = build_block_form(plan);
  const auto doc = plan_to_json(plan, &form);
  EXPECT_EQ(doc.at("format"), "cfft-plan");
  const CfftPlan back = plan_from_json(doc);
  EXPECT_EQ(back.A, plan.A);
  EXPECT_EQ(back.perm_in, plan.perm_in);
  EXPECT_EQ(back.orientation, plan.orientation);
  EXPECT_EQ(plan_to_json(back, &form), doc);

  auto bad = doc;
  bad["version"] = 99;
  EXPECT_THROW(plan_from_json(bad), std::invalid_argument);
  bad = doc;
  bad.erase("A");
  EXPECT_THROW(plan_from_json(bad), std::invalid_argument);
  bad = doc;
  bad["n"] = 7;
  EXPECT_THROW(plan_from_json(bad), std::invalid_argument);
}
