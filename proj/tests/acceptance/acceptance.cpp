// One PASS/FAIL line per acceptance criterion.
//
//   cfft_acceptance            run every criterion
//   cfft_acceptance <id>...    run only the named criteria
//   cfft_acceptance --list     print the ids
//
// Exit status is the number of failed criteria (capped at 100).

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cfft/addnet.hpp"
#include "cfft/bilinear.hpp"
#include "cfft/cyclotomic.hpp"
#include "cfft/engine.hpp"
#include "cfft/four_russians.hpp"
#include "cfft/metrics.hpp"
#include "cfft/netlist.hpp"
#include "cfft/planner.hpp"

using namespace cfft;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  std::string first_failure;

  void fail(const std::string& why) {
    if (pass) first_failure = why;
    pass = false;
  }
};

struct Criterion {
  std::string id;
  std::string title;
  std::function<void(Verdict&)> run;
};

// Bound-shape tolerance: measured / scaled bound must lie in [1/2, 2].
constexpr double kShapeFactor = 2.0;
constexpr unsigned kAnchorM = 4;

CfftPlan full_plan(unsigned m) {
  const Field f = make_field(m);
  return build_plan(f, f.order());
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

void oracle_equivalence(Verdict& v, unsigned m_lo, unsigned m_hi) {
  std::mt19937_64 rng(20240501);
  std::size_t vectors = 0;
  for (unsigned m = m_lo; m <= m_hi; ++m) {
    const Transformer structured(full_plan(m), true);
    const Transformer direct(structured.plan(), false);
    const Field& f = structured.plan().field;
    const std::size_t trials = m >= 10 ? 5 : 50;
    for (std::size_t t = 0; t < trials; ++t) {
      const FieldVector x = random_vector(f, f.order(), rng);
      const FieldVector want = naive_dft(f, f.order(), x);
      const FieldVector a = structured(x).F;
      const FieldVector b = direct(x).F;
      ++vectors;
      if (a != want || b != want) {
        v.fail("m=" + std::to_string(m) + " trial " + std::to_string(t));
        break;
      }
    }
  }
  v.detail << " m=" << m_lo << ".." << m_hi << ", " << vectors << " vectors";
}

void extraction_equivalence(Verdict& v) {
  std::mt19937_64 rng(7);
  for (unsigned m = 3; m <= 8; ++m) {
    const CfftPlan plan = full_plan(m);
    const BlockCyclicForm form = build_block_form(plan);
    for (int t = 0; t < 100; ++t) {
      const FieldVector x = random_vector(plan.field, plan.n, rng);
      if (block_form_apply(form, std::span<const FieldElement>(x)) !=
          direct_av(plan.A, std::span<const FieldElement>(x))) {
        v.fail("m=" + std::to_string(m));
        break;
      }
    }
  }
  v.detail << " m=3..8, 100 vectors each";
}

void coset_counts(Verdict& v) {
  for (unsigned m = 2; m <= 20; ++m) {
    const CosetTotalCheck l2 = check_coset_total(m);
    if (!l2.pass) v.fail("coset total bound at m=" + std::to_string(m));
    for (const auto& row : check_cosets_per_size(partition_cosets((1u << m) - 1), m)) {
      if (!row.pass) v.fail("cosets-per-size bound at m=" + std::to_string(m) + " size " + std::to_string(row.size));
    }
  }
  v.detail << " m=2..20";
}

void structure(Verdict& v) {
  for (unsigned m = 3; m <= 8; ++m) {
    const CfftPlan plan = full_plan(m);
    const std::string at = "m=" + std::to_string(m);
    if (plan.A.rows() != plan.n || plan.A.cols() != plan.n || !reconstruction_identity_holds(plan)) {
      v.fail(at + ": A does not reproduce alpha^(j s_i) from binary coordinates");
    }
    // A' blocks: successive rows of a coset are related by squaring.
    for (std::size_t br = 0; br < plan.k(); ++br) {
      const auto& elems = plan.partition.cosets[br].elements;
      for (std::size_t bc = 0; bc < plan.k(); ++bc) {
        const unsigned d = plan.coset_size(bc);
        for (std::size_t s = 0; s + 1 < elems.size(); ++s) {
          std::uint64_t a = 0, b = 0;
          for (unsigned c = 0; c < d; ++c) {
            a |= std::uint64_t{plan.A.get(elems[s], plan.block_offset[bc] + c)} << c;
            b |= std::uint64_t{plan.A.get(elems[s + 1], plan.block_offset[bc] + c)} << c;
          }
          if (b != rotate_coords(a, d)) v.fail(at + ": A' block not cyclic");
        }
      }
    }
    BlockCyclicForm form;
    try {
      form = build_block_form(plan);
    } catch (const InvariantViolation& e) {
      v.fail(at + ": " + e.what());
      continue;
    }
    const std::size_t k = form.k;
    const BitMatrix ext = materialize_extended(plan);
    for (std::size_t i = 0; i < k * m; ++i) {
      for (std::size_t j = 0; j < k * m; ++j) {
        const std::size_t i1 = i / m, i2 = i % m, j1 = j / m, j2 = j % m;
        if (ext.get(i, j) != ext.get(i1 * m + (i2 + 1) % m, j1 * m + (j2 + 1) % m)) {
          v.fail(at + ": tiled extension not cyclic");
        }
      }
    }
    const BitMatrix B = reorder_extended(ext, k, m);
    for (std::size_t i2 = 0; i2 < m; ++i2)
      for (std::size_t j2 = 0; j2 < m; ++j2)
        for (std::size_t i1 = 0; i1 < k; ++i1)
          for (std::size_t j1 = 0; j1 < k; ++j1)
            if (B.get(i2 * k + i1, j2 * k + j1) != B.get(i1, ((j2 + m - i2) % m) * k + j1)) {
              v.fail(at + ": B not block-cyclic");
            }
    if (B != materialize_b(form)) v.fail(at + ": B differs from its block-cyclic first row");
  }
  v.detail << " m=3..8";
}

std::size_t three_pow_ceil_log2(std::size_t len) {
  std::size_t r = 1;
  for (std::size_t L = 1; L < len; L *= 2) r *= 3;
  return r;
}

void bilinear(Verdict& v) {
  std::mt19937_64 rng(16);
  for (unsigned m : {4u, 8u}) {
    const Field f = make_field(m);
    for (std::size_t len = 1; len <= 16; ++len) {
      const auto lin = gen_linear(len);
      const auto cyc = gen_cyclic(len);
      if (lin.r() != three_pow_ceil_log2(len) || cyc.r() != lin.r()) {
        v.fail("r at len " + std::to_string(len));
      }
      for (int t = 0; t < 20; ++t) {
        const FieldVector x = random_vector(f, len, rng), y = random_vector(f, len, rng);
        if (apply_bilinear(f, lin, x, y) != naive_linear_convolution(f, x, y) ||
            apply_bilinear(f, cyc, x, y) != naive_cyclic_convolution(f, x, y)) {
          v.fail("GF(2^" + std::to_string(m) + ") len " + std::to_string(len));
          break;
        }
      }
    }
  }
  v.detail << " len=1..16 over GF(2^4), GF(2^8)";
}

const BoundTable& bounds_4_10() {
  static const BoundTable t = bound_table(4, 10, kAnchorM);
  return t;
}

void shape(Verdict& v, bool multiplicative) {
  const BoundTable& t = bounds_4_10();
  v.detail << " ratios";
  for (const auto& row : t.rows) {
    const double ratio = multiplicative ? row.ratio_mult : row.ratio_add;
    v.detail << ' ' << row.report.m << ':' << fmt(ratio);
    if (ratio > kShapeFactor || ratio < 1.0 / kShapeFactor) {
      v.fail("m=" + std::to_string(row.report.m) + " ratio " + fmt(ratio));
    }
  }
}

void payoff(Verdict& v) {
  const BoundRow& row = bounds_4_10().rows.back();
  const auto net = row.report.adds_addnet->total();
  const auto direct = row.report.adds_direct;
  v.detail << " m=10: adds_addnet=" << net << " adds_direct=" << direct
           << " ratio=" << fmt(static_cast<double>(net) / static_cast<double>(direct));
  if (!(net < direct)) v.fail("network is not cheaper");
}

void four_russians(Verdict& v) {
  std::mt19937_64 rng(4);
  for (std::size_t k = 1; k <= 64; ++k) {
    BitMatrix M(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) M.set(i, j, rng() & 1u);
    const auto t = build_four_russians(M);
    const Field f = make_field(8);
    for (int i = 0; i < 50; ++i) {
      const FieldVector x = random_vector(f, k, rng);
      std::uint64_t adds = 0;
      if (t.eval(std::span<const FieldElement>(x), &adds) != xor_apply(M, std::span<const FieldElement>(x)) ||
          adds != t.add_count()) {
        v.fail("k=" + std::to_string(k));
        break;
      }
    }
  }
  double worst = 0;
  for (std::size_t k = 8; k <= 256; ++k) {
    BitMatrix M(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) M.set(i, j, rng() & 1u);
    const double bound = 3.0 * static_cast<double>(k * k) / std::log2(static_cast<double>(k));
    const double used = static_cast<double>(build_four_russians(M).add_count());
    worst = std::max(worst, used / bound);
    if (used > bound) v.fail("add_count above 3k^2/log2 k at k=" + std::to_string(k));
  }
  v.detail << " k=1..64 equivalence; k=8..256 worst add_count/(3k^2/log2 k)=" << fmt(worst);
}

void counts(Verdict& v) {
  std::mt19937_64 rng(3);
  for (unsigned m = 2; m <= 10; ++m) {
    const Transformer structured(full_plan(m), true);
    const Transformer direct(structured.plan(), false);
    const CfftPlan& plan = structured.plan();
    const ComplexityReport rep = count(plan, structured.network());
    const std::string at = "m=" + std::to_string(m);
    for (int t = 0; t < 3; ++t) {
      const FieldVector x = random_vector(plan.field, plan.n, rng);
      const StageTally a = structured(x).tally;
      const StageTally b = direct(x).tally;
      if (a != static_tally(plan, structured.network()) || b != static_tally(plan, nullptr)) {
        v.fail(at + ": tally differs from static count");
      }
      if (a.conv_mult != rep.mults || a.conv_pre + a.conv_post != rep.adds_conv ||
          a.addnet_pre != rep.adds_addnet->pre || a.addnet_mvp != rep.adds_addnet->mvp ||
          a.addnet_post != rep.adds_addnet->post || b.direct != rep.adds_direct) {
        v.fail(at + ": tally differs from complexity report");
      }
    }
    const auto doc = export_netlist(*structured.network());
    if (netlist_counts(doc) != *rep.adds_addnet) v.fail(at + ": netlist counts differ");
    if (padding_reaches_outputs(doc)) v.fail(at + ": padding reaches an output");
  }
  v.detail << " m=2..10, both paths, netlist cross-check";
}

std::vector<Criterion> criteria() {
  return {
      {"oracle_equivalence", "cfft (network) = cfft (direct) = naive DFT, m=2..10",
       [](Verdict& v) { oracle_equivalence(v, 2, 10); }},
      {"extraction_equivalence", "out_map(B u(v)) = A v", extraction_equivalence},
      {"coset_counts", "coset count bounds for m=2..20", coset_counts},
      {"structure", "A binary, A' blocks cyclic, extensions cyclic, B block-cyclic", structure},
      {"bilinear", "generated convolutions exact, r = 3^ceil(log2 len)", bilinear},
      {"mult_bound_shape", "multiplications within factor 2 of the scaled n (log2 n)^0.585 shape",
       [](Verdict& v) { shape(v, true); }},
      {"add_bound_shape", "network additions within factor 2 of the scaled n^2/(log2 n)^1.415 shape",
       [](Verdict& v) { shape(v, false); }},
      {"network_payoff", "network cheaper than row-by-row XOR at n=1023", payoff},
      {"four_russians", "Four-Russians exact and add_count <= 3k^2/log2 k", four_russians},
      {"static_dynamic_counts", "static counts = dynamic tallies = netlist counts", counts},
      {"slow_tier", "cfft (network) = cfft (direct) = naive DFT, m=11..12",
       [](Verdict& v) { oracle_equivalence(v, 11, 12); }},
  };
}

}  // namespace

int main(int argc, char** argv) {
  const auto all = criteria();
  std::vector<std::string> wanted(argv + 1, argv + argc);
  if (wanted.size() == 1 && wanted[0] == "--list") {
    for (const auto& c : all) std::cout << c.id << '\n';
    return 0;
  }
  int failed = 0;
  std::size_t ran = 0;
  for (const auto& c : all) {
    const bool selected = wanted.empty() ? c.id != "slow_tier"
                                         : std::find(wanted.begin(), wanted.end(), c.id) != wanted.end();
    if (!selected) continue;
    ++ran;
    Verdict v;
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    std::cout << (v.pass ? "PASS " : "FAIL ") << c.id << " | " << c.title << " |" << v.detail.str();
    if (!v.pass) std::cout << " | first failure: " << v.first_failure;
    std::cout << std::endl;
    failed += v.pass ? 0 : 1;
  }
  if (ran == 0) {
    std::cerr << "no such criterion\n";
    return 100;
  }
  return std::min(failed, 100);
}
