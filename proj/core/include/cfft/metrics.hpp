#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cfft/addnet.hpp"
#include "cfft/planner.hpp"

namespace cfft {

struct ComplexityReport {
  std::uint32_t n = 0;
  unsigned m = 0;
  std::size_t k = 0;
  /// Field multiplications left after dropping products by 0 and 1.
  std::uint64_t mults = 0;
  /// Sum of r over the cosets' convolutions.
  std::uint64_t mults_raw = 0;
  std::uint64_t adds_conv = 0;
  /// Present when counted with an addition network.
  std::optional<AddnetCounts> adds_addnet;
  std::uint64_t adds_direct = 0;

  /// Additions of the whole transform: convolutions plus A v by the network
  /// when present, row by row otherwise.
  std::uint64_t adds() const { return adds_conv + (adds_addnet ? adds_addnet->total() : adds_direct); }
  std::uint64_t weight() const { return 2 * std::uint64_t{m} - 1; }
  std::uint64_t total_weighted() const { return weight() * mults + adds(); }
};

/// Static count; nothing is transformed.
ComplexityReport count(const CfftPlan& plan, const AdditionNetwork* net = nullptr);

/// Bound shapes as functions of n, with log2 taken of n + 1 (= 2^m).
double mult_bound_shape(std::uint32_t n);
double add_bound_shape(std::uint32_t n);

struct BoundRow {
  ComplexityReport report;
  double bound_mult = 0;
  double bound_add = 0;
  double ratio_mult = 0;
  double ratio_add = 0;
};

struct BoundTable {
  unsigned anchor_m = 0;
  double scale_mult = 0;
  double scale_add = 0;
  std::vector<BoundRow> rows;
};

/// Measured counts against the shapes for n = 2^m - 1, m in [m_min, m_max],
/// each shape scaled to match the measurement at anchor_m. The additive
/// measurement is the network's addition count. Throws
/// std::invalid_argument unless m_min <= anchor_m <= m_max.
BoundTable bound_table(unsigned m_min, unsigned m_max, unsigned anchor_m = 4);

/// Scores one report against scales from a bound table.
BoundRow score(const ComplexityReport& report, double scale_mult, double scale_add);

enum class TableFormat { csv, text };

void write_bound_rows(std::ostream& out, const std::vector<BoundRow>& rows, TableFormat format);

}  // namespace cfft
