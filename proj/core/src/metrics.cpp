#include "cfft/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

namespace cfft {

ComplexityReport count(const CfftPlan& plan, const AdditionNetwork* net) {
  ComplexityReport rep;
  rep.n = plan.n;
  rep.m = plan.field.degree();
  rep.k = plan.k();
  for (const auto& conv : plan.conv) {
    const BilinearTally c = conv.static_cost();
    rep.mults += c.multiplications;
    rep.mults_raw += conv.base().r();
    rep.adds_conv += c.additions();
  }
  if (net != nullptr) rep.adds_addnet = net->static_counts();
  rep.adds_direct = xor_apply_cost(plan.A);
  return rep;
}

double mult_bound_shape(std::uint32_t n) {
  const double lg = std::log2(static_cast<double>(n) + 1.0);
  return n * std::pow(lg, std::log2(1.5));
}

double add_bound_shape(std::uint32_t n) {
  const double lg = std::log2(static_cast<double>(n) + 1.0);
  return static_cast<double>(n) * n / std::pow(lg, std::log2(8.0 / 3.0));
}

BoundRow score(const ComplexityReport& report, double scale_mult, double scale_add) {
  BoundRow row;
  row.report = report;
  row.bound_mult = scale_mult * mult_bound_shape(report.n);
  row.bound_add = scale_add * add_bound_shape(report.n);
  row.ratio_mult = static_cast<double>(report.mults) / row.bound_mult;
  const std::uint64_t measured_add = report.adds_addnet ? report.adds_addnet->total() : report.adds_direct;
  row.ratio_add = static_cast<double>(measured_add) / row.bound_add;
  return row;
}

BoundTable bound_table(unsigned m_min, unsigned m_max, unsigned anchor_m) {
  if (m_min < 2 || m_min > anchor_m || anchor_m > m_max) {
    throw std::invalid_argument("bound_table: need 2 <= m_min <= anchor_m <= m_max");
  }
  std::vector<ComplexityReport> reports;
  for (unsigned m = m_min; m <= m_max; ++m) {
    const Field field = make_field(m);
    const CfftPlan plan = build_plan(field, field.order());
    const AdditionNetwork net = build_addnet(build_block_form(plan));
    reports.push_back(count(plan, &net));
  }
  const ComplexityReport& anchor = reports[anchor_m - m_min];
  BoundTable table;
  table.anchor_m = anchor_m;
  table.scale_mult = static_cast<double>(anchor.mults) / mult_bound_shape(anchor.n);
  table.scale_add = static_cast<double>(anchor.adds_addnet->total()) / add_bound_shape(anchor.n);
  for (const auto& rep : reports) table.rows.push_back(score(rep, table.scale_mult, table.scale_add));
  return table;
}

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::vector<std::string> cells(const BoundRow& row) {
  const ComplexityReport& r = row.report;
  return {std::to_string(r.m),
          std::to_string(r.n),
          std::to_string(r.k),
          std::to_string(r.mults),
          std::to_string(r.adds_conv),
          r.adds_addnet ? std::to_string(r.adds_addnet->total()) : std::string("-"),
          std::to_string(r.adds_direct),
          std::to_string(r.total_weighted()),
          fixed(row.bound_mult, 1),
          fixed(row.bound_add, 1),
          fixed(row.ratio_mult, 4),
          fixed(row.ratio_add, 4)};
}

const std::vector<std::string> kColumns = {"m",           "n",           "k",          "mults",
                                           "adds_conv",   "adds_addnet", "adds_direct", "total_weighted",
                                           "bound_mult",  "bound_add",   "ratio_mult", "ratio_add"};

}  // namespace

void write_bound_rows(std::ostream& out, const std::vector<BoundRow>& rows, TableFormat format) {
  std::vector<std::vector<std::string>> table{kColumns};
  for (const auto& row : rows) table.push_back(cells(row));
  if (format == TableFormat::csv) {
    for (const auto& line : table) {
      for (std::size_t c = 0; c < line.size(); ++c) out << (c ? "," : "") << line[c];
      out << '\n';
    }
    return;
  }
  std::vector<std::size_t> width(kColumns.size(), 0);
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << line[c];
    }
    out << '\n';
  }
}

}  // namespace cfft
