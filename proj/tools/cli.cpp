#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cfft/cyclotomic.hpp"
#include "cfft/engine.hpp"
#include "cfft/metrics.hpp"
#include "cfft/netlist.hpp"
#include "cfft/plan_document.hpp"

namespace cfft::cli {

namespace {

struct PlanArgs {
  unsigned m = 0;
  std::uint32_t n = 0;
  std::string poly;
  std::string plan_file;
};

void add_plan_options(CLI::App* cmd, PlanArgs& a, bool allow_plan_file) {
  cmd->add_option("--m", a.m, "field degree, 2..20")->check(CLI::Range(2u, 20u));
  cmd->add_option("--n", a.n, "transform length, a divisor of 2^m-1 (default 2^m-1)");
  cmd->add_option("--poly", a.poly, "primitive polynomial as hex, e.g. 13 for x^4+x+1");
  if (allow_plan_file) cmd->add_option("--plan", a.plan_file, "plan document written by `plan --out`");
}

CfftPlan make_plan(const PlanArgs& a) {
  if (!a.plan_file.empty()) return load_plan(a.plan_file);
  if (a.m == 0) throw std::invalid_argument("--m is required");
  std::optional<std::uint32_t> poly;
  if (!a.poly.empty()) poly = static_cast<std::uint32_t>(from_hex(a.poly));
  const Field field = make_field(a.m, poly);
  return build_plan(field, a.n == 0 ? field.order() : a.n);
}

TableFormat parse_format(const std::string& s) { return s == "csv" ? TableFormat::csv : TableFormat::text; }

void write_table(std::ostream& out, const std::vector<std::vector<std::string>>& table, TableFormat format) {
  if (format == TableFormat::csv) {
    for (const auto& line : table) {
      for (std::size_t c = 0; c < line.size(); ++c) out << (c ? "," : "") << line[c];
      out << '\n';
    }
    return;
  }
  std::vector<std::size_t> width;
  for (const auto& line : table) {
    width.resize(std::max(width.size(), line.size()), 0);
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << line[c];
    }
    out << '\n';
  }
}

int cmd_plan(const PlanArgs& a, const std::string& out_file, std::ostream& out) {
  const CfftPlan plan = make_plan(a);
  const BlockCyclicForm form = build_block_form(plan);
  out << "n=" << plan.n << " m=" << plan.field.degree() << " poly=" << to_hex(plan.field.poly())
      << " k=" << plan.k() << '\n';
  out << "block sizes:";
  for (const auto& c : plan.partition.cosets) out << ' ' << c.size();
  out << '\n';
  out << "orientation: " << to_string(plan.orientation) << '\n';
  if (!out_file.empty()) {
    save_plan(out_file, plan, &form);
    out << "wrote " << out_file << '\n';
  }
  return 0;
}

int cmd_transform(const PlanArgs& a, const std::string& in_file, const std::string& out_file,
                  bool no_addnet, std::istream& in, std::ostream& out) {
  const CfftPlan plan = make_plan(a);
  const FieldVector f = in_file.empty() ? read_vector(in, plan.field) : read_vector_file(in_file, plan.field);
  if (f.size() != plan.n) {
    throw std::invalid_argument("input has " + std::to_string(f.size()) + " elements, expected " +
                                std::to_string(plan.n));
  }
  const Transformer tr(plan, !no_addnet);
  const TransformResult res = tr(f);
  if (out_file.empty()) write_vector(out, res.F);
  else write_vector_file(out_file, res.F);
  return 0;
}

int cmd_verify(const PlanArgs& a, std::size_t trials, std::uint64_t seed, std::ostream& out) {
  const CfftPlan plan = make_plan(a);
  const VerifyReport rep = verify(plan, {trials, seed, false});
  if (!rep.network_error.empty()) out << "addition network: " << rep.network_error << '\n';
  out << rep.passed() << '/' << rep.trials.size() << (rep.ok() ? " pass" : " FAIL") << '\n';
  return rep.ok() ? 0 : 1;
}

int cmd_count(const PlanArgs& a, bool no_addnet, unsigned anchor, TableFormat format, std::ostream& out) {
  const CfftPlan plan = make_plan(a);
  std::optional<AdditionNetwork> net;
  if (!no_addnet) net = build_addnet(build_block_form(plan));
  const BoundTable anchor_table = bound_table(anchor, anchor, anchor);
  const BoundRow row =
      score(count(plan, net ? &*net : nullptr), anchor_table.scale_mult, anchor_table.scale_add);
  write_bound_rows(out, {row}, format);
  return 0;
}

int cmd_bounds(unsigned m_min, unsigned m_max, unsigned anchor, TableFormat format, std::ostream& out) {
  const BoundTable t = bound_table(m_min, m_max, anchor);
  write_bound_rows(out, t.rows, format);
  return 0;
}

int cmd_lemmas(unsigned m_max, TableFormat format, std::ostream& out) {
  std::vector<std::vector<std::string>> table{{"m", "k", "km", "lower", "upper", "total", "per_size"}};
  bool all = true;
  for (unsigned m = 2; m <= m_max; ++m) {
    const CosetTotalCheck l2 = check_coset_total(m);
    const auto rows = check_cosets_per_size(partition_cosets((1u << m) - 1), m);
    bool l1 = true;
    for (const auto& r : rows) l1 = l1 && r.pass;
    all = all && l1 && l2.pass;
    const std::uint64_t n = (std::uint64_t{1} << m) - 1;
    table.push_back({std::to_string(m), std::to_string(l2.k), std::to_string(l2.km), std::to_string(n),
                     std::to_string(2 * n), l2.pass ? "pass" : "FAIL", l1 ? "pass" : "FAIL"});
  }
  write_table(out, table, format);
  return all ? 0 : 1;
}

int cmd_netlist(const PlanArgs& a, const std::string& out_file, std::ostream& out) {
  const CfftPlan plan = make_plan(a);
  const AdditionNetwork net = build_addnet(build_block_form(plan));
  const auto doc = export_netlist(net);
  if (out_file.empty()) {
    out << doc.dump(1) << '\n';
    return 0;
  }
  std::ofstream f(out_file);
  if (!f) throw std::runtime_error("cannot open " + out_file + " for writing");
  f << doc.dump(1) << '\n';
  const AddnetCounts& c = net.static_counts();
  out << "modules=" << net.r() << " live=" << net.live_modules() << " additions pre=" << c.pre
      << " mvp=" << c.mvp << " post=" << c.post << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cyclotomic FFT over GF(2^m)", "cfft"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  PlanArgs pa;
  std::string in_file, out_file, format = "text";
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  bool no_addnet = false;
  unsigned m_min = 2, m_max = 10, anchor = 4;

  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "csv or text")->check(CLI::IsMember({"csv", "text"}));
  };

  auto* plan = app.add_subcommand("plan", "build a plan and optionally write it");
  add_plan_options(plan, pa, false);
  plan->add_option("--out", out_file, "plan document path");

  auto* transform = app.add_subcommand("transform", "DFT of a vector file (one hex element per line)");
  add_plan_options(transform, pa, true);
  transform->add_option("--in", in_file, "input vector (default stdin)");
  transform->add_option("--out", out_file, "output vector (default stdout)");
  transform->add_flag("--no-addnet", no_addnet, "evaluate A v row by row");

  auto* verify_cmd = app.add_subcommand("verify", "compare against the naive DFT on random inputs");
  add_plan_options(verify_cmd, pa, true);
  verify_cmd->add_option("--trials", trials, "number of random vectors")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", seed, "random seed");

  auto* count_cmd = app.add_subcommand("count", "static operation counts for one plan");
  add_plan_options(count_cmd, pa, true);
  count_cmd->add_flag("--no-addnet", no_addnet, "count A v row by row");
  count_cmd->add_option("--anchor", anchor, "m at which the bound scales are fitted");
  add_format(count_cmd);

  auto* bounds = app.add_subcommand("bounds", "counts against the scaled bound shapes");
  bounds->add_option("--m-min", m_min, "smallest m")->check(CLI::Range(2u, 20u));
  bounds->add_option("--m-max", m_max, "largest m")->check(CLI::Range(2u, 20u));
  bounds->add_option("--anchor", anchor, "m at which the bound scales are fitted");
  add_format(bounds);

  auto* lemmas = app.add_subcommand("lemmas", "coset count checks for m = 2..m-max");
  lemmas->add_option("--m-max", m_max, "largest m")->check(CLI::Range(2u, 20u));
  add_format(lemmas);

  auto* netlist = app.add_subcommand("netlist", "export the addition network");
  add_plan_options(netlist, pa, true);
  netlist->add_option("--out", out_file, "netlist document path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const TableFormat fmt = parse_format(format);
    if (*plan) return cmd_plan(pa, out_file, out);
    if (*transform) return cmd_transform(pa, in_file, out_file, no_addnet, in, out);
    if (*verify_cmd) return cmd_verify(pa, trials, seed, out);
    if (*count_cmd) return cmd_count(pa, no_addnet, anchor, fmt, out);
    if (*bounds) return cmd_bounds(m_min, m_max, anchor, fmt, out);
    if (*lemmas) return cmd_lemmas(m_max, fmt, out);
    if (*netlist) return cmd_netlist(pa, out_file, out);
  } catch (const std::exception& e) {
    err << "cfft: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace cfft::cli
