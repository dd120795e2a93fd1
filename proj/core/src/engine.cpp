#include "cfft/engine.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <random>

#include "cfft/plan_document.hpp"

namespace cfft {

FieldVector naive_dft(const Field& field, std::uint32_t n, std::span<const FieldElement> f) {
  if (n == 0 || field.order() % n != 0) {
    throw std::invalid_argument("naive_dft: n must divide 2^m - 1");
  }
  if (f.size() != n) throw std::invalid_argument("naive_dft: input length must equal n");
  const FieldElement alpha = field.pow(field.primitive(), field.order() / n);
  FieldVector F(n);
  FieldElement x = field.one();
  for (std::uint32_t j = 0; j < n; ++j) {
    FieldElement acc;
    for (std::size_t i = n; i-- > 0;) acc = field.mul(acc, x) + f[i];
    F[j] = acc;
    x = field.mul(x, alpha);
  }
  return F;
}

TransformResult cfft(const CfftPlan& plan, const AdditionNetwork* net, std::span<const FieldElement> f) {
  if (f.size() != plan.n) throw std::invalid_argument("cfft: input length must equal n");
  if (net != nullptr && net->form().n != plan.n) {
    throw std::invalid_argument("cfft: addition network was built for a different n");
  }
  TransformResult res;
  const FieldVector fp = permute_input(plan, f);
  BilinearTally conv;
  const FieldVector v = apply_L(plan, fp, &conv);
  res.tally.conv_pre = conv.pre_additions;
  res.tally.conv_mult = conv.multiplications;
  res.tally.conv_post = conv.post_additions;
  if (net != nullptr) {
    AddnetCounts c;
    res.F = net->eval(std::span<const FieldElement>(v), &c);
    res.tally.addnet_pre = c.pre;
    res.tally.addnet_mvp = c.mvp;
    res.tally.addnet_post = c.post;
  } else {
    res.F = direct_av(plan.A, std::span<const FieldElement>(v), &res.tally.direct);
  }
  return res;
}

StageTally static_tally(const CfftPlan& plan, const AdditionNetwork* net) {
  StageTally t;
  for (const auto& conv : plan.conv) {
    const BilinearTally c = conv.static_cost();
    t.conv_pre += c.pre_additions;
    t.conv_mult += c.multiplications;
    t.conv_post += c.post_additions;
  }
  if (net != nullptr) {
    const AddnetCounts& c = net->static_counts();
    t.addnet_pre = c.pre;
    t.addnet_mvp = c.mvp;
    t.addnet_post = c.post;
  } else {
    t.direct = xor_apply_cost(plan.A);
  }
  return t;
}

Transformer::Transformer(CfftPlan plan, bool use_addnet) : plan_(std::move(plan)) {
  if (use_addnet) {
    form_ = build_block_form(plan_);
    net_ = build_addnet(*form_);
  }
}

std::vector<FieldVector> Transformer::batch(const std::vector<FieldVector>& inputs) const {
  std::vector<FieldVector> out;
  out.reserve(inputs.size());
  for (const auto& f : inputs) out.push_back((*this)(f).F);
  return out;
}

std::size_t VerifyReport::passed() const {
  std::size_t ok = 0;
  for (const auto& t : trials) ok += t.pass() ? 1 : 0;
  return ok;
}

VerifyReport verify(const CfftPlan& plan, const VerifyOptions& opts) {
  VerifyReport report;
  report.n = plan.n;
  report.seed = opts.seed;

  std::optional<AdditionNetwork> net;
  try {
    net = build_addnet(build_block_form(plan));
  } catch (const std::exception& e) {
    report.network_error = e.what();
  }
  const StageTally direct_static = static_tally(plan, nullptr);
  const StageTally net_static = net ? static_tally(plan, &*net) : StageTally{};

  std::mt19937_64 rng(opts.seed);
  for (std::size_t trial = 0; trial < opts.trials; ++trial) {
    const FieldVector f =
        opts.zero_input ? FieldVector(plan.n) : random_vector(plan.field, plan.n, rng);
    const FieldVector expected = naive_dft(plan.field, plan.n, f);
    TrialOutcome out;
    const TransformResult direct = cfft(plan, nullptr, f);
    out.direct_matches_naive = direct.F == expected;
    out.tallies_static = direct.tally == direct_static;
    if (net) {
      const TransformResult structured = cfft(plan, &*net, f);
      out.addnet_matches_naive = structured.F == expected;
      out.paths_agree = structured.F == direct.F;
      out.tallies_static = out.tallies_static && structured.tally == net_static;
    }
    report.trials.push_back(out);
  }
  return report;
}

FieldVector read_vector(std::istream& in, const Field& field) {
  FieldVector v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (line.empty()) continue;
    std::uint64_t bits;
    try {
      bits = from_hex(line);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": not a hexadecimal field element");
    }
    if (bits > field.order()) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": element outside GF(2^" +
                                  std::to_string(field.degree()) + ")");
    }
    v.push_back(FieldElement{static_cast<std::uint32_t>(bits)});
  }
  return v;
}

void write_vector(std::ostream& out, std::span<const FieldElement> v) {
  for (const auto& e : v) out << to_hex(e.bits()) << '\n';
}

FieldVector read_vector_file(const std::filesystem::path& path, const Field& field) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_vector(in, field);
}

void write_vector_file(const std::filesystem::path& path, std::span<const FieldElement> v) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_vector(out, v);
}

}  // namespace cfft
