#include "cfft/addnet.hpp"

namespace cfft {

std::size_t AdditionNetwork::live_modules() const {
  std::size_t live = 0;
  for (const auto& m : mvps_) live += m.has_value() ? 1 : 0;
  return live;
}

AdditionNetwork build_addnet_oriented(const BlockCyclicForm& form, bool fixed_reversed) {
  if (form.k == 0 || form.m < 2 || form.blocks_first_row.size() != form.m) {
    throw std::invalid_argument("build_addnet: block-cyclic form is incomplete");
  }
  const std::size_t k = form.k;
  const unsigned m = form.m;

  AdditionNetwork net;
  net.form_ = form;
  net.conv_ = std::make_shared<const BilinearAlgorithm>(gen_cyclic(m));
  net.fixed_reversed_ = fixed_reversed;
  const BilinearAlgorithm& conv = *net.conv_;
  const std::size_t r = conv.r();

  net.G_.assign(r, BitMatrix(k, k));
  for (std::size_t t = 0; t < r; ++t) {
    for (std::size_t d : conv.pre_left.row_support(t)) {
      const std::size_t src = fixed_reversed ? (m - d) % m : d;
      net.G_[t] ^= form.blocks_first_row[src];
    }
  }

  // Rows of product t are needed only where some kept B u row reads them.
  std::vector<std::vector<bool>> row_used(r, std::vector<bool>(k, false));
  for (std::size_t i1 = 0; i1 < k; ++i1) {
    for (std::size_t i2 = 0; i2 < form.coset_sizes[i1]; ++i2) {
      for (std::size_t t : conv.post.row_support(i2)) row_used[t][i1] = true;
    }
  }

  net.mvps_.resize(r);
  net.pre_terms_.assign(r, std::vector<std::vector<std::size_t>>(k));
  AddnetCounts counts;
  for (std::size_t t = 0; t < r; ++t) {
    BitMatrix g = net.G_[t];
    for (std::size_t i1 = 0; i1 < k; ++i1) {
      if (!row_used[t][i1]) {
        for (std::size_t j = 0; j < k; ++j) g.set(i1, j, false);
      }
    }
    const auto inputs = conv.pre_right.row_support(t);
    std::vector<bool> dead(k, false);
    const BitMatrix gt = g.transposed();
    for (std::size_t j1 = 0; j1 < k; ++j1) {
      auto& terms = net.pre_terms_[t][j1];
      for (std::size_t j2 : inputs) {
        const std::size_t pos = j2 * k + j1;
        if (!form.is_padding(pos)) terms.push_back(pos);
      }
      dead[j1] = terms.empty() || gt.row_is_zero(j1);
      if (dead[j1]) terms.clear();
    }
    FourRussiansTableau tab = build_four_russians(g, dead);
    if (tab.matrix().is_zero()) {
      for (auto& terms : net.pre_terms_[t]) terms.clear();
      continue;
    }
    for (const auto& terms : net.pre_terms_[t]) {
      if (terms.size() > 1) counts.pre += terms.size() - 1;
    }
    counts.mvp += tab.add_count();
    net.mvps_[t] = std::move(tab);
  }

  net.post_terms_.assign(m, std::vector<std::vector<std::size_t>>(k));
  for (std::size_t i1 = 0; i1 < k; ++i1) {
    for (std::size_t i2 = 0; i2 < form.coset_sizes[i1]; ++i2) {
      auto& terms = net.post_terms_[i2][i1];
      for (std::size_t t : conv.post.row_support(i2)) {
        if (net.mvps_[t] && !net.mvps_[t]->matrix().row_is_zero(i1)) terms.push_back(t);
      }
      if (terms.size() > 1) counts.post += terms.size() - 1;
    }
  }
  net.static_counts_ = counts;
  return net;
}

AdditionNetwork build_addnet(const BlockCyclicForm& form) {
  const auto reference = [&](std::span<const std::uint64_t> v) { return block_form_apply(form, v); };
  for (bool reversed : {true, false}) {
    AdditionNetwork net = build_addnet_oriented(form, reversed);
    const auto candidate = [&](std::span<const std::uint64_t> v) { return net.eval(v); };
    if (same_linear_map(form.n, candidate, reference)) return net;
  }
  throw InvariantViolation("addition network does not reproduce B u in either orientation");
}

}  // namespace cfft
