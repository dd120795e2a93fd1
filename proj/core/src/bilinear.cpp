#include "cfft/bilinear.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace cfft {

namespace {

struct Karatsuba {
  std::vector<std::uint64_t> pre;  // shared by both operands
  BitMatrix post;                  // (2L-1) x r
};

Karatsuba karatsuba(std::size_t L) {
  if (L == 1) {
    Karatsuba k{{1}, BitMatrix(1, 1)};
    k.post.set(0, 0);
    return k;
  }
  const std::size_t h = L / 2;
  const Karatsuba sub = karatsuba(h);
  const std::size_t rs = sub.pre.size();
  Karatsuba k;
  k.pre.reserve(3 * rs);
  for (auto p : sub.pre) k.pre.push_back(p);              // lo * lo
  for (auto p : sub.pre) k.pre.push_back(p << h);         // hi * hi
  for (auto p : sub.pre) k.pre.push_back(p | (p << h));   // (lo+hi) * (lo+hi)
  k.post = BitMatrix(2 * L - 1, 3 * rs);
  // c = P0 + X^h (P0 + P1 + P2) + X^L P1
  for (std::size_t i = 0; i < sub.post.rows(); ++i) {
    for (std::size_t t : sub.post.row_support(i)) {
      k.post.flip(i, t);
      k.post.flip(i + h, t);
      k.post.flip(i + L, rs + t);
      k.post.flip(i + h, rs + t);
      k.post.flip(i + h, 2 * rs + t);
    }
  }
  return k;
}

void require_length(std::span<const FieldElement> v, std::size_t n, const char* what) {
  if (v.size() != n) {
    throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(n) +
                                ", got " + std::to_string(v.size()));
  }
}

}  // namespace

BilinearAlgorithm gen_linear(std::size_t len) {
  if (len < 1 || len > kMaxConvLength) {
    throw std::invalid_argument("gen_linear: length must be in [1, 64], got " +
                                std::to_string(len));
  }
  const std::size_t L = std::bit_ceil(len);
  const Karatsuba k = karatsuba(L);
  const std::uint64_t keep = len == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << len) - 1;

  BilinearAlgorithm alg;
  alg.length = len;
  alg.out_len = 2 * len - 1;
  alg.mode = ConvMode::linear;
  alg.pre_left = BitMatrix(k.pre.size(), len);
  for (std::size_t t = 0; t < k.pre.size(); ++t) alg.pre_left.set_row_mask(t, k.pre[t] & keep);
  alg.pre_right = alg.pre_left;
  alg.post = BitMatrix(alg.out_len, k.pre.size());
  for (std::size_t i = 0; i < alg.out_len; ++i) {
    for (std::size_t t : k.post.row_support(i)) alg.post.set(i, t);
  }
  return alg;
}

BilinearAlgorithm wrap_cyclic(const BilinearAlgorithm& linear, std::size_t m) {
  if (linear.mode != ConvMode::linear) throw std::invalid_argument("wrap_cyclic: not a linear algorithm");
  if (linear.length != m) throw std::invalid_argument("wrap_cyclic: length mismatch");
  BilinearAlgorithm alg;
  alg.length = m;
  alg.out_len = m;
  alg.mode = ConvMode::cyclic;
  alg.pre_left = linear.pre_left;
  alg.pre_right = linear.pre_right;
  alg.post = BitMatrix(m, linear.r());
  for (std::size_t i = 0; i < linear.out_len; ++i) {
    for (std::size_t t : linear.post.row_support(i)) alg.post.flip(i % m, t);
  }
  return alg;
}

BilinearAlgorithm gen_cyclic(std::size_t m) { return wrap_cyclic(gen_linear(m), m); }

FieldVector apply_bilinear(const Field& field, const BilinearAlgorithm& alg,
                           std::span<const FieldElement> x, std::span<const FieldElement> y,
                           BilinearTally* tally) {
  require_length(x, alg.length, "apply_bilinear x");
  require_length(y, alg.length, "apply_bilinear y");
  std::uint64_t pre_adds = 0;
  std::uint64_t post_adds = 0;
  const auto lx = xor_apply(alg.pre_left, x, &pre_adds);
  const auto ry = xor_apply(alg.pre_right, y, &pre_adds);
  FieldVector prod(alg.r());
  for (std::size_t t = 0; t < alg.r(); ++t) prod[t] = field.mul(lx[t], ry[t]);
  auto out = xor_apply<FieldElement>(alg.post, prod, &post_adds);
  if (tally != nullptr) {
    tally->multiplications += alg.r();
    tally->pre_additions += pre_adds;
    tally->post_additions += post_adds;
  }
  return out;
}

BilinearTally bilinear_cost(const BilinearAlgorithm& alg) {
  BilinearTally t;
  t.multiplications = alg.r();
  t.pre_additions = xor_apply_cost(alg.pre_left) + xor_apply_cost(alg.pre_right);
  t.post_additions = xor_apply_cost(alg.post);
  return t;
}

FieldVector naive_linear_convolution(const Field& field, std::span<const FieldElement> x,
                                     std::span<const FieldElement> y) {
  if (x.empty() || y.empty()) return {};
  FieldVector out(x.size() + y.size() - 1);
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = 0; b < y.size(); ++b) out[a + b] += field.mul(x[a], y[b]);
  }
  return out;
}

FieldVector naive_cyclic_convolution(const Field& field, std::span<const FieldElement> x,
                                     std::span<const FieldElement> y) {
  require_length(y, x.size(), "naive_cyclic_convolution");
  const std::size_t m = x.size();
  FieldVector out(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) out[(a + b) % m] += field.mul(x[a], y[b]);
  }
  return out;
}

SpecializedConv specialize_left(const Field& field, std::shared_ptr<const BilinearAlgorithm> alg,
                                std::span<const FieldElement> fixed) {
  if (!alg) throw std::invalid_argument("specialize_left: null algorithm");
  require_length(fixed, alg->length, "specialize_left");
  SpecializedConv sc(field, alg);
  sc.fixed_.assign(fixed.begin(), fixed.end());
  sc.constants_ = xor_apply(alg->pre_left, fixed);

  std::vector<std::size_t> live_pos(alg->r(), SIZE_MAX);
  for (std::size_t t = 0; t < alg->r(); ++t) {
    const FieldElement c = sc.constants_[t];
    if (c.is_zero() || c == field.one()) sc.elided_.push_back(t);
    if (c.is_zero() || alg->pre_right.row_is_zero(t)) continue;
    live_pos[t] = sc.live_.size();
    sc.live_.push_back({t, c, alg->pre_right.row_support(t)});
  }
  sc.post_terms_.resize(alg->out_len);
  for (std::size_t j = 0; j < alg->out_len; ++j) {
    for (std::size_t t : alg->post.row_support(j)) {
      if (live_pos[t] != SIZE_MAX) sc.post_terms_[j].push_back(live_pos[t]);
    }
  }
  return sc;
}

std::size_t SpecializedConv::genuine_multiplications() const {
  std::size_t n = 0;
  for (const auto& p : live_) n += p.constant == field_.one() ? 0 : 1;
  return n;
}

BilinearTally SpecializedConv::static_cost() const {
  BilinearTally t;
  t.multiplications = genuine_multiplications();
  for (const auto& p : live_) t.pre_additions += p.inputs.size() - 1;
  for (const auto& terms : post_terms_) {
    if (!terms.empty()) t.post_additions += terms.size() - 1;
  }
  return t;
}

FieldVector SpecializedConv::apply(std::span<const FieldElement> y, BilinearTally* tally) const {
  require_length(y, base_->length, "SpecializedConv::apply");
  BilinearTally local;
  FieldVector prod(live_.size());
  for (std::size_t p = 0; p < live_.size(); ++p) {
    const auto& lp = live_[p];
    FieldElement acc = y[lp.inputs.front()];
    for (std::size_t i = 1; i < lp.inputs.size(); ++i) {
      acc += y[lp.inputs[i]];
      ++local.pre_additions;
    }
    if (lp.constant == field_.one()) {
      prod[p] = acc;
    } else {
      prod[p] = field_.mul(lp.constant, acc);
      ++local.multiplications;
    }
  }
  FieldVector out(base_->out_len);
  for (std::size_t j = 0; j < out.size(); ++j) {
    const auto& terms = post_terms_[j];
    if (terms.empty()) continue;
    FieldElement acc = prod[terms.front()];
    for (std::size_t i = 1; i < terms.size(); ++i) {
      acc += prod[terms[i]];
      ++local.post_additions;
    }
    out[j] = acc;
  }
  if (tally != nullptr) *tally += local;
  return out;
}

}  // namespace cfft
