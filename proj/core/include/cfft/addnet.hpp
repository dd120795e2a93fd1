#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cfft/bilinear.hpp"
#include "cfft/bit_matrix.hpp"
#include "cfft/four_russians.hpp"
#include "cfft/planner.hpp"

namespace cfft {

struct AddnetCounts {
  std::uint64_t pre = 0;
  std::uint64_t mvp = 0;
  std::uint64_t post = 0;

  std::uint64_t total() const { return pre + mvp + post; }
  AddnetCounts& operator+=(const AddnetCounts& o) {
    pre += o.pre;
    mvp += o.mvp;
    post += o.post;
    return *this;
  }
  friend bool operator==(const AddnetCounts&, const AddnetCounts&) = default;
};

/// Row-by-row XOR evaluation of A v; the reference for every other path.
template <class V>
std::vector<V> direct_av(const BitMatrix& A, std::span<const V> v, std::uint64_t* additions = nullptr) {
  return xor_apply(A, v, additions);
}

/// Structured evaluation of A v through the block-cyclic form:
/// pad and reorder v into m k-vectors u_d, run the length-m cyclic bilinear
/// algorithm at block level (pre-additions on k-vectors, one k x k MVP per
/// product, post-additions), then pick F out of B u.
///
/// B u has block rows y_i = sum_j c_{j-i} u_j, a correlation; with
/// c'_d = c_{-d} it is the cyclic convolution y = c' * u, so the MVP
/// matrices are G_t = sum_d pre_left[t][d] c'_d, fixed at build time.
///
/// Additions are only counted where both operands can be nonzero: padded
/// u entries, unused MVP outputs and discarded B u rows are pruned when the
/// network is built. An MVP whose G_t is zero after pruning is elided.
class AdditionNetwork {
 public:
  const BlockCyclicForm& form() const { return form_; }
  const BilinearAlgorithm& conv() const { return *conv_; }
  std::size_t r() const { return G_.size(); }
  /// True when G_t is built from c_{-d} (the expected orientation).
  bool fixed_reversed() const { return fixed_reversed_; }

  const std::vector<BitMatrix>& G() const { return G_; }
  bool elided(std::size_t t) const { return !mvps_[t].has_value(); }
  const FourRussiansTableau& mvp(std::size_t t) const { return *mvps_[t]; }
  std::size_t live_modules() const;

  /// u positions summed into component i1 of the MVP t input.
  const std::vector<std::size_t>& pre_terms(std::size_t t, std::size_t i1) const {
    return pre_terms_[t][i1];
  }
  /// Products t summed into component i1 of block row i2 (i2 < m_i1).
  const std::vector<std::size_t>& post_terms(std::size_t i2, std::size_t i1) const {
    return post_terms_[i2][i1];
  }

  const AddnetCounts& static_counts() const { return static_counts_; }

  /// A v for any XOR-closed value type (field elements or 64-lane words).
  template <class V>
  std::vector<V> eval(std::span<const V> v, AddnetCounts* tally = nullptr) const;

 private:
  friend AdditionNetwork build_addnet(const BlockCyclicForm& form);
  friend AdditionNetwork build_addnet_oriented(const BlockCyclicForm& form, bool fixed_reversed);

  BlockCyclicForm form_;
  std::shared_ptr<const BilinearAlgorithm> conv_;
  bool fixed_reversed_ = true;
  std::vector<BitMatrix> G_;
  std::vector<std::optional<FourRussiansTableau>> mvps_;
  std::vector<std::vector<std::vector<std::size_t>>> pre_terms_;   // [t][i1]
  std::vector<std::vector<std::vector<std::size_t>>> post_terms_;  // [i2][i1]
  AddnetCounts static_counts_;
};

/// Builds the network and checks it against block_form_apply on every unit
/// vector (64 at a time as bit lanes). Tries c_{-d} first, then c_d; throws
/// InvariantViolation if neither orientation reproduces B u.
AdditionNetwork build_addnet(const BlockCyclicForm& form);

/// Builds with a forced orientation and no self-check.
AdditionNetwork build_addnet_oriented(const BlockCyclicForm& form, bool fixed_reversed);

/// Exhaustive comparison of two XOR-linear maps on all n unit vectors.
template <class F1, class F2>
bool same_linear_map(std::size_t n, F1&& lhs, F2&& rhs) {
  for (std::size_t base = 0; base < n; base += 64) {
    std::vector<std::uint64_t> v(n, 0);
    for (std::size_t b = 0; b < 64 && base + b < n; ++b) v[base + b] = std::uint64_t{1} << b;
    if (lhs(std::span<const std::uint64_t>(v)) != rhs(std::span<const std::uint64_t>(v))) return false;
  }
  return true;
}

template <class V>
std::vector<V> AdditionNetwork::eval(std::span<const V> v, AddnetCounts* tally) const {
  if (v.size() != form_.n) throw std::invalid_argument("eval_addnet: length mismatch");
  const std::size_t k = form_.k;
  // Padding and reordering: wiring only.
  const std::vector<V> u = gather_u<V>(form_, v);

  AddnetCounts local;
  std::vector<std::vector<V>> y(r());
  std::vector<V> x(k);
  for (std::size_t t = 0; t < r(); ++t) {
    if (elided(t)) continue;
    for (std::size_t i1 = 0; i1 < k; ++i1) {
      const auto& terms = pre_terms_[t][i1];
      if (terms.empty()) {
        x[i1] = V{};
        continue;
      }
      V acc = u[terms.front()];
      for (std::size_t q = 1; q < terms.size(); ++q) {
        acc = acc ^ u[terms[q]];
        ++local.pre;
      }
      x[i1] = acc;
    }
    y[t] = mvps_[t]->eval(std::span<const V>(x), &local.mvp);
  }

  std::vector<V> bu(form_.extended_size(), V{});
  for (std::size_t i1 = 0; i1 < k; ++i1) {
    for (std::size_t i2 = 0; i2 < form_.coset_sizes[i1]; ++i2) {
      const auto& terms = post_terms_[i2][i1];
      if (terms.empty()) continue;
      V acc = y[terms.front()][i1];
      for (std::size_t q = 1; q < terms.size(); ++q) {
        acc = acc ^ y[terms[q]][i1];
        ++local.post;
      }
      bu[i2 * k + i1] = acc;
    }
  }

  std::vector<V> out(form_.n);
  for (std::size_t j = 0; j < form_.n; ++j) out[j] = bu[form_.out_map[j]];
  if (tally != nullptr) *tally += local;
  return out;
}

}  // namespace cfft
