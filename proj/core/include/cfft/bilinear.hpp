#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cfft/bit_matrix.hpp"
#include "cfft/gf2m.hpp"

namespace cfft {

enum class ConvMode { linear, cyclic };

/// Bilinear convolution algorithm with binary coefficient matrices:
///   z = post * ((pre_left * x) .* (pre_right * y))
/// where the only GF(2^m) multiplications are the r entrywise products.
struct BilinearAlgorithm {
  std::size_t length = 0;
  std::size_t out_len = 0;
  ConvMode mode = ConvMode::linear;
  BitMatrix pre_left;   // r x length
  BitMatrix pre_right;  // r x length
  BitMatrix post;       // out_len x r

  std::size_t r() const { return pre_left.rows(); }
};

inline constexpr std::size_t kMaxConvLength = 64;

/// Karatsuba linear convolution of two length-`len` sequences: pad to the
/// next power of two, recurse on halves with three half-size products, then
/// drop padded inputs and the identically-zero outputs. r = 3^ceil(log2 len).
BilinearAlgorithm gen_linear(std::size_t len);

/// Length-m cyclic convolution from a linear one by folding output i onto
/// i mod m. Same products, so r is unchanged.
BilinearAlgorithm wrap_cyclic(const BilinearAlgorithm& linear, std::size_t m);

/// Convenience: wrap_cyclic(gen_linear(m), m).
BilinearAlgorithm gen_cyclic(std::size_t m);

struct BilinearTally {
  std::uint64_t multiplications = 0;
  std::uint64_t pre_additions = 0;
  std::uint64_t post_additions = 0;

  std::uint64_t additions() const { return pre_additions + post_additions; }
  BilinearTally& operator+=(const BilinearTally& o) {
    multiplications += o.multiplications;
    pre_additions += o.pre_additions;
    post_additions += o.post_additions;
    return *this;
  }
  friend bool operator==(const BilinearTally&, const BilinearTally&) = default;
};

/// Evaluates the algorithm on (x, y). Every one of the r products is
/// performed and counted; additions are the XORs actually executed.
FieldVector apply_bilinear(const Field& field, const BilinearAlgorithm& alg,
                           std::span<const FieldElement> x, std::span<const FieldElement> y,
                           BilinearTally* tally = nullptr);

/// Static tally of apply_bilinear: r multiplications and popcount-1 per
/// nonzero row of each matrix.
BilinearTally bilinear_cost(const BilinearAlgorithm& alg);

/// Naive reference convolutions (O(len^2)).
FieldVector naive_linear_convolution(const Field& field, std::span<const FieldElement> x,
                                     std::span<const FieldElement> y);
FieldVector naive_cyclic_convolution(const Field& field, std::span<const FieldElement> x,
                                     std::span<const FieldElement> y);

/// A bilinear algorithm with its left operand fixed, so pre_left * fixed is
/// precomputed. Products whose constant is 0 are dropped together with their
/// pre-additions; products whose constant is 1 pass through unmultiplied.
class SpecializedConv {
 public:
  const BilinearAlgorithm& base() const { return *base_; }
  std::shared_ptr<const BilinearAlgorithm> base_ptr() const { return base_; }
  const FieldVector& fixed() const { return fixed_; }
  const FieldVector& constants() const { return constants_; }
  /// Indices whose constant is 0 or 1.
  const std::vector<std::size_t>& elided() const { return elided_; }

  /// Products that execute (nonzero constant, nonzero pre_right row).
  std::size_t live_products() const { return live_.size(); }
  /// Live products with constant != 1.
  std::size_t genuine_multiplications() const;
  BilinearTally static_cost() const;

  FieldVector apply(std::span<const FieldElement> y, BilinearTally* tally = nullptr) const;

 private:
  friend SpecializedConv specialize_left(const Field&, std::shared_ptr<const BilinearAlgorithm>,
                                         std::span<const FieldElement>);
  SpecializedConv(const Field& field, std::shared_ptr<const BilinearAlgorithm> base)
      : field_(field), base_(std::move(base)) {}

  struct LiveProduct {
    std::size_t index;
    FieldElement constant;
    std::vector<std::size_t> inputs;  // support of pre_right row
  };

  Field field_;
  std::shared_ptr<const BilinearAlgorithm> base_;
  FieldVector fixed_;
  FieldVector constants_;
  std::vector<std::size_t> elided_;
  std::vector<LiveProduct> live_;
  // Per output: positions into live_ of the contributing products.
  std::vector<std::vector<std::size_t>> post_terms_;
};

SpecializedConv specialize_left(const Field& field, std::shared_ptr<const BilinearAlgorithm> alg,
                                std::span<const FieldElement> fixed);

}  // namespace cfft
