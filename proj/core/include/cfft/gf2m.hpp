#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace cfft {

/// Raised when a structural property that the theory guarantees does not
/// hold. Seeing one of these means a bug, not bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Element of GF(2^m) in polynomial basis: bit i is the coefficient of x^i.
class FieldElement {
 public:
  constexpr FieldElement() = default;
  constexpr explicit FieldElement(std::uint32_t bits) : bits_(bits) {}

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool is_zero() const { return bits_ == 0; }

  friend constexpr FieldElement operator+(FieldElement a, FieldElement b) {
    return FieldElement{a.bits_ ^ b.bits_};
  }
  // Same as +; lets generic XOR networks run on field vectors.
  friend constexpr FieldElement operator^(FieldElement a, FieldElement b) {
    return FieldElement{a.bits_ ^ b.bits_};
  }
  constexpr FieldElement& operator+=(FieldElement o) {
    bits_ ^= o.bits_;
    return *this;
  }
  constexpr FieldElement& operator^=(FieldElement o) { return *this += o; }
  friend constexpr bool operator==(FieldElement, FieldElement) = default;

 private:
  std::uint32_t bits_ = 0;
};

using FieldVector = std::vector<FieldElement>;

inline constexpr unsigned kMinDegree = 2;
inline constexpr unsigned kMaxDegree = 20;

/// GF(2^m) defined by a primitive polynomial. The residue class of x is the
/// primitive element alpha. Immutable once constructed.
class Field {
 public:
  unsigned degree() const { return m_; }
  std::uint32_t poly() const { return poly_; }
  /// Multiplicative group order 2^m - 1.
  std::uint32_t order() const { return n_; }
  std::uint32_t size() const { return n_ + 1; }

  FieldElement element(std::uint32_t bits) const;
  FieldElement zero() const { return FieldElement{0}; }
  FieldElement one() const { return FieldElement{1}; }
  FieldElement primitive() const { return FieldElement{2}; }

  static FieldElement add(FieldElement a, FieldElement b) { return a + b; }
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement square(FieldElement a) const { return mul(a, a); }
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  /// Throws std::domain_error for a == 0.
  FieldElement inv(FieldElement a) const;

  bool contains(FieldElement a) const { return a.bits() <= n_; }

  friend bool operator==(const Field& a, const Field& b) {
    return a.m_ == b.m_ && a.poly_ == b.poly_;
  }

 private:
  friend Field make_field(unsigned m, std::optional<std::uint32_t> poly);
  Field(unsigned m, std::uint32_t poly) : m_(m), poly_(poly), n_((1u << m) - 1) {}

  unsigned m_;
  std::uint32_t poly_;
  std::uint32_t n_;
};

/// Builds GF(2^m). Without `poly` a shipped default is used; either way the
/// polynomial is checked for irreducibility and primitivity before use.
Field make_field(unsigned m, std::optional<std::uint32_t> poly = std::nullopt);

/// Shipped default primitive polynomial for 2 <= m <= 20 (not pre-verified).
std::uint32_t default_primitive_poly(unsigned m);

/// Degree of a GF(2)[x] polynomial given as a bitmask; -1 for zero.
int poly_degree(std::uint64_t p);
bool is_irreducible(std::uint64_t poly);
/// True when x has multiplicative order exactly 2^deg - 1 modulo poly.
bool is_primitive(std::uint64_t poly);

/// Prime factors of v, ascending, without repetition.
std::vector<std::uint64_t> prime_factors(std::uint64_t v);

/// Incremental elimination over a set of GF(2) row vectors (at most 64
/// rows of at most 64 bits). Solves "which rows XOR to this target".
class Gf2RowSolver {
 public:
  explicit Gf2RowSolver(std::span<const std::uint64_t> rows);

  std::size_t rank() const { return basis_.size(); }
  std::size_t row_count() const { return row_count_; }
  /// Mask x (bit i selects row i) with XOR of selected rows == target.
  std::optional<std::uint64_t> solve(std::uint64_t target) const;

 private:
  struct Pivot {
    std::uint64_t vec;
    std::uint64_t combo;
    std::uint64_t bit;
  };
  std::vector<Pivot> basis_;
  std::size_t row_count_ = 0;
};

class BitMatrix;

/// Returns x with XOR_{i : x_i = 1} row_i(M) == rhs, or nullopt when rhs is
/// outside the row space. Requires rows <= 64 and cols <= 64.
std::optional<std::uint64_t> gf2_solve(const BitMatrix& M, std::uint64_t rhs);

/// XOR of the rows of M selected by x.
std::uint64_t gf2_combine_rows(const BitMatrix& M, std::uint64_t x);

}  // namespace cfft
