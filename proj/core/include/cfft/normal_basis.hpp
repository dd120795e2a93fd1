#pragma once

#include <cstdint>
#include <vector>

#include "cfft/gf2m.hpp"

namespace cfft {

/// Normal basis {g, g^2, g^4, ..., g^(2^(d-1))} of the subfield GF(2^d) of
/// GF(2^m). Coordinates are bitmasks: bit s is the coefficient of g^(2^s).
/// Squaring a subfield element rotates its coordinate mask left by one
/// (bit s moves to bit (s+1) mod d).
class NormalBasis {
 public:
  unsigned subfield_degree() const { return degree_; }
  FieldElement gamma() const { return conjugates_.front(); }
  /// conjugates()[s] = gamma^(2^s).
  const FieldVector& conjugates() const { return conjugates_; }

  /// Throws std::invalid_argument if e is not in GF(2^d).
  std::uint64_t coordinates(FieldElement e) const;
  FieldElement expand(std::uint64_t coords) const;
  bool in_subfield(FieldElement e) const;

 private:
  friend NormalBasis find_normal_basis(const Field& field, unsigned subfield_degree);
  friend NormalBasis normal_basis_from_gamma(const Field& field, unsigned subfield_degree,
                                             FieldElement gamma);
  NormalBasis(const Field& field, unsigned degree, FieldVector conjugates);

  Field field_;
  unsigned degree_;
  FieldVector conjugates_;
  Gf2RowSolver solver_;
};

/// Conjugates gamma^(2^s), s = 0..d-1, of `gamma` in `field`.
FieldVector conjugates_of(const Field& field, FieldElement gamma, unsigned d);

/// Deterministic search: candidates are alpha^(j (2^m-1)/(2^d-1)) for
/// j = 1, 2, ... (with 1 tried first when d = 1); the first one whose
/// conjugates are GF(2)-independent wins. Requires d | m.
NormalBasis find_normal_basis(const Field& field, unsigned subfield_degree);

/// Rebuilds a basis from a known generator (used when loading plans).
/// Throws std::invalid_argument if gamma is not a normal element of GF(2^d).
NormalBasis normal_basis_from_gamma(const Field& field, unsigned subfield_degree,
                                    FieldElement gamma);

}  // namespace cfft
