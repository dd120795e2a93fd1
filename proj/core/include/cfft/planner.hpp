#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cfft/bilinear.hpp"
#include "cfft/bit_matrix.hpp"
#include "cfft/cyclotomic.hpp"
#include "cfft/gf2m.hpp"
#include "cfft/normal_basis.hpp"

namespace cfft {

/// How the cyclic convolution of b_i with f'_i lines up with L_i f'_i.
///  - literal:        v_s = conv(b_i, f'_i)_s
///  - fixed_reversed: v_s = conv(rev b_i, f'_i)_s
///  - output_reversed: v_s = conv(b_i, f'_i)_{-s mod m_i}
/// The first candidate that reproduces L_i on every coset is used.
enum class ConvOrientation { literal, fixed_reversed, output_reversed };

std::string to_string(ConvOrientation o);
ConvOrientation orientation_from_string(const std::string& s);

/// Everything needed to run F = A L f'.
struct CfftPlan {
  explicit CfftPlan(Field f) : field(std::move(f)) {}

  Field field;
  std::uint32_t n = 0;
  FieldElement alpha;  // element of order n
  CosetPartition partition;
  /// One normal basis per coset size, shared by all cosets of that size.
  std::map<unsigned, NormalBasis> bases;
  /// f'[p] = f[perm_in[p]]; cosets concatenated in doubling order.
  std::vector<std::uint32_t> perm_in;
  /// Column (and v) offset of each coset block.
  std::vector<std::size_t> block_offset;
  /// b_i = (g, g^(2^(m_i-1)), g^(2^(m_i-2)), ..., g^2) per coset.
  std::vector<FieldVector> b;
  ConvOrientation orientation = ConvOrientation::literal;
  std::vector<SpecializedConv> conv;
  /// n x n; row j of block i holds the coordinates of alpha^(j s_i).
  BitMatrix A;

  std::size_t k() const { return partition.k(); }
  unsigned coset_size(std::size_t i) const { return partition.cosets[i].size(); }
  const NormalBasis& basis_for(std::size_t coset) const { return bases.at(coset_size(coset)); }
  bool full_length() const { return n == field.order(); }
};

/// Builds the plan for an n-point transform over `field`; n must divide
/// 2^m - 1. alpha = primitive^((2^m-1)/n). Throws std::invalid_argument
/// otherwise and InvariantViolation if no convolution orientation fits.
CfftPlan build_plan(const Field& field, std::uint32_t n);

/// Plan for n given explicit per-size normal basis generators (plan loading).
CfftPlan build_plan_with_bases(const Field& field, std::uint32_t n,
                               const std::map<unsigned, FieldElement>& gammas);

/// Dense m_i x m_i circulant L_i with entry (s, t) = g^(2^((s+t) mod m_i)).
std::vector<FieldVector> circulant_L(const CfftPlan& plan, std::size_t coset);

/// v = L f' computed by the plan's specialized convolutions.
FieldVector apply_L(const CfftPlan& plan, std::span<const FieldElement> f_prime,
                    BilinearTally* tally = nullptr);

FieldVector permute_input(const CfftPlan& plan, std::span<const FieldElement> f);

/// Checks sum_s A_i[j, s] g^(2^s) == alpha^(j s_i) for every row and block.
bool reconstruction_identity_holds(const CfftPlan& plan);

struct CosetGroup {
  unsigned size = 0;   // g_j
  std::size_t count = 0;  // |G_j|
};
/// Cosets grouped by size, ascending; the number of groups is d.
std::vector<CosetGroup> coset_group_profile(const CfftPlan& plan);

/// Rotation of an m-bit coordinate mask: bit s moves to bit (s+1) mod width.
/// This is the squaring map on normal-basis coordinates.
std::uint64_t rotate_coords(std::uint64_t mask, unsigned width, unsigned times = 1);

/// Rows of A regrouped by coset (A'), blocks tiled to m x m (A''), then
/// reordered into a block-cyclic B with k x k blocks:
///   B[i2 k + i1][j2 k + j1] = A''[i1 m + i2][j1 m + j2],  u[i2 k + i1] = v''[i1 m + i2].
struct BlockCyclicForm {
  std::size_t k = 0;
  unsigned m = 0;
  std::uint32_t n = 0;
  std::vector<unsigned> coset_sizes;
  std::vector<std::size_t> block_offset;
  /// Row p of A' is row row_perm[p] of A.
  std::vector<std::uint32_t> row_perm;
  /// c_0..c_{m-1}: block (i2, j2) of B equals c_{(j2 - i2) mod m}.
  std::vector<BitMatrix> blocks_first_row;
  /// u position -> index into v, or -1 for zero padding.
  std::vector<std::int64_t> u_map;
  /// A row j -> position in B u holding F_j.
  std::vector<std::size_t> out_map;
  bool experimental = false;

  std::size_t extended_size() const { return k * m; }
  bool is_padding(std::size_t u_pos) const { return u_map[u_pos] < 0; }
};

/// Throws InvariantViolation if any A' block is not cyclic or B is not
/// block-cyclic. `experimental` is set when n < 2^m - 1.
BlockCyclicForm build_block_form(const CfftPlan& plan);

/// Index map from A'' (row, col) to B (row, col).
std::pair<std::size_t, std::size_t> extended_to_b(std::size_t row, std::size_t col,
                                                  std::size_t k, unsigned m);

/// A'' materialized as a km x km matrix (tiled extension of each A' block).
BitMatrix materialize_extended(const CfftPlan& plan);
/// Reorders A'' into B entry by entry.
BitMatrix reorder_extended(const BitMatrix& extended, std::size_t k, unsigned m);
/// B materialized from the block-cyclic first row.
BitMatrix materialize_b(const BlockCyclicForm& form);

/// u from v (zero at padding positions).
template <class V>
std::vector<V> gather_u(const BlockCyclicForm& form, std::span<const V> v) {
  std::vector<V> u(form.extended_size(), V{});
  for (std::size_t p = 0; p < u.size(); ++p) {
    if (form.u_map[p] >= 0) u[p] = v[static_cast<std::size_t>(form.u_map[p])];
  }
  return u;
}

/// A v obtained as out_map(B u) with B applied block-by-block from c_d.
template <class V>
std::vector<V> block_form_apply(const BlockCyclicForm& form, std::span<const V> v) {
  if (v.size() != form.n) throw std::invalid_argument("block_form_apply: length mismatch");
  const auto u = gather_u<V>(form, v);
  const std::size_t k = form.k;
  std::vector<V> bu(form.extended_size(), V{});
  for (std::size_t i2 = 0; i2 < form.m; ++i2) {
    for (std::size_t j2 = 0; j2 < form.m; ++j2) {
      const BitMatrix& c = form.blocks_first_row[(j2 + form.m - i2) % form.m];
      for (std::size_t i1 = 0; i1 < k; ++i1) {
        for (std::size_t j1 : c.row_support(i1)) bu[i2 * k + i1] = bu[i2 * k + i1] ^ u[j2 * k + j1];
      }
    }
  }
  std::vector<V> out(form.n);
  for (std::size_t j = 0; j < form.n; ++j) out[j] = bu[form.out_map[j]];
  return out;
}

}  // namespace cfft
