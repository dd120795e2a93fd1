#include "cfft/planner.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace cfft {

namespace {

std::uint64_t block_row_mask(const BitMatrix& A, std::size_t row, std::size_t offset,
                             unsigned width) {
  std::uint64_t mask = 0;
  for (unsigned s = 0; s < width; ++s) {
    if (A.get(row, offset + s)) mask |= std::uint64_t{1} << s;
  }
  return mask;
}

FieldVector fixed_operand(const FieldVector& b, ConvOrientation o) {
  if (o != ConvOrientation::fixed_reversed) return b;
  const std::size_t d = b.size();
  FieldVector rev(d);
  for (std::size_t j = 0; j < d; ++j) rev[j] = b[(d - j) % d];
  return rev;
}

std::size_t output_index(std::size_t s, std::size_t d, ConvOrientation o) {
  return o == ConvOrientation::output_reversed ? (d - s) % d : s;
}

FieldVector make_b(const NormalBasis& basis) {
  const auto& conj = basis.conjugates();
  const std::size_t d = conj.size();
  FieldVector b(d);
  for (std::size_t j = 0; j < d; ++j) b[j] = conj[(d - j) % d];
  return b;
}

std::vector<FieldVector> circulant_for(const NormalBasis& basis) {
  const auto& conj = basis.conjugates();
  const std::size_t d = conj.size();
  std::vector<FieldVector> L(d, FieldVector(d));
  for (std::size_t s = 0; s < d; ++s) {
    for (std::size_t t = 0; t < d; ++t) L[s][t] = conj[(s + t) % d];
  }
  return L;
}

// Both sides are linear in f', so agreement on unit vectors is exact.
bool orientation_matches(const SpecializedConv& sc, const std::vector<FieldVector>& L,
                         ConvOrientation o) {
  const std::size_t d = L.size();
  for (std::size_t t = 0; t < d; ++t) {
    FieldVector e(d);
    e[t] = FieldElement{1};
    const auto out = sc.apply(e);
    for (std::size_t s = 0; s < d; ++s) {
      if (out[output_index(s, d, o)] != L[s][t]) return false;
    }
  }
  return true;
}

void fill_plan(CfftPlan& plan) {
  const Field& field = plan.field;
  const auto& cosets = plan.partition.cosets;

  std::size_t offset = 0;
  for (const auto& c : cosets) {
    plan.block_offset.push_back(offset);
    for (auto e : c.elements) plan.perm_in.push_back(e);
    offset += c.size();
  }

  // One convolution per coset size; choose the orientation that fits all.
  std::map<unsigned, std::shared_ptr<const BilinearAlgorithm>> algs;
  for (const auto& [size, basis] : plan.bases) {
    algs[size] = std::make_shared<const BilinearAlgorithm>(gen_cyclic(size));
  }
  constexpr std::array kCandidates = {ConvOrientation::literal, ConvOrientation::fixed_reversed,
                                      ConvOrientation::output_reversed};
  std::map<unsigned, SpecializedConv> chosen;
  bool found = false;
  for (auto o : kCandidates) {
    std::map<unsigned, SpecializedConv> trial;
    bool ok = true;
    for (const auto& [size, basis] : plan.bases) {
      const auto fixed = fixed_operand(make_b(basis), o);
      auto sc = specialize_left(field, algs.at(size), fixed);
      if (!orientation_matches(sc, circulant_for(basis), o)) {
        ok = false;
        break;
      }
      trial.emplace(size, std::move(sc));
    }
    if (ok) {
      plan.orientation = o;
      chosen = std::move(trial);
      found = true;
      break;
    }
  }
  if (!found) throw InvariantViolation("no convolution orientation reproduces L_i");

  for (std::size_t i = 0; i < cosets.size(); ++i) {
    const unsigned size = cosets[i].size();
    plan.b.push_back(make_b(plan.bases.at(size)));
    plan.conv.push_back(chosen.at(size));
  }

  plan.A = BitMatrix(plan.n, plan.n);
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    const NormalBasis& basis = plan.bases.at(cosets[i].size());
    const FieldElement beta = field.pow(plan.alpha, cosets[i].representative);
    FieldElement x = field.one();
    for (std::uint32_t j = 0; j < plan.n; ++j) {
      const std::uint64_t coords = basis.coordinates(x);
      for (unsigned s = 0; s < cosets[i].size(); ++s) {
        if ((coords >> s) & 1u) plan.A.set(j, plan.block_offset[i] + s);
      }
      x = field.mul(x, beta);
    }
  }
}

CfftPlan start_plan(const Field& field, std::uint32_t n) {
  if (n == 0 || field.order() % n != 0) {
    throw std::invalid_argument("transform length " + std::to_string(n) +
                                " does not divide 2^m - 1 = " + std::to_string(field.order()));
  }
  CfftPlan plan(field);
  plan.n = n;
  plan.alpha = field.pow(field.primitive(), field.order() / n);
  plan.partition = partition_cosets(n);
  return plan;
}

}  // namespace

std::string to_string(ConvOrientation o) {
  switch (o) {
    case ConvOrientation::literal: return "literal";
    case ConvOrientation::fixed_reversed: return "fixed_reversed";
    case ConvOrientation::output_reversed: return "output_reversed";
  }
  return "unknown";
}

ConvOrientation orientation_from_string(const std::string& s) {
  if (s == "literal") return ConvOrientation::literal;
  if (s == "fixed_reversed") return ConvOrientation::fixed_reversed;
  if (s == "output_reversed") return ConvOrientation::output_reversed;
  throw std::invalid_argument("unknown convolution orientation '" + s + "'");
}

CfftPlan build_plan(const Field& field, std::uint32_t n) {
  CfftPlan plan = start_plan(field, n);
  for (const auto& [size, members] : plan.partition.size_groups) {
    plan.bases.emplace(size, find_normal_basis(field, size));
  }
  fill_plan(plan);
  return plan;
}

CfftPlan build_plan_with_bases(const Field& field, std::uint32_t n,
                               const std::map<unsigned, FieldElement>& gammas) {
  CfftPlan plan = start_plan(field, n);
  for (const auto& [size, members] : plan.partition.size_groups) {
    const auto it = gammas.find(size);
    if (it == gammas.end()) {
      throw std::invalid_argument("missing normal basis for coset size " + std::to_string(size));
    }
    plan.bases.emplace(size, normal_basis_from_gamma(field, size, it->second));
  }
  fill_plan(plan);
  return plan;
}

std::vector<FieldVector> circulant_L(const CfftPlan& plan, std::size_t coset) {
  return circulant_for(plan.basis_for(coset));
}

FieldVector permute_input(const CfftPlan& plan, std::span<const FieldElement> f) {
  if (f.size() != plan.n) throw std::invalid_argument("permute_input: length mismatch");
  FieldVector fp(plan.n);
  for (std::size_t p = 0; p < plan.n; ++p) fp[p] = f[plan.perm_in[p]];
  return fp;
}

FieldVector apply_L(const CfftPlan& plan, std::span<const FieldElement> f_prime,
                    BilinearTally* tally) {
  if (f_prime.size() != plan.n) throw std::invalid_argument("apply_L: length mismatch");
  FieldVector v(plan.n);
  for (std::size_t i = 0; i < plan.k(); ++i) {
    const std::size_t d = plan.coset_size(i);
    const std::size_t off = plan.block_offset[i];
    const auto out = plan.conv[i].apply(f_prime.subspan(off, d), tally);
    for (std::size_t s = 0; s < d; ++s) v[off + s] = out[output_index(s, d, plan.orientation)];
  }
  return v;
}

bool reconstruction_identity_holds(const CfftPlan& plan) {
  const Field& field = plan.field;
  for (std::size_t i = 0; i < plan.k(); ++i) {
    const auto& conj = plan.basis_for(i).conjugates();
    const FieldElement beta = field.pow(plan.alpha, plan.partition.cosets[i].representative);
    FieldElement expected = field.one();
    for (std::uint32_t j = 0; j < plan.n; ++j) {
      FieldElement acc;
      for (std::size_t s = 0; s < conj.size(); ++s) {
        if (plan.A.get(j, plan.block_offset[i] + s)) acc += conj[s];
      }
      if (acc != expected) return false;
      expected = field.mul(expected, beta);
    }
  }
  return true;
}

std::vector<CosetGroup> coset_group_profile(const CfftPlan& plan) {
  std::vector<CosetGroup> out;
  for (const auto& [size, members] : plan.partition.size_groups) {
    out.push_back({size, members.size()});
  }
  return out;
}

std::uint64_t rotate_coords(std::uint64_t mask, unsigned width, unsigned times) {
  if (width == 0) return mask;
  const std::uint64_t full = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  for (unsigned i = 0; i < times % width; ++i) {
    mask = ((mask << 1) | (mask >> (width - 1))) & full;
  }
  return mask;
}

std::pair<std::size_t, std::size_t> extended_to_b(std::size_t row, std::size_t col,
                                                  std::size_t k, unsigned m) {
  const std::size_t i1 = row / m, i2 = row % m;
  const std::size_t j1 = col / m, j2 = col % m;
  return {i2 * k + i1, j2 * k + j1};
}

BlockCyclicForm build_block_form(const CfftPlan& plan) {
  BlockCyclicForm form;
  form.k = plan.k();
  form.m = plan.field.degree();
  form.n = plan.n;
  form.experimental = !plan.full_length();
  form.block_offset = plan.block_offset;
  form.row_perm = plan.perm_in;
  for (std::size_t i = 0; i < form.k; ++i) form.coset_sizes.push_back(plan.coset_size(i));

  const std::size_t k = form.k;
  const unsigned m = form.m;
  const auto& cosets = plan.partition.cosets;

  // row0[i][j]: first row of A' block (i, j), as a coordinate mask.
  std::vector<std::vector<std::uint64_t>> row0(k, std::vector<std::uint64_t>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const unsigned mi = form.coset_sizes[i];
    if (m % mi != 0) throw InvariantViolation("coset size does not divide m");
    for (std::size_t j = 0; j < k; ++j) {
      const unsigned mj = form.coset_sizes[j];
      const std::size_t off = form.block_offset[j];
      const std::uint64_t first = block_row_mask(plan.A, cosets[i].elements[0], off, mj);
      std::uint64_t prev = first;
      for (unsigned t = 1; t < mi; ++t) {
        const std::uint64_t cur = block_row_mask(plan.A, cosets[i].elements[t], off, mj);
        if (cur != rotate_coords(prev, mj)) {
          throw InvariantViolation("A' block (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") is not cyclic at row " + std::to_string(t));
        }
        prev = cur;
      }
      if (rotate_coords(prev, mj) != first) {
        throw InvariantViolation("A' block (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") does not wrap cyclically");
      }
      row0[i][j] = first;
    }
  }

  // c_d[i1][j1] = A''_{i1 j1}[0][d] = bit (d mod m_j1) of row0.
  form.blocks_first_row.assign(m, BitMatrix(k, k));
  for (unsigned d = 0; d < m; ++d) {
    for (std::size_t i1 = 0; i1 < k; ++i1) {
      for (std::size_t j1 = 0; j1 < k; ++j1) {
        if ((row0[i1][j1] >> (d % form.coset_sizes[j1])) & 1u) form.blocks_first_row[d].set(i1, j1);
      }
    }
  }

  // Tiled extension must be cyclic, i.e. B block-cyclic:
  // A''_{i1 j1}[i2][j2] = A'_{i1 j1}[i2 mod m_i1][j2 mod m_j1] == c_{(j2 - i2) mod m}[i1][j1].
  for (std::size_t i1 = 0; i1 < k; ++i1) {
    const unsigned mi = form.coset_sizes[i1];
    for (std::size_t j1 = 0; j1 < k; ++j1) {
      const unsigned mj = form.coset_sizes[j1];
      for (unsigned i2 = 0; i2 < m; ++i2) {
        const std::uint64_t row = rotate_coords(row0[i1][j1], mj, i2 % mi);
        for (unsigned j2 = 0; j2 < m; ++j2) {
          const bool tiled = (row >> (j2 % mj)) & 1u;
          if (tiled != form.blocks_first_row[(j2 + m - i2) % m].get(i1, j1)) {
            throw InvariantViolation("B is not block-cyclic");
          }
        }
      }
    }
  }

  form.u_map.assign(k * m, -1);
  form.out_map.assign(plan.n, 0);
  for (std::size_t i1 = 0; i1 < k; ++i1) {
    for (unsigned i2 = 0; i2 < form.coset_sizes[i1]; ++i2) {
      form.u_map[i2 * k + i1] = static_cast<std::int64_t>(form.block_offset[i1] + i2);
      form.out_map[cosets[i1].elements[i2]] = i2 * k + i1;
    }
  }
  return form;
}

BitMatrix materialize_extended(const CfftPlan& plan) {
  const std::size_t k = plan.k();
  const unsigned m = plan.field.degree();
  const auto& cosets = plan.partition.cosets;
  BitMatrix ext(k * m, k * m);
  for (std::size_t i1 = 0; i1 < k; ++i1) {
    const unsigned mi = cosets[i1].size();
    for (std::size_t j1 = 0; j1 < k; ++j1) {
      const unsigned mj = cosets[j1].size();
      for (unsigned i2 = 0; i2 < m; ++i2) {
        const std::size_t a_row = cosets[i1].elements[i2 % mi];
        for (unsigned j2 = 0; j2 < m; ++j2) {
          if (plan.A.get(a_row, plan.block_offset[j1] + j2 % mj)) ext.set(i1 * m + i2, j1 * m + j2);
        }
      }
    }
  }
  return ext;
}

BitMatrix reorder_extended(const BitMatrix& extended, std::size_t k, unsigned m) {
  BitMatrix B(extended.rows(), extended.cols());
  for (std::size_t r = 0; r < extended.rows(); ++r) {
    for (std::size_t c : extended.row_support(r)) {
      const auto [br, bc] = extended_to_b(r, c, k, m);
      B.set(br, bc);
    }
  }
  return B;
}

BitMatrix materialize_b(const BlockCyclicForm& form) {
  const std::size_t k = form.k;
  BitMatrix B(k * form.m, k * form.m);
  for (unsigned i2 = 0; i2 < form.m; ++i2) {
    for (unsigned j2 = 0; j2 < form.m; ++j2) {
      const BitMatrix& c = form.blocks_first_row[(j2 + form.m - i2) % form.m];
      for (std::size_t i1 = 0; i1 < k; ++i1) {
        for (std::size_t j1 : c.row_support(i1)) B.set(i2 * k + i1, j2 * k + j1);
      }
    }
  }
  return B;
}

}  // namespace cfft
