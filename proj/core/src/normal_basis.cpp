#include "cfft/normal_basis.hpp"

#include <string>

namespace cfft {

namespace {

std::vector<std::uint64_t> as_rows(const FieldVector& v) {
  std::vector<std::uint64_t> rows;
  rows.reserve(v.size());
  for (auto e : v) rows.push_back(e.bits());
  return rows;
}

bool independent(const FieldVector& conj) {
  return Gf2RowSolver(as_rows(conj)).rank() == conj.size();
}

void require_divides(const Field& field, unsigned d) {
  if (d == 0 || field.degree() % d != 0) {
    throw std::invalid_argument("subfield degree " + std::to_string(d) +
                                " does not divide m=" + std::to_string(field.degree()));
  }
}

}  // namespace

FieldVector conjugates_of(const Field& field, FieldElement gamma, unsigned d) {
  FieldVector out;
  out.reserve(d);
  FieldElement g = gamma;
  for (unsigned s = 0; s < d; ++s) {
    out.push_back(g);
    g = field.square(g);
  }
  return out;
}

NormalBasis::NormalBasis(const Field& field, unsigned degree, FieldVector conjugates)
    : field_(field),
      degree_(degree),
      conjugates_(std::move(conjugates)),
      solver_(as_rows(conjugates_)) {}

bool NormalBasis::in_subfield(FieldElement e) const {
  FieldElement x = e;
  for (unsigned s = 0; s < degree_; ++s) x = field_.square(x);
  return x == e;
}

std::uint64_t NormalBasis::coordinates(FieldElement e) const {
  if (!in_subfield(e)) {
    throw std::invalid_argument("element is not in the subfield GF(2^" +
                                std::to_string(degree_) + ")");
  }
  const auto combo = solver_.solve(e.bits());
  if (!combo) throw InvariantViolation("subfield element outside the span of its normal basis");
  return *combo;
}

FieldElement NormalBasis::expand(std::uint64_t coords) const {
  FieldElement acc;
  for (unsigned s = 0; s < degree_; ++s) {
    if ((coords >> s) & 1u) acc += conjugates_[s];
  }
  return acc;
}

NormalBasis find_normal_basis(const Field& field, unsigned subfield_degree) {
  require_divides(field, subfield_degree);
  const unsigned d = subfield_degree;
  if (d == 1) return NormalBasis(field, 1, {field.one()});

  const std::uint64_t step = field.order() / ((std::uint64_t{1} << d) - 1);
  const FieldElement generator = field.pow(field.primitive(), step);
  const std::uint64_t sub_units = (std::uint64_t{1} << d) - 1;
  FieldElement candidate = generator;
  for (std::uint64_t j = 1; j <= sub_units; ++j) {
    auto conj = conjugates_of(field, candidate, d);
    if (independent(conj)) return NormalBasis(field, d, std::move(conj));
    candidate = field.mul(candidate, generator);
  }
  throw InvariantViolation("no normal element found in GF(2^" + std::to_string(d) + ")");
}

NormalBasis normal_basis_from_gamma(const Field& field, unsigned subfield_degree,
                                    FieldElement gamma) {
  require_divides(field, subfield_degree);
  if (!field.contains(gamma)) throw std::invalid_argument("gamma is not a field element");
  auto conj = conjugates_of(field, gamma, subfield_degree);
  if (field.square(conj.back()) != gamma) {
    throw std::invalid_argument("gamma does not lie in the requested subfield");
  }
  if (!independent(conj)) throw std::invalid_argument("gamma does not generate a normal basis");
  return NormalBasis(field, subfield_degree, std::move(conj));
}

}  // namespace cfft
