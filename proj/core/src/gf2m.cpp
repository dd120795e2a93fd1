#include "cfft/gf2m.hpp"

#include <array>
#include <bit>
#include <cassert>
#include <string>

#include "cfft/bit_matrix.hpp"

namespace cfft {

namespace {

// Index m holds a primitive polynomial of degree m.
constexpr std::array<std::uint32_t, kMaxDegree + 1> kDefaultPolys = {
    0,         0,
    0x7,       // x^2+x+1
    0xB,       // x^3+x+1
    0x13,      // x^4+x+1
    0x25,      // x^5+x^2+1
    0x43,      // x^6+x+1
    0x83,      // x^7+x+1
    0x11D,     // x^8+x^4+x^3+x^2+1
    0x211,     // x^9+x^4+1
    0x409,     // x^10+x^3+1
    0x805,     // x^11+x^2+1
    0x1053,    // x^12+x^6+x^4+x+1
    0x201B,    // x^13+x^4+x^3+x+1
    0x4443,    // x^14+x^10+x^6+x+1
    0x8003,    // x^15+x+1
    0x1100B,   // x^16+x^12+x^3+x+1
    0x20009,   // x^17+x^3+1
    0x40081,   // x^18+x^7+1
    0x80027,   // x^19+x^5+x^2+x+1
    0x100009,  // x^20+x^3+1
};

// a * b mod p for polynomials of degree < deg(p) <= 32.
std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p, int deg) {
  std::uint64_t r = 0;
  const std::uint64_t top = std::uint64_t{1} << deg;
  while (b != 0) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= p;
  }
  return r;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t p) {
  const int dp = poly_degree(p);
  for (int da = poly_degree(a); da >= dp; da = poly_degree(a)) {
    a ^= p << (da - dp);
  }
  return a;
}

std::uint64_t x_pow_mod(std::uint64_t e, std::uint64_t p, int deg) {
  std::uint64_t result = 1;
  std::uint64_t base = poly_mod(2, p);
  while (e != 0) {
    if (e & 1u) result = poly_mulmod(result, base, p, deg);
    base = poly_mulmod(base, base, p, deg);
    e >>= 1;
  }
  return result;
}

}  // namespace

int poly_degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

bool is_irreducible(std::uint64_t poly) {
  const int deg = poly_degree(poly);
  if (deg < 1) return false;
  for (int d = 1; 2 * d <= deg; ++d) {
    for (std::uint64_t q = std::uint64_t{1} << d; q < (std::uint64_t{2} << d); ++q) {
      if (poly_mod(poly, q) == 0) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p != 0) continue;
    out.push_back(p);
    while (v % p == 0) v /= p;
  }
  if (v > 1) out.push_back(v);
  return out;
}

bool is_primitive(std::uint64_t poly) {
  const int deg = poly_degree(poly);
  if (deg < 1 || deg > 32 || (poly & 1u) == 0) return false;
  const std::uint64_t n = (std::uint64_t{1} << deg) - 1;
  if (x_pow_mod(n, poly, deg) != 1) return false;
  for (auto p : prime_factors(n)) {
    if (x_pow_mod(n / p, poly, deg) == 1) return false;
  }
  return true;
}

std::uint32_t default_primitive_poly(unsigned m) {
  if (m < kMinDegree || m > kMaxDegree) {
    throw std::invalid_argument("no default polynomial for degree " + std::to_string(m));
  }
  return kDefaultPolys[m];
}

Field make_field(unsigned m, std::optional<std::uint32_t> poly) {
  if (m < kMinDegree || m > kMaxDegree) {
    throw std::invalid_argument("field degree must be in [2, 20], got " + std::to_string(m));
  }
  const std::uint32_t p = poly.value_or(kDefaultPolys[m]);
  if (poly_degree(p) != static_cast<int>(m)) {
    throw std::invalid_argument("polynomial degree does not match m=" + std::to_string(m));
  }
  if (!is_irreducible(p)) throw std::invalid_argument("polynomial is reducible over GF(2)");
  if (!is_primitive(p)) throw std::invalid_argument("polynomial is irreducible but not primitive");
  return Field(m, p);
}

FieldElement Field::element(std::uint32_t bits) const {
  if (bits > n_) throw std::invalid_argument("element bits exceed the field size");
  return FieldElement{bits};
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
  assert(contains(a) && contains(b) && "element from a different field");
  std::uint32_t x = a.bits();
  std::uint32_t y = b.bits();
  std::uint32_t r = 0;
  const std::uint32_t top = 1u << m_;
  while (y != 0) {
    if (y & 1u) r ^= x;
    y >>= 1;
    x <<= 1;
    if (x & top) x ^= poly_;
  }
  return FieldElement{r};
}

FieldElement Field::pow(FieldElement a, std::uint64_t e) const {
  FieldElement result = one();
  FieldElement base = a;
  while (e != 0) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

FieldElement Field::inv(FieldElement a) const {
  if (a.is_zero()) throw std::domain_error("inverse of zero in GF(2^m)");
  return pow(a, n_ - 1);
}

Gf2RowSolver::Gf2RowSolver(std::span<const std::uint64_t> rows) : row_count_(rows.size()) {
  if (rows.size() > 64) throw std::invalid_argument("Gf2RowSolver: more than 64 rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::uint64_t vec = rows[i];
    std::uint64_t combo = std::uint64_t{1} << i;
    for (const auto& p : basis_) {
      if (vec & p.bit) {
        vec ^= p.vec;
        combo ^= p.combo;
      }
    }
    if (vec == 0) continue;
    basis_.push_back({vec, combo, std::bit_floor(vec)});
  }
}

std::optional<std::uint64_t> Gf2RowSolver::solve(std::uint64_t target) const {
  std::uint64_t combo = 0;
  for (const auto& p : basis_) {
    if (target & p.bit) {
      target ^= p.vec;
      combo ^= p.combo;
    }
  }
  if (target != 0) return std::nullopt;
  return combo;
}

std::optional<std::uint64_t> gf2_solve(const BitMatrix& M, std::uint64_t rhs) {
  if (M.rows() > 64 || M.cols() > 64) {
    throw std::invalid_argument("gf2_solve: at most 64 rows and 64 columns");
  }
  std::vector<std::uint64_t> rows(M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i) rows[i] = M.row_mask(i);
  return Gf2RowSolver(rows).solve(rhs);
}

std::uint64_t gf2_combine_rows(const BitMatrix& M, std::uint64_t x) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < M.rows() && i < 64; ++i) {
    if ((x >> i) & 1u) acc ^= M.row_mask(i);
  }
  return acc;
}

}  // namespace cfft
