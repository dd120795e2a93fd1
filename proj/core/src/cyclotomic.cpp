#include "cfft/cyclotomic.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "cfft/gf2m.hpp"

namespace cfft {

CosetPartition partition_cosets(std::uint32_t n) {
  if (n == 0 || n % 2 == 0) {
    throw std::invalid_argument("coset modulus must be odd and positive, got " + std::to_string(n));
  }
  constexpr auto kUnassigned = std::numeric_limits<std::uint32_t>::max();
  CosetPartition p;
  p.n = n;
  p.coset_of.assign(n, kUnassigned);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (p.coset_of[s] != kUnassigned) continue;
    const auto idx = static_cast<std::uint32_t>(p.cosets.size());
    Coset c;
    c.representative = s;
    std::uint32_t x = s;
    do {
      c.elements.push_back(x);
      p.coset_of[x] = idx;
      x = static_cast<std::uint32_t>((std::uint64_t{x} * 2) % n);
    } while (x != s);
    p.size_groups[c.size()].push_back(idx);
    p.cosets.push_back(std::move(c));
  }
  return p;
}

std::vector<CosetsPerSizeRow> check_cosets_per_size(const CosetPartition& p, unsigned m) {
  if (m < 1 || m > 32 || p.n != (std::uint64_t{1} << m) - 1) {
    throw std::invalid_argument("check_cosets_per_size: partition is not for n = 2^m - 1");
  }
  std::vector<CosetsPerSizeRow> rows;
  for (const auto& [size, members] : p.size_groups) {
    CosetsPerSizeRow r;
    r.size = size;
    r.count = members.size();
    const std::uint64_t field_units = (std::uint64_t{1} << size) - 1;
    r.bound = field_units / size;
    // count <= (2^size - 1)/size, compared without rounding.
    r.pass = r.count * size <= field_units;
    rows.push_back(r);
  }
  return rows;
}

CosetTotalCheck check_coset_total(unsigned m) {
  if (m < kMinDegree || m > kMaxDegree) {
    throw std::invalid_argument("check_coset_total: m must be in [2, 20], got " + std::to_string(m));
  }
  const std::uint64_t n = (std::uint64_t{1} << m) - 1;
  CosetTotalCheck r;
  r.m = m;
  r.k = partition_cosets(static_cast<std::uint32_t>(n)).k();
  r.km = r.k * m;
  r.pass = n < r.km && r.km < 2 * n;
  return r;
}

}  // namespace cfft
