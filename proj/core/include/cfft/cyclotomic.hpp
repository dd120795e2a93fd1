#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace cfft {

/// One cyclotomic coset {s, 2s, 4s, ...} mod n, stored in doubling order
/// starting at its representative (the smallest member).
struct Coset {
  std::uint32_t representative = 0;
  std::vector<std::uint32_t> elements;

  std::uint32_t size() const { return static_cast<std::uint32_t>(elements.size()); }
};

/// Cyclotomic cosets of {0, ..., n-1} modulo n with respect to 2, ordered by
/// ascending representative.
struct CosetPartition {
  std::uint32_t n = 0;
  std::vector<Coset> cosets;
  /// Coset size -> indices into `cosets` having that size.
  std::map<std::uint32_t, std::vector<std::size_t>> size_groups;
  /// Element -> index of the coset that contains it.
  std::vector<std::uint32_t> coset_of;

  std::size_t k() const { return cosets.size(); }
};

/// Throws std::invalid_argument for even or zero n.
CosetPartition partition_cosets(std::uint32_t n);

struct CosetsPerSizeRow {
  std::uint32_t size = 0;
  std::uint64_t count = 0;
  std::uint64_t bound = 0;  // floor((2^size - 1) / size)
  bool pass = false;
};

/// Per coset size: number of cosets of that size against (2^size - 1)/size.
/// `p` must be the partition for n = 2^m - 1.
std::vector<CosetsPerSizeRow> check_cosets_per_size(const CosetPartition& p, unsigned m);

struct CosetTotalCheck {
  unsigned m = 0;
  std::uint64_t k = 0;
  std::uint64_t km = 0;
  bool pass = false;  // 2^m - 1 < km < 2(2^m - 1)
};

/// Coset count bound for n = 2^m - 1; rejects m outside [2, 20]. The
/// inequality is false at m = 1 (k = 1, km = 1), which is why m = 1 is
/// excluded.
CosetTotalCheck check_coset_total(unsigned m);

}  // namespace cfft
