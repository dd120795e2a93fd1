#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfft/addnet.hpp"
#include "cfft/gf2m.hpp"
#include "cfft/planner.hpp"

namespace cfft {

/// F_j = f(alpha^j) by Horner's rule, alpha = primitive^((2^m-1)/n).
FieldVector naive_dft(const Field& field, std::uint32_t n, std::span<const FieldElement> f);

struct StageTally {
  std::uint64_t conv_pre = 0;
  std::uint64_t conv_mult = 0;
  std::uint64_t conv_post = 0;
  std::uint64_t addnet_pre = 0;
  std::uint64_t addnet_mvp = 0;
  std::uint64_t addnet_post = 0;
  /// Additions of the row-by-row A v evaluation (direct path only).
  std::uint64_t direct = 0;

  std::uint64_t multiplications() const { return conv_mult; }
  std::uint64_t additions() const {
    return conv_pre + conv_post + addnet_pre + addnet_mvp + addnet_post + direct;
  }
  friend bool operator==(const StageTally&, const StageTally&) = default;
};

struct TransformResult {
  FieldVector F;
  StageTally tally;
};

/// F = A L f'. With `net` the A v step runs through the addition network,
/// otherwise row by row. Throws std::invalid_argument on a length mismatch
/// or a network built for a different n.
TransformResult cfft(const CfftPlan& plan, const AdditionNetwork* net, std::span<const FieldElement> f);

/// Tally that cfft reports for any input (counts do not depend on values).
StageTally static_tally(const CfftPlan& plan, const AdditionNetwork* net);

/// One plan (and network) applied to many vectors.
class Transformer {
 public:
  /// Keeps its own copy of the plan.
  explicit Transformer(CfftPlan plan, bool use_addnet = true);

  const CfftPlan& plan() const { return plan_; }
  const AdditionNetwork* network() const { return net_ ? &*net_ : nullptr; }

  TransformResult operator()(std::span<const FieldElement> f) const { return cfft(plan_, network(), f); }
  std::vector<FieldVector> batch(const std::vector<FieldVector>& inputs) const;

 private:
  CfftPlan plan_;
  std::optional<BlockCyclicForm> form_;
  std::optional<AdditionNetwork> net_;
};

struct VerifyOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  /// Use the zero vector for every trial.
  bool zero_input = false;
};

struct TrialOutcome {
  bool addnet_matches_naive = false;
  bool direct_matches_naive = false;
  bool paths_agree = false;
  bool tallies_static = false;

  bool pass() const { return addnet_matches_naive && direct_matches_naive && paths_agree && tallies_static; }
};

struct VerifyReport {
  std::uint32_t n = 0;
  std::uint64_t seed = 0;
  /// Why the addition network could not be built; empty if it was.
  std::string network_error;
  std::vector<TrialOutcome> trials;

  std::size_t passed() const;
  bool ok() const { return network_error.empty() && passed() == trials.size(); }
};

/// Seeded random trials comparing both cfft paths with naive_dft and each
/// other. Never throws on a wrong plan: mismatches are report content.
VerifyReport verify(const CfftPlan& plan, const VerifyOptions& opts);

/// Uniform random field vector of length n.
template <class Rng>
FieldVector random_vector(const Field& field, std::size_t n, Rng& rng) {
  FieldVector v(n);
  for (auto& e : v) e = FieldElement{static_cast<std::uint32_t>(rng() & field.order())};
  return v;
}

/// One element per line, lowercase hex of the polynomial-basis bits.
FieldVector read_vector(std::istream& in, const Field& field);
void write_vector(std::ostream& out, std::span<const FieldElement> v);
FieldVector read_vector_file(const std::filesystem::path& path, const Field& field);
void write_vector_file(const std::filesystem::path& path, std::span<const FieldElement> v);

}  // namespace cfft
