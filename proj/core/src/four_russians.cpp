#include "cfft/four_russians.hpp"

#include <algorithm>
#include <string>

namespace cfft {

unsigned four_russians_chunk_width(std::size_t k) {
  if (k <= 2) return 1;
  return static_cast<unsigned>(std::bit_width(k - 1));
}

FourRussiansTableau build_four_russians(const BitMatrix& M, const std::vector<bool>& dead) {
  const std::size_t k = M.rows();
  if (k < 1 || k > 4096 || M.cols() != k) {
    throw std::invalid_argument("build_four_russians: need a square matrix with 1 <= k <= 4096, got " +
                                std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
  }
  if (!dead.empty() && dead.size() != k) {
    throw std::invalid_argument("build_four_russians: dead-input mask has the wrong length");
  }

  FourRussiansTableau t;
  t.matrix_ = M;
  for (std::size_t j = 0; j < dead.size(); ++j) {
    if (!dead[j]) continue;
    for (std::size_t i = 0; i < k; ++i) t.matrix_.set(i, j, false);
  }
  t.s_ = four_russians_chunk_width(k);

  for (std::size_t first = 0; first < k; first += t.s_) {
    FourRussiansTableau::Group g;
    g.first_col = first;
    g.width = static_cast<unsigned>(std::min<std::size_t>(t.s_, k - first));
    for (unsigned b = 0; b < g.width; ++b) {
      if (dead.empty() || !dead[first + b]) g.live_mask |= 1u << b;
    }
    g.selection = BitMatrix(std::size_t{1} << g.width, k);
    const unsigned live = static_cast<unsigned>(std::popcount(g.live_mask));
    t.table_adds_ += (std::uint64_t{1} << live) - live - 1;
    t.groups_.push_back(std::move(g));
  }

  const std::size_t G = t.groups_.size();
  t.chunks_.assign(k * G, 0);
  for (std::size_t row = 0; row < k; ++row) {
    std::size_t lookups = 0;
    for (std::size_t gi = 0; gi < G; ++gi) {
      auto& g = t.groups_[gi];
      std::uint32_t c = 0;
      for (unsigned b = 0; b < g.width; ++b) {
        if (t.matrix_.get(row, g.first_col + b)) c |= 1u << b;
      }
      t.chunks_[row * G + gi] = c;
      g.selection.set(c, row);
      if (c != 0) ++lookups;
    }
    if (lookups > 0) t.lookup_adds_ += lookups - 1;
  }
  return t;
}

}  // namespace cfft
