#pragma once

// Binomial coefficients and lexicographic ranking of k-subsets of [0, n).

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hyperlift {

// C(n, k) as uint64; throws std::overflow_error when it does not fit.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) throw std::overflow_error("binomial coefficient overflow");
  }
  return static_cast<std::uint64_t>(r);
}

// Rank of a sorted k-subset among all k-subsets of [0, n) in lexicographic order.
inline std::uint64_t lex_rank(std::span<const std::uint32_t> subset, std::uint32_t n) {
  const std::uint64_t k = subset.size();
  std::uint64_t rank = 0;
  std::uint32_t prev = 0;
  for (std::uint64_t i = 0; i < k; ++i) {
    for (std::uint32_t v = (i == 0 ? 0 : prev + 1); v < subset[i]; ++v) {
      rank += binomial(n - 1 - v, k - 1 - i);
    }
    prev = subset[i];
  }
  return rank;
}

// Inverse of lex_rank. `out` receives k sorted vertices.
inline void lex_unrank(std::uint64_t rank, std::uint32_t n, std::uint32_t k, std::vector<std::uint32_t>& out) {
  out.resize(k);
  std::uint32_t v = 0;
  for (std::uint32_t i = 0; i < k; ++i) {
    for (;; ++v) {
      const std::uint64_t block = binomial(n - 1 - v, k - 1 - i);
      if (rank < block) break;
      rank -= block;
    }
    out[i] = v;
    ++v;
  }
}

}  // namespace hyperlift
