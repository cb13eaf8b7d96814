#pragma once

// Seeded random hypergraph generators.
//
// Sampling walks the lexicographic ranking of all C(n, d) hyperedges and
// draws geometric gaps between included ranks, so cost is proportional to
// the number of included hyperedges. The rank space is cut into blocks of
// rank_block_size(n, d) consecutive ranks; block b draws from the stream
// derive_seed(seed, {tag, b}). Blocks are independent, so a parallel run
// over blocks reproduces the sequential output exactly.

#include "hyperlift/combinatorics.hpp"
#include "hyperlift/hypergraph.hpp"
#include "hyperlift/projection.hpp"
#include "hyperlift/random.hpp"
#include "hyperlift/rational.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace hyperlift {

// p = c * n^(-d + 1 + delta), or `p_override` when set.
struct DensityParams {
  std::uint32_t d = 3;
  Rational delta = Rational(0);
  std::uint32_t n = 0;
  double c = 1.0;
  std::optional<double> p_override;

  double p() const {
    if (p_override) return *p_override;
    const double exponent = -static_cast<double>(d) + 1.0 + delta.to_double();
    return c * std::pow(static_cast<double>(n), exponent);
  }

  void validate() const {
    if (d < 2) throw std::invalid_argument("d must be >= 2");
    if (n < d) throw std::invalid_argument("n must be >= d");
    if (!p_override && (delta < Rational(0) || delta > Rational(1))) {
      throw std::invalid_argument("delta must lie in [0, 1], got " + delta.str());
    }
    if (!(c > 0.0)) throw std::invalid_argument("constant factor c must be positive");
    const double prob = p();
    if (!(prob >= 0.0) || prob > 1.0) {
      throw std::invalid_argument("hyperedge probability p=" + std::to_string(prob) + " outside [0, 1]");
    }
  }

  std::uint64_t total_hyperedges() const { return binomial(n, d); }
};

// Two balanced communities; monochromatic hyperedges appear with q1, all
// others with q2, where q = rate * ln(n) / C(n-1, d-1).
struct HsbmParams {
  std::uint32_t d = 3;
  std::uint32_t n = 0;
  Rational alpha = Rational(1);
  Rational beta = Rational(1);
  std::optional<double> q1_override;
  std::optional<double> q2_override;

  double q1() const {
    if (q1_override) return *q1_override;
    return alpha.to_double() * std::log(static_cast<double>(n)) / static_cast<double>(binomial(n - 1, d - 1));
  }
  double q2() const {
    if (q2_override) return *q2_override;
    return beta.to_double() * std::log(static_cast<double>(n)) / static_cast<double>(binomial(n - 1, d - 1));
  }

  void validate() const {
    if (d < 2) throw std::invalid_argument("d must be >= 2");
    if (n < d || n % 2 != 0) throw std::invalid_argument("HSBM needs even n >= d");
    if (alpha < Rational(0) || beta < Rational(0)) throw std::invalid_argument("alpha, beta must be nonnegative");
    const double a = q1(), b = q2();
    if (!(a >= 0.0) || !(b >= 0.0) || a > 1.0 || b > 1.0) {
      throw std::invalid_argument("HSBM probabilities q1=" + std::to_string(a) + ", q2=" + std::to_string(b) +
                                  " outside [0, 1]");
    }
  }
};

struct HsbmSample {
  Hypergraph hypergraph;
  std::vector<int> sigma;  // +1 / -1, exactly n/2 of each
};

inline constexpr std::uint64_t kStreamPlain = 0x706c61696eULL;  // "plain"
inline constexpr std::uint64_t kStreamHsbm = 0x6873626dULL;     // "hsbm"
inline constexpr std::uint64_t kStreamSigma = 0x7369676dULL;    // "sigm"

// Ranks per stream block: at least 2^20, and at most 1024 blocks overall.
inline std::uint64_t rank_block_size(std::uint64_t total) {
  const std::uint64_t by_count = total / 1024 + (total % 1024 != 0 ? 1 : 0);
  return std::max<std::uint64_t>(std::uint64_t{1} << 20, by_count);
}

namespace detail {

// Visits every rank of [begin, end) independently included with probability
// `p`, in increasing order, using geometric gaps.
template <class Visit>
void skip_sample_block(Rng& rng, double p, std::uint64_t begin, std::uint64_t end, Visit&& visit) {
  if (p <= 0.0 || begin >= end) return;
  std::uint64_t r = begin;
  while (true) {
    const std::uint64_t gap = rng.geometric_skip(p, end - r);
    if (gap >= end - r) return;
    r += gap;
    visit(r);
    ++r;
    if (r >= end) return;
  }
}

// Runs skip sampling over all blocks of [0, total); `per_block(b, begin, end)`
// must return the flat hyperedges for that block. Results are concatenated
// in block order, which is rank order.
inline std::vector<VertexId> sample_blocks(
    std::uint64_t total, unsigned threads,
    const std::function<std::vector<VertexId>(std::uint64_t, std::uint64_t, std::uint64_t)>& per_block) {
  const std::uint64_t block = rank_block_size(total);
  const std::uint64_t blocks = total == 0 ? 0 : (total + block - 1) / block;
  std::vector<std::vector<VertexId>> parts(blocks);
  auto run = [&](std::uint64_t b) { parts[b] = per_block(b, b * block, std::min(total, (b + 1) * block)); };
  if (threads <= 1 || blocks <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run(b);
  } else {
    std::vector<std::thread> pool;
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t b = t; b < blocks; b += workers) run(b);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<VertexId> flat;
  for (auto& part : parts) flat.insert(flat.end(), part.begin(), part.end());
  return flat;
}

}  // namespace detail

// H(n, d, p): each of the C(n, d) hyperedges independently with probability p.
inline Hypergraph generate_random_hypergraph(const DensityParams& params, std::uint64_t seed, unsigned threads = 1) {
  params.validate();
  const double p = params.p();
  const std::uint64_t total = params.total_hyperedges();
  auto flat = detail::sample_blocks(total, threads, [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
    Rng rng(derive_seed(seed, {kStreamPlain, b}));
    std::vector<VertexId> out;
    std::vector<VertexId> combo;
    detail::skip_sample_block(rng, p, begin, end, [&](std::uint64_t rank) {
      lex_unrank(rank, params.n, params.d, combo);
      out.insert(out.end(), combo.begin(), combo.end());
    });
    return out;
  });
  return Hypergraph::from_sorted_flat(params.n, params.d, std::move(flat));
}

// Balanced labels: n/2 entries +1 and n/2 entries -1, uniformly permuted.
inline std::vector<int> sample_balanced_labels(std::uint32_t n, std::uint64_t seed) {
  std::vector<int> sigma(n, -1);
  std::fill(sigma.begin(), sigma.begin() + n / 2, +1);
  Rng rng(derive_seed(seed, {kStreamSigma}));
  rng.shuffle(sigma);
  return sigma;
}

inline HsbmSample generate_hsbm(const HsbmParams& params, std::uint64_t seed, unsigned threads = 1) {
  params.validate();
  const double q1 = params.q1(), q2 = params.q2();
  const double qmax = std::max(q1, q2);
  std::vector<int> sigma = sample_balanced_labels(params.n, seed);
  const std::uint64_t total = binomial(params.n, params.d);
  // Candidates are drawn at rate max(q1, q2) and thinned to the hyperedge's
  // own rate with one extra uniform from the same block stream.
  auto flat = detail::sample_blocks(total, threads, [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
    Rng rng(derive_seed(seed, {kStreamHsbm, b}));
    std::vector<VertexId> out;
    std::vector<VertexId> combo;
    detail::skip_sample_block(rng, qmax, begin, end, [&](std::uint64_t rank) {
      lex_unrank(rank, params.n, params.d, combo);
      bool mono = true;
      for (std::size_t i = 1; i < combo.size(); ++i) mono = mono && sigma[combo[i]] == sigma[combo[0]];
      const double q = mono ? q1 : q2;
      if (rng.uniform() * qmax < q) out.insert(out.end(), combo.begin(), combo.end());
    });
    return out;
  });
  return {Hypergraph::from_sorted_flat(params.n, params.d, std::move(flat)), std::move(sigma)};
}

struct DensifyResult {
  Graph graph;
  Hypergraph added;
  double p3 = 0.0;
};

// Densification used by the monotonicity reduction: with p1 = p(params1) and
// p2 = p(n, d, delta2), samples H3 at p3 = (p2 - p1) / (1 - p1) and returns
// (g1 ∪ Proj(H3), H3), so that H1 ∪ H3 ~ H(n, d, p2).
inline DensifyResult densify_reduction(const Graph& g1, const DensityParams& params1, const Rational& delta2,
                                       std::uint64_t seed) {
  params1.validate();
  if (!params1.p_override && delta2 < params1.delta) {
    throw std::invalid_argument("densify target delta " + delta2.str() + " below source delta " +
                                params1.delta.str());
  }
  if (g1.n() != params1.n) throw std::invalid_argument("graph size does not match params");
  DensityParams params2 = params1;
  params2.p_override.reset();
  params2.delta = delta2;
  params2.validate();
  const double p1 = params1.p();
  const double p2 = params2.p();
  if (p2 < p1) throw std::invalid_argument("densify target probability below source probability");
  const double p3 = p1 >= 1.0 ? 0.0 : std::max(0.0, (p2 - p1) / (1.0 - p1));
  DensityParams params3 = params1;
  params3.p_override = p3;
  Hypergraph h3 = generate_random_hypergraph(params3, seed);
  Graph merged = graph_union(g1, project(h3));
  return {std::move(merged), std::move(h3), p3};
}

}  // namespace hyperlift
