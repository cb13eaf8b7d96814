#pragma once

// Exact combinatorics of small patterns: densest sub-pattern m(K), appearance
// exponents, expected copy counts, the cover costs g_k and g_0, and the table
// of density thresholds. Everything here is exact rational arithmetic.

#include "hyperlift/combinatorics.hpp"
#include "hyperlift/gadgets.hpp"
#include "hyperlift/pattern.hpp"
#include "hyperlift/rational.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace hyperlift {

namespace detail {

// Dinic max-flow on a small dense-ish network.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : adj_(nodes) {}

  void add_edge(std::size_t u, std::size_t v, std::int64_t cap) {
    adj_[u].push_back(arcs_.size());
    arcs_.push_back({v, cap});
    adj_[v].push_back(arcs_.size());
    arcs_.push_back({u, 0});
  }

  std::int64_t run(std::size_t s, std::size_t t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
      it_.assign(adj_.size(), 0);
      while (const std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) flow += f;
    }
    return flow;
  }

  // Nodes reachable from s in the residual network after run().
  std::vector<bool> source_side(std::size_t s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (const auto a : adj_[u]) {
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = true;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    std::size_t to;
    std::int64_t cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    level_.assign(adj_.size(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (const auto a : adj_[u]) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[u] + 1;
          q.push(arcs_[a].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(std::size_t u, std::size_t t, std::int64_t limit) {
    if (u == t) return limit;
    for (; it_[u] < adj_[u].size(); ++it_[u]) {
      const std::size_t a = adj_[u][it_[u]];
      Arc& arc = arcs_[a];
      if (arc.cap <= 0 || level_[arc.to] != level_[u] + 1) continue;
      const std::int64_t f = dfs(arc.to, t, std::min(limit, arc.cap));
      if (f > 0) {
        arc.cap -= f;
        arcs_[a ^ 1].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

// Hyperedge subset maximizing edge_weight*e' - vertex_weight*v' (vertices
// taken as the union), as a max-weight closure. `forced` hyperedges are
// always included.
inline std::vector<bool> max_closure(const Pattern& k, std::int64_t edge_weight, std::int64_t vertex_weight,
                                     const std::vector<bool>& forced = {}) {
  const std::size_t e = k.e(), v = k.v();
  const std::size_t s = e + v, t = e + v + 1;
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  MaxFlow f(e + v + 2);
  for (std::size_t i = 0; i < e; ++i) {
    f.add_edge(s, i, (!forced.empty() && forced[i]) ? inf : edge_weight);
    for (const VertexId x : k.hypergraph().edge(i)) f.add_edge(i, e + x, inf);
  }
  for (std::size_t x = 0; x < v; ++x) f.add_edge(e + x, t, vertex_weight);
  f.run(s, t);
  const auto side = f.source_side(s);
  return {side.begin(), side.begin() + static_cast<std::ptrdiff_t>(e)};
}

inline std::pair<std::size_t, std::size_t> subset_size(const Pattern& k, const std::vector<bool>& chosen) {
  std::vector<bool> used(k.v(), false);
  std::size_t edges = 0, vertices = 0;
  for (std::size_t i = 0; i < k.e(); ++i) {
    if (!chosen[i]) continue;
    ++edges;
    for (const VertexId x : k.hypergraph().edge(i)) {
      if (!used[x]) {
        used[x] = true;
        ++vertices;
      }
    }
  }
  return {edges, vertices};
}

}  // namespace detail

// m(K) = max over nonempty hyperedge subsets of e'/v', by Dinkelbach
// iteration on max-closure cuts.
inline Rational max_density(const Pattern& k) {
  if (k.e() == 0) throw std::invalid_argument("max_density of an empty pattern");
  Rational lambda(static_cast<std::int64_t>(k.e()), k.v());
  while (true) {
    const auto chosen = detail::max_closure(k, lambda.den(), lambda.num());
    const auto [e, v] = detail::subset_size(k, chosen);
    if (e == 0) return lambda;
    const Rational candidate(static_cast<std::int64_t>(e), static_cast<std::int64_t>(v));
    if (candidate <= lambda) return lambda;
    lambda = candidate;
  }
}

// v_K + e_K (delta - d + 1): the exponent of n in n^{v_K} p^{e_K}.
inline Rational expected_count_exponent(const Pattern& k, std::uint32_t d, const Rational& delta) {
  if (k.d() != d) throw std::invalid_argument("pattern uniformity does not match d");
  return Rational(k.v()) + Rational(static_cast<std::int64_t>(k.e())) * (delta - Rational(d) + Rational(1));
}

struct SubPatternExponent {
  Rational exponent;
  std::vector<std::size_t> edges;  // hyperedge indices of the minimizing sub-pattern
};

// Least exponent over nonempty sub-patterns; K appears with probability
// bounded away from zero iff this is >= 0.
inline SubPatternExponent min_subpattern_exponent(const Pattern& k, const Rational& delta) {
  if (k.e() == 0) throw std::invalid_argument("empty pattern");
  const Rational c = Rational(k.d()) - Rational(1) - delta;  // cost per hyperedge in n-exponent
  if (c <= Rational(0)) throw std::invalid_argument("delta must be below d - 1");
  SubPatternExponent best{Rational(0), {}};
  bool have = false;
  for (std::size_t h = 0; h < k.e(); ++h) {
    std::vector<bool> forced(k.e(), false);
    forced[h] = true;
    const auto chosen = detail::max_closure(k, c.num(), c.den(), forced);
    const auto [e, v] = detail::subset_size(k, chosen);
    const Rational x = Rational(static_cast<std::int64_t>(v)) - c * Rational(static_cast<std::int64_t>(e));
    if (!have || x < best.exponent) {
      have = true;
      best.exponent = x;
      best.edges.clear();
      for (std::size_t i = 0; i < k.e(); ++i) {
        if (chosen[i]) best.edges.push_back(i);
      }
    }
  }
  return best;
}

// C(n, v) v!/aut(K) p^e: the exact expected number of copies of K in H(n, d, p).
inline BigRational exact_expected_count(const Pattern& k, std::uint64_t n, const BigRational& p) {
  if (n < k.v()) return BigRational(0);
  BigInt placements = 1;
  for (std::uint64_t i = 0; i < k.v(); ++i) placements *= BigInt(n - i);  // C(n,v) v!
  BigRational count(placements, automorphism_count(k));
  for (std::size_t i = 0; i < k.e(); ++i) count *= p;
  return count;
}

// ---------------------------------------------------------------------------
// Cover costs.

struct SubsetCover {
  Rational cost;
  std::vector<std::vector<VertexId>> sets;  // chosen subsets of {0..d-1}, sorted
};

namespace detail {

inline std::uint32_t pair_index(std::uint32_t d, std::uint32_t a, std::uint32_t b) { return a * d + b; }

// Least-cost cover of `universe` (pairs of {0..d-1}, encoded a*d+b) by the
// candidate subsets, cost |S| - 1 - delta. Branches on the least uncovered
// pair with exclusions; bound = uncovered pairs times the best cost per pair.
inline std::optional<SubsetCover> min_cost_subset_cover(std::uint32_t d, const std::vector<std::uint32_t>& universe,
                                                        const std::vector<std::uint32_t>& candidate_masks,
                                                        const Rational& delta) {
  const std::size_t u = universe.size();
  if (u == 0) return SubsetCover{Rational(0), {}};
  std::vector<std::uint64_t> covers(candidate_masks.size(), 0);
  std::vector<Rational> cost(candidate_masks.size());
  Rational best_ratio;
  bool have_ratio = false;
  for (std::size_t c = 0; c < candidate_masks.size(); ++c) {
    const std::uint32_t m = candidate_masks[c];
    const int size = std::popcount(m);
    cost[c] = Rational(size - 1) - delta;
    std::size_t count = 0;
    for (std::size_t i = 0; i < u; ++i) {
      const std::uint32_t a = universe[i] / d, b = universe[i] % d;
      if ((m >> a & 1U) && (m >> b & 1U)) {
        covers[c] |= std::uint64_t{1} << i;
        ++count;
      }
    }
    if (count == 0) continue;
    const Rational ratio = cost[c] / Rational(static_cast<std::int64_t>(count));
    if (!have_ratio || ratio < best_ratio) {
      best_ratio = ratio;
      have_ratio = true;
    }
  }
  if (!have_ratio) return std::nullopt;
  if (best_ratio < Rational(0)) best_ratio = Rational(0);
  std::vector<std::vector<std::size_t>> containing(u);
  for (std::size_t c = 0; c < candidate_masks.size(); ++c) {
    for (std::size_t i = 0; i < u; ++i) {
      if (covers[c] >> i & 1U) containing[i].push_back(c);
    }
  }
  for (auto& list : containing) {
    if (list.empty()) return std::nullopt;
    // Larger sets first: good solutions early sharpen the bound.
    std::stable_sort(list.begin(), list.end(), [&](std::size_t x, std::size_t y) {
      return std::popcount(covers[x]) > std::popcount(covers[y]);
    });
  }
  const std::uint64_t full = u == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << u) - 1;
  std::optional<Rational> best;
  std::vector<std::size_t> best_sets, chosen;
  std::vector<bool> excluded(candidate_masks.size(), false);
  auto rec = [&](auto&& self, std::uint64_t covered, const Rational& spent) -> void {
    if (covered == full) {
      if (!best || spent < *best) {
        best = spent;
        best_sets = chosen;
      }
      return;
    }
    const int missing = static_cast<int>(u) - std::popcount(covered);
    if (best && spent + best_ratio * Rational(missing) >= *best) return;
    const std::size_t e = static_cast<std::size_t>(std::countr_zero(~covered & full));
    std::vector<std::size_t> newly;
    for (const std::size_t c : containing[e]) {
      if (excluded[c]) continue;
      chosen.push_back(c);
      self(self, covered | covers[c], spent + cost[c]);
      chosen.pop_back();
      excluded[c] = true;
      newly.push_back(c);
    }
    for (const std::size_t c : newly) excluded[c] = false;
  };
  rec(rec, 0, Rational(0));
  SubsetCover out{*best, {}};
  for (const std::size_t c : best_sets) {
    std::vector<VertexId> s;
    for (std::uint32_t x = 0; x < d; ++x) {
      if (candidate_masks[c] >> x & 1U) s.push_back(x);
    }
    out.sets.push_back(std::move(s));
  }
  std::sort(out.sets.begin(), out.sets.end());
  return out;
}

}  // namespace detail

// g_k(delta) for h = {0..d-1}, U = {0..k-1}: least Σ(|S|-1-delta) over
// subsets S ⊆ h, |S| >= 2, S ⊄ U, whose pairs cover Proj(h) minus the pairs
// inside U. Zero when k = d.
inline SubsetCover g_k_cover(std::uint32_t d, std::uint32_t k, const Rational& delta) {
  if (d < 2 || d > 7 || k < 2 || k > d) throw std::invalid_argument("g_k needs 2 <= k <= d <= 7");
  std::vector<std::uint32_t> universe;
  for (std::uint32_t a = 0; a < d; ++a) {
    for (std::uint32_t b = a + 1; b < d; ++b) {
      if (b >= k) universe.push_back(detail::pair_index(d, a, b));
    }
  }
  const std::uint32_t inside = (1U << k) - 1;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m < (1U << d); ++m) {
    if (std::popcount(m) >= 2 && (m & ~inside) != 0) masks.push_back(m);
  }
  auto best = detail::min_cost_subset_cover(d, universe, masks, delta);
  if (!best) throw std::logic_error("g_k cover must exist");
  return *best;
}

inline Rational g_k(std::uint32_t d, std::uint32_t k, const Rational& delta) { return g_k_cover(d, k, delta).cost; }

// Star cover of [d]: {1..d-1} plus the pairs {0, i}.
inline std::vector<std::vector<VertexId>> star_witness(std::uint32_t d) {
  std::vector<std::vector<VertexId>> sets;
  std::vector<VertexId> rest;
  for (VertexId i = 1; i < d; ++i) {
    rest.push_back(i);
    sets.push_back({0, i});
  }
  sets.push_back(rest);
  std::sort(sets.begin(), sets.end());
  return sets;
}

// g_0(delta): least Σ(|S|-1-delta) over covers of Proj([d]) by proper
// subsets of size >= 2. The witness is the star whenever the star is optimal.
inline SubsetCover g_0(std::uint32_t d, const Rational& delta) {
  if (d < 3 || d > 7) throw std::invalid_argument("g_0 needs 3 <= d <= 7");
  std::vector<std::uint32_t> universe;
  for (std::uint32_t a = 0; a < d; ++a) {
    for (std::uint32_t b = a + 1; b < d; ++b) universe.push_back(detail::pair_index(d, a, b));
  }
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m + 1 < (1U << d); ++m) {
    if (std::popcount(m) >= 2) masks.push_back(m);
  }
  auto best = detail::min_cost_subset_cover(d, universe, masks, delta);
  if (!best) throw std::logic_error("g_0 cover must exist");
  const Rational star_cost = Rational(d - 2) - delta + Rational(d - 1) * (Rational(1) - delta);
  if (star_cost == best->cost) best->sets = star_witness(d);
  return *best;
}

// min over 2 <= k <= d-1 of g_k(delta) + k - d. The k = d term (h already a
// clique of the pattern) contributes nothing new and is left out.
inline Rational min_cover_margin(std::uint32_t d, const Rational& delta) {
  std::optional<Rational> best;
  for (std::uint32_t k = 2; k < d; ++k) {
    const Rational x = g_k(d, k, delta) + Rational(k) - Rational(d);
    if (!best || x < *best) best = x;
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Thresholds.

struct ThresholdRow {
  std::uint32_t d = 0;
  Rational lower;            // lower bound on the exact-recovery threshold
  Rational upper;            // upper bound
  Rational two_connectivity;  // (d-1)/(d+1): components stay O(1) below this
  Rational ambiguity;         // (2d-4)/(2d-1): G_{a,d} appears from here on
};

inline ThresholdRow threshold_row(std::uint32_t d) {
  if (d < 3) throw std::invalid_argument("threshold table starts at d = 3");
  const std::int64_t D = d;
  ThresholdRow r;
  r.d = d;
  if (d == 3) {
    r.lower = r.upper = Rational(2, 5);
  } else if (d == 4) {
    r.lower = Rational(1, 2);
    r.upper = Rational(4, 7);
  } else if (d == 5) {
    r.lower = Rational(1, 2);
    r.upper = Rational(2, 3);
  } else {
    r.lower = Rational(D - 3, D);
    r.upper = Rational(D * D - D - 2, D * D - D + 2);
  }
  r.two_connectivity = Rational(D - 1, D + 1);
  r.ambiguity = Rational(2 * D - 4, 2 * D - 1);
  return r;
}

inline std::vector<ThresholdRow> threshold_table(std::uint32_t max_d = 10) {
  std::vector<ThresholdRow> rows;
  for (std::uint32_t d = 3; d <= max_d; ++d) rows.push_back(threshold_row(d));
  return rows;
}

// Closed forms for the gadget densities.
inline Rational ambiguous_gadget_density(std::uint32_t d) {
  const std::int64_t D = d;
  return Rational(2 * D - 1, 2 * D * D - 5 * D + 5);
}
inline Rational map_failure_gadget_density(std::uint32_t d) {
  const std::int64_t D = d, pairs = D * (D - 1) / 2;
  return Rational(pairs + 1, D + pairs * (D - 2));
}

}  // namespace hyperlift
