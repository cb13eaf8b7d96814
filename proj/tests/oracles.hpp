#pragma once

// Independent reference computations for preimages of small graphs. Nothing
// here uses the library's cover solver or component decomposition.

#include "hyperlift/hypergraph.hpp"
#include "hyperlift/projection.hpp"
#include "hyperlift/rational.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hyperlift::oracle {

namespace detail {

inline int popcount16(std::uint32_t x) {
  static const std::vector<std::uint8_t> table = [] {
    std::vector<std::uint8_t> t(1u << 16);
    for (std::uint32_t i = 1; i < t.size(); ++i) t[i] = static_cast<std::uint8_t>(t[i >> 1] + (i & 1));
    return t;
  }();
  return table[x & 0xffff] + table[x >> 16];
}

inline BigInt from_int128(__int128 v) {
  const bool negative = v < 0;
  const unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt out = BigInt(static_cast<std::uint64_t>(u >> 64)) << 64;
  out += BigInt(static_cast<std::uint64_t>(u));
  return negative ? BigInt(-out) : out;
}

}  // namespace detail

// Number of sets of triangles of g that cover every edge of g, i.e. the
// number of 3-uniform preimages of g. Inclusion-exclusion over edge subsets:
//
//   #covers = sum over F of (-1)^|E \ F| 2^tri(F).
//
// Edges of vertex-disjoint triangles and isolated single edges ("low" edges,
// no triangle holds low edges of two different groups) are summed in closed
// form; the rest are walked in Gray-code order.
inline BigInt count_triangle_covers(const Graph& g) {
  const std::uint32_t n = g.n();
  if (n > 10) throw std::invalid_argument("count_triangle_covers supports n <= 10");
  using E = std::pair<VertexId, VertexId>;
  std::vector<E> edges;
  for (const Edge& e : g.edges()) edges.emplace_back(e.a, e.b);

  const auto share_triangle = [&](E x, E y) {
    std::array<VertexId, 4> v{x.first, x.second, y.first, y.second};
    std::sort(v.begin(), v.end());
    if (x == y || std::adjacent_find(v.begin(), v.end()) == v.end()) return false;
    std::vector<VertexId> outer;
    for (const VertexId a : {x.first, x.second, y.first, y.second}) {
      if (std::count(v.begin(), v.end(), a) == 1) outer.push_back(a);
    }
    return g.has_edge(outer[0], outer[1]);
  };

  std::vector<std::array<E, 3>> groups3;
  std::vector<E> singles, low;
  std::vector<bool> used(n, false);
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      for (VertexId c = b + 1; c < n; ++c) {
        if (used[a] || used[b] || used[c]) continue;
        if (!g.has_edge(a, b) || !g.has_edge(a, c) || !g.has_edge(b, c)) continue;
        used[a] = used[b] = used[c] = true;
        groups3.push_back({E{a, b}, E{a, c}, E{b, c}});
        low.insert(low.end(), {E{a, b}, E{a, c}, E{b, c}});
      }
    }
  }
  for (const E& e : edges) {
    if (std::find(low.begin(), low.end(), e) != low.end()) continue;
    if (std::none_of(low.begin(), low.end(), [&](const E& l) { return share_triangle(e, l); })) {
      singles.push_back(e);
      low.push_back(e);
    }
  }
  std::vector<E> high;
  for (const E& e : edges) {
    if (std::find(low.begin(), low.end(), e) == low.end()) high.push_back(e);
  }
  if (high.size() > 40) throw std::invalid_argument("count_triangle_covers: too many edges");

  // Given the high part of F, a single low edge contributes 2^c - 1 and a low
  // triangle (c0, c1, c2) contributes prod(2^ci - 1) + 2^(c0+c1+c2), where c
  // counts triangles through the edge whose other two edges lie in F.
  std::array<std::int64_t, 17> single_factor{};
  for (int c = 0; c <= 16; ++c) single_factor[c] = (std::int64_t{1} << c) - 1;
  std::vector<std::int64_t> triple_factor(17 * 17 * 17);
  for (int a = 0; a <= 16; ++a) {
    for (int b = 0; b <= 16; ++b) {
      for (int c = 0; c <= 16; ++c) {
        triple_factor[(a * 17 + b) * 17 + c] =
            single_factor[a] * single_factor[b] * single_factor[c] + (std::int64_t{1} << (a + b + c));
      }
    }
  }
  std::vector<std::uint32_t> adj(n, 0);
  const auto common = [&](const E& e) { return detail::popcount16(adj[e.first] & adj[e.second]); };
  const auto low_sum = [&] {
    __int128 p = 1;
    for (const E& e : singles) p *= single_factor[common(e)];
    for (const auto& t : groups3) p *= triple_factor[(common(t[0]) * 17 + common(t[1])) * 17 + common(t[2])];
    return p;
  };

  const std::size_t m = high.size();
  std::vector<__int128> by_triangles(static_cast<std::size_t>(n) * n * n / 6 + 2, 0);
  std::size_t tri = 0;
  bool negative = m % 2 == 1;
  by_triangles[0] += negative ? -low_sum() : low_sum();
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << m); ++i) {
    const auto [a, b] = high[static_cast<std::size_t>(std::countr_zero(i))];
    if (adj[a] >> b & 1u) {
      adj[a] &= ~(1u << b);
      adj[b] &= ~(1u << a);
      tri -= static_cast<std::size_t>(detail::popcount16(adj[a] & adj[b]));
    } else {
      tri += static_cast<std::size_t>(detail::popcount16(adj[a] & adj[b]));
      adj[a] |= 1u << b;
      adj[b] |= 1u << a;
    }
    negative = !negative;
    by_triangles[tri] += negative ? -low_sum() : low_sum();
  }
  BigInt total = 0;
  for (std::size_t t = 0; t < by_triangles.size(); ++t) {
    if (by_triangles[t] != 0) total += detail::from_int128(by_triangles[t]) << static_cast<unsigned>(t);
  }
  return total;
}

// All preimages of g as sorted flat hyperedge lists, or nullopt once more
// than `cap` have been found. Plain include/exclude over the d-cliques.
inline std::optional<std::vector<std::vector<VertexId>>> all_preimages(const Graph& g, std::uint32_t d,
                                                                       std::size_t cap) {
  const Hypergraph cand = clique_hypergraph(g, d);
  const std::size_t m = cand.size();
  std::vector<std::vector<std::size_t>> pairs(m);
  std::vector<std::size_t> last_use(g.edge_count(), 0);
  std::vector<bool> coverable(g.edge_count(), false);
  for (std::size_t s = 0; s < m; ++s) {
    const auto e = cand.edge(s);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a + 1; b < d; ++b) {
        const auto it = std::lower_bound(g.edges().begin(), g.edges().end(), Edge(e[a], e[b]));
        const auto k = static_cast<std::size_t>(it - g.edges().begin());
        pairs[s].push_back(k);
        last_use[k] = s;
        coverable[k] = true;
      }
    }
  }
  std::vector<std::vector<VertexId>> found;
  if (std::find(coverable.begin(), coverable.end(), false) != coverable.end()) return found;
  std::vector<int> covered(g.edge_count(), 0);
  std::vector<std::size_t> chosen;
  bool overflow = false;
  const auto rec = [&](auto&& self, std::size_t s) -> void {
    if (overflow) return;
    if (s > 0) {
      for (const auto k : pairs[s - 1]) {
        if (last_use[k] == s - 1 && covered[k] == 0) return;
      }
    }
    if (s == m) {
      std::vector<VertexId> flat;
      for (const auto c : chosen) flat.insert(flat.end(), cand.edge(c).begin(), cand.edge(c).end());
      found.push_back(std::move(flat));
      overflow = found.size() > cap;
      return;
    }
    for (const auto k : pairs[s]) ++covered[k];
    chosen.push_back(s);
    self(self, s + 1);
    chosen.pop_back();
    for (const auto k : pairs[s]) --covered[k];
    self(self, s + 1);
  };
  rec(rec, 0);
  if (overflow) return std::nullopt;
  std::sort(found.begin(), found.end());
  return found;
}

// Size of a smallest preimage of g (nullopt if none): depth-first search
// branching on the first uncovered edge, bounded by ceil(uncovered / C(d,2)).
inline std::optional<std::size_t> min_preimage_size(const Graph& g, std::uint32_t d) {
  const Hypergraph cand = clique_hypergraph(g, d);
  const std::size_t edges = g.edge_count();
  const std::size_t per = d * (d - 1) / 2;
  std::vector<std::vector<std::size_t>> pairs(cand.size());
  std::vector<std::vector<std::size_t>> holders(edges);
  for (std::size_t s = 0; s < cand.size(); ++s) {
    const auto e = cand.edge(s);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a + 1; b < d; ++b) {
        const auto it = std::lower_bound(g.edges().begin(), g.edges().end(), Edge(e[a], e[b]));
        const auto k = static_cast<std::size_t>(it - g.edges().begin());
        pairs[s].push_back(k);
        holders[k].push_back(s);
      }
    }
  }
  for (const auto& h : holders) {
    if (h.empty()) return std::nullopt;
  }
  std::vector<int> covered(edges, 0);
  std::size_t best = cand.size() + 1;
  const auto rec = [&](auto&& self, std::size_t depth, std::size_t uncovered) -> void {
    if (uncovered == 0) {
      best = std::min(best, depth);
      return;
    }
    if (depth + (uncovered + per - 1) / per >= best) return;
    std::size_t target = edges;
    for (std::size_t k = 0; k < edges; ++k) {
      if (covered[k] == 0 && (target == edges || holders[k].size() < holders[target].size())) target = k;
    }
    for (const auto s : holders[target]) {
      std::size_t gained = 0;
      for (const auto k : pairs[s]) gained += covered[k]++ == 0;
      self(self, depth + 1, uncovered - gained);
      for (const auto k : pairs[s]) --covered[k];
    }
  };
  rec(rec, 0, edges);
  return best;
}

}  // namespace hyperlift::oracle
