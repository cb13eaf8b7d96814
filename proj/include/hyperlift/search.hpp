#pragma once

// Computer-assisted search for ambiguous graphs.
//
// Starting from two hyperedges that overlap in k vertices, patterns K are
// grown one candidate clique h at a time: Grow(K, h) adds hyperedges h_i
// meeting h in prescribed subsets S_i (fresh vertices elsewhere) so that h
// becomes a clique of the projection. Every node with a nonnegative
// expected-count exponent is checked for ambiguity of Proj(K); nodes with
// exponent <= 0 are not expanded. Patterns are deduplicated by canonical
// form.

#include "hyperlift/census.hpp"
#include "hyperlift/pattern.hpp"
#include "hyperlift/preimage.hpp"
#include "hyperlift/projection.hpp"
#include "hyperlift/rational.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hyperlift {

struct SearchConfig {
  std::uint32_t d = 3;
  Rational delta = Rational(2, 5);
  std::optional<std::uint32_t> max_depth;  // defaults to ceil(2 / ((d-1)/(d+1) - delta))
  std::uint64_t node_budget = 1'000'000;
  double time_budget_seconds = 0;          // 0 = unlimited
  bool dedup = true;
  bool strict_neighbors = true;            // h must share an edge of Proj(K)
  bool single_hyperedge_root = false;

  std::uint32_t resolved_max_depth() const {
    if (max_depth) return *max_depth;
    const Rational gap = Rational(static_cast<std::int64_t>(d) - 1, d + 1) - delta;
    if (gap <= Rational(0)) {
      throw std::invalid_argument("delta at or above (d-1)/(d+1): an explicit max_depth is required");
    }
    return static_cast<std::uint32_t>((Rational(2) / gap).ceil());
  }

  void validate() const {
    if (d < 3 || d > 7) throw std::invalid_argument("search supports 3 <= d <= 7");
    if (delta < Rational(0) || delta > Rational(1)) throw std::invalid_argument("delta must lie in [0, 1]");
    if (resolved_max_depth() < 1) throw std::invalid_argument("max_depth must be >= 1");
    if (node_budget == 0) throw std::invalid_argument("node budget must be positive");
    if (time_budget_seconds < 0) throw std::invalid_argument("time budget must be nonnegative");
  }
};

struct AmbiguousWitness {
  std::string projection_form;  // canonical form of Proj(K) as a 2-uniform pattern
  Graph projection;
  Hypergraph preimage1;
  Hypergraph preimage2;
  Pattern pattern;              // the pattern whose projection was found ambiguous
  Rational exponent;
  std::uint32_t depth = 0;
};

struct SearchReport {
  std::vector<AmbiguousWitness> ambiguous_found;  // one per isomorphism class
  std::uint64_t nodes_visited = 0;
  std::uint64_t nodes_pruned_by_exponent = 0;     // visited nodes with exponent <= 0
  std::uint64_t children_below_zero = 0;          // grow results never materialized
  std::uint64_t nodes_deduped = 0;
  std::uint64_t nodes_depth_truncated = 0;
  std::uint64_t exponent_decrease_violations = 0;
  std::optional<Rational> min_exponent_decrease;
  std::uint32_t max_depth = 0;
  bool budget_tripped = false;
  bool exhausted = false;
  double elapsed_seconds = 0;
};

// A candidate clique h = U ∪ {fresh vertices}, with U ⊆ V(K).
struct Candidate {
  std::vector<VertexId> shared;  // U, sorted
  Hyperedge h;                   // fresh vertices are numbered from v(K)
};

namespace detail {

inline std::vector<std::vector<VertexId>> vertex_twin_classes(const Pattern& k) {
  std::map<std::vector<std::uint32_t>, std::vector<VertexId>> by_incidence;
  std::vector<std::vector<std::uint32_t>> inc(k.v());
  for (std::size_t i = 0; i < k.e(); ++i) {
    for (const VertexId x : k.hypergraph().edge(i)) inc[x].push_back(static_cast<std::uint32_t>(i));
  }
  for (VertexId x = 0; x < k.v(); ++x) by_incidence[inc[x]].push_back(x);
  std::vector<std::vector<VertexId>> out;
  for (auto& [sig, members] : by_incidence) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Candidate cliques h sharing k in [2, d] vertices with V(K), one per choice
// of U up to interchanging twin vertices. With `strict`, U must contain an
// edge of Proj(K); U may never already be a d-clique of Proj(K).
inline std::vector<Candidate> candidate_neighbors(const Pattern& k, bool strict = true) {
  const std::uint32_t d = k.d();
  const Graph proj = project(k.hypergraph());
  const auto classes = detail::vertex_twin_classes(k);
  std::vector<Candidate> out;
  std::vector<VertexId> u;
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == classes.size()) {
      if (u.size() < 2) return;
      std::vector<VertexId> shared = u;
      std::sort(shared.begin(), shared.end());
      bool has_edge = false, clique = true;
      for (std::size_t a = 0; a < shared.size(); ++a) {
        for (std::size_t b = a + 1; b < shared.size(); ++b) {
          const bool e = proj.has_edge(shared[a], shared[b]);
          has_edge = has_edge || e;
          clique = clique && e;
        }
      }
      if (strict && !has_edge) return;
      if (shared.size() == d && clique) return;
      std::vector<VertexId> h = shared;
      for (std::uint32_t j = 0; j + shared.size() < d; ++j) h.push_back(k.v() + j);
      out.push_back({shared, Hyperedge(h)});
      return;
    }
    const std::size_t before = u.size();
    for (std::size_t take = 0; take <= classes[c].size() && before + take <= d; ++take) {
      if (take > 0) u.push_back(classes[c][take - 1]);
      rec(c + 1);
    }
    u.resize(before);
  };
  rec(0);
  return out;
}

struct GrowOption {
  std::vector<std::uint32_t> subset_masks;  // each S_i as a bitmask over positions of h
  Rational cost;                             // Σ (|S_i| - 1 - delta)
};

namespace detail {

struct GrowFrame {
  std::vector<std::uint32_t> masks;     // S^{K,h} as bitmasks over h's positions
  std::vector<std::uint64_t> covers;    // pairs of Proj(h) \ Proj(K) each covers
  std::uint64_t universe = 0;
};

inline GrowFrame grow_frame(const Pattern& k, const Candidate& c) {
  const std::uint32_t d = k.d();
  const Graph proj = project(k.hypergraph());
  const auto& h = c.h;
  auto old_edge = [&](std::uint32_t a, std::uint32_t b) {
    return h[a] < k.v() && h[b] < k.v() && proj.has_edge(h[a], h[b]);
  };
  GrowFrame f;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t a = 0; a < d; ++a) {
    for (std::uint32_t b = a + 1; b < d; ++b) {
      if (!old_edge(a, b)) pairs.emplace_back(a, b);
    }
  }
  f.universe = pairs.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << pairs.size()) - 1;
  for (std::uint32_t m = 1; m < (1U << d); ++m) {
    if (std::popcount(m) < 2) continue;
    std::uint64_t cov = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if ((m >> pairs[i].first & 1U) && (m >> pairs[i].second & 1U)) cov |= std::uint64_t{1} << i;
    }
    if (cov == 0) continue;  // Proj(S) ⊆ Proj(K)
    f.masks.push_back(m);
    f.covers.push_back(cov);
  }
  return f;
}

// Enumerates index sets I over the frame whose union covers the universe and
// whose cost is at most `max_cost` (all covers when unset).
inline void enumerate_grow_covers(const GrowFrame& f, const Rational& delta, const std::optional<Rational>& max_cost,
                                  const std::function<void(const GrowOption&)>& emit) {
  const std::size_t m = f.masks.size();
  std::vector<std::uint64_t> suffix(m + 1, 0);
  for (std::size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] | f.covers[i];
  std::vector<Rational> cost(m);
  Rational min_cost;
  for (std::size_t i = 0; i < m; ++i) {
    cost[i] = Rational(std::popcount(f.masks[i]) - 1) - delta;
    if (i == 0 || cost[i] < min_cost) min_cost = cost[i];
  }
  GrowOption cur;
  cur.cost = Rational(0);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t covered) {
    if ((covered | suffix[i]) != f.universe) return;
    if (i == m) {
      if (covered == f.universe) emit(cur);
      return;
    }
    if (!max_cost || cur.cost + cost[i] <= *max_cost) {
      cur.subset_masks.push_back(f.masks[i]);
      const Rational saved = cur.cost;
      cur.cost = cur.cost + cost[i];
      rec(i + 1, covered | f.covers[i]);
      cur.cost = saved;
      cur.subset_masks.pop_back();
    }
    rec(i + 1, covered);
  };
  if (f.universe == 0) return;
  rec(0, 0);
}

inline Pattern apply_grow(const Pattern& k, const Candidate& c, const GrowOption& g) {
  const std::uint32_t d = k.d();
  std::vector<Hyperedge> edges = k.hypergraph().hyperedges();
  VertexId next = c.h[d - 1] >= k.v() ? c.h[d - 1] + 1 : k.v();
  for (const std::uint32_t m : g.subset_masks) {
    std::vector<VertexId> e;
    for (std::uint32_t a = 0; a < d; ++a) {
      if (m >> a & 1U) e.push_back(c.h[a]);
    }
    while (e.size() < d) e.push_back(next++);
    edges.emplace_back(std::move(e));
  }
  return Pattern::compact(d, edges);
}

}  // namespace detail

// Grow(K, h): every pattern K ∪ {h_i}, one per covering index set, deduped
// by canonical form.
inline std::vector<Pattern> grow(const Pattern& k, const Candidate& c, const Rational& delta = Rational(0)) {
  const auto frame = detail::grow_frame(k, c);
  std::vector<Pattern> out;
  std::unordered_map<std::string, bool> seen;
  detail::enumerate_grow_covers(frame, delta, std::nullopt, [&](const GrowOption& g) {
    Pattern child = detail::apply_grow(k, c, g);
    if (seen.emplace(canonical_form(child), true).second) out.push_back(std::move(child));
  });
  return out;
}

inline std::vector<Pattern> search_roots(std::uint32_t d, bool single_hyperedge) {
  std::vector<Pattern> roots;
  std::vector<VertexId> first(d);
  for (VertexId i = 0; i < d; ++i) first[i] = i;
  if (single_hyperedge) {
    roots.push_back(Pattern::compact(d, {Hyperedge(first)}));
    return roots;
  }
  for (std::uint32_t k = 2; k < d; ++k) {
    std::vector<VertexId> second;
    for (VertexId i = 0; i < k; ++i) second.push_back(i);
    for (VertexId i = 0; second.size() < d; ++i) second.push_back(d + i);
    roots.push_back(Pattern::compact(d, {Hyperedge(first), Hyperedge(second)}));
  }
  return roots;
}

// Canonical form of Proj(K) viewed as a 2-uniform pattern.
inline std::string projection_form(const Graph& g) {
  std::vector<Hyperedge> edges;
  for (const auto& e : g.edges()) edges.push_back(Hyperedge{e.a, e.b});
  return canonical_form(Pattern::compact(2, edges));
}

inline SearchReport dfs_search(const SearchConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::uint32_t d = config.d;
  const Rational delta = config.delta;
  const Rational zero(0);
  const Rational two_conn(static_cast<std::int64_t>(d) - 1, d + 1);
  const bool below_two_conn = delta < two_conn;
  SearchReport rep;
  rep.max_depth = config.resolved_max_depth();
  std::unordered_map<std::string, std::uint32_t> visited;  // form -> least depth expanded
  std::unordered_map<std::string, std::size_t> found;

  auto out_of_budget = [&]() {
    if (rep.nodes_visited >= config.node_budget) return true;
    if (config.time_budget_seconds > 0) {
      const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (t >= config.time_budget_seconds) return true;
    }
    return false;
  };

  std::function<void(const Pattern&, const Rational&, std::uint32_t)> visit = [&](const Pattern& k,
                                                                                    const Rational& exponent,
                                                                                    std::uint32_t depth) {
    if (rep.budget_tripped) return;
    if (out_of_budget()) {
      rep.budget_tripped = true;
      return;
    }
    if (config.dedup) {
      const std::string form = canonical_form(k);
      auto it = visited.find(form);
      if (it != visited.end() && it->second <= depth) {
        ++rep.nodes_deduped;
        return;
      }
      visited[form] = depth;
    }
    ++rep.nodes_visited;

    const Graph proj = project(k.hypergraph());
    const PreimageReport pre = min_preimage(proj, d);
    if (pre.ambiguous && exponent >= zero) {
      const std::string pf = projection_form(proj);
      if (!found.count(pf)) {
        found.emplace(pf, rep.ambiguous_found.size());
        rep.ambiguous_found.push_back({pf, proj, pre.min_covers[0], pre.min_covers[1], k, exponent, depth});
      }
    }
    if (exponent <= zero) {
      ++rep.nodes_pruned_by_exponent;
      return;
    }
    if (depth >= rep.max_depth) {
      ++rep.nodes_depth_truncated;
      return;
    }
    for (const Candidate& c : candidate_neighbors(k, config.strict_neighbors)) {
      const auto frame = detail::grow_frame(k, c);
      const std::int64_t fresh = static_cast<std::int64_t>(d) - static_cast<std::int64_t>(c.shared.size());
      // Children keep a nonnegative exponent iff cost <= exponent + fresh.
      const Rational budget = exponent + Rational(fresh);
      std::vector<std::pair<Pattern, Rational>> children;
      // For d <= 4 every cover is enumerated so each decrease can be audited.
      const std::optional<Rational> cap = d <= 4 ? std::nullopt : std::optional<Rational>(budget);
      detail::enumerate_grow_covers(frame, delta, cap, [&](const GrowOption& g) {
        const Rational decrease = g.cost - Rational(fresh);
        if (!rep.min_exponent_decrease || decrease < *rep.min_exponent_decrease) rep.min_exponent_decrease = decrease;
        if (below_two_conn && decrease < two_conn - delta) ++rep.exponent_decrease_violations;
        if (g.cost > budget) {
          ++rep.children_below_zero;
          return;
        }
        children.emplace_back(detail::apply_grow(k, c, g), exponent - decrease);
      });
      for (const auto& [child, child_exp] : children) {
        visit(child, child_exp, depth + 1);
        if (rep.budget_tripped) return;
      }
    }
  };

  for (const Pattern& root : search_roots(d, config.single_hyperedge_root)) {
    visit(root, expected_count_exponent(root, d, delta), 0);
    if (rep.budget_tripped) break;
  }
  rep.exhausted = !rep.budget_tripped && rep.nodes_depth_truncated == 0;
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace hyperlift
