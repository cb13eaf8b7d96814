#pragma once

// Exact minimum preimages of small graphs.
//
// A preimage of G is a set of d-cliques of G whose projections cover every
// edge of G, so minimum preimages are minimum set covers of E(G) by the
// hyperedges of Cli(G). SetCover is an exact branch-and-bound engine over
// bitsets: it branches on the least uncovered element, trying the sets that
// contain it in order, and excludes earlier siblings in later branches so
// every cover is visited once.

#include "hyperlift/hypergraph.hpp"
#include "hyperlift/projection.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace hyperlift {

class SetCover {
 public:
  // `sets[i]` lists element ids in [0, universe). Set order defines the
  // canonical (lexicographic) order of covers.
  SetCover(std::size_t universe, const std::vector<std::vector<std::uint32_t>>& sets)
      : universe_(universe), words_((universe + 63) / 64), count_(sets.size()), bits_(count_ * words_, 0),
        containing_(universe) {
    for (std::size_t s = 0; s < count_; ++s) {
      for (const auto e : sets[s]) {
        if (e >= universe) throw std::out_of_range("cover element out of range");
        bits_[s * words_ + e / 64] |= std::uint64_t{1} << (e % 64);
      }
      std::size_t size = 0;
      for (std::size_t w = 0; w < words_; ++w) size += std::popcount(bits_[s * words_ + w]);
      max_set_ = std::max(max_set_, size);
      for (std::size_t e = 0; e < universe; ++e) {
        if (test(s, e)) containing_[e].push_back(static_cast<std::uint32_t>(s));
      }
    }
  }

  std::size_t universe() const { return universe_; }
  std::size_t set_count() const { return count_; }

  bool feasible() const {
    return std::all_of(containing_.begin(), containing_.end(), [](const auto& c) { return !c.empty(); });
  }

  // True when every set owns an element no other set covers; then the only
  // minimal cover is the whole family.
  bool all_sets_forced() const {
    std::vector<bool> forced(count_, false);
    for (const auto& c : containing_) {
      if (c.size() == 1) forced[c[0]] = true;
    }
    return std::all_of(forced.begin(), forced.end(), [](bool b) { return b; });
  }

  // Minimum cover size, or nullopt when infeasible.
  std::optional<std::size_t> minimum_size() const {
    if (!feasible()) return std::nullopt;
    if (universe_ == 0) return 0;
    if (all_sets_forced()) return count_;
    std::size_t best = greedy_upper_bound();
    State st(*this);
    search_min(st, 0, best);
    return best;
  }

  // Visits covers of exactly `size` sets, each once, as sorted index lists.
  // Complete when `size` is the minimum. `visit` returns false to stop.
  void enumerate_covers(std::size_t size, const std::function<bool(const std::vector<std::uint32_t>&)>& visit) const {
    State st(*this);
    std::vector<std::uint32_t> chosen;
    bool go = true;
    enumerate(st, chosen, size, visit, go);
  }

  // Canonical cover of the given (minimum) size: the lexicographically least
  // sorted list of set indices.
  std::optional<std::vector<std::uint32_t>> lex_least_cover(std::size_t size) const {
    State st(*this);
    std::vector<std::uint32_t> chosen;
    if (lex_least(st, chosen, 0, size)) return chosen;
    return std::nullopt;
  }

 private:
  struct State {
    explicit State(const SetCover& sc) : covered(sc.words_, 0), count(sc.universe_, 0), excluded(sc.count_, 0) {}
    std::vector<std::uint64_t> covered;
    std::vector<std::uint32_t> count;  // how many chosen sets cover each element
    std::vector<std::uint8_t> excluded;
  };

  bool test(std::size_t s, std::size_t e) const { return (bits_[s * words_ + e / 64] >> (e % 64)) & 1U; }

  void add(State& st, std::size_t s) const {
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t b = bits_[s * words_ + w];
      while (b) {
        const std::size_t e = w * 64 + std::countr_zero(b);
        b &= b - 1;
        if (st.count[e]++ == 0) st.covered[w] |= std::uint64_t{1} << (e % 64);
      }
    }
  }
  void remove(State& st, std::size_t s) const {
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t b = bits_[s * words_ + w];
      while (b) {
        const std::size_t e = w * 64 + std::countr_zero(b);
        b &= b - 1;
        if (--st.count[e] == 0) st.covered[w] &= ~(std::uint64_t{1} << (e % 64));
      }
    }
  }

  std::size_t uncovered(const State& st) const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t mask = ~st.covered[w];
      if (w + 1 == words_ && universe_ % 64 != 0) mask &= (std::uint64_t{1} << (universe_ % 64)) - 1;
      c += std::popcount(mask);
    }
    return c;
  }

  std::size_t first_uncovered(const State& st) const {
    for (std::size_t w = 0; w < words_; ++w) {
      const std::uint64_t mask = ~st.covered[w];
      if (mask) {
        const std::size_t e = w * 64 + std::countr_zero(mask);
        return e < universe_ ? e : universe_;
      }
    }
    return universe_;
  }

  std::size_t lower_bound(const State& st) const {
    const std::size_t u = uncovered(st);
    return max_set_ == 0 ? (u == 0 ? 0 : universe_ + 1) : (u + max_set_ - 1) / max_set_;
  }

  std::size_t greedy_upper_bound() const {
    State st(*this);
    std::size_t used = 0;
    while (first_uncovered(st) < universe_) {
      std::size_t best_s = 0, best_gain = 0;
      for (std::size_t s = 0; s < count_; ++s) {
        std::size_t gain = 0;
        for (std::size_t w = 0; w < words_; ++w) gain += std::popcount(bits_[s * words_ + w] & ~st.covered[w]);
        if (gain > best_gain) {
          best_gain = gain;
          best_s = s;
        }
      }
      add(st, best_s);
      ++used;
    }
    return used;
  }

  void search_min(State& st, std::size_t depth, std::size_t& best) const {
    const std::size_t e = first_uncovered(st);
    if (e == universe_) {
      best = std::min(best, depth);
      return;
    }
    if (depth + std::max<std::size_t>(1, lower_bound(st)) >= best) return;
    const auto& cands = containing_[e];
    std::vector<std::uint32_t> newly;
    for (const auto s : cands) {
      if (st.excluded[s]) continue;
      add(st, s);
      search_min(st, depth + 1, best);
      remove(st, s);
      st.excluded[s] = 1;
      newly.push_back(s);
    }
    for (const auto s : newly) st.excluded[s] = 0;
  }

  void enumerate(State& st, std::vector<std::uint32_t>& chosen, std::size_t size,
                 const std::function<bool(const std::vector<std::uint32_t>&)>& visit, bool& go) const {
    if (!go) return;
    const std::size_t e = first_uncovered(st);
    if (e == universe_) {
      if (chosen.size() == size) {
        std::vector<std::uint32_t> sorted = chosen;
        std::sort(sorted.begin(), sorted.end());
        go = visit(sorted);
      }
      return;
    }
    if (chosen.size() + std::max<std::size_t>(1, lower_bound(st)) > size) return;
    std::vector<std::uint32_t> newly;
    for (const auto s : containing_[e]) {
      if (st.excluded[s]) continue;
      add(st, s);
      chosen.push_back(s);
      enumerate(st, chosen, size, visit, go);
      chosen.pop_back();
      remove(st, s);
      st.excluded[s] = 1;
      newly.push_back(s);
      if (!go) break;
    }
    for (const auto s : newly) st.excluded[s] = 0;
  }

  bool lex_least(State& st, std::vector<std::uint32_t>& chosen, std::size_t next, std::size_t size) const {
    const std::size_t e = first_uncovered(st);
    if (e == universe_) return chosen.size() == size;
    if (chosen.size() + std::max<std::size_t>(1, lower_bound(st)) > size) return false;
    // The least uncovered element must still be coverable by a set >= next.
    if (containing_[e].empty() || containing_[e].back() < next) return false;
    for (std::size_t s = next; s < count_; ++s) {
      bool useful = false;
      for (std::size_t w = 0; w < words_ && !useful; ++w) useful = (bits_[s * words_ + w] & ~st.covered[w]) != 0;
      if (!useful) continue;
      if (s > containing_[e].back()) return false;
      add(st, s);
      chosen.push_back(static_cast<std::uint32_t>(s));
      if (lex_least(st, chosen, s + 1, size)) {
        remove(st, s);
        return true;
      }
      chosen.pop_back();
      remove(st, s);
    }
    return false;
  }

  std::size_t universe_;
  std::size_t words_;
  std::size_t count_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::vector<std::uint32_t>> containing_;
  std::size_t max_set_ = 0;
};

struct PreimageOptions {
  std::size_t cover_cap = 16;           // covers listed in the report
  std::size_t vertex_bound = 64;        // non-isolated vertices accepted
  std::size_t count_limit = 1u << 16;   // stop counting minimum covers here
  bool count_all_preimages = false;     // brute force over Cli subsets
  std::size_t brute_force_max_candidates = 20;
};

struct PreimageReport {
  bool feasible = false;
  std::size_t min_size = 0;
  std::vector<Hypergraph> min_covers;        // canonical cover first
  bool ambiguous = false;
  std::optional<std::size_t> min_cover_count;  // exact when enumeration finished
  std::optional<std::uint64_t> total_preimage_count;
  std::size_t candidate_count = 0;
};

namespace detail {

inline std::uint64_t pair_key(VertexId a, VertexId b) {
  return (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
}

// Cover instance: universe = edges of g (indexed in sorted order), sets =
// candidate hyperedges as lists of their projected edges.
inline SetCover build_cover(const Graph& g, const Hypergraph& candidates) {
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  index.reserve(g.edge_count() * 2);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    index.emplace(pair_key(g.edges()[i].a, g.edges()[i].b), static_cast<std::uint32_t>(i));
  }
  std::vector<std::vector<std::uint32_t>> sets(candidates.size());
  for (std::size_t s = 0; s < candidates.size(); ++s) {
    const auto e = candidates.edge(s);
    for (std::size_t a = 0; a < e.size(); ++a) {
      for (std::size_t b = a + 1; b < e.size(); ++b) {
        const auto it = index.find(pair_key(e[a], e[b]));
        if (it == index.end()) throw std::invalid_argument("candidate hyperedge is not a clique of the graph");
        sets[s].push_back(it->second);
      }
    }
  }
  return SetCover(g.edge_count(), sets);
}

inline Hypergraph select(const Hypergraph& candidates, const std::vector<std::uint32_t>& chosen) {
  std::vector<VertexId> flat;
  for (const auto s : chosen) {
    const auto e = candidates.edge(s);
    flat.insert(flat.end(), e.begin(), e.end());
  }
  return Hypergraph::from_sorted_flat(candidates.n(), candidates.d(), std::move(flat));
}

}  // namespace detail

// Minimum covers of E(g) by the hyperedges of `candidates` (all d-cliques of
// g, or a subfamily such as one 2-connected component of Cli(g)).
inline PreimageReport solve_cover(const Graph& g, const Hypergraph& candidates, const PreimageOptions& opt = {}) {
  PreimageReport rep;
  rep.candidate_count = candidates.size();
  const SetCover sc = detail::build_cover(g, candidates);
  const auto r = sc.minimum_size();
  if (!r) return rep;
  rep.feasible = true;
  rep.min_size = *r;

  if (sc.all_sets_forced()) {
    rep.min_covers.push_back(candidates);
    rep.min_cover_count = 1;
  } else {
    const auto canonical = sc.lex_least_cover(*r);
    if (!canonical) throw std::logic_error("minimum cover vanished during canonical search");
    std::vector<std::vector<std::uint32_t>> listed;
    std::size_t count = 0;
    bool finished = true;
    sc.enumerate_covers(*r, [&](const std::vector<std::uint32_t>& cover) {
      ++count;
      if (cover != *canonical) listed.push_back(cover);
      if (count >= opt.count_limit && count >= 2) {
        finished = false;
        return false;
      }
      return true;
    });
    std::sort(listed.begin(), listed.end());
    const std::size_t keep = opt.cover_cap == 0 ? 0 : opt.cover_cap - 1;
    if (listed.size() > keep) listed.resize(keep);
    rep.min_covers.push_back(detail::select(candidates, *canonical));
    for (const auto& c : listed) rep.min_covers.push_back(detail::select(candidates, c));
    rep.ambiguous = count >= 2;
    if (finished) rep.min_cover_count = count;
  }

  if (opt.count_all_preimages && candidates.size() <= opt.brute_force_max_candidates) {
    std::uint64_t total = 0;
    std::vector<std::uint32_t> chosen;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << candidates.size()); ++mask) {
      chosen.clear();
      for (std::size_t s = 0; s < candidates.size(); ++s) {
        if ((mask >> s) & 1U) chosen.push_back(static_cast<std::uint32_t>(s));
      }
      if (project(detail::select(candidates, chosen)) == g) ++total;
    }
    rep.total_preimage_count = total;
  }
  return rep;
}

inline std::size_t non_isolated_vertices(const Graph& g) {
  std::size_t c = 0;
  for (VertexId v = 0; v < g.n(); ++v) c += g.degree(v) > 0;
  return c;
}

inline PreimageReport min_preimage(const Graph& g, std::uint32_t d, const PreimageOptions& opt = {}) {
  if (non_isolated_vertices(g) > opt.vertex_bound) {
    throw std::invalid_argument("graph has more than " + std::to_string(opt.vertex_bound) +
                                " non-isolated vertices; decompose it first");
  }
  return solve_cover(g, clique_hypergraph(g, d), opt);
}

// Every preimage of g with at most `size_limit` hyperedges, sorted
// lexicographically by hyperedge list.
inline std::vector<Hypergraph> enumerate_preimages(const Graph& g, std::uint32_t d, std::size_t size_limit,
                                                   const PreimageOptions& opt = {}) {
  if (non_isolated_vertices(g) > opt.vertex_bound) {
    throw std::invalid_argument("graph too large for preimage enumeration");
  }
  const Hypergraph cand = clique_hypergraph(g, d);
  std::vector<std::vector<std::uint32_t>> edge_sets;
  const SetCover sc = detail::build_cover(g, cand);
  if (!sc.feasible()) return {};
  // Include/exclude over candidates in order; prune when an uncovered edge
  // has no remaining candidate.
  std::vector<std::uint32_t> last(g.edge_count(), 0);
  {
    std::unordered_map<std::uint64_t, std::uint32_t> idx;
    for (std::size_t i = 0; i < g.edges().size(); ++i) idx.emplace(detail::pair_key(g.edges()[i].a, g.edges()[i].b), i);
    edge_sets.resize(cand.size());
    for (std::size_t s = 0; s < cand.size(); ++s) {
      const auto e = cand.edge(s);
      for (std::size_t a = 0; a < e.size(); ++a) {
        for (std::size_t b = a + 1; b < e.size(); ++b) {
          const auto k = idx.at(detail::pair_key(e[a], e[b]));
          edge_sets[s].push_back(k);
          last[k] = static_cast<std::uint32_t>(s);
        }
      }
    }
  }
  std::vector<std::uint32_t> cover_count(g.edge_count(), 0);
  std::vector<std::vector<std::uint32_t>> found;
  std::vector<std::uint32_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (s == cand.size()) {
      if (std::all_of(cover_count.begin(), cover_count.end(), [](auto c) { return c > 0; })) found.push_back(chosen);
      return;
    }
    // Edges whose last candidate was s - 1 must already be covered.
    if (s > 0) {
      for (const auto k : edge_sets[s - 1]) {
        if (last[k] == s - 1 && cover_count[k] == 0) return;
      }
    }
    if (chosen.size() < size_limit) {
      for (const auto k : edge_sets[s]) ++cover_count[k];
      chosen.push_back(static_cast<std::uint32_t>(s));
      rec(s + 1);
      chosen.pop_back();
      for (const auto k : edge_sets[s]) --cover_count[k];
    }
    rec(s + 1);
  };
  if (g.edge_count() == 0) return {Hypergraph(g.n(), d)};
  rec(0);
  std::vector<Hypergraph> out;
  out.reserve(found.size());
  for (const auto& c : found) out.push_back(detail::select(cand, c));
  std::sort(out.begin(), out.end(), [](const Hypergraph& a, const Hypergraph& b) { return a.flat() < b.flat(); });
  return out;
}

}  // namespace hyperlift
