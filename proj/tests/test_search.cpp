#include "hyperlift/components.hpp"
#include "hyperlift/gadgets.hpp"
#include "hyperlift/search.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace hyperlift;

namespace {

std::set<std::string> classes(const SearchReport& r) {
  std::set<std::string> out;
  for (const auto& w : r.ambiguous_found) out.insert(w.projection_form);
  return out;
}

bool contains_superset(const std::vector<Candidate>& cands, std::initializer_list<VertexId> must) {
  for (const auto& c : cands) {
    bool all = true;
    for (VertexId x : must) all = all && c.h.contains(x);
    if (all) return true;
  }
  return false;
}

}  // namespace

TEST(Search, CandidatesOfSingleHyperedge) {
  const Pattern k = Pattern::compact(3, {Hyperedge{0, 1, 2}});
  const auto cands = candidate_neighbors(k);
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_EQ(cands[0].shared.size(), 2u);
  EXPECT_EQ(cands[0].h[2], 3u);
}

TEST(Search, CandidatesCloseTheDiamond) {
  const Pattern k = Pattern::compact(3, {Hyperedge{0, 1, 2}, Hyperedge{0, 1, 3}});
  const auto cands = candidate_neighbors(k);
  EXPECT_TRUE(contains_superset(cands, {2, 3}));
  for (const auto& c : cands) {
    const Graph proj = project(k.hypergraph());
    bool edge = false;
    for (std::size_t a = 0; a < c.shared.size(); ++a)
      for (std::size_t b = a + 1; b < c.shared.size(); ++b) edge = edge || proj.has_edge(c.shared[a], c.shared[b]);
    EXPECT_TRUE(edge);
  }
  // Without the edge requirement {2, 3, fresh} is also a candidate.
  bool loose_pair = false;
  for (const auto& c : candidate_neighbors(k, false)) loose_pair = loose_pair || c.shared == std::vector<VertexId>{2, 3};
  EXPECT_TRUE(loose_pair);
}

TEST(Search, GrowExamples) {
  const Pattern k = Pattern::compact(3, {Hyperedge{0, 1, 2}});
  const auto cands = candidate_neighbors(k);
  ASSERT_EQ(cands.size(), 1u);
  const auto kids = grow(k, cands[0]);
  std::set<std::string> forms;
  for (const auto& p : kids) forms.insert(canonical_form(p));
  EXPECT_TRUE(forms.count(canonical_form(Pattern::compact(3, {Hyperedge{0, 1, 2}, Hyperedge{0, 1, 3}}))));
  EXPECT_TRUE(forms.count(
      canonical_form(Pattern::compact(3, {Hyperedge{0, 1, 2}, Hyperedge{0, 3, 4}, Hyperedge{1, 3, 5}}))));
}

TEST(Search, GrownPatternsAreTwoConnectedAndExponentsDrop) {
  for (std::uint32_t d : {3u, 4u}) {
    const Rational delta(1, 4);
    for (const Pattern& root : search_roots(d, false)) {
      const Rational parent = expected_count_exponent(root, d, delta);
      for (const auto& c : candidate_neighbors(root)) {
        for (const Pattern& child : grow(root, c, delta)) {
          const Hypergraph cli = clique_hypergraph(project(child.hypergraph()), d);
          EXPECT_EQ(decompose(cli).size(), 1u);
          EXPECT_GE(cli.find(c.h.vertices()) >= 0 || c.h[d - 1] >= root.v(), true);
          const Rational drop = parent - expected_count_exponent(child, d, delta);
          EXPECT_GE(drop, Rational(static_cast<std::int64_t>(d) - 1, d + 1) - delta);
        }
      }
    }
  }
}

TEST(Search, FindsOnlyTheAmbiguousGadgetAtCriticalDelta) {
  SearchConfig cfg;
  cfg.d = 3;
  cfg.delta = Rational(2, 5);
  const auto r = dfs_search(cfg);
  EXPECT_TRUE(r.exhausted);
  ASSERT_EQ(r.ambiguous_found.size(), 1u);
  EXPECT_EQ(r.ambiguous_found[0].projection_form, projection_form(build_ambiguous_gadget(3).projection));
  EXPECT_EQ(r.ambiguous_found[0].exponent, Rational(0));
  EXPECT_EQ(r.exponent_decrease_violations, 0u);
  for (const auto& w : r.ambiguous_found) {
    EXPECT_EQ(project(w.preimage1), w.projection);
    EXPECT_EQ(project(w.preimage2), w.projection);
    EXPECT_EQ(w.preimage1.size(), w.preimage2.size());
    EXPECT_NE(w.preimage1, w.preimage2);
    const auto again = min_preimage(w.projection, 3);
    EXPECT_TRUE(again.ambiguous);
    EXPECT_EQ(again.min_size, w.preimage1.size());
  }
}

TEST(Search, NothingBelowThreshold) {
  SearchConfig cfg;
  cfg.d = 3;
  cfg.delta = Rational(1, 5);
  const auto r = dfs_search(cfg);
  EXPECT_TRUE(r.exhausted);
  EXPECT_TRUE(r.ambiguous_found.empty());
}

TEST(Search, DedupAndNeighborRulesAgree) {
  SearchConfig base;
  base.d = 3;
  base.delta = Rational(2, 5);
  base.max_depth = 4;
  const auto with = classes(dfs_search(base));
  SearchConfig nodedup = base;
  nodedup.dedup = false;
  const auto r = dfs_search(nodedup);
  EXPECT_EQ(classes(r), with);
  EXPECT_EQ(r.nodes_deduped, 0u);

  SearchConfig loose;
  loose.d = 3;
  loose.delta = Rational(2, 5);
  loose.strict_neighbors = false;
  EXPECT_EQ(classes(dfs_search(loose)), classes(dfs_search(SearchConfig{})));
  SearchConfig single;
  single.single_hyperedge_root = true;
  EXPECT_EQ(classes(dfs_search(single)), classes(dfs_search(SearchConfig{})));
}

TEST(Search, BudgetIsReportedHonestly) {
  SearchConfig cfg;
  cfg.d = 3;
  cfg.delta = Rational(2, 5);
  cfg.node_budget = 10;
  const auto r = dfs_search(cfg);
  EXPECT_FALSE(r.exhausted);
  EXPECT_TRUE(r.budget_tripped);
  EXPECT_LE(r.nodes_visited, 10u);
  SearchConfig at;
  at.delta = Rational(1, 2);
  EXPECT_THROW(dfs_search(at), std::invalid_argument);
  at.max_depth = 3;
  EXPECT_FALSE(dfs_search(at).exhausted && dfs_search(at).nodes_depth_truncated > 0);
}
