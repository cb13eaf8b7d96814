#include "hyperlift/components.hpp"
#include "hyperlift/gadgets.hpp"
#include "hyperlift/generate.hpp"
#include "hyperlift/preimage.hpp"
#include "hyperlift/reconstruct.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace hyperlift;

namespace {

Hypergraph subset(const Hypergraph& cand, std::uint64_t mask) {
  std::vector<Hyperedge> e;
  for (std::size_t i = 0; i < cand.size(); ++i)
    if ((mask >> i) & 1U) e.push_back(cand.hyperedge(i));
  return Hypergraph(cand.n(), cand.d(), e);
}

// All preimages of g, found by testing every subset of Cli(g).
std::vector<Hypergraph> brute_preimages(const Graph& g, std::uint32_t d) {
  const Hypergraph cand = clique_hypergraph(g, d);
  std::vector<Hypergraph> out;
  if (g.edge_count() == 0) return {Hypergraph(g.n(), d)};
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cand.size()); ++mask) {
    Hypergraph h = subset(cand, mask);
    if (project(h) == g) out.push_back(h);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.flat() < b.flat(); });
  return out;
}

std::vector<Hypergraph> minimum_only(const std::vector<Hypergraph>& all) {
  std::size_t r = SIZE_MAX;
  for (const auto& h : all) r = std::min(r, h.size());
  std::vector<Hypergraph> out;
  for (const auto& h : all)
    if (h.size() == r) out.push_back(h);
  return out;
}

// Connectivity of the 2-intersection relation by repeated sweeps.
std::vector<int> brute_component_labels(const Hypergraph& h) {
  std::vector<int> label(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) label[i] = static_cast<int>(i);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = 0; j < h.size(); ++j)
        if (intersection_size(h.edge(i), h.edge(j)) >= 2 && label[j] < label[i]) {
          label[i] = label[j];
          changed = true;
        }
  }
  return label;
}

// Random small graphs: projections of sparse hypergraphs plus arbitrary
// dense graphs, which exercise infeasible and highly ambiguous inputs.
std::vector<Graph> small_graphs(int count, std::uint32_t n, std::uint32_t d) {
  std::vector<Graph> out;
  for (int s = 0; s < count; ++s) {
    DensityParams p;
    p.d = d;
    p.n = n;
    p.p_override = 0.06 + 0.01 * (s % 8);
    out.push_back(project(generate_random_hypergraph(p, 100 + s)));
    Rng rng(derive_seed(7, {static_cast<std::uint64_t>(s)}));
    std::vector<Edge> e;
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = a + 1; b < n; ++b)
        if (rng.bernoulli(0.45)) e.emplace_back(a, b);
    out.emplace_back(n, std::move(e));
  }
  return out;
}

}  // namespace

TEST(Components, TwoNeighbors) {
  Hypergraph h(8, 3, {{1, 2, 3}, {2, 3, 4}, {5, 6, 7}});
  EXPECT_EQ(two_neighbors(Hyperedge{1, 2, 3}, h), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(two_neighbors(Hyperedge{1, 2, 3}, Hypergraph(8, 3, {{1, 4, 5}})).empty());
  Hypergraph h4(10, 4, {{1, 2, 5, 6}, {3, 7, 8, 9}});
  EXPECT_EQ(two_neighbors(Hyperedge{1, 2, 3, 4}, h4), (std::vector<std::size_t>{0}));
}

TEST(Components, DecomposeExamples) {
  Hypergraph h(8, 3, {{1, 2, 3}, {2, 3, 4}, {5, 6, 7}});
  auto parts = decompose(h);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts.components[0].edges, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(parts.components[0].vertices, (std::vector<VertexId>{1, 2, 3, 4}));
  EXPECT_EQ(parts.components[1].edges, (std::vector<std::size_t>{2}));
  EXPECT_EQ(decompose(Hypergraph(3, 3, {{0, 1, 2}})).size(), 1u);

  const auto gadget = build_ambiguous_gadget(3);
  const Hypergraph cli = clique_hypergraph(gadget.projection, 3);
  EXPECT_EQ(cli.size(), 6u);
  EXPECT_EQ(decompose(cli).size(), 1u);
  for (int x : brute_component_labels(cli)) EXPECT_EQ(x, 0);
}

TEST(Components, MatchesBruteForceAndSeparatesProjections) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    DensityParams p;
    p.d = 3;
    p.n = 30;
    p.delta = Rational(1, 2);
    const Hypergraph cli = clique_hypergraph(project(generate_random_hypergraph(p, s)), 3);
    const auto parts = decompose(cli);
    const auto labels = brute_component_labels(cli);
    std::vector<int> seen(cli.size(), 0);
    std::set<std::uint64_t> pairs;
    for (const auto& c : parts.components) {
      for (auto i : c.edges) {
        ++seen[i];
        EXPECT_EQ(labels[i], labels[c.edges.front()]);
      }
      const Graph cg = project(c.as_hypergraph(cli));
      for (const auto& e : cg.edges())
        EXPECT_TRUE(pairs.insert((std::uint64_t{e.a} << 32) | e.b).second);
    }
    for (int x : seen) EXPECT_EQ(x, 1);
    std::set<int> distinct(labels.begin(), labels.end());
    EXPECT_EQ(distinct.size(), parts.size());
  }
}

TEST(Preimage, SingleClique) {
  Graph g = project(Hypergraph(3, 3, {{0, 1, 2}}));
  auto rep = min_preimage(g, 3);
  EXPECT_TRUE(rep.feasible);
  EXPECT_EQ(rep.min_size, 1u);
  EXPECT_FALSE(rep.ambiguous);
  EXPECT_EQ(enumerate_preimages(g, 3, 1).size(), 1u);
  EXPECT_EQ(enumerate_preimages(g, 3, 10).size(), 1u);
}

TEST(Preimage, AmbiguousGadgetHasTwoMinima) {
  const auto g = build_ambiguous_gadget(3);
  EXPECT_EQ(g.projection.n(), 8u);
  EXPECT_EQ(g.preimage1.size(), 5u);
  auto rep = min_preimage(g.projection, 3);
  EXPECT_EQ(rep.min_size, 5u);
  EXPECT_TRUE(rep.ambiguous);
  ASSERT_EQ(rep.min_covers.size(), 2u);
  EXPECT_EQ(rep.min_cover_count, 2u);
  std::set<std::vector<VertexId>> got{rep.min_covers[0].flat(), rep.min_covers[1].flat()};
  EXPECT_TRUE(got.count(g.preimage1.flat()));
  EXPECT_TRUE(got.count(g.preimage2.flat()));
  EXPECT_EQ(enumerate_preimages(g.projection, 3, 5).size(), 2u);
  for (std::uint32_t d = 3; d <= 5; ++d) {
    auto r = min_preimage(build_ambiguous_gadget(d).projection, d);
    EXPECT_EQ(r.min_size, 2 * d - 1);
    EXPECT_TRUE(r.ambiguous);
  }
}

TEST(Preimage, FakeHyperedgeGadgetUnique) {
  const Hypergraph h = build_fake_hyperedge_gadget();
  auto rep = min_preimage(project(h), 3);
  EXPECT_EQ(rep.min_size, 3u);
  EXPECT_FALSE(rep.ambiguous);
  EXPECT_EQ(rep.min_covers.front(), h);
  auto brute = minimum_only(brute_preimages(project(h), 3));
  ASSERT_EQ(brute.size(), 1u);
  EXPECT_EQ(brute[0], h);
}

TEST(Preimage, MatchesBruteForceOnRandomGraphs) {
  int checked = 0;
  for (const Graph& g : small_graphs(40, 9, 3)) {
    const Hypergraph cand = clique_hypergraph(g, 3);
    if (cand.size() > 18) continue;
    ++checked;
    const auto all = brute_preimages(g, 3);
    PreimageOptions opt;
    opt.count_all_preimages = true;
    const auto rep = min_preimage(g, 3, opt);
    ASSERT_EQ(rep.feasible, !all.empty());
    if (all.empty()) {
      EXPECT_TRUE(enumerate_preimages(g, 3, cand.size()).empty());
      continue;
    }
    const auto mins = minimum_only(all);
    EXPECT_EQ(rep.min_size, mins.front().size());
    EXPECT_EQ(rep.ambiguous, mins.size() >= 2);
    EXPECT_EQ(rep.min_cover_count, mins.size());
    EXPECT_EQ(rep.min_covers.front(), mins.front());
    EXPECT_EQ(rep.total_preimage_count, all.size());
    for (const auto& c : rep.min_covers) EXPECT_EQ(project(c), g);
    EXPECT_EQ(enumerate_preimages(g, 3, cand.size()), all);
    std::vector<Hypergraph> small;
    for (const auto& h : all)
      if (h.size() <= rep.min_size + 1) small.push_back(h);
    EXPECT_EQ(enumerate_preimages(g, 3, rep.min_size + 1), small);
  }
  EXPECT_GT(checked, 40);
}

TEST(Preimage, InfeasibleGraph) {
  Graph path(4, {Edge(0, 1), Edge(1, 2)});
  auto rep = min_preimage(path, 3);
  EXPECT_FALSE(rep.feasible);
  EXPECT_TRUE(enumerate_preimages(path, 3, 5).empty());
  auto r = map_reconstruct(path, 3);
  EXPECT_FALSE(r.is_preimage);
  EXPECT_EQ(r.uncovered_edges, 2u);
}

TEST(Preimage, PreimagesFactorOverComponents) {
  for (const Graph& g : small_graphs(25, 9, 3)) {
    const Hypergraph cli = clique_hypergraph(g, 3);
    if (cli.size() > 16 || cli.empty()) continue;
    const auto all = brute_preimages(g, 3);
    if (all.empty()) continue;
    // Per component: subsets of its cliques covering exactly its projection.
    std::size_t product = 1;
    for (const auto& c : decompose(cli).components) {
      const Hypergraph ch = c.as_hypergraph(cli);
      const Graph cg = project(ch);
      std::size_t count = 0;
      for (std::uint64_t m = 1; m < (std::uint64_t{1} << ch.size()); ++m) count += project(subset(ch, m)) == cg;
      product *= count;
    }
    EXPECT_EQ(product, all.size());
  }
}

TEST(Reconstruct, DisjointHyperedges) {
  Hypergraph h(9, 3, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
  for (auto a : {Algorithm::clique_cover, Algorithm::map, Algorithm::greedy}) {
    auto r = reconstruct(a, project(h), 3);
    EXPECT_TRUE(verify_exact(r, h)) << to_string(a);
    EXPECT_TRUE(r.is_preimage);
  }
  EXPECT_TRUE(clique_cover(Graph(5), 3).output.empty());
}

TEST(Reconstruct, FakeHyperedgeGadget) {
  const Hypergraph h = build_fake_hyperedge_gadget();
  const Graph g = project(h);
  auto cc = clique_cover(g, 3);
  EXPECT_EQ(cc.output.size(), 4u);
  EXPECT_TRUE(cc.output.contains({3, 0, 1}));
  EXPECT_FALSE(verify_exact(cc, h));
  EXPECT_TRUE(verify_exact(map_reconstruct(g, 3), h));
  auto gr = greedy_reconstruct(g, 3);
  EXPECT_TRUE(verify_exact(gr, h));
}

TEST(Reconstruct, OverlappingPairAndAmbiguousGadget) {
  Hypergraph h(5, 3, {{1, 2, 3}, {2, 3, 4}});
  EXPECT_TRUE(verify_exact(map_reconstruct(project(h), 3), h));

  const auto g = build_ambiguous_gadget(3);
  auto r = map_reconstruct(g.projection, 3);
  EXPECT_EQ(r.output.size(), 5u);
  EXPECT_EQ(r.components.ambiguous_components, 1u);
  const Hypergraph least = g.preimage1.flat() < g.preimage2.flat() ? g.preimage1 : g.preimage2;
  EXPECT_EQ(r.output, least);
  auto gr = greedy_reconstruct(g.projection, 3);
  EXPECT_EQ(gr.output.size(), 5u);
  EXPECT_TRUE(gr.is_preimage);
  // Scan order reaches {0,1,2} = h1 first, and it is redundant then.
  EXPECT_EQ(gr.output, g.preimage2);
}

TEST(Reconstruct, MapFailureGadget) {
  for (std::uint32_t d = 3; d <= 5; ++d) {
    const Hypergraph hb = build_map_failure_gadget(d);
    EXPECT_EQ(hb.size(), d * (d - 1) / 2 + 1);
    auto rep = min_preimage(project(hb), d);
    EXPECT_EQ(rep.min_size, d * (d - 1) / 2);
    EXPECT_FALSE(verify_exact(map_reconstruct(project(hb), d), hb));
  }
}

TEST(Reconstruct, OrderingAndMinimalityOnRandomGraphs) {
  MapOptions wide;
  wide.abort_threshold = 200;
  for (const Graph& g : small_graphs(40, 9, 3)) {
    auto cc = clique_cover(g, 3), mp = map_reconstruct(g, 3, wide), gr = greedy_reconstruct(g, 3);
    EXPECT_EQ(cc.is_preimage, mp.is_preimage);
    EXPECT_EQ(cc.is_preimage, gr.is_preimage);
    if (!cc.is_preimage) continue;
    EXPECT_LE(mp.output.size(), gr.output.size());
    EXPECT_LE(gr.output.size(), cc.output.size());
    if (cc.output.size() <= 18) {
      EXPECT_EQ(mp.output.size(), minimum_only(brute_preimages(g, 3)).front().size());
    }
  }
}

TEST(Reconstruct, CliqueCoverContainsTruthAndGreedyIsPreimage) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    DensityParams p;
    p.d = 4;
    p.n = 40;
    p.delta = Rational(3, 5);
    const Hypergraph h = generate_random_hypergraph(p, s);
    const Graph g = project(h);
    const auto cc = clique_cover(g, 4);
    for (std::size_t i = 0; i < h.size(); ++i) EXPECT_GE(cc.output.find(h.edge(i)), 0);
    EXPECT_TRUE(greedy_reconstruct(g, 4).is_preimage);
  }
}

TEST(Reconstruct, AbortsOnHugeComponent) {
  DensityParams p;
  p.d = 3;
  p.n = 12;
  p.p_override = 1.0;
  const Graph k12 = project(generate_random_hypergraph(p, 0));
  EXPECT_THROW(map_reconstruct(k12, 3), ComponentTooLarge);
}

TEST(Oracle, FastCountersAgreeWithSubsetEnumeration) {
  std::vector<Graph> graphs;
  for (const Graph& g : small_graphs(40, 9, 3)) {
    if (clique_hypergraph(g, 3).size() <= 18) graphs.push_back(g);
  }
  for (std::uint32_t n = 3; n <= 6; ++n) {
    std::vector<Edge> e;
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = a + 1; b < n; ++b) e.emplace_back(a, b);
    graphs.emplace_back(n, std::move(e));
  }
  int checked = 0;
  for (const Graph& g : graphs) {
    if (g.edge_count() == 0) continue;
    ++checked;
    const auto all = brute_preimages(g, 3);
    EXPECT_EQ(oracle::count_triangle_covers(g), BigInt(all.size()));
    const auto listed = oracle::all_preimages(g, 3, 1u << 22);
    ASSERT_TRUE(listed.has_value());
    ASSERT_EQ(listed->size(), all.size());
    for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ((*listed)[i], all[i].flat());
    const auto min = oracle::min_preimage_size(g, 3);
    EXPECT_EQ(min.has_value(), !all.empty());
    if (min) {
      EXPECT_EQ(*min, minimum_only(all).front().size());
    }
  }
  EXPECT_GT(checked, 40);
  EXPECT_FALSE(oracle::all_preimages(graphs.back(), 3, 10).has_value());
}

TEST(Oracle, PreimageCountFactorsOverComponentsOnDenseGraphs) {
  for (const Graph& g : small_graphs(30, 8, 3)) {
    const Hypergraph cli = clique_hypergraph(g, 3);
    if (cli.empty()) continue;
    BigInt product = 1;
    for (const auto& c : decompose(cli).components) product *= oracle::count_triangle_covers(project(c.as_hypergraph(cli)));
    // Edges in no triangle leave the whole graph without a preimage.
    const bool coverable = project(cli).edge_count() == g.edge_count();
    EXPECT_EQ(oracle::count_triangle_covers(g), coverable ? product : BigInt(0));
  }
}
