#include "hyperlift/combinatorics.hpp"
#include "hyperlift/generate.hpp"
#include "hyperlift/io.hpp"
#include "hyperlift/projection.hpp"
#include "hyperlift/rational.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace hyperlift;

namespace {

// Every d-subset of [0, n) checked pair by pair.
Hypergraph brute_cliques(const Graph& g, std::uint32_t d) {
  std::vector<Hyperedge> out;
  std::vector<VertexId> s;
  const std::uint64_t total = binomial(g.n(), d);
  for (std::uint64_t r = 0; r < total; ++r) {
    lex_unrank(r, g.n(), d, s);
    bool ok = true;
    for (std::size_t a = 0; a < d && ok; ++a)
      for (std::size_t b = a + 1; b < d && ok; ++b) ok = g.has_edge(s[a], s[b]);
    if (ok) out.emplace_back(s);
  }
  return Hypergraph(g.n(), d, out);
}

DensityParams params(std::uint32_t d, std::uint32_t n, const char* delta) {
  DensityParams p;
  p.d = d;
  p.n = n;
  p.delta = Rational::parse(delta);
  return p;
}

}  // namespace

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(Rational::parse("2/5"), Rational(2, 5));
  EXPECT_EQ(Rational::parse("0.4"), Rational(2, 5));
  EXPECT_EQ(Rational::parse("-3"), Rational(-3));
  EXPECT_EQ((Rational(1, 3) + Rational(1, 6)).str(), "1/2");
  EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
}

TEST(Combinatorics, RankUnrankRoundTrip) {
  std::vector<std::uint32_t> s;
  for (std::uint64_t r = 0; r < binomial(9, 4); ++r) {
    lex_unrank(r, 9, 4, s);
    EXPECT_EQ(lex_rank(s, 9), r);
    if (r > 0) {
      std::vector<std::uint32_t> prev;
      lex_unrank(r - 1, 9, 4, prev);
      EXPECT_TRUE(std::lexicographical_compare(prev.begin(), prev.end(), s.begin(), s.end()));
    }
  }
  EXPECT_EQ(binomial(60, 4), 487635u);
}

TEST(Projection, TwoHyperedgesSharingAPair) {
  Hypergraph h(5, 3, {{0, 1, 2}, {1, 2, 3}});
  Graph g = project(h);
  EXPECT_EQ(g.edge_count(), 5u);
  EXPECT_TRUE(g.has_edge(1, 2));
  EXPECT_FALSE(g.has_edge(0, 3));
  EXPECT_EQ(similarity_matrix(h).at(1, 2), 2u);
}

TEST(Projection, FakeTriangleAppearsInCliqueHypergraph) {
  Hypergraph h(6, 3, {{0, 1, 3}, {1, 2, 4}, {0, 2, 5}});
  Hypergraph cli = clique_hypergraph(project(h), 3);
  EXPECT_EQ(cli.size(), 4u);
  EXPECT_TRUE(cli.contains({0, 1, 2}));
}

TEST(Projection, CliqueHypergraphMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::uint32_t d : {3u, 4u}) {
      auto p = params(d, 14, "1");
      p.p_override = d == 3 ? 0.08 : 0.02;
      Hypergraph h = generate_random_hypergraph(p, seed);
      Graph g = project(h);
      Hypergraph cli = clique_hypergraph(g, d);
      EXPECT_EQ(cli, brute_cliques(g, d));
      for (std::size_t i = 0; i < h.size(); ++i) EXPECT_GE(cli.find(h.edge(i)), 0);
      EXPECT_EQ(support_graph(similarity_matrix(h)), g);
    }
  }
}

TEST(Projection, CompleteHypergraph) {
  auto p = params(3, 7, "1");
  p.p_override = 1.0;
  Hypergraph h = generate_random_hypergraph(p, 1);
  EXPECT_EQ(h.size(), 35u);
  EXPECT_EQ(project(h).edge_count(), 21u);
  EXPECT_EQ(clique_hypergraph(project(h), 3), h);
}

TEST(Projection, MonotoneUnion) {
  auto p = params(3, 20, "1");
  p.p_override = 0.02;
  Hypergraph a = generate_random_hypergraph(p, 3), b = generate_random_hypergraph(p, 4);
  EXPECT_EQ(project(hypergraph_union(a, b)), graph_union(project(a), project(b)));
}

TEST(Generate, DeterministicAndThreadInvariant) {
  auto p = params(3, 200, "1/2");
  Hypergraph a = generate_random_hypergraph(p, 42);
  EXPECT_EQ(a, generate_random_hypergraph(p, 42));
  EXPECT_NE(a, generate_random_hypergraph(p, 43));
  // C(200, 3) spans two rank blocks, so threads exercise the split.
  EXPECT_GT(binomial(200, 3), rank_block_size(binomial(200, 3)));
  EXPECT_EQ(a, generate_random_hypergraph(p, 42, 4));
}

TEST(Generate, BoundaryProbabilities) {
  auto p = params(3, 10, "0");
  p.p_override = 0.0;
  EXPECT_TRUE(generate_random_hypergraph(p, 5).empty());
  auto bad = params(3, 10, "1");
  bad.c = 1000.0;
  EXPECT_THROW(generate_random_hypergraph(bad, 1), std::invalid_argument);
  EXPECT_THROW(params(3, 2, "1/2").validate(), std::invalid_argument);
}

TEST(Generate, MeanCountMatchesBinomialMean) {
  auto p = params(3, 40, "1/2");
  const double mean = static_cast<double>(binomial(40, 3)) * p.p();
  const double var = mean * (1.0 - p.p());
  const int trials = 400;
  double sum = 0;
  for (int s = 0; s < trials; ++s) sum += static_cast<double>(generate_random_hypergraph(p, s).size());
  EXPECT_NEAR(sum / trials, mean, 3.0 * std::sqrt(var / trials));
}

TEST(Generate, HsbmBalancedAndRatesMatch) {
  HsbmParams hp;
  hp.d = 3;
  hp.n = 40;
  hp.alpha = Rational(8);
  hp.beta = Rational(2);
  const std::uint64_t mono = 2 * binomial(20, 3), total = binomial(40, 3);
  const double mean_mono = static_cast<double>(mono) * hp.q1();
  const double mean_mixed = static_cast<double>(total - mono) * hp.q2();
  double sm = 0, sx = 0;
  const int trials = 300;
  for (int s = 0; s < trials; ++s) {
    auto sample = generate_hsbm(hp, s);
    int plus = 0;
    for (int x : sample.sigma) plus += x > 0;
    ASSERT_EQ(plus, 20);
    for (std::size_t i = 0; i < sample.hypergraph.size(); ++i) {
      auto e = sample.hypergraph.edge(i);
      const bool m = sample.sigma[e[0]] == sample.sigma[e[1]] && sample.sigma[e[1]] == sample.sigma[e[2]];
      (m ? sm : sx) += 1;
    }
  }
  EXPECT_NEAR(sm / trials, mean_mono, 3.0 * std::sqrt(mean_mono / trials));
  EXPECT_NEAR(sx / trials, mean_mixed, 3.0 * std::sqrt(mean_mixed / trials));
}

TEST(Generate, DensifyMeanAndBoundaries) {
  auto p1 = params(4, 60, "0.2");
  const Rational d2 = Rational::parse("0.4");
  const double p2 = params(4, 60, "0.4").p();
  const double p3 = (p2 - p1.p()) / (1 - p1.p());
  const double mean = static_cast<double>(binomial(60, 4)) * p3;
  Graph g1 = project(generate_random_hypergraph(p1, 9));
  double sum = 0;
  const int trials = 200;
  for (int s = 0; s < trials; ++s) {
    auto r = densify_reduction(g1, p1, d2, 1000 + s);
    EXPECT_DOUBLE_EQ(r.p3, p3);
    sum += static_cast<double>(r.added.size());
  }
  EXPECT_NEAR(sum / trials, mean, 3.0 * std::sqrt(mean / trials));

  auto same = densify_reduction(g1, p1, p1.delta, 3);
  EXPECT_TRUE(same.added.empty());
  EXPECT_EQ(same.graph, g1);
  EXPECT_THROW(densify_reduction(g1, p1, Rational::parse("0.1"), 3), std::invalid_argument);
}

TEST(Io, RoundTripsAreByteExact) {
  auto p = params(3, 30, "1/2");
  Hypergraph h = generate_random_hypergraph(p, 7);
  const std::string text = to_hg_string(h);
  std::istringstream in(text);
  EXPECT_EQ(to_hg_string(read_hg(in)), text);

  Graph g = project(h);
  std::istringstream gin(to_el_string(g));
  EXPECT_EQ(read_el(gin), g);

  std::ostringstream sout;
  write_sim(sout, similarity_matrix(h));
  std::istringstream sin(sout.str());
  EXPECT_EQ(read_sim(sin), similarity_matrix(h));

  std::istringstream bad("3 5\n0 1 7\n");
  EXPECT_THROW(read_hg(bad), std::runtime_error);
}
