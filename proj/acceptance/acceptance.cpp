// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run all criteria
//   acceptance 3 5 9      run a subset
//
// Exit status is 0 only when every selected criterion passes.

#include "hyperlift/census.hpp"
#include "hyperlift/components.hpp"
#include "hyperlift/gadgets.hpp"
#include "hyperlift/harness.hpp"
#include "hyperlift/io.hpp"
#include "hyperlift/search.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace hyperlift;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string fixed(double x, int digits = 3) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

Rational binom_rational(std::uint32_t n, std::uint32_t k) {
  return Rational(static_cast<std::int64_t>(binomial(n, k)));
}

// ---------------------------------------------------------------------------

Outcome gadget_densities() {
  std::ostringstream os;
  bool ok = true;
  for (std::uint32_t d = 3; d <= 6; ++d) {
    const Rational got = max_density(Pattern::compact(build_ambiguous_gadget(d).preimage1));
    const auto di = static_cast<std::int64_t>(d);
    const Rational want(2 * di - 1, 2 * di * di - 5 * di + 5);
    ok = ok && got == want;
    os << "G_a" << d << "=" << got.str() << (got == want ? "" : "(want " + want.str() + ")") << " ";
  }
  for (std::uint32_t d = 3; d <= 8; ++d) {
    const Rational got = max_density(Pattern::compact(build_map_failure_gadget(d)));
    const Rational pairs = binom_rational(d, 2);
    const Rational want = (pairs + Rational(1)) / (Rational(d) + pairs * Rational(d - 2));
    ok = ok && got == want;
    os << "H_b" << d << "=" << got.str() << (got == want ? "" : "(want " + want.str() + ")") << " ";
  }
  return {ok, os.str()};
}

bool covers_all_pairs(std::uint32_t d, const std::vector<std::vector<VertexId>>& sets) {
  for (VertexId a = 0; a < d; ++a) {
    for (VertexId b = a + 1; b < d; ++b) {
      const bool hit = std::any_of(sets.begin(), sets.end(), [&](const auto& s) {
        return std::count(s.begin(), s.end(), a) && std::count(s.begin(), s.end(), b);
      });
      if (!hit) return false;
    }
  }
  return true;
}

Outcome g_optimizations() {
  std::ostringstream os;
  bool ok = true;
  for (std::uint32_t d = 3; d <= 6; ++d) {
    const Rational delta(static_cast<std::int64_t>(d) - 3, d);
    const SubsetCover g0 = g_0(d, delta);
    const auto star = star_witness(d);
    Rational star_cost(0);
    for (const auto& s : star) star_cost += Rational(static_cast<std::int64_t>(s.size()) - 1) - delta;
    const bool good = g0.cost == Rational(d) && g0.sets == star && star_cost == Rational(d) &&
                      covers_all_pairs(d, star);
    ok = ok && good;
    os << "g0(d=" << d << ")=" << g0.cost.str() << (good ? "" : "!") << " ";
  }
  std::size_t checked = 0, violations = 0;
  Rational tightest(1000);
  for (std::uint32_t d = 3; d <= 6; ++d) {
    const Rational critical(static_cast<std::int64_t>(d) - 1, d + 1);
    for (std::int64_t i = 0; i < 20; ++i) {
      const Rational delta = critical * Rational(i, 19);
      std::optional<Rational> margin;
      for (std::uint32_t k = 2; k < d; ++k) {
        const Rational m = g_k(d, k, delta) + Rational(k) - Rational(d);
        if (!margin || m < *margin) margin = m;
      }
      const Rational slack = *margin - (critical - delta);
      ++checked;
      if (slack < Rational(0)) ++violations;
      if (margin != min_cover_margin(d, delta)) ++violations;
      tightest = std::min(tightest, slack);
    }
  }
  ok = ok && violations == 0;
  os << "margin checks=" << checked << " violations=" << violations << " min slack=" << tightest.str();
  return {ok, os.str()};
}

Outcome search_d3() {
  SearchConfig critical;
  critical.d = 3;
  critical.delta = Rational(2, 5);
  const SearchReport a = dfs_search(critical);
  SearchConfig below = critical;
  below.delta = Rational(1, 5);
  const SearchReport b = dfs_search(below);
  const std::string gadget = projection_form(build_ambiguous_gadget(3).projection);
  const bool one_class = a.ambiguous_found.size() == 1 && a.ambiguous_found[0].projection_form == gadget;
  const bool ok = a.exhausted && one_class && b.exhausted && b.ambiguous_found.empty();
  std::ostringstream os;
  os << "delta=2/5: classes=" << a.ambiguous_found.size() << (one_class ? " (G_a3)" : "")
     << " nodes=" << a.nodes_visited << " exhausted=" << a.exhausted << "; delta=1/5: classes="
     << b.ambiguous_found.size() << " nodes=" << b.nodes_visited << " exhausted=" << b.exhausted;
  return {ok, os.str()};
}

Outcome search_d4() {
  SearchConfig cfg;
  cfg.d = 4;
  cfg.delta = Rational(1, 2);
  cfg.node_budget = 1'000'000;
  const SearchReport r = dfs_search(cfg);
  std::ostringstream os;
  os << "classes=" << r.ambiguous_found.size() << " nodes=" << r.nodes_visited << " max_depth=" << r.max_depth
     << " exhausted=" << r.exhausted << (r.budget_tripped ? " (budget tripped)" : "");
  return {r.ambiguous_found.empty(), os.str()};
}

using EdgeList = std::vector<std::vector<VertexId>>;

EdgeList edge_list(const Hypergraph& h) {
  EdgeList out;
  for (std::size_t i = 0; i < h.size(); ++i) out.emplace_back(h.edge(i).begin(), h.edge(i).end());
  std::sort(out.begin(), out.end());
  return out;
}

EdgeList edge_list(const std::vector<VertexId>& flat, std::uint32_t d) {
  EdgeList out;
  for (std::size_t i = 0; i < flat.size(); i += d) out.emplace_back(flat.begin() + i, flat.begin() + i + d);
  std::sort(out.begin(), out.end());
  return out;
}

Outcome oracle_equivalence() {
  constexpr std::uint32_t d = 3;
  constexpr std::size_t explicit_cap = 20'000;
  Rng rng(42);
  std::size_t explicit_checks = 0, count_checks = 0, mismatches = 0, map_checks = 0;
  std::ostringstream bad;
  for (int i = 0; i < 500; ++i) {
    DensityParams p;
    p.d = d;
    p.n = 3 + static_cast<std::uint32_t>(rng.below(7));
    p.p_override = 0.05 * static_cast<double>(1 + rng.below(6));
    const Graph g = project(generate_random_hypergraph(p, rng.next()));

    const ComponentPartition parts = decompose(clique_hypergraph(g, d));
    const Hypergraph cli = clique_hypergraph(g, d);
    std::vector<Graph> pieces;
    for (const Component& c : parts.components) pieces.push_back(project(c.as_hypergraph(cli)));

    const BigInt total = oracle::count_triangle_covers(g);
    bool same = true;
    if (pieces.size() != 1 || !(pieces[0] == g)) {
      BigInt product = 1;
      for (const Graph& piece : pieces) product *= oracle::count_triangle_covers(piece);
      same = total == product;
      ++count_checks;
    }

    if (same && total <= BigInt(explicit_cap)) {
      const auto brute = oracle::all_preimages(g, d, explicit_cap);
      std::set<EdgeList> expected;
      for (const auto& flat : *brute) expected.insert(edge_list(flat, d));
      std::vector<EdgeList> combos{EdgeList{}};
      for (const Graph& piece : pieces) {
        std::vector<EdgeList> next;
        for (const Hypergraph& part : enumerate_preimages(piece, d, cli.size() + 1)) {
          const EdgeList pe = edge_list(part);
          for (const EdgeList& prefix : combos) {
            EdgeList joined = prefix;
            joined.insert(joined.end(), pe.begin(), pe.end());
            std::sort(joined.begin(), joined.end());
            next.push_back(std::move(joined));
          }
        }
        combos = std::move(next);
      }
      const std::set<EdgeList> built(combos.begin(), combos.end());
      same = built.size() == combos.size() && built == expected;
      ++explicit_checks;
    }

    MapOptions opt;
    opt.abort_threshold = 1000;
    const ReconstructionResult r = map_reconstruct(g, d, opt);
    const auto smallest = oracle::min_preimage_size(g, d);
    const bool map_ok = smallest && r.is_preimage && project(r.output) == g && r.output.size() == *smallest;
    ++map_checks;
    if (!same || !map_ok) {
      ++mismatches;
      if (mismatches <= 3) bad << " #" << i << (same ? "" : "(product)") << (map_ok ? "" : "(map)");
    }
  }
  std::ostringstream os;
  os << "instances=500 explicit set checks=" << explicit_checks << " multi-component count checks=" << count_checks
     << " MAP minimum checks=" << map_checks << " mismatches=" << mismatches << bad.str();
  return {mismatches == 0, os.str()};
}

SweepSpec sweep(std::uint32_t d, std::vector<std::uint32_t> n, std::vector<Rational> delta, std::uint64_t seeds,
                std::vector<Algorithm> algorithms) {
  SweepSpec s;
  s.d = d;
  s.n = std::move(n);
  s.delta = std::move(delta);
  s.seeds = seeds;
  s.base_seed = 20240601;
  s.algorithms = std::move(algorithms);
  return s;
}

Outcome threshold_trends() {
  using A = Algorithm;
  std::ostringstream os;

  const SweepSpec sa = sweep(3, {200}, {Rational(1, 5)}, 100, {A::map, A::greedy, A::clique_cover});
  const auto ra = summarize(run_sweep(sa));
  const double map_a = find_summary(ra, 200, Rational(1, 5), A::map)->rate();
  const double greedy_a = find_summary(ra, 200, Rational(1, 5), A::greedy)->rate();
  const double cc_a = find_summary(ra, 200, Rational(1, 5), A::clique_cover)->rate();
  const bool pass_a = map_a >= 0.95;
  os << "(a) map=" << fixed(map_a, 2) << " greedy=" << fixed(greedy_a, 2) << " cc=" << fixed(cc_a, 2)
     << (map_a >= greedy_a && greedy_a >= cc_a ? " ordered" : " unordered") << (pass_a ? "" : " FAIL");

  const std::vector<std::uint32_t> nb{100, 200, 400};
  const SweepSpec sb = sweep(3, nb, {Rational(9, 20)}, 200, {A::map});
  const auto rb = summarize(run_sweep(sb));
  bool pass_b = true;
  double prev = -1;
  os << "; (b) map failure";
  for (const std::uint32_t n : nb) {
    const RateSummary s = *find_summary(rb, n, Rational(9, 20), A::map);
    pass_b = pass_b && s.failure_rate() >= prev;
    prev = s.failure_rate();
    os << " n=" << n << ":" << fixed(s.failure_rate(), 2) << " (aborts " << s.aborted << ")";
  }
  pass_b = pass_b && prev > 0;
  if (!pass_b) os << " FAIL";

  const SweepSpec sc = sweep(4, {60, 120}, {Rational(7, 20), Rational(1, 5)}, 200, {A::clique_cover});
  const auto rc = summarize(run_sweep(sc));
  const double f60 = find_summary(rc, 60, Rational(7, 20), A::clique_cover)->failure_rate();
  const double f120 = find_summary(rc, 120, Rational(7, 20), A::clique_cover)->failure_rate();
  const double low60 = find_summary(rc, 60, Rational(1, 5), A::clique_cover)->rate();
  const double low120 = find_summary(rc, 120, Rational(1, 5), A::clique_cover)->rate();
  const bool pass_c = f120 > f60 && low60 >= 0.9 && low120 >= 0.9;
  os << "; (c) cc failure n=60:" << fixed(f60, 3) << " n=120:" << fixed(f120, 3) << ", delta=1/5 cc rate "
     << fixed(low60, 3) << "/" << fixed(low120, 3) << (pass_c ? "" : " FAIL");
  return {pass_a && pass_b && pass_c, os.str()};
}

Outcome planted_gadget() {
  DensityParams background;
  background.d = 3;
  background.n = 100;
  background.p_override = 0.0;
  std::size_t used = 0, exact = 0, collisions = 0, isolated = 0;
  for (std::uint64_t i = 0; i < 400; ++i) {
    const PlantedTrial t = planted_gadget_trial(3, background, derive_seed(7, {i}));
    if (t.collision) {
      ++collisions;
      continue;
    }
    ++used;
    exact += t.exact;
    isolated += t.isolated;
  }
  const double rate = used ? static_cast<double>(exact) / static_cast<double>(used) : 0.0;
  std::ostringstream os;
  os << "trials=" << used << " exact=" << exact << " rate=" << fixed(rate) << " isolated=" << isolated
     << " collisions=" << collisions;
  return {used == 400 && rate >= 0.40 && rate <= 0.60, os.str()};
}

Outcome subgraph_counts() {
  struct Case {
    std::string name;
    Pattern pattern;
    std::uint32_t n;
    BigRational p;
  };
  const std::vector<Case> cases = {
      {"single", Pattern(3, {{0, 1, 2}}), 12, BigRational(1, 10)},
      {"share2", Pattern(3, {{0, 1, 2}, {0, 1, 3}}), 10, BigRational(1, 5)},
      {"share1", Pattern(3, {{0, 1, 2}, {2, 3, 4}}), 10, BigRational(3, 20)},
      {"fake", Pattern::compact(build_fake_hyperedge_gadget()), 10, BigRational(3, 20)},
      {"G_a3", Pattern::compact(build_ambiguous_gadget(3).preimage1), 12, BigRational(23, 500)},
  };
  constexpr std::uint64_t trials = 20'000;
  bool ok = true;
  std::ostringstream os;
  for (const Case& c : cases) {
    const double exact = exact_expected_count(c.pattern, c.n, c.p).convert_to<double>();
    const McEstimate mc = mc_subgraph_count(c.pattern, c.n, c.p.convert_to<double>(), trials, 8);
    const double z = mc.standard_error > 0 ? std::abs(mc.mean - exact) / mc.standard_error
                                           : (mc.mean == exact ? 0.0 : INFINITY);
    ok = ok && z <= 3.0;
    os << c.name << ": exact=" << fixed(exact, 4) << " mc=" << fixed(mc.mean, 4) << " z=" << fixed(z, 2) << "; ";
  }
  os << "trials=" << trials;
  return {ok, os.str()};
}

Outcome hsbm_reduction() {
  HsbmParams params;
  params.d = 3;
  params.n = 150;
  params.alpha = Rational(8);
  params.beta = Rational(2);
  const HsbmSummary s = hsbm_pipeline(params, 50, 99);
  std::size_t aborted = 0;
  std::vector<std::size_t> largest;
  for (const HsbmTrial& t : s.trials) {
    aborted += t.status != kStatusOk;
    largest.push_back(t.max_component_size);
  }
  std::sort(largest.begin(), largest.end());
  HsbmParams sparse = params;
  sparse.alpha = Rational(1);
  sparse.beta = Rational(0);
  const HsbmSummary calib = hsbm_pipeline(sparse, 20, 99);
  std::ostringstream os;
  os << "rate=" << fixed(s.rate(), 2) << " aborted=" << aborted << "/50 median largest component="
     << largest[largest.size() / 2] << " cliques; reference alpha=1 beta=0 rate=" << fixed(calib.rate(), 2);
  return {s.rate() >= 0.95, os.str()};
}

Outcome structural_invariants() {
  const std::vector<Rational> grid3{Rational(0), Rational(1, 10), Rational(1, 5), Rational(3, 10), Rational(2, 5)};
  const std::vector<Rational> grid4{Rational(0), Rational(1, 5), Rational(1, 4), Rational(2, 5), Rational(1, 2)};
  Rng rng(1000);
  std::size_t cases = 0, failures = 0, aborted = 0, bound_checks = 0;
  std::size_t worst_component = 0;
  std::ostringstream bad;
  const auto fail = [&](std::size_t i, const char* what) {
    if (failures++ < 3) bad << " #" << i << ":" << what;
  };
  for (std::size_t i = 0; i < 1000; ++i) {
    DensityParams p;
    p.d = rng.below(2) == 0 ? 3 : 4;
    p.n = 10 + static_cast<std::uint32_t>(rng.below(51));
    const auto& grid = p.d == 3 ? grid3 : grid4;
    p.delta = grid[rng.below(grid.size())];
    const std::uint64_t seed = rng.next();
    ++cases;

    const Hypergraph truth = generate_random_hypergraph(p, seed);
    if (!(generate_random_hypergraph(p, seed, 3) == truth)) fail(i, "threads");
    std::istringstream hg_text(to_hg_string(truth));
    if (!(read_hg(hg_text) == truth)) fail(i, "hg io");
    const Graph g = project(truth);
    std::istringstream el_text(to_el_string(g));
    if (!(read_el(el_text) == g)) fail(i, "el io");

    const Hypergraph cli = clique_hypergraph(g, p.d);
    for (std::size_t e = 0; e < truth.size(); ++e) {
      if (cli.find(truth.edge(e)) < 0) {
        fail(i, "cli superset");
        break;
      }
    }
    const std::size_t largest = decompose(cli).largest();
    worst_component = std::max(worst_component, largest);
    if (const auto bound = component_size_bound(p.d, p.delta)) {
      ++bound_checks;
      if (Rational(static_cast<std::int64_t>(largest)) > *bound) fail(i, "component bound");
    }

    MapOptions opt;
    opt.abort_threshold = 200;
    std::vector<std::size_t> sizes;
    for (const Algorithm a : {Algorithm::map, Algorithm::greedy, Algorithm::clique_cover}) {
      try {
        const ReconstructionResult r = reconstruct(a, g, p.d, opt);
        if (r.is_preimage != (project(r.output) == g)) fail(i, "preimage flag");
        if (!r.is_preimage) fail(i, "not a preimage");
        sizes.push_back(r.output.size());
      } catch (const ComponentTooLarge&) {
        ++aborted;
      }
    }
    if (sizes.size() == 3) {
      if (!(sizes[0] <= sizes[1] && sizes[1] <= sizes[2])) fail(i, "size order");
      if (sizes[0] > truth.size() || sizes[2] != cli.size()) fail(i, "size bounds");
    }
  }
  std::ostringstream os;
  os << "cases=" << cases << " failures=" << failures << " map aborts=" << aborted
     << " bound checks=" << bound_checks << " largest component=" << worst_component << bad.str();
  return {failures == 0 && cases >= 1000, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "gadget densities", 1, gadget_densities},
      {2, "g-optimizations", 10, g_optimizations},
      {3, "ambiguity search d=3", 300, search_d3},
      {4, "ambiguity search d=4", 0, search_d4},
      {5, "oracle equivalence", 60, oracle_equivalence},
      {6, "threshold trends", 900, threshold_trends},
      {7, "planted gadget", 30, planted_gadget},
      {8, "subgraph counts", 120, subgraph_counts},
      {9, "hsbm reduction", 300, hsbm_reduction},
      {10, "structural invariants", 120, structural_invariants},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));

  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
      out.pass = false;
      out.detail += " [over time limit " + fixed(c.limit_seconds, 0) + " s]";
    }
    failed += !out.pass;
    std::cout << (out.pass ? "PASS" : "FAIL") << " " << std::setw(2) << c.id << " " << c.name << " ("
              << fixed(seconds, 2) << " s): " << out.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
