// hyperlift: generate random hypergraphs, project them, reconstruct them,
// and run the combinatorial checks and experiment sweeps from the shell.

#include "hyperlift/census.hpp"
#include "hyperlift/harness.hpp"
#include "hyperlift/io.hpp"
#include "hyperlift/search.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>

using namespace hyperlift;
using nlohmann::ordered_json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  unsigned threads = 1;
  std::string format = "csv";
};

// stdout unless --out names a file.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") file_ = std::make_unique<std::ofstream>(open_out_checked(path));
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  static std::ofstream open_out_checked(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    return f;
  }
  std::unique_ptr<std::ofstream> file_;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// .el directly, .sim through its support graph, .hg through its projection.
Graph load_graph(const std::string& path) {
  if (ends_with(path, ".sim")) return support_graph(load_sim(path));
  if (ends_with(path, ".hg")) return project(load_hg(path));
  return load_el(path);
}

Rational rational_option(const std::string& text) { return detail::parse_exact(text); }

// A flat table printed as CSV or as a JSON array of objects.
void emit_table(std::ostream& out, const std::string& format, const std::vector<ordered_json>& rows) {
  if (format == "json") {
    out << ordered_json(rows).dump(2) << '\n';
    return;
  }
  if (rows.empty()) return;
  std::string header;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it) header += (header.empty() ? "" : ",") + it.key();
  out << header << '\n';
  for (const auto& r : rows) {
    std::string line;
    bool first = true;
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (!first) line += ',';
      first = false;
      line += it->is_string() ? it->get<std::string>() : it->dump();
    }
    out << line << '\n';
  }
}

ordered_json witness_json(const AmbiguousWitness& w) {
  return {{"projection_form", w.projection_form},
          {"projection", to_el_string(w.projection)},
          {"preimage1", to_hg_string(w.preimage1)},
          {"preimage2", to_hg_string(w.preimage2)},
          {"exponent", w.exponent.str()},
          {"depth", w.depth}};
}

ordered_json report_json(const SearchReport& r, const SearchConfig& c) {
  ordered_json j;
  j["d"] = c.d;
  j["delta"] = c.delta.str();
  j["ambiguous_classes"] = r.ambiguous_found.size();
  j["nodes_visited"] = r.nodes_visited;
  j["nodes_pruned_by_exponent"] = r.nodes_pruned_by_exponent;
  j["children_below_zero"] = r.children_below_zero;
  j["nodes_deduped"] = r.nodes_deduped;
  j["nodes_depth_truncated"] = r.nodes_depth_truncated;
  j["exponent_decrease_violations"] = r.exponent_decrease_violations;
  j["min_exponent_decrease"] = r.min_exponent_decrease ? r.min_exponent_decrease->str() : "";
  j["max_depth"] = r.max_depth;
  j["budget_tripped"] = r.budget_tripped;
  j["exhausted"] = r.exhausted;
  j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstruct random hypergraphs from their graph projections"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Base random seed");
  app.add_option("--out", g.out, "Output path (default: stdout)");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Tabular output format")->check(CLI::IsMember({"csv", "json"}));

  int exit_code = 0;

  // gen ----------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Sample H(n, d, p) with p = c n^(-d+1+delta) and write it as .hg");
  std::uint32_t gen_d = 3, gen_n = 0;
  std::string gen_delta = "0";
  double gen_c = 1.0;
  std::optional<double> gen_p;
  gen->add_option("-d,--d", gen_d, "Hyperedge size")->required();
  gen->add_option("-n,--n", gen_n, "Vertices")->required();
  gen->add_option("--delta", gen_delta, "Density exponent, e.g. 1/5");
  gen->add_option("--c", gen_c, "Constant factor in p");
  gen->add_option("--p", gen_p, "Use this hyperedge probability instead");
  gen->callback([&] {
    DensityParams params;
    params.d = gen_d;
    params.n = gen_n;
    params.delta = rational_option(gen_delta);
    params.c = gen_c;
    params.p_override = gen_p;
    params.validate();
    Sink sink(g.out);
    write_hg(sink.stream(), generate_random_hypergraph(params, g.seed, g.threads));
  });

  // project ------------------------------------------------------------------
  auto* proj = app.add_subcommand("project", "Project a .hg file to its .el graph");
  std::string proj_in;
  bool proj_sim = false;
  proj->add_option("input", proj_in, ".hg file")->required()->check(CLI::ExistingFile);
  proj->add_flag("--similarity", proj_sim, "Write the similarity matrix (.sim) instead");
  proj->callback([&] {
    const Hypergraph h = load_hg(proj_in);
    Sink sink(g.out);
    if (proj_sim) {
      write_sim(sink.stream(), similarity_matrix(h));
    } else {
      write_el(sink.stream(), project(h));
    }
  });

  // reconstruct --------------------------------------------------------------
  auto* rec = app.add_subcommand("reconstruct", "Reconstruct a hypergraph from a .el (or .sim) projection");
  std::string rec_in, rec_alg = "map", rec_truth;
  std::uint32_t rec_d = 3;
  std::size_t rec_abort = MapOptions{}.abort_threshold;
  rec->add_option("input", rec_in, ".el, .sim or .hg file")->required()->check(CLI::ExistingFile);
  rec->add_option("-d,--d", rec_d, "Hyperedge size")->required();
  rec->add_option("-a,--algorithm", rec_alg, "cc, map or greedy")->check(CLI::IsMember({"cc", "map", "greedy"}));
  rec->add_option("--abort", rec_abort, "MAP gives up on components with more cliques than this");
  rec->add_option("--truth", rec_truth, "Compare the output with this .hg file")->check(CLI::ExistingFile);
  rec->callback([&] {
    const Graph graph = load_graph(rec_in);
    MapOptions opt;
    opt.abort_threshold = rec_abort;
    ordered_json stats;
    stats["algorithm"] = rec_alg;
    stats["d"] = rec_d;
    stats["n"] = graph.n();
    try {
      const ReconstructionResult r = reconstruct(parse_algorithm(rec_alg), graph, rec_d, opt);
      Sink sink(g.out);
      write_hg(sink.stream(), r.output);
      stats["status"] = kStatusOk;
      stats["output_size"] = r.output.size();
      stats["is_preimage"] = r.is_preimage;
      stats["uncovered_edges"] = r.uncovered_edges;
      stats["component_count"] = r.components.sizes.size();
      stats["max_component_size"] = r.components.max_size;
      stats["ambiguous_components"] = r.components.ambiguous_components;
      stats["elapsed_seconds"] = r.elapsed.count();
      if (!rec_truth.empty()) stats["exact"] = verify_exact(r, load_hg(rec_truth));
    } catch (const ComponentTooLarge& e) {
      stats["status"] = kStatusTooLarge;
      stats["max_component_size"] = e.size();
      exit_code = 3;
    }
    if (g.out.empty() || g.out == "-") {
      std::cerr << stats.dump(2) << '\n';
    } else {
      std::ofstream(g.out + ".json") << stats.dump(2) << '\n';
    }
  });

  // preimage -----------------------------------------------------------------
  auto* pre = app.add_subcommand("preimage", "Minimum preimages of a small projected graph");
  std::string pre_in;
  std::uint32_t pre_d = 3;
  PreimageOptions pre_opt;
  pre->add_option("input", pre_in, ".el, .sim or .hg file")->required()->check(CLI::ExistingFile);
  pre->add_option("-d,--d", pre_d, "Hyperedge size")->required();
  pre->add_option("--cap", pre_opt.cover_cap, "Minimum covers to list");
  pre->add_option("--vertex-bound", pre_opt.vertex_bound, "Refuse graphs with more non-isolated vertices");
  pre->add_flag("--count-all", pre_opt.count_all_preimages, "Also count all preimages");
  pre->callback([&] {
    const Graph graph = load_graph(pre_in);
    const PreimageReport r = min_preimage(graph, pre_d, pre_opt);
    ordered_json j;
    j["feasible"] = r.feasible;
    j["min_size"] = r.min_size;
    j["ambiguous"] = r.ambiguous;
    j["min_cover_count"] = r.min_cover_count ? ordered_json(*r.min_cover_count) : ordered_json(nullptr);
    j["total_preimage_count"] = r.total_preimage_count ? ordered_json(*r.total_preimage_count) : ordered_json(nullptr);
    j["candidate_count"] = r.candidate_count;
    Sink sink(g.out);
    if (g.format == "json") {
      j["min_covers"] = ordered_json::array();
      for (const auto& c : r.min_covers) j["min_covers"].push_back(to_hg_string(c));
      sink.stream() << j.dump(2) << '\n';
    } else {
      emit_table(sink.stream(), "csv", {j});
      for (std::size_t i = 0; i < r.min_covers.size(); ++i) {
        sink.stream() << "# cover " << i << '\n' << to_hg_string(r.min_covers[i]);
      }
    }
  });

  // census -------------------------------------------------------------------
  auto* cen = app.add_subcommand("census", "Threshold table, cover optimizations and pattern densities");
  std::uint32_t cen_max_d = 10, cen_d = 3;
  std::string cen_delta, cen_pattern;
  cen->add_option("--max-d", cen_max_d, "Largest d in the threshold table");
  cen->add_option("-d,--d", cen_d, "Hyperedge size for --delta / --pattern");
  cen->add_option("--delta", cen_delta, "Report g_0, g_k and the cover margin at this delta");
  cen->add_option("--pattern", cen_pattern, "Report density, exponent and automorphisms of this .hg pattern")
      ->check(CLI::ExistingFile);
  cen->callback([&] {
    std::vector<ordered_json> rows;
    Sink sink(g.out);
    if (!cen_pattern.empty()) {
      const Pattern k = Pattern::compact(load_hg(cen_pattern));
      ordered_json j{{"v", k.v()}, {"e", k.e()}, {"max_density", max_density(k).str()},
                     {"automorphisms", automorphism_count(k).str()}, {"canonical_form", canonical_form(k)}};
      if (!cen_delta.empty()) {
        const Rational dl = rational_option(cen_delta);
        j["exponent"] = expected_count_exponent(k, k.d(), dl).str();
        j["min_subpattern_exponent"] = min_subpattern_exponent(k, dl).exponent.str();
      }
      rows.push_back(j);
    } else if (!cen_delta.empty()) {
      const Rational dl = rational_option(cen_delta);
      const SubsetCover star = g_0(cen_d, dl);
      rows.push_back({{"d", cen_d}, {"delta", dl.str()}, {"k", 0}, {"g", star.cost.str()}});
      for (std::uint32_t k = 2; k <= cen_d; ++k) {
        rows.push_back({{"d", cen_d}, {"delta", dl.str()}, {"k", k}, {"g", g_k(cen_d, k, dl).str()}});
      }
      if (cen_d >= 3) {
        std::cerr << "min_k g_k + k - d = " << min_cover_margin(cen_d, dl).str() << '\n';
      }
    } else {
      for (const auto& r : threshold_table(cen_max_d)) {
        rows.push_back({{"d", r.d},
                        {"lower", r.lower.str()},
                        {"upper", r.upper.str()},
                        {"two_connectivity", r.two_connectivity.str()},
                        {"ambiguity", r.ambiguity.str()}});
      }
    }
    emit_table(sink.stream(), g.format, rows);
  });

  // search -------------------------------------------------------------------
  auto* sea = app.add_subcommand("search", "Pruned search for ambiguous projections (exit 2 if not exhausted)");
  SearchConfig sc;
  std::string sea_delta = "2/5";
  std::optional<std::uint32_t> sea_depth;
  bool sea_no_dedup = false, sea_loose = false;
  sea->add_option("-d,--d", sc.d, "Hyperedge size");
  sea->add_option("--delta", sea_delta, "Density exponent");
  sea->add_option("--max-depth", sea_depth, "Growth steps from a root");
  sea->add_option("--budget", sc.node_budget, "Node budget");
  sea->add_option("--time", sc.time_budget_seconds, "Time budget in seconds (0 = none)");
  sea->add_flag("--no-dedup", sea_no_dedup, "Do not merge isomorphic nodes");
  sea->add_flag("--loose", sea_loose, "Candidates need only meet V(K) in two vertices");
  sea->add_flag("--single-root", sc.single_hyperedge_root, "Start from a single hyperedge");
  sea->callback([&] {
    sc.delta = rational_option(sea_delta);
    sc.max_depth = sea_depth;
    sc.dedup = !sea_no_dedup;
    sc.strict_neighbors = !sea_loose;
    sc.validate();
    const SearchReport r = dfs_search(sc);
    Sink sink(g.out);
    if (g.format == "json") {
      ordered_json j = report_json(r, sc);
      j["witnesses"] = ordered_json::array();
      for (const auto& w : r.ambiguous_found) j["witnesses"].push_back(witness_json(w));
      sink.stream() << j.dump(2) << '\n';
    } else {
      emit_table(sink.stream(), "csv", {report_json(r, sc)});
      for (const auto& w : r.ambiguous_found) {
        sink.stream() << "# ambiguous " << w.projection_form << " exponent " << w.exponent.str() << '\n';
      }
    }
    exit_code = r.exhausted ? 0 : 2;
  });

  // sweep --------------------------------------------------------------------
  auto* swp = app.add_subcommand("sweep", "Seeded reconstruction sweep over n and delta");
  std::string swp_config;
  SweepSpec flags;
  std::vector<std::string> swp_delta, swp_alg;
  swp->add_option("--config", swp_config, "Sweep config file (key = value lines)")->check(CLI::ExistingFile);
  auto* swp_d = swp->add_option("-d,--d", flags.d, "Hyperedge size");
  auto* swp_n = swp->add_option("-n,--n", flags.n, "Vertex counts")->delimiter(',');
  swp->add_option("--delta", swp_delta, "Density exponents")->delimiter(',');
  auto* swp_seeds = swp->add_option("--seeds", flags.seeds, "Replicates per cell");
  swp->add_option("-a,--algorithms", swp_alg, "cc, map, greedy")->delimiter(',');
  auto* swp_abort = swp->add_option("--abort", flags.abort_threshold, "MAP component limit");
  swp->callback([&] {
    SweepSpec spec = flags;
    if (!swp_config.empty()) {
      std::ifstream in(swp_config);
      spec = parse_sweep_config(in);
      if (swp_d->count() > 0) spec.d = flags.d;
      if (swp_n->count() > 0) spec.n = flags.n;
      if (swp_seeds->count() > 0) spec.seeds = flags.seeds;
      if (swp_abort->count() > 0) spec.abort_threshold = flags.abort_threshold;
    }
    if (!swp_delta.empty()) spec.delta.clear();
    for (const auto& x : swp_delta) spec.delta.push_back(rational_option(x));
    if (!swp_alg.empty()) {
      spec.algorithms.clear();
      for (const auto& x : swp_alg) spec.algorithms.push_back(parse_algorithm(x));
    }
    if (app.get_option("--seed")->count() > 0 || swp_config.empty()) spec.base_seed = g.seed;
    if (app.get_option("--threads")->count() > 0) spec.threads = g.threads;
    const std::string out = g.out.empty() ? spec.output : g.out;
    Sink sink(out);
    std::unique_ptr<std::ofstream> timing;
    if (!out.empty() && out != "-") timing = std::make_unique<std::ofstream>(out + ".timing.csv");
    if (timing) *timing << timing_header() << '\n';
    std::vector<ordered_json> json_rows;
    if (g.format == "csv") sink.stream() << csv_header() << '\n';
    const auto records = run_sweep(spec, [&](const SweepRecord& r) {
      if (g.format == "csv") {
        sink.stream() << csv_row(r) << '\n' << std::flush;
      } else {
        json_rows.push_back(to_json(r));
      }
      if (timing) *timing << timing_row(r) << '\n';
    });
    if (g.format == "json") sink.stream() << ordered_json(json_rows).dump(2) << '\n';
    for (const auto& s : summarize(records)) std::cerr << to_json(s).dump() << '\n';
  });

  // hsbm ---------------------------------------------------------------------
  auto* hs = app.add_subcommand("hsbm", "HSBM sample (.sim) or, with --trials, the W -> MAP recovery pipeline");
  HsbmParams hp;
  std::string hs_alpha = "1", hs_beta = "1";
  std::uint64_t hs_trials = 0;
  std::size_t hs_abort = MapOptions{}.abort_threshold;
  hs->add_option("-d,--d", hp.d, "Hyperedge size");
  hs->add_option("-n,--n", hp.n, "Vertices (even)")->required();
  hs->add_option("--alpha", hs_alpha, "Within-community rate");
  hs->add_option("--beta", hs_beta, "Across-community rate");
  hs->add_option("--q1", hp.q1_override, "Within-community probability override");
  hs->add_option("--q2", hp.q2_override, "Across-community probability override");
  hs->add_option("--trials", hs_trials, "Run the recovery pipeline on this many seeds");
  hs->add_option("--abort", hs_abort, "MAP component limit");
  hs->callback([&] {
    hp.alpha = rational_option(hs_alpha);
    hp.beta = rational_option(hs_beta);
    hp.validate();
    Sink sink(g.out);
    if (hs_trials == 0) {
      write_sim(sink.stream(), similarity_matrix(generate_hsbm(hp, g.seed, g.threads).hypergraph));
      return;
    }
    MapOptions opt;
    opt.abort_threshold = hs_abort;
    const HsbmSummary s = hsbm_pipeline(hp, hs_trials, g.seed, g.threads, opt);
    std::vector<ordered_json> rows;
    for (const auto& t : s.trials) rows.push_back(to_json(t));
    emit_table(sink.stream(), g.format, rows);
    std::cerr << "exact " << s.exact_count() << "/" << s.trials.size() << " rate " << s.rate() << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "hyperlift: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
