#pragma once

// Reconstruction of a d-uniform hypergraph from its graph projection:
// clique cover, MAP (minimum preimage per 2-connected component of the
// clique hypergraph) and greedy pruning of redundant cliques.

#include "hyperlift/components.hpp"
#include "hyperlift/hypergraph.hpp"
#include "hyperlift/preimage.hpp"
#include "hyperlift/projection.hpp"

#include <chrono>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hyperlift {

enum class Algorithm { clique_cover, map, greedy };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::clique_cover: return "cc";
    case Algorithm::map: return "map";
    case Algorithm::greedy: return "greedy";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "cc" || s == "clique_cover") return Algorithm::clique_cover;
  if (s == "map") return Algorithm::map;
  if (s == "greedy") return Algorithm::greedy;
  throw std::invalid_argument("unknown algorithm '" + s + "' (expected cc, map or greedy)");
}

class ComponentTooLarge : public std::runtime_error {
 public:
  ComponentTooLarge(std::size_t size, std::size_t limit)
      : std::runtime_error("component too large: " + std::to_string(size) + " hyperedges exceeds limit " +
                           std::to_string(limit)),
        size_(size) {}
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
};

struct ComponentStats {
  std::vector<std::size_t> sizes;           // hyperedges of Cli(g) per component
  std::size_t max_size = 0;
  std::size_t ambiguous_components = 0;     // components with several minimum covers
  std::size_t infeasible_components = 0;
};

struct ReconstructionResult {
  Algorithm algorithm = Algorithm::clique_cover;
  Hypergraph output;
  bool is_preimage = false;
  ComponentStats components;
  std::size_t uncovered_edges = 0;  // edges of g in no d-clique
  std::chrono::duration<double> elapsed{0};
};

struct MapOptions {
  std::size_t abort_threshold = 40;
  PreimageOptions preimage;
};

namespace detail {

inline std::size_t edges_outside_cliques(const Graph& g, const Hypergraph& cli) {
  return g.edge_count() - project(cli).edge_count();
}

inline void finish(ReconstructionResult& r, const Graph& g, std::chrono::steady_clock::time_point start) {
  r.is_preimage = project(r.output) == g;
  r.elapsed = std::chrono::steady_clock::now() - start;
}

}  // namespace detail

inline ReconstructionResult clique_cover(const Graph& g, std::uint32_t d) {
  const auto start = std::chrono::steady_clock::now();
  ReconstructionResult r;
  r.algorithm = Algorithm::clique_cover;
  r.output = clique_hypergraph(g, d);
  r.uncovered_edges = detail::edges_outside_cliques(g, r.output);
  detail::finish(r, g, start);
  return r;
}

// Canonical minimum cover of one component, solved on compact local ids.
inline Hypergraph solve_component(const Hypergraph& cli, const Component& comp, const PreimageOptions& opt,
                                  bool& ambiguous, bool& feasible) {
  ambiguous = false;
  feasible = true;
  if (comp.edges.size() == 1) return comp.as_hypergraph(cli);
  std::unordered_map<VertexId, VertexId> local;
  for (std::size_t i = 0; i < comp.vertices.size(); ++i) local.emplace(comp.vertices[i], static_cast<VertexId>(i));
  std::vector<VertexId> flat;
  flat.reserve(comp.edges.size() * cli.d());
  for (const std::size_t i : comp.edges) {
    for (const VertexId v : cli.edge(i)) flat.push_back(local.at(v));
  }
  const auto nloc = static_cast<std::uint32_t>(comp.vertices.size());
  const Hypergraph local_h = Hypergraph::from_sorted_flat(nloc, cli.d(), std::move(flat));
  const PreimageReport rep = solve_cover(project(local_h), local_h, opt);
  if (!rep.feasible) {
    feasible = false;
    return Hypergraph(cli.n(), cli.d());
  }
  ambiguous = rep.ambiguous;
  std::vector<VertexId> back;
  for (const VertexId v : rep.min_covers.front().flat()) back.push_back(comp.vertices[v]);
  return Hypergraph::from_sorted_flat(cli.n(), cli.d(), std::move(back));
}

// Never consults p or delta.
inline ReconstructionResult map_reconstruct(const Graph& g, std::uint32_t d, const MapOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  ReconstructionResult r;
  r.algorithm = Algorithm::map;
  const Hypergraph cli = clique_hypergraph(g, d);
  r.uncovered_edges = detail::edges_outside_cliques(g, cli);
  const ComponentPartition parts = decompose(cli);
  for (const auto& c : parts.components) {
    r.components.sizes.push_back(c.edges.size());
    r.components.max_size = std::max(r.components.max_size, c.edges.size());
  }
  if (r.components.max_size > opt.abort_threshold) {
    throw ComponentTooLarge(r.components.max_size, opt.abort_threshold);
  }
  std::vector<VertexId> flat;
  for (const auto& c : parts.components) {
    bool ambiguous = false, feasible = true;
    const Hypergraph cover = solve_component(cli, c, opt.preimage, ambiguous, feasible);
    r.components.ambiguous_components += ambiguous;
    r.components.infeasible_components += !feasible;
    flat.insert(flat.end(), cover.flat().begin(), cover.flat().end());
  }
  std::vector<Hyperedge> edges;
  for (std::size_t i = 0; i < flat.size(); i += d) {
    edges.emplace_back(std::vector<VertexId>(flat.begin() + i, flat.begin() + i + d));
  }
  r.output = Hypergraph(g.n(), d, edges);
  detail::finish(r, g, start);
  return r;
}

// Lexicographic passes over Cli(g), dropping a clique whenever each of its
// pairs is still covered by another kept clique, until nothing changes.
inline ReconstructionResult greedy_reconstruct(const Graph& g, std::uint32_t d) {
  const auto start = std::chrono::steady_clock::now();
  ReconstructionResult r;
  r.algorithm = Algorithm::greedy;
  const Hypergraph cli = clique_hypergraph(g, d);
  r.uncovered_edges = detail::edges_outside_cliques(g, cli);
  std::unordered_map<std::uint64_t, std::uint32_t> coverage;
  coverage.reserve(g.edge_count() * 2);
  std::vector<std::vector<std::uint64_t>> pairs(cli.size());
  for (std::size_t i = 0; i < cli.size(); ++i) {
    const auto e = cli.edge(i);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a + 1; b < d; ++b) {
        pairs[i].push_back(detail::pair_key(e[a], e[b]));
        ++coverage[pairs[i].back()];
      }
    }
  }
  std::vector<bool> kept(cli.size(), true);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < cli.size(); ++i) {
      if (!kept[i]) continue;
      bool redundant = true;
      for (const auto k : pairs[i]) redundant = redundant && coverage[k] >= 2;
      if (!redundant) continue;
      kept[i] = false;
      changed = true;
      for (const auto k : pairs[i]) --coverage[k];
    }
  }
  std::vector<VertexId> flat;
  for (std::size_t i = 0; i < cli.size(); ++i) {
    if (kept[i]) flat.insert(flat.end(), cli.edge(i).begin(), cli.edge(i).end());
  }
  r.output = Hypergraph::from_sorted_flat(g.n(), d, std::move(flat));
  detail::finish(r, g, start);
  return r;
}

inline ReconstructionResult reconstruct(Algorithm a, const Graph& g, std::uint32_t d, const MapOptions& opt = {}) {
  switch (a) {
    case Algorithm::clique_cover: return clique_cover(g, d);
    case Algorithm::map: return map_reconstruct(g, d, opt);
    case Algorithm::greedy: return greedy_reconstruct(g, d);
  }
  throw std::invalid_argument("unknown algorithm");
}

inline bool verify_exact(const Hypergraph& output, const Hypergraph& truth) {
  if (output.n() != truth.n() || output.d() != truth.d()) {
    throw std::invalid_argument("verify_exact: hypergraphs differ in (n, d)");
  }
  return output == truth;
}

inline bool verify_exact(const ReconstructionResult& result, const Hypergraph& truth) {
  return verify_exact(result.output, truth);
}

}  // namespace hyperlift
