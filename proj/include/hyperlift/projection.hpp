#pragma once

// Graph projection, the d-clique hypergraph, and the similarity matrix.

#include "hyperlift/hypergraph.hpp"

#include <vector>

namespace hyperlift {

// Union over hyperedges of all their vertex pairs.
inline Graph project(const Hypergraph& h) {
  std::vector<Edge> edges;
  edges.reserve(h.size() * h.d() * (h.d() - 1) / 2);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto e = h.edge(i);
    for (std::size_t a = 0; a < e.size(); ++a) {
      for (std::size_t b = a + 1; b < e.size(); ++b) edges.emplace_back(e[a], e[b]);
    }
  }
  return Graph(h.n(), std::move(edges));
}

namespace detail {

inline void extend_cliques(const Graph& g, std::uint32_t d, std::vector<VertexId>& current,
                           const std::vector<VertexId>& candidates, std::vector<VertexId>& out) {
  if (current.size() == d) {
    out.insert(out.end(), current.begin(), current.end());
    return;
  }
  const std::size_t need = d - current.size();
  for (std::size_t i = 0; i + need <= candidates.size(); ++i) {
    const VertexId u = candidates[i];
    std::vector<VertexId> next;
    if (need > 1) {
      const auto nu = g.neighbors(u);
      // Sorted intersection of candidates[i+1..] with N(u).
      auto it = std::upper_bound(nu.begin(), nu.end(), u);
      for (std::size_t j = i + 1; j < candidates.size() && it != nu.end();) {
        if (candidates[j] < *it) {
          ++j;
        } else if (*it < candidates[j]) {
          ++it;
        } else {
          next.push_back(candidates[j]);
          ++j;
          ++it;
        }
      }
      if (next.size() + 1 < need) continue;
    }
    current.push_back(u);
    extend_cliques(g, d, current, next, out);
    current.pop_back();
  }
}

}  // namespace detail

// All d-subsets whose pairs are all edges of g, in lexicographic order.
// Cliques are grown inside common forward neighbourhoods, so the cost scales
// with degrees and output size rather than C(n, d).
inline Hypergraph clique_hypergraph(const Graph& g, std::uint32_t d) {
  if (d < 2) throw std::invalid_argument("clique size d must be >= 2");
  std::vector<VertexId> flat;
  std::vector<VertexId> current;
  for (VertexId v = 0; v < g.n(); ++v) {
    const auto nv = g.neighbors(v);
    std::vector<VertexId> forward(std::upper_bound(nv.begin(), nv.end(), v), nv.end());
    if (forward.size() + 1 < d) continue;
    current.assign(1, v);
    detail::extend_cliques(g, d, current, forward, flat);
  }
  return Hypergraph::from_sorted_flat(g.n(), d, std::move(flat));
}

inline SimilarityMatrix similarity_matrix(const Hypergraph& h) {
  SimilarityMatrix w(h.n());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto e = h.edge(i);
    for (std::size_t a = 0; a < e.size(); ++a) {
      for (std::size_t b = a + 1; b < e.size(); ++b) w.add(e[a], e[b]);
    }
  }
  return w;
}

// Edge (i, j) iff W[i][j] >= 1.
inline Graph support_graph(const SimilarityMatrix& w) {
  std::vector<Edge> edges;
  for (VertexId i = 0; i < w.n(); ++i) {
    for (VertexId j = i + 1; j < w.n(); ++j) {
      if (w.at(i, j) > 0) edges.emplace_back(i, j);
    }
  }
  return Graph(w.n(), std::move(edges));
}

}  // namespace hyperlift
