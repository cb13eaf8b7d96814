#pragma once

// Small hand-built hypergraphs that drive the failure modes of the
// reconstruction algorithms.

#include "hyperlift/hypergraph.hpp"
#include "hyperlift/projection.hpp"

#include <stdexcept>
#include <vector>

namespace hyperlift {

struct AmbiguousGadget {
  Hypergraph preimage1;  // S1 ∪ S2 ∪ {h1}
  Hypergraph preimage2;  // S1 ∪ S2 ∪ {h2}
  Graph projection;
  Hyperedge h1;
  Hyperedge h2;
};

// G_{a,d}: h1 = {u1, v_1..v_{d-1}}, h2 = {u2, v_1..v_{d-1}}, and for each i a
// w-clique {u1, v_i, w_i^(1..d-2)} and a z-clique {u2, v_i, z_i^(1..d-2)}.
// Labels: u1 = 0, v_i = i, u2 = d, then the w's and z's in order.
inline AmbiguousGadget build_ambiguous_gadget(std::uint32_t d) {
  if (d < 3) throw std::invalid_argument("ambiguous gadget needs d >= 3");
  const VertexId u1 = 0, u2 = d;
  std::vector<VertexId> vs;
  for (VertexId i = 1; i < d; ++i) vs.push_back(i);
  VertexId next = d + 1;
  std::vector<Hyperedge> shared;
  for (const VertexId center : {u1, u2}) {
    for (const VertexId v : vs) {
      std::vector<VertexId> e{center, v};
      for (std::uint32_t j = 0; j + 2 < d; ++j) e.push_back(next++);
      shared.emplace_back(std::move(e));
    }
  }
  std::vector<VertexId> e1 = vs, e2 = vs;
  e1.push_back(u1);
  e2.push_back(u2);
  AmbiguousGadget g;
  g.h1 = Hyperedge(e1);
  g.h2 = Hyperedge(e2);
  auto a = shared, b = shared;
  a.push_back(g.h1);
  b.push_back(g.h2);
  g.preimage1 = Hypergraph(next, d, a);
  g.preimage2 = Hypergraph(next, d, b);
  g.projection = project(g.preimage1);
  if (!(g.projection == project(g.preimage2))) throw std::logic_error("ambiguous gadget preimages disagree");
  return g;
}

// Ĥ_b: the central hyperedge {v_1..v_d} plus, for every pair {v_i, v_j}, a
// hyperedge {v_i, v_j} ∪ (d - 2 fresh vertices). The central hyperedge is
// redundant in the projection. Central vertices are 0..d-1.
inline Hypergraph build_map_failure_gadget(std::uint32_t d) {
  if (d < 3) throw std::invalid_argument("MAP failure gadget needs d >= 3");
  std::vector<Hyperedge> edges;
  std::vector<VertexId> center;
  for (VertexId i = 0; i < d; ++i) center.push_back(i);
  edges.emplace_back(center);
  VertexId next = d;
  for (VertexId i = 0; i < d; ++i) {
    for (VertexId j = i + 1; j < d; ++j) {
      std::vector<VertexId> e{i, j};
      for (std::uint32_t k = 0; k + 2 < d; ++k) e.push_back(next++);
      edges.emplace_back(std::move(e));
    }
  }
  return Hypergraph(next, d, edges);
}

// d = 3 clique-cover failure: {u1,u2,u3}, {v,u1,w1}, {v,u2,w2}. The triangle
// {v,u1,u2} is a clique of the projection but not a hyperedge.
// Labels: u1 = 0, u2 = 1, u3 = 2, v = 3, w1 = 4, w2 = 5.
inline Hypergraph build_fake_hyperedge_gadget() {
  return Hypergraph(6, 3, {{0, 1, 2}, {3, 0, 4}, {3, 1, 5}});
}

}  // namespace hyperlift
