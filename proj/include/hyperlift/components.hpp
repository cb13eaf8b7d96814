#pragma once

// 2-neighbourhoods and 2-connected components of a hypergraph.
//
// Two hyperedges are 2-adjacent when they share at least two vertices; a
// 2-connected component is a connected component of that relation. This is
// not graph 2-vertex-connectivity.

#include "hyperlift/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace hyperlift {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// Indices of hyperedges of `h` sharing at least two vertices with `e`,
// excluding `e` itself if present.
inline std::vector<std::size_t> two_neighbors(std::span<const VertexId> e, const Hypergraph& h) {
  if (e.size() != h.d()) throw std::invalid_argument("hyperedge size does not match hypergraph");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto f = h.edge(i);
    if (std::equal(f.begin(), f.end(), e.begin())) continue;
    if (intersection_size(f, e) >= 2) out.push_back(i);
  }
  return out;
}

inline std::vector<std::size_t> two_neighbors(const Hyperedge& e, const Hypergraph& h) {
  return two_neighbors(e.vertices(), h);
}

struct Component {
  std::vector<std::size_t> edges;     // ascending indices into the parent
  std::vector<VertexId> vertices;     // sorted union of those hyperedges

  // The component as a standalone hypergraph on the parent's vertex set.
  Hypergraph as_hypergraph(const Hypergraph& parent) const {
    std::vector<VertexId> flat;
    flat.reserve(edges.size() * parent.d());
    for (const std::size_t i : edges) {
      const auto e = parent.edge(i);
      flat.insert(flat.end(), e.begin(), e.end());
    }
    return Hypergraph::from_sorted_flat(parent.n(), parent.d(), std::move(flat));
  }
};

struct ComponentPartition {
  std::vector<Component> components;  // ordered by smallest hyperedge index

  std::size_t size() const { return components.size(); }
  std::size_t largest() const {
    std::size_t m = 0;
    for (const auto& c : components) m = std::max(m, c.edges.size());
    return m;
  }
};

// Union-find over hyperedges: every vertex pair links all hyperedges that
// contain it. Pairs are grouped by sorting (pair key, hyperedge) records.
inline ComponentPartition decompose(const Hypergraph& h) {
  const std::size_t m = h.size();
  const std::uint32_t d = h.d();
  std::vector<std::pair<std::uint64_t, std::uint32_t>> records;
  records.reserve(m * d * (d - 1) / 2);
  for (std::size_t i = 0; i < m; ++i) {
    const auto e = h.edge(i);
    for (std::uint32_t a = 0; a < d; ++a) {
      for (std::uint32_t b = a + 1; b < d; ++b) {
        records.emplace_back((static_cast<std::uint64_t>(e[a]) << 32) | e[b], static_cast<std::uint32_t>(i));
      }
    }
  }
  std::sort(records.begin(), records.end());
  UnionFind uf(m);
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].first == records[r - 1].first) uf.unite(records[r].second, records[r - 1].second);
  }

  ComponentPartition out;
  std::vector<std::ptrdiff_t> slot(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t root = uf.find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(out.components.size());
      out.components.emplace_back();
    }
    out.components[slot[root]].edges.push_back(i);
  }
  for (auto& c : out.components) {
    for (const std::size_t i : c.edges) {
      const auto e = h.edge(i);
      c.vertices.insert(c.vertices.end(), e.begin(), e.end());
    }
    std::sort(c.vertices.begin(), c.vertices.end());
    c.vertices.erase(std::unique(c.vertices.begin(), c.vertices.end()), c.vertices.end());
  }
  return out;
}

}  // namespace hyperlift
