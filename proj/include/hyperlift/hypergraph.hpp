#pragma once

// Core data model: hyperedges, d-uniform hypergraphs, simple graphs and
// pairwise co-occurrence (similarity) matrices. Vertices are 0-indexed.
//
// All types are immutable after construction.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hyperlift {

using VertexId = std::uint32_t;

class Hyperedge {
 public:
  Hyperedge() = default;
  explicit Hyperedge(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
      throw std::invalid_argument("hyperedge has repeated vertices");
    }
  }
  Hyperedge(std::initializer_list<VertexId> vertices) : Hyperedge(std::vector<VertexId>(vertices)) {}

  std::size_t size() const { return vertices_.size(); }
  VertexId operator[](std::size_t i) const { return vertices_[i]; }
  auto begin() const { return vertices_.begin(); }
  auto end() const { return vertices_.end(); }
  std::span<const VertexId> vertices() const { return vertices_; }

  bool contains(VertexId v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

  friend auto operator<=>(const Hyperedge&, const Hyperedge&) = default;
  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;

 private:
  std::vector<VertexId> vertices_;
};

// Number of shared vertices between two sorted vertex lists.
inline std::size_t intersection_size(std::span<const VertexId> a, std::span<const VertexId> b) {
  std::size_t i = 0, j = 0, count = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

// A d-uniform hypergraph on [0, n). Hyperedges are stored flat with stride d,
// sorted lexicographically and duplicate-free.
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(std::uint32_t n, std::uint32_t d) : n_(n), d_(d) { check_dims(); }

  // Validates each hyperedge, sorts, and drops duplicate hyperedges.
  Hypergraph(std::uint32_t n, std::uint32_t d, const std::vector<Hyperedge>& edges) : n_(n), d_(d) {
    check_dims();
    std::vector<Hyperedge> sorted = edges;
    for (const auto& e : sorted) validate(e);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    data_.reserve(sorted.size() * d_);
    for (const auto& e : sorted) data_.insert(data_.end(), e.begin(), e.end());
  }

  Hypergraph(std::uint32_t n, std::uint32_t d, std::initializer_list<Hyperedge> edges)
      : Hypergraph(n, d, std::vector<Hyperedge>(edges)) {}

  // Flat, already sorted and duplicate-free data (internal fast path; checked).
  static Hypergraph from_sorted_flat(std::uint32_t n, std::uint32_t d, std::vector<VertexId> flat) {
    Hypergraph h(n, d);
    if (flat.size() % (d == 0 ? 1 : d) != 0) throw std::invalid_argument("flat hyperedge data has wrong length");
    h.data_ = std::move(flat);
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto e = h.edge(i);
      for (std::size_t j = 0; j < d; ++j) {
        if (e[j] >= n || (j > 0 && e[j - 1] >= e[j])) throw std::invalid_argument("invalid flat hyperedge");
      }
      if (i > 0 && !std::lexicographical_compare(h.edge(i - 1).begin(), h.edge(i - 1).end(), e.begin(), e.end())) {
        throw std::invalid_argument("flat hyperedges not strictly sorted");
      }
    }
    return h;
  }

  std::uint32_t n() const { return n_; }
  std::uint32_t d() const { return d_; }
  std::size_t size() const { return d_ == 0 ? 0 : data_.size() / d_; }
  bool empty() const { return data_.empty(); }

  std::span<const VertexId> edge(std::size_t i) const { return {data_.data() + i * d_, d_}; }
  Hyperedge hyperedge(std::size_t i) const {
    const auto e = edge(i);
    return Hyperedge(std::vector<VertexId>(e.begin(), e.end()));
  }
  std::vector<Hyperedge> hyperedges() const {
    std::vector<Hyperedge> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(hyperedge(i));
    return out;
  }
  const std::vector<VertexId>& flat() const { return data_; }

  // Index of `e` or -1.
  std::ptrdiff_t find(std::span<const VertexId> e) const {
    if (e.size() != d_) return -1;
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const auto m = edge(mid);
      if (std::lexicographical_compare(m.begin(), m.end(), e.begin(), e.end())) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo < size() && std::equal(e.begin(), e.end(), edge(lo).begin())) return static_cast<std::ptrdiff_t>(lo);
    return -1;
  }
  bool contains(const Hyperedge& e) const { return find(e.vertices()) >= 0; }

  // Checks that `e` is a valid hyperedge for (n, d); throws otherwise.
  void validate(const Hyperedge& e) const {
    if (e.size() != d_) {
      throw std::invalid_argument("hyperedge of size " + std::to_string(e.size()) + " in " + std::to_string(d_) +
                                  "-uniform hypergraph");
    }
    for (const VertexId v : e) {
      if (v >= n_) throw std::out_of_range("vertex " + std::to_string(v) + " >= n=" + std::to_string(n_));
    }
  }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.data_ == b.data_;
  }

 private:
  void check_dims() const {
    if (d_ < 2) throw std::invalid_argument("uniformity d must be >= 2");
  }

  std::uint32_t n_ = 0;
  std::uint32_t d_ = 2;
  std::vector<VertexId> data_;
};

Hypergraph hypergraph_union(const Hypergraph& a, const Hypergraph& b);
Hypergraph hypergraph_difference(const Hypergraph& a, const Hypergraph& b);

struct Edge {
  VertexId a = 0;
  VertexId b = 0;

  Edge() = default;
  Edge(VertexId x, VertexId y) : a(std::min(x, y)), b(std::max(x, y)) {
    if (x == y) throw std::invalid_argument("self-loop edge");
  }

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Simple undirected graph on [0, n) with sorted edge list, sorted adjacency
// lists and a hash index for O(1) expected pair queries.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::uint32_t n) : n_(n), adjacency_(n) {}
  Graph(std::uint32_t n, std::vector<Edge> edges) : n_(n), adjacency_(n) {
    for (const auto& e : edges) {
      if (e.b >= n_) throw std::out_of_range("edge endpoint " + std::to_string(e.b) + " >= n=" + std::to_string(n_));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    index_.reserve(edges_.size() * 2);
    for (const auto& e : edges_) {
      adjacency_[e.a].push_back(e.b);
      adjacency_[e.b].push_back(e.a);
      index_.insert(key(e.a, e.b));
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
  }

  std::uint32_t n() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
  std::size_t degree(VertexId v) const { return adjacency_[v].size(); }

  bool has_edge(VertexId x, VertexId y) const {
    if (x == y || x >= n_ || y >= n_) return false;
    return index_.contains(key(std::min(x, y), std::max(x, y)));
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  static std::uint64_t key(VertexId a, VertexId b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

  std::uint32_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::unordered_set<std::uint64_t> index_;
};

Graph graph_union(const Graph& a, const Graph& b);

// W[i][j] = number of hyperedges containing both i and j. Dense, symmetric,
// zero diagonal.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  explicit SimilarityMatrix(std::uint32_t n) : n_(n), counts_(static_cast<std::size_t>(n) * n, 0) {}

  std::uint32_t n() const { return n_; }
  std::uint32_t at(VertexId i, VertexId j) const { return counts_[static_cast<std::size_t>(i) * n_ + j]; }

  // Adds `count` to the symmetric pair (i, j), i != j.
  void add(VertexId i, VertexId j, std::uint32_t count = 1) {
    if (i == j) throw std::invalid_argument("similarity diagonal must stay zero");
    if (i >= n_ || j >= n_) throw std::out_of_range("similarity index out of range");
    counts_[static_cast<std::size_t>(i) * n_ + j] += count;
    counts_[static_cast<std::size_t>(j) * n_ + i] += count;
  }

  friend bool operator==(const SimilarityMatrix&, const SimilarityMatrix&) = default;

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint32_t> counts_;
};

// ---------------------------------------------------------------------------

inline Hypergraph hypergraph_union(const Hypergraph& a, const Hypergraph& b) {
  if (a.n() != b.n() || a.d() != b.d()) throw std::invalid_argument("union of incompatible hypergraphs");
  std::vector<Hyperedge> all = a.hyperedges();
  const auto more = b.hyperedges();
  all.insert(all.end(), more.begin(), more.end());
  return Hypergraph(a.n(), a.d(), all);
}

inline Hypergraph hypergraph_difference(const Hypergraph& a, const Hypergraph& b) {
  if (a.n() != b.n() || a.d() != b.d()) throw std::invalid_argument("difference of incompatible hypergraphs");
  std::vector<Hyperedge> kept;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b.find(a.edge(i)) < 0) kept.push_back(a.hyperedge(i));
  }
  return Hypergraph(a.n(), a.d(), kept);
}

inline Graph graph_union(const Graph& a, const Graph& b) {
  if (a.n() != b.n()) throw std::invalid_argument("union of graphs with different n");
  std::vector<Edge> all = a.edges();
  all.insert(all.end(), b.edges().begin(), b.edges().end());
  return Graph(a.n(), std::move(all));
}

}  // namespace hyperlift
