#pragma once

// Small pattern hypergraphs: canonical labeling and automorphism counting.
//
// Vertices lying in exactly the same hyperedges ("twins") are collapsed
// first; a class of t twins contributes t! automorphisms and becomes one
// quotient vertex coloured by t. The quotient is labeled by colour
// refinement on the vertex/hyperedge incidence structure plus
// individualization, exploring every branch of the search tree. The
// canonical labeling is the leaf with the least certificate; the
// automorphism group of the quotient is counted as the number of leaves
// whose certificate equals the first leaf's.

#include "hyperlift/hypergraph.hpp"
#include "hyperlift/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperlift {

// A d-uniform hypergraph on [0, v) without isolated vertices.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(Hypergraph h) : h_(std::move(h)) {
    std::vector<bool> used(h_.n(), false);
    for (const VertexId x : h_.flat()) used[x] = true;
    if (std::find(used.begin(), used.end(), false) != used.end()) {
      throw std::invalid_argument("pattern has isolated vertices; use Pattern::compact");
    }
  }
  Pattern(std::uint32_t d, const std::vector<Hyperedge>& edges) : Pattern(compact(d, edges)) {}

  // Relabels the vertices used by `edges` to 0..v-1 preserving order.
  static Pattern compact(std::uint32_t d, const std::vector<Hyperedge>& edges) {
    std::vector<VertexId> vs;
    for (const auto& e : edges) vs.insert(vs.end(), e.begin(), e.end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::vector<Hyperedge> out;
    for (const auto& e : edges) {
      std::vector<VertexId> r;
      for (const VertexId x : e) r.push_back(static_cast<VertexId>(std::lower_bound(vs.begin(), vs.end(), x) - vs.begin()));
      out.emplace_back(std::move(r));
    }
    return Pattern(Hypergraph(static_cast<std::uint32_t>(vs.size()), d, out));
  }
  static Pattern compact(const Hypergraph& h) { return compact(h.d(), h.hyperedges()); }

  std::uint32_t v() const { return h_.n(); }
  std::size_t e() const { return h_.size(); }
  std::uint32_t d() const { return h_.d(); }
  const Hypergraph& hypergraph() const { return h_; }

  // Applies `perm` (old id -> new id).
  Pattern relabeled(const std::vector<VertexId>& perm) const {
    std::vector<Hyperedge> out;
    for (std::size_t i = 0; i < h_.size(); ++i) {
      std::vector<VertexId> r;
      for (const VertexId x : h_.edge(i)) r.push_back(perm.at(x));
      out.emplace_back(std::move(r));
    }
    return Pattern(Hypergraph(v(), d(), out));
  }

  friend bool operator==(const Pattern& a, const Pattern& b) { return a.h_ == b.h_; }

 private:
  Hypergraph h_{1, 2};
};

namespace detail {

struct Quotient {
  std::vector<std::vector<VertexId>> classes;   // twin classes, ordered by least member
  std::vector<std::vector<std::uint32_t>> edges;  // hyperedges as sorted class ids
  std::vector<std::uint32_t> class_of;
};

inline Quotient twin_quotient(const Pattern& p) {
  const Hypergraph& h = p.hypergraph();
  std::vector<std::vector<std::uint32_t>> incidence(p.v());
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (const VertexId x : h.edge(i)) incidence[x].push_back(static_cast<std::uint32_t>(i));
  }
  Quotient q;
  q.class_of.assign(p.v(), 0);
  std::map<std::vector<std::uint32_t>, std::uint32_t> by_signature;
  for (VertexId x = 0; x < p.v(); ++x) {
    auto [it, fresh] = by_signature.emplace(incidence[x], static_cast<std::uint32_t>(q.classes.size()));
    if (fresh) q.classes.emplace_back();
    q.classes[it->second].push_back(x);
    q.class_of[x] = it->second;
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    std::vector<std::uint32_t> e;
    for (const VertexId x : h.edge(i)) e.push_back(q.class_of[x]);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    q.edges.push_back(std::move(e));
  }
  return q;
}

// Replaces arbitrary comparable signatures by dense ranks 0..k-1.
template <class Sig>
std::vector<std::uint32_t> rank_signatures(const std::vector<Sig>& sig) {
  std::vector<Sig> sorted = sig;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::uint32_t> out(sig.size());
  for (std::size_t i = 0; i < sig.size(); ++i) {
    out[i] = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
  }
  return out;
}

class QuotientSearch {
 public:
  QuotientSearch(const Quotient& q, std::vector<std::uint32_t> initial_colors)
      : q_(q), k_(q.classes.size()), initial_(std::move(initial_colors)), incidence_(k_) {
    for (std::size_t i = 0; i < q_.edges.size(); ++i) {
      for (const auto c : q_.edges[i]) incidence_[c].push_back(static_cast<std::uint32_t>(i));
    }
  }

  // Runs the search; afterwards best_labeling() maps class -> canonical
  // position and automorphisms() is |Aut| of the coloured quotient.
  void run(bool count_automorphisms) {
    counting_ = count_automorphisms;
    std::vector<std::uint32_t> colors = refine(rank_signatures(initial_));
    std::vector<std::uint32_t> prefix;
    explore(colors, prefix);
  }

  const std::vector<std::uint32_t>& best_labeling() const { return best_labeling_; }
  std::uint64_t automorphisms() const { return aut_count_; }

 private:
  using Certificate = std::pair<std::vector<std::uint32_t>, std::vector<std::vector<std::uint32_t>>>;

  // Equitable refinement of vertex colours against hyperedge colours.
  std::vector<std::uint32_t> refine(std::vector<std::uint32_t> colors) const {
    std::size_t classes = count_classes(colors);
    while (true) {
      std::vector<std::vector<std::uint32_t>> esig(q_.edges.size());
      for (std::size_t i = 0; i < q_.edges.size(); ++i) {
        for (const auto c : q_.edges[i]) esig[i].push_back(colors[c]);
        std::sort(esig[i].begin(), esig[i].end());
      }
      const auto ecolor = rank_signatures(esig);
      std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> vsig(k_);
      for (std::size_t c = 0; c < k_; ++c) {
        vsig[c].first = colors[c];
        for (const auto i : incidence_[c]) vsig[c].second.push_back(ecolor[i]);
        std::sort(vsig[c].second.begin(), vsig[c].second.end());
      }
      colors = rank_signatures(vsig);
      const std::size_t now = count_classes(colors);
      if (now == classes) return colors;
      classes = now;
    }
  }

  static std::size_t count_classes(const std::vector<std::uint32_t>& colors) {
    std::vector<std::uint32_t> s = colors;
    std::sort(s.begin(), s.end());
    return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
  }

  Certificate certificate(const std::vector<std::uint32_t>& label) const {
    Certificate cert;
    cert.first.assign(k_, 0);
    for (std::size_t c = 0; c < k_; ++c) cert.first[label[c]] = initial_[c];
    for (const auto& e : q_.edges) {
      std::vector<std::uint32_t> r;
      for (const auto c : e) r.push_back(label[c]);
      std::sort(r.begin(), r.end());
      cert.second.push_back(std::move(r));
    }
    std::sort(cert.second.begin(), cert.second.end());
    return cert;
  }

  void explore(const std::vector<std::uint32_t>& colors, std::vector<std::uint32_t>& prefix) {
    // Target cell: least colour shared by more than one class.
    std::vector<std::uint32_t> size(k_, 0);
    for (const auto c : colors) ++size[c];
    std::uint32_t target = UINT32_MAX;
    for (std::uint32_t col = 0; col < k_; ++col) {
      if (size[col] > 1) {
        target = col;
        break;
      }
    }
    if (target == UINT32_MAX) {
      leaf(colors);
      return;
    }
    std::vector<std::uint32_t> cell;
    for (std::uint32_t c = 0; c < k_; ++c) {
      if (colors[c] == target) cell.push_back(c);
    }
    std::vector<std::uint32_t> explored;
    for (const auto w : cell) {
      if (!counting_ && in_explored_orbit(w, explored, prefix)) continue;
      std::vector<std::uint64_t> split(k_);
      for (std::uint32_t c = 0; c < k_; ++c) split[c] = 2 * std::uint64_t{colors[c]} + (c == w ? 0 : 1);
      prefix.push_back(w);
      explore(refine(rank_signatures(split)), prefix);
      prefix.pop_back();
      explored.push_back(w);
    }
  }

  void leaf(const std::vector<std::uint32_t>& label) {
    Certificate cert = certificate(label);
    if (!have_first_) {
      have_first_ = true;
      first_cert_ = cert;
      first_label_ = label;
      best_cert_ = cert;
      best_labeling_ = label;
      aut_count_ = 1;
      return;
    }
    if (cert == first_cert_) {
      ++aut_count_;
      // first_label^-1 ∘ label maps this leaf onto the first: an automorphism.
      std::vector<std::uint32_t> inv(k_), gamma(k_);
      for (std::uint32_t c = 0; c < k_; ++c) inv[first_label_[c]] = c;
      for (std::uint32_t c = 0; c < k_; ++c) gamma[c] = inv[label[c]];
      generators_.push_back(std::move(gamma));
    }
    if (cert < best_cert_) {
      best_cert_ = std::move(cert);
      best_labeling_ = label;
    }
  }

  // Whether w shares an orbit with an explored sibling under the known
  // automorphisms that fix every individualized class.
  bool in_explored_orbit(std::uint32_t w, const std::vector<std::uint32_t>& explored,
                         const std::vector<std::uint32_t>& prefix) const {
    if (explored.empty() || generators_.empty()) return false;
    std::vector<std::uint32_t> parent(k_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool any = false;
    for (const auto& g : generators_) {
      bool fixes = true;
      for (const auto x : prefix) fixes = fixes && g[x] == x;
      if (!fixes) continue;
      any = true;
      for (std::uint32_t c = 0; c < k_; ++c) parent[find(c)] = find(g[c]);
    }
    if (!any) return false;
    for (const auto x : explored) {
      if (find(x) == find(w)) return true;
    }
    return false;
  }

  const Quotient& q_;
  std::size_t k_;
  std::vector<std::uint32_t> initial_;
  std::vector<std::vector<std::uint32_t>> incidence_;
  bool counting_ = false;
  bool have_first_ = false;
  Certificate first_cert_, best_cert_;
  std::vector<std::uint32_t> first_label_, best_labeling_;
  std::vector<std::vector<std::uint32_t>> generators_;
  std::uint64_t aut_count_ = 0;
};

inline std::vector<std::uint32_t> multiplicity_colors(const Quotient& q) {
  std::vector<std::uint32_t> colors;
  for (const auto& cls : q.classes) colors.push_back(static_cast<std::uint32_t>(cls.size()));
  return colors;
}

}  // namespace detail

// Permutation old id -> canonical id. Isomorphic patterns map to identical
// relabeled patterns.
inline std::vector<VertexId> canonical_labeling(const Pattern& p) {
  const auto q = detail::twin_quotient(p);
  detail::QuotientSearch search(q, detail::multiplicity_colors(q));
  search.run(false);
  const auto& label = search.best_labeling();
  std::vector<std::uint32_t> order(q.classes.size());
  for (std::uint32_t c = 0; c < q.classes.size(); ++c) order[label[c]] = c;
  std::vector<VertexId> perm(p.v());
  VertexId next = 0;
  for (const auto c : order) {
    for (const VertexId x : q.classes[c]) perm[x] = next++;
  }
  return perm;
}

inline Pattern canonical_pattern(const Pattern& p) { return p.relabeled(canonical_labeling(p)); }

// Byte string "d v e|a,b,c;..." of the canonical relabeling.
inline std::string canonical_form(const Pattern& p) {
  const Pattern c = canonical_pattern(p);
  std::string s = std::to_string(p.d()) + ' ' + std::to_string(p.v()) + ' ' + std::to_string(p.e()) + '|';
  for (std::size_t i = 0; i < c.e(); ++i) {
    const auto e = c.hypergraph().edge(i);
    for (std::size_t j = 0; j < e.size(); ++j) s += (j ? "," : "") + std::to_string(e[j]);
    s += ';';
  }
  return s;
}

inline BigInt automorphism_count(const Pattern& p) {
  const auto q = detail::twin_quotient(p);
  detail::QuotientSearch search(q, detail::multiplicity_colors(q));
  search.run(true);
  BigInt total = search.automorphisms();
  for (const auto& cls : q.classes) {
    for (std::size_t t = 2; t <= cls.size(); ++t) total *= t;
  }
  return total;
}

}  // namespace hyperlift
