#pragma once

// Plain-text formats. All vertex ids are 0-indexed.
//
//   .hg   "d n" header, then one sorted hyperedge per line, lines sorted
//   .el   "n" header, then "a b" per line with a < b, lines sorted
//   .sim  "n" header, then "i j count" per nonzero pair with i < j, sorted
//
// Writers emit the canonical form, so write(read(x)) is byte-identical for
// any canonical input. Readers accept unsorted bodies and blank lines.

#include "hyperlift/hypergraph.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperlift {

namespace detail {

inline bool next_data_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

[[noreturn]] inline void parse_error(const std::string& what, std::size_t line_no) {
  throw std::runtime_error("parse error on line " + std::to_string(line_no) + ": " + what);
}

template <class T>
std::vector<T> parse_fields(const std::string& line, std::size_t expected, std::size_t line_no) {
  std::istringstream ss(line);
  std::vector<T> out;
  long long x;
  while (ss >> x) {
    if (x < 0) parse_error("negative value", line_no);
    out.push_back(static_cast<T>(x));
  }
  if (!ss.eof()) parse_error("non-numeric token", line_no);
  if (out.size() != expected) {
    parse_error("expected " + std::to_string(expected) + " fields, got " + std::to_string(out.size()), line_no);
  }
  return out;
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace detail

inline void write_hg(std::ostream& out, const Hypergraph& h) {
  out << h.d() << ' ' << h.n() << '\n';
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto e = h.edge(i);
    for (std::size_t j = 0; j < e.size(); ++j) out << (j ? " " : "") << e[j];
    out << '\n';
  }
}

inline Hypergraph read_hg(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!detail::next_data_line(in, line, line_no)) throw std::runtime_error("empty .hg input");
  const auto header = detail::parse_fields<std::uint32_t>(line, 2, line_no);
  const std::uint32_t d = header[0], n = header[1];
  std::vector<Hyperedge> edges;
  while (detail::next_data_line(in, line, line_no)) {
    auto fields = detail::parse_fields<VertexId>(line, d, line_no);
    try {
      edges.emplace_back(std::move(fields));
    } catch (const std::invalid_argument& e) {
      detail::parse_error(e.what(), line_no);
    }
    for (const VertexId v : edges.back()) {
      if (v >= n) detail::parse_error("vertex " + std::to_string(v) + " >= n", line_no);
    }
  }
  return Hypergraph(n, d, edges);
}

inline void write_el(std::ostream& out, const Graph& g) {
  out << g.n() << '\n';
  for (const auto& e : g.edges()) out << e.a << ' ' << e.b << '\n';
}

inline Graph read_el(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!detail::next_data_line(in, line, line_no)) throw std::runtime_error("empty .el input");
  const std::uint32_t n = detail::parse_fields<std::uint32_t>(line, 1, line_no)[0];
  std::vector<Edge> edges;
  while (detail::next_data_line(in, line, line_no)) {
    const auto f = detail::parse_fields<VertexId>(line, 2, line_no);
    if (f[0] == f[1]) detail::parse_error("self-loop", line_no);
    if (f[0] >= n || f[1] >= n) detail::parse_error("vertex >= n", line_no);
    edges.emplace_back(f[0], f[1]);
  }
  return Graph(n, std::move(edges));
}

inline void write_sim(std::ostream& out, const SimilarityMatrix& w) {
  out << w.n() << '\n';
  for (VertexId i = 0; i < w.n(); ++i) {
    for (VertexId j = i + 1; j < w.n(); ++j) {
      if (const auto c = w.at(i, j); c > 0) out << i << ' ' << j << ' ' << c << '\n';
    }
  }
}

inline SimilarityMatrix read_sim(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!detail::next_data_line(in, line, line_no)) throw std::runtime_error("empty .sim input");
  const std::uint32_t n = detail::parse_fields<std::uint32_t>(line, 1, line_no)[0];
  SimilarityMatrix w(n);
  std::vector<bool> seen(static_cast<std::size_t>(n) * n, false);
  while (detail::next_data_line(in, line, line_no)) {
    const auto f = detail::parse_fields<std::uint32_t>(line, 3, line_no);
    const VertexId i = std::min(f[0], f[1]), j = std::max(f[0], f[1]);
    if (i == j) detail::parse_error("diagonal entry", line_no);
    if (j >= n) detail::parse_error("index >= n", line_no);
    if (seen[static_cast<std::size_t>(i) * n + j]) detail::parse_error("duplicate pair", line_no);
    seen[static_cast<std::size_t>(i) * n + j] = true;
    if (f[2] > 0) w.add(i, j, f[2]);
  }
  return w;
}

inline Hypergraph load_hg(const std::string& path) {
  auto in = detail::open_in(path);
  return read_hg(in);
}
inline Graph load_el(const std::string& path) {
  auto in = detail::open_in(path);
  return read_el(in);
}
inline SimilarityMatrix load_sim(const std::string& path) {
  auto in = detail::open_in(path);
  return read_sim(in);
}
inline void save_hg(const std::string& path, const Hypergraph& h) {
  auto out = detail::open_out(path);
  write_hg(out, h);
}
inline void save_el(const std::string& path, const Graph& g) {
  auto out = detail::open_out(path);
  write_el(out, g);
}
inline void save_sim(const std::string& path, const SimilarityMatrix& w) {
  auto out = detail::open_out(path);
  write_sim(out, w);
}

inline std::string to_hg_string(const Hypergraph& h) {
  std::ostringstream ss;
  write_hg(ss, h);
  return ss.str();
}
inline std::string to_el_string(const Graph& g) {
  std::ostringstream ss;
  write_el(ss, g);
  return ss.str();
}

}  // namespace hyperlift
