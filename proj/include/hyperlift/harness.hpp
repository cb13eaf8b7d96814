#pragma once

// Experiment orchestration: seeded sweeps over (n, delta, algorithm), the
// HSBM similarity-matrix pipeline, Monte Carlo copy counts, planted-gadget
// trials, and CSV / JSON serialization of the results.
//
// Every replicate draws from its own stream, derive_seed(base, {tag, coords...}),
// so results never depend on the number of worker threads or on scheduling.

#include "hyperlift/components.hpp"
#include "hyperlift/gadgets.hpp"
#include "hyperlift/generate.hpp"
#include "hyperlift/pattern.hpp"
#include "hyperlift/preimage.hpp"
#include "hyperlift/projection.hpp"
#include "hyperlift/random.hpp"
#include "hyperlift/rational.hpp"
#include "hyperlift/reconstruct.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hyperlift {

inline constexpr std::uint64_t kStreamSweep = 0x7377656570ULL;       // "sweep"
inline constexpr std::uint64_t kStreamHsbmTrial = 0x68747269616cULL;  // "htrial"
inline constexpr std::uint64_t kStreamMonteCarlo = 0x6d6f6e7465ULL;   // "monte"
inline constexpr std::uint64_t kStreamBackground = 0x6267ULL;         // "bg"
inline constexpr std::uint64_t kStreamPlant = 0x706c616e74ULL;        // "plant"

inline constexpr const char* kStatusOk = "ok";
inline constexpr const char* kStatusTooLarge = "component_too_large";

// Runs fn(0..count-1) on up to `threads` workers pulling from a shared
// counter. The first exception thrown by any call is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; !failed && (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Sweeps.

struct SweepSpec {
  std::uint32_t d = 3;
  std::vector<std::uint32_t> n;
  std::vector<Rational> delta;
  std::uint64_t seeds = 1;
  std::uint64_t base_seed = 0;
  std::vector<Algorithm> algorithms{Algorithm::map};
  std::string output;
  unsigned threads = 1;
  double c = 1.0;
  std::size_t abort_threshold = MapOptions{}.abort_threshold;

  DensityParams cell(std::uint32_t n_value, const Rational& delta_value) const {
    DensityParams p;
    p.d = d;
    p.n = n_value;
    p.delta = delta_value;
    p.c = c;
    return p;
  }

  void validate() const {
    if (n.empty()) throw std::invalid_argument("sweep needs at least one n");
    if (delta.empty()) throw std::invalid_argument("sweep needs at least one delta");
    if (algorithms.empty()) throw std::invalid_argument("sweep needs at least one algorithm");
    if (seeds == 0) throw std::invalid_argument("sweep needs seeds >= 1");
    for (const auto nv : n) {
      for (const auto& dv : delta) cell(nv, dv).validate();
    }
  }
};

inline std::uint64_t cell_seed(std::uint64_t base, std::uint32_t d, std::uint32_t n, const Rational& delta,
                               std::uint64_t replicate) {
  return derive_seed(base, {kStreamSweep, d, n, static_cast<std::uint64_t>(delta.num()),
                            static_cast<std::uint64_t>(delta.den()), replicate});
}

struct SweepRecord {
  std::uint32_t d = 0;
  std::uint32_t n = 0;
  Rational delta;
  std::uint64_t replicate = 0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::map;
  bool exact = false;
  bool is_preimage = false;
  std::size_t output_size = 0;
  std::size_t truth_size = 0;
  std::size_t max_component_size = 0;
  std::size_t component_count = 0;
  std::size_t ambiguous_component_count = 0;
  std::string status = kStatusOk;
  double elapsed = 0.0;  // seconds; written only to the timing file
};

// One replicate of one cell: all requested algorithms on the same draw.
inline std::vector<SweepRecord> run_replicate(const SweepSpec& spec, std::uint32_t n, const Rational& delta,
                                              std::uint64_t replicate) {
  const std::uint64_t seed = cell_seed(spec.base_seed, spec.d, n, delta, replicate);
  const Hypergraph truth = generate_random_hypergraph(spec.cell(n, delta), seed);
  const Graph g = project(truth);
  const ComponentPartition parts = decompose(clique_hypergraph(g, spec.d));
  MapOptions opt;
  opt.abort_threshold = spec.abort_threshold;

  std::vector<SweepRecord> out;
  for (const Algorithm a : spec.algorithms) {
    SweepRecord r;
    r.d = spec.d;
    r.n = n;
    r.delta = delta;
    r.replicate = replicate;
    r.seed = seed;
    r.algorithm = a;
    r.truth_size = truth.size();
    r.max_component_size = parts.largest();
    r.component_count = parts.size();
    try {
      const ReconstructionResult res = reconstruct(a, g, spec.d, opt);
      r.exact = verify_exact(res, truth);
      r.is_preimage = res.is_preimage;
      r.output_size = res.output.size();
      r.ambiguous_component_count = res.components.ambiguous_components;
      r.elapsed = res.elapsed.count();
    } catch (const ComponentTooLarge&) {
      r.status = kStatusTooLarge;
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Records come out in the order n, delta, replicate, algorithm regardless of
// the thread count; `on_record` sees each one as soon as its prefix is done.
inline std::vector<SweepRecord> run_sweep(const SweepSpec& spec,
                                          const std::function<void(const SweepRecord&)>& on_record = {}) {
  spec.validate();
  struct Task {
    std::uint32_t n;
    Rational delta;
    std::uint64_t replicate;
  };
  std::vector<Task> tasks;
  for (const auto nv : spec.n) {
    for (const auto& dv : spec.delta) {
      for (std::uint64_t r = 0; r < spec.seeds; ++r) tasks.push_back({nv, dv, r});
    }
  }
  std::vector<std::optional<std::vector<SweepRecord>>> slots(tasks.size());
  std::vector<SweepRecord> all;
  std::size_t emitted = 0;
  std::mutex mutex;
  parallel_for(tasks.size(), spec.threads, [&](std::size_t i) {
    auto recs = run_replicate(spec, tasks[i].n, tasks[i].delta, tasks[i].replicate);
    std::lock_guard lock(mutex);
    slots[i] = std::move(recs);
    for (; emitted < slots.size() && slots[emitted]; ++emitted) {
      for (auto& r : *slots[emitted]) {
        if (on_record) on_record(r);
        all.push_back(std::move(r));
      }
      slots[emitted].reset();
    }
  });
  return all;
}

struct RateSummary {
  std::uint32_t d = 0;
  std::uint32_t n = 0;
  Rational delta;
  Algorithm algorithm = Algorithm::map;
  std::size_t trials = 0;
  std::size_t exact = 0;
  std::size_t aborted = 0;

  double rate() const { return trials == 0 ? 0.0 : static_cast<double>(exact) / static_cast<double>(trials); }
  double failure_rate() const { return 1.0 - rate(); }
  double standard_error() const {
    if (trials == 0) return 0.0;
    const double r = rate();
    return std::sqrt(r * (1.0 - r) / static_cast<double>(trials));
  }
};

// Groups by (n, delta, algorithm) in first-appearance order.
inline std::vector<RateSummary> summarize(const std::vector<SweepRecord>& records) {
  std::vector<RateSummary> out;
  for (const auto& r : records) {
    auto it = std::find_if(out.begin(), out.end(), [&](const RateSummary& s) {
      return s.d == r.d && s.n == r.n && s.delta == r.delta && s.algorithm == r.algorithm;
    });
    if (it == out.end()) {
      out.push_back({r.d, r.n, r.delta, r.algorithm});
      it = std::prev(out.end());
    }
    ++it->trials;
    it->exact += r.exact;
    it->aborted += r.status != kStatusOk;
  }
  return out;
}

inline std::optional<RateSummary> find_summary(const std::vector<RateSummary>& s, std::uint32_t n,
                                               const Rational& delta, Algorithm a) {
  for (const auto& x : s) {
    if (x.n == n && x.delta == delta && x.algorithm == a) return x;
  }
  return std::nullopt;
}

// 1 + 2^(d+1) / ((d-1)/(d+1) - delta), defined only when delta is at least
// 1/10 below (d-1)/(d+1).
inline std::optional<Rational> component_size_bound(std::uint32_t d, const Rational& delta) {
  const Rational critical(static_cast<std::int64_t>(d) - 1, static_cast<std::int64_t>(d) + 1);
  if (delta > critical - Rational(1, 10)) return std::nullopt;
  return Rational(1) + Rational(std::int64_t{1} << (d + 1)) / (critical - delta);
}

// ---------------------------------------------------------------------------
// Serialization.

inline const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols{
      "d",           "n",           "delta",      "replicate",          "seed",
      "algorithm",   "exact",       "is_preimage", "output_size",       "truth_size",
      "max_component_size", "component_count", "ambiguous_component_count", "status"};
  return cols;
}

inline std::string csv_header() {
  std::string out;
  for (const auto& c : sweep_columns()) out += (out.empty() ? "" : ",") + c;
  return out;
}

inline std::string csv_row(const SweepRecord& r) {
  std::ostringstream s;
  s << r.d << ',' << r.n << ',' << r.delta.str() << ',' << r.replicate << ',' << r.seed << ','
    << to_string(r.algorithm) << ',' << r.exact << ',' << r.is_preimage << ',' << r.output_size << ','
    << r.truth_size << ',' << r.max_component_size << ',' << r.component_count << ','
    << r.ambiguous_component_count << ',' << r.status;
  return s.str();
}

inline std::string timing_header() { return "d,n,delta,replicate,algorithm,elapsed_seconds"; }

inline std::string timing_row(const SweepRecord& r) {
  std::ostringstream s;
  s << r.d << ',' << r.n << ',' << r.delta.str() << ',' << r.replicate << ',' << to_string(r.algorithm) << ','
    << r.elapsed;
  return s.str();
}

inline nlohmann::ordered_json to_json(const SweepRecord& r) {
  nlohmann::ordered_json j;
  j["d"] = r.d;
  j["n"] = r.n;
  j["delta"] = r.delta.str();
  j["replicate"] = r.replicate;
  j["seed"] = r.seed;
  j["algorithm"] = to_string(r.algorithm);
  j["exact"] = r.exact;
  j["is_preimage"] = r.is_preimage;
  j["output_size"] = r.output_size;
  j["truth_size"] = r.truth_size;
  j["max_component_size"] = r.max_component_size;
  j["component_count"] = r.component_count;
  j["ambiguous_component_count"] = r.ambiguous_component_count;
  j["status"] = r.status;
  return j;
}

inline nlohmann::ordered_json to_json(const RateSummary& s) {
  return {{"d", s.d},         {"n", s.n},         {"delta", s.delta.str()}, {"algorithm", to_string(s.algorithm)},
          {"trials", s.trials}, {"exact", s.exact}, {"aborted", s.aborted},  {"rate", s.rate()},
          {"standard_error", s.standard_error()}};
}

// Sweep config grammar, one setting per line:
//
//   line    := blank | '#' comment | key '=' value
//   value   := scalar | '[' scalar (',' scalar)* ']'
//   scalar  := integer | rational "a/b" | decimal | word | '"' text '"'
//
// Keys: d, n, delta, seeds, base_seed, algorithms, threads, c,
// abort_threshold, output. List keys (n, delta, algorithms) also accept a
// bare comma-separated list.
namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string unquote(std::string s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

inline std::vector<std::string> split_list(std::string value) {
  value = trim(value);
  if (!value.empty() && value.front() == '[') {
    if (value.back() != ']') throw std::invalid_argument("unterminated list");
    value = value.substr(1, value.size() - 2);
  }
  std::vector<std::string> out;
  std::stringstream ss(value);
  for (std::string item; std::getline(ss, item, ',');) {
    item = unquote(trim(item));
    if (item.empty()) throw std::invalid_argument("empty list element");
    out.push_back(item);
  }
  return out;
}

template <class T>
T parse_unsigned(const std::string& s) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used);
  if (used != s.size() || s.front() == '-') throw std::invalid_argument("expected a nonnegative integer: " + s);
  if (v > std::numeric_limits<T>::max()) throw std::invalid_argument("integer out of range: " + s);
  return static_cast<T>(v);
}

// Rationals are written "a/b"; plain decimals are read exactly ("0.45" = 9/20).
inline Rational parse_exact(const std::string& s) {
  const auto dot = s.find('.');
  if (dot == std::string::npos) return Rational::parse(s);
  const std::string frac = s.substr(dot + 1);
  if (frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("bad decimal: " + s);
  }
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::string whole = s.substr(0, dot);
  const bool negative = !whole.empty() && whole.front() == '-';
  const std::int64_t w = whole.empty() || whole == "-" ? 0 : std::stoll(whole);
  const std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
  const std::int64_t num = w * den + (negative ? -f : f);
  return Rational(num, den);
}

}  // namespace detail

inline SweepSpec parse_sweep_config(std::istream& in) {
  SweepSpec spec;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const auto fail = [&](const std::string& what) {
      return std::runtime_error("sweep config line " + std::to_string(line_no) + ": " + what);
    };
    if (eq == std::string::npos) throw fail("expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (value.empty()) throw fail("missing value for " + key);
    try {
      if (key == "d") {
        spec.d = detail::parse_unsigned<std::uint32_t>(value);
      } else if (key == "n") {
        spec.n.clear();
        for (const auto& x : detail::split_list(value)) spec.n.push_back(detail::parse_unsigned<std::uint32_t>(x));
      } else if (key == "delta") {
        spec.delta.clear();
        for (const auto& x : detail::split_list(value)) spec.delta.push_back(detail::parse_exact(x));
      } else if (key == "seeds") {
        spec.seeds = detail::parse_unsigned<std::uint64_t>(value);
      } else if (key == "base_seed") {
        spec.base_seed = detail::parse_unsigned<std::uint64_t>(value);
      } else if (key == "algorithms") {
        spec.algorithms.clear();
        for (const auto& x : detail::split_list(value)) spec.algorithms.push_back(parse_algorithm(x));
      } else if (key == "threads") {
        spec.threads = detail::parse_unsigned<unsigned>(value);
      } else if (key == "c") {
        spec.c = std::stod(value);
      } else if (key == "abort_threshold") {
        spec.abort_threshold = detail::parse_unsigned<std::size_t>(value);
      } else if (key == "output") {
        spec.output = detail::unquote(value);
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::exception& e) {
      throw fail(e.what());
    }
  }
  return spec;
}

// ---------------------------------------------------------------------------
// HSBM pipeline: W -> support graph -> MAP -> compare with the sample.

struct HsbmTrial {
  std::uint64_t seed = 0;
  std::size_t truth_size = 0;
  bool exact = false;
  bool is_preimage = false;
  std::size_t max_component_size = 0;
  std::size_t ambiguous_components = 0;
  std::string status = kStatusOk;
  double elapsed = 0.0;
};

struct HsbmSummary {
  HsbmParams params;
  std::vector<HsbmTrial> trials;

  std::size_t exact_count() const {
    return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.exact; }));
  }
  double rate() const {
    return trials.empty() ? 0.0 : static_cast<double>(exact_count()) / static_cast<double>(trials.size());
  }
};

inline HsbmTrial hsbm_trial(const HsbmParams& params, std::uint64_t seed, const MapOptions& opt = {}) {
  HsbmTrial t;
  t.seed = seed;
  const HsbmSample sample = generate_hsbm(params, seed);
  t.truth_size = sample.hypergraph.size();
  const Graph support = support_graph(similarity_matrix(sample.hypergraph));
  try {
    const ReconstructionResult r = map_reconstruct(support, params.d, opt);
    t.exact = verify_exact(r, sample.hypergraph);
    t.is_preimage = r.is_preimage;
    t.max_component_size = r.components.max_size;
    t.ambiguous_components = r.components.ambiguous_components;
    t.elapsed = r.elapsed.count();
  } catch (const ComponentTooLarge& e) {
    t.status = kStatusTooLarge;
    t.max_component_size = e.size();
  }
  return t;
}

inline HsbmSummary hsbm_pipeline(const HsbmParams& params, std::uint64_t seeds, std::uint64_t base_seed,
                                 unsigned threads = 1, const MapOptions& opt = {}) {
  params.validate();
  HsbmSummary s;
  s.params = params;
  s.trials.resize(seeds);
  parallel_for(seeds, threads, [&](std::size_t i) {
    s.trials[i] = hsbm_trial(params, derive_seed(base_seed, {kStreamHsbmTrial, i}), opt);
  });
  return s;
}

inline nlohmann::ordered_json to_json(const HsbmTrial& t) {
  return {{"seed", t.seed},
          {"truth_size", t.truth_size},
          {"exact", t.exact},
          {"is_preimage", t.is_preimage},
          {"max_component_size", t.max_component_size},
          {"ambiguous_components", t.ambiguous_components},
          {"status", t.status}};
}

// ---------------------------------------------------------------------------
// Counting copies of a pattern.

class CountBudgetExceeded : public std::runtime_error {
 public:
  explicit CountBudgetExceeded(std::uint64_t budget)
      : std::runtime_error("subgraph count exceeded its budget of " + std::to_string(budget) + " steps") {}
};

namespace detail {

// Injective maps V(K) -> V(H) sending every hyperedge of K onto one of H,
// found by extending a partial map one pattern hyperedge at a time.
class EmbeddingCounter {
 public:
  EmbeddingCounter(const Hypergraph& k, const Hypergraph& h, std::uint64_t budget)
      : k_(k), h_(h), incident_(h.n()), map_(k.n(), kUnmapped), used_(h.n(), false), budget_(budget) {
    if (k.d() != h.d()) throw std::invalid_argument("pattern and host differ in d");
    for (std::size_t i = 0; i < h.size(); ++i) {
      for (const VertexId x : h.edge(i)) incident_[x].push_back(i);
    }
    // Place the hyperedge touching the most already-placed vertices next.
    std::vector<bool> placed(k.size(), false), seen(k.n(), false);
    for (std::size_t step = 0; step < k.size(); ++step) {
      std::size_t best = k.size();
      int best_score = -1;
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (placed[i]) continue;
        int score = 0;
        for (const VertexId x : k.edge(i)) score += seen[x];
        if (score > best_score) best = i, best_score = score;
      }
      placed[best] = true;
      order_.push_back(best);
      for (const VertexId x : k.edge(best)) seen[x] = true;
    }
  }

  std::uint64_t run() {
    extend(0);
    return count_;
  }

 private:
  static constexpr VertexId kUnmapped = std::numeric_limits<VertexId>::max();

  void extend(std::size_t depth) {
    if (depth == order_.size()) {
      ++count_;
      return;
    }
    const auto ke = k_.edge(order_[depth]);
    std::vector<VertexId> image;
    std::optional<VertexId> anchor;
    for (const VertexId x : ke) {
      if (map_[x] == kUnmapped) continue;
      image.push_back(map_[x]);
      if (!anchor || incident_[map_[x]].size() < incident_[*anchor].size()) anchor = map_[x];
    }
    if (image.size() == ke.size()) {
      tick();
      std::sort(image.begin(), image.end());
      if (h_.find(image) >= 0) extend(depth + 1);
      return;
    }
    if (anchor) {
      for (const std::size_t f : incident_[*anchor]) try_host(depth, ke, h_.edge(f));
    } else {
      for (std::size_t f = 0; f < h_.size(); ++f) try_host(depth, ke, h_.edge(f));
    }
  }

  void try_host(std::size_t depth, std::span<const VertexId> ke, std::span<const VertexId> he) {
    tick();
    std::vector<VertexId> open_k, open_h;
    for (const VertexId x : ke) {
      if (map_[x] == kUnmapped) {
        open_k.push_back(x);
      } else if (!std::binary_search(he.begin(), he.end(), map_[x])) {
        return;
      }
    }
    for (const VertexId y : he) {
      if (!used_[y]) open_h.push_back(y);
    }
    if (open_h.size() != open_k.size()) return;
    do {
      for (std::size_t i = 0; i < open_k.size(); ++i) {
        map_[open_k[i]] = open_h[i];
        used_[open_h[i]] = true;
      }
      extend(depth + 1);
      for (std::size_t i = 0; i < open_k.size(); ++i) {
        map_[open_k[i]] = kUnmapped;
        used_[open_h[i]] = false;
      }
    } while (std::next_permutation(open_h.begin(), open_h.end()));
  }

  void tick() {
    if (++steps_ > budget_) throw CountBudgetExceeded(budget_);
  }

  const Hypergraph& k_;
  const Hypergraph& h_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::size_t> order_;
  std::vector<VertexId> map_;
  std::vector<bool> used_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  std::uint64_t count_ = 0;
};

}  // namespace detail

inline constexpr std::uint64_t kDefaultCountBudget = 100'000'000;

inline std::uint64_t count_embeddings(const Pattern& k, const Hypergraph& h,
                                      std::uint64_t budget = kDefaultCountBudget) {
  return detail::EmbeddingCounter(k.hypergraph(), h, budget).run();
}

// Sub-hypergraphs of h isomorphic to k (not necessarily induced).
inline std::uint64_t count_copies(const Pattern& k, const Hypergraph& h, std::uint64_t budget = kDefaultCountBudget) {
  const BigInt aut = automorphism_count(k);
  const BigInt copies = BigInt(count_embeddings(k, h, budget)) / aut;
  return copies.convert_to<std::uint64_t>();
}

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t trials = 0;
};

inline McEstimate mc_subgraph_count(const Pattern& k, std::uint32_t n, double p, std::uint64_t trials,
                                    std::uint64_t seed, unsigned threads = 1,
                                    std::uint64_t budget = kDefaultCountBudget) {
  if (trials == 0) throw std::invalid_argument("mc_subgraph_count needs trials >= 1");
  DensityParams params;
  params.d = k.d();
  params.n = n;
  params.p_override = p;
  params.validate();
  std::vector<double> counts(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    const Hypergraph h = generate_random_hypergraph(params, derive_seed(seed, {kStreamMonteCarlo, t}));
    counts[t] = static_cast<double>(count_copies(k, h, budget));
  });
  McEstimate est;
  est.trials = trials;
  for (const double c : counts) est.mean += c;
  est.mean /= static_cast<double>(trials);
  if (trials > 1) {
    double ss = 0.0;
    for (const double c : counts) ss += (c - est.mean) * (c - est.mean);
    est.standard_error = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
  }
  return est;
}

// ---------------------------------------------------------------------------
// Planted ambiguous gadget.

struct PlantedTrial {
  std::uint64_t seed = 0;
  int variant = 0;               // which preimage of the gadget was planted
  bool collision = false;        // a planted hyperedge was already present; trial discarded
  bool isolated = false;         // the gadget's cliques form one component on their own
  bool exact = false;            // MAP recovered the whole hypergraph
  bool map_canonical = false;    // MAP's answer on the gadget is its canonical minimum cover
  bool variant_matches = false;  // ... and equals the planted variant
  bool other_matches = false;    // ... or the other variant
  std::string status = kStatusOk;
};

inline PlantedTrial planted_gadget_trial(std::uint32_t d, const DensityParams& background, std::uint64_t seed,
                                         const MapOptions& opt = {}) {
  const AmbiguousGadget gadget = build_ambiguous_gadget(d);
  const std::uint32_t v = gadget.preimage1.n();
  const std::uint32_t n = background.n;
  if (background.d != d) throw std::invalid_argument("background d differs from gadget d");
  if (n < v) throw std::invalid_argument("n=" + std::to_string(n) + " too small to plant a gadget on " +
                                         std::to_string(v) + " vertices");
  PlantedTrial t;
  t.seed = seed;
  const Hypergraph bg = generate_random_hypergraph(background, derive_seed(seed, {kStreamBackground}));

  Rng rng(derive_seed(seed, {kStreamPlant}));
  t.variant = static_cast<int>(rng.below(2));
  std::vector<VertexId> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::uint32_t i = 0; i < v; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
  const auto place = [&](const Hypergraph& g) {
    std::vector<Hyperedge> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::vector<VertexId> e;
      for (const VertexId x : g.edge(i)) e.push_back(pool[x]);
      out.emplace_back(std::move(e));
    }
    return Hypergraph(n, d, out);
  };
  const Hypergraph planted = place(t.variant == 0 ? gadget.preimage1 : gadget.preimage2);
  const Hypergraph other = place(t.variant == 0 ? gadget.preimage2 : gadget.preimage1);
  const Hypergraph gadget_cli = place(clique_hypergraph(gadget.projection, d));

  for (std::size_t i = 0; i < planted.size(); ++i) t.collision = t.collision || bg.find(planted.edge(i)) >= 0;
  if (t.collision) return t;

  const Hypergraph truth = hypergraph_union(bg, planted);
  const Graph g = project(truth);
  const Hypergraph cli = clique_hypergraph(g, d);
  const ComponentPartition parts = decompose(cli);
  const auto anchor = static_cast<std::size_t>(cli.find(gadget_cli.edge(0)));
  for (const auto& c : parts.components) {
    if (std::binary_search(c.edges.begin(), c.edges.end(), anchor)) t.isolated = c.as_hypergraph(cli) == gadget_cli;
  }

  ReconstructionResult r;
  try {
    r = map_reconstruct(g, d, opt);
  } catch (const ComponentTooLarge&) {
    t.status = kStatusTooLarge;
    return t;
  }
  t.exact = verify_exact(r, truth);
  if (t.isolated) {
    std::vector<Hyperedge> local;
    for (std::size_t i = 0; i < r.output.size(); ++i) {
      if (gadget_cli.find(r.output.edge(i)) >= 0) local.push_back(r.output.hyperedge(i));
    }
    const Hypergraph answer(n, d, local);
    const PreimageReport canonical = min_preimage(project(planted), d);
    t.map_canonical = canonical.feasible && answer == canonical.min_covers.front();
    t.variant_matches = answer == planted;
    t.other_matches = answer == other;
  }
  return t;
}

inline nlohmann::ordered_json to_json(const PlantedTrial& t) {
  return {{"seed", t.seed},         {"variant", t.variant},
          {"collision", t.collision}, {"isolated", t.isolated},
          {"exact", t.exact},       {"map_canonical", t.map_canonical},
          {"variant_matches", t.variant_matches}, {"other_matches", t.other_matches},
          {"status", t.status}};
}

}  // namespace hyperlift
