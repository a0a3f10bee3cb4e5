#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mesp/csc.hpp"
#include "mesp/errors.hpp"
#include "mesp/graph.hpp"

namespace mesp {

// Decision instance: is there a shortest path with eccentricity at most k?
struct MespQuery {
  const Graph& graph;
  const DistanceMatrix& distances;
  Hop k = 0;
};

struct SolveStats {
  std::uint64_t guesses = 0;
  std::uint64_t csc_calls = 0;
  std::uint64_t paths_examined = 0;
  double elapsed_ms = 0.0;

  SolveStats& operator+=(const SolveStats& other) {
    guesses += other.guesses;
    csc_calls += other.csc_calls;
    paths_examined += other.paths_examined;
    elapsed_ms += other.elapsed_ms;
    return *this;
  }
};

struct MespAnswer {
  bool decision = false;
  std::optional<Path> witness;
  SolveStats stats;
};

using Clock = std::chrono::steady_clock;

struct SolverOptions {
  unsigned threads = 1;
  int csc_requirement_cap = kDefaultCscRequirementCap;
  std::optional<Clock::time_point> deadline;
};

namespace detail {

inline void validate_query(const MespQuery& q) {
  if (q.k < 0) throw DomainError("desired eccentricity must be non-negative");
  if (q.distances.size() != q.graph.vertex_count()) {
    throw std::invalid_argument("distance matrix does not match the graph");
  }
  if (q.graph.vertex_count() == 0) throw DomainError("graph has no vertices");
}

inline void check_deadline(const SolverOptions& options) {
  if (options.deadline && Clock::now() > *options.deadline) throw Timeout("solve exceeded its deadline");
}

inline double elapsed_ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Packages a witness into an answer. Every solver funnels through here, so a
// yes-answer always carries a verified shortest path of eccentricity <= k.
inline MespAnswer finish(const MespQuery& q, std::optional<Path> witness, SolveStats stats,
                         Clock::time_point start) {
  MespAnswer answer;
  if (witness) {
    if (!is_mesp_witness(q.graph, q.distances, *witness, q.k)) {
      throw std::logic_error("solver produced an invalid witness");
    }
    answer.decision = true;
    answer.witness = std::move(witness);
  }
  stats.elapsed_ms = elapsed_ms_since(start);
  answer.stats = stats;
  return answer;
}

// Runs task(0), task(1), ... and returns the result of the smallest index
// that succeeds. With several threads, indices are claimed in increasing
// order and work stops once every index below the best success is done, so
// the reported result does not depend on scheduling.
template <class Result, class Task>
std::optional<Result> first_success(std::size_t count, unsigned threads, SolveStats& stats, Task&& task) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      if (auto r = task(i, stats)) return r;
    }
    return std::nullopt;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::mutex lock;
  std::optional<Result> result;
  std::exception_ptr failure;
  std::vector<SolveStats> local(threads);
  auto worker = [&](unsigned id) {
    try {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count || i > best.load()) return;
        auto r = task(i, local[id]);
        if (!r) continue;
        std::lock_guard guard(lock);
        if (i < best.load()) {
          best.store(i);
          result = std::move(r);
        }
      }
    } catch (...) {
      std::lock_guard guard(lock);
      if (!failure) failure = std::current_exception();
      best.store(0);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  for (auto& th : pool) th.join();
  for (const auto& s : local) stats += s;
  if (failure) std::rethrow_exception(failure);
  return result;
}

// Fixed-width vertex bitset with the one fused query the solvers need.
class VertexBits {
 public:
  VertexBits() = default;
  explicit VertexBits(std::size_t n) : words_((n + 63) / 64, 0) {}

  void set(Vertex v) { words_[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63); }
  bool test(Vertex v) const { return (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u; }

  // this \subseteq a \cup b
  bool covered_by(const VertexBits& a, const VertexBits& b) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~(a.words_[i] | b.words_[i])) != 0) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Vertices within `radius` of some vertex of `set`.
inline VertexBits ball_of(const DistanceMatrix& d, std::span<const Vertex> set, Hop radius) {
  VertexBits bits(d.size());
  for (Vertex v = 0; v < static_cast<Vertex>(d.size()); ++v) {
    for (Vertex s : set) {
      if (d(v, s) <= radius) {
        bits.set(v);
        break;
      }
    }
  }
  return bits;
}

// Lexicographic k-subsets of {0..n-1}, by increasing size when iterated
// for size = 0..n.
template <class Fn>
bool for_each_combination(std::size_t n, std::size_t size, Fn&& fn) {
  if (size > n) return true;
  std::vector<std::size_t> pick(size);
  for (std::size_t i = 0; i < size; ++i) pick[i] = i;
  while (true) {
    if (!fn(static_cast<const std::vector<std::size_t>&>(pick))) return false;
    std::size_t i = size;
    while (i > 0 && pick[i - 1] == n - size + (i - 1)) --i;
    if (i == 0) return true;
    ++pick[i - 1];
    for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }
}

inline bool is_path_graph(const Graph& g) {
  return g.connected() && g.edge_count() + 1 == g.vertex_count() && g.max_degree() <= 2;
}

// Vertices of a path graph in order, starting from its smaller end.
inline Path path_graph_order(const Graph& g) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  Vertex start = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) <= 1) {
      start = v;
      break;
    }
  }
  Path out{start};
  Vertex prev = -1;
  while (static_cast<Vertex>(out.size()) < n) {
    const Vertex cur = out.back();
    for (Vertex w : g.neighbors(cur)) {
      if (w != prev) {
        prev = cur;
        out.push_back(w);
        break;
      }
    }
  }
  return out;
}

}  // namespace detail

}  // namespace mesp
