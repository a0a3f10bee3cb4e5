#pragma once

// Solver parameterised by distance to disjoint paths plus k.
//
// C is a modulator to disjoint paths. Guess the endpoints of the path, let
// Ĉ = C plus both endpoints, guess which vertices of Ĉ the path visits (L)
// and how far every other vertex of Ĉ is from it (δ). The visit order of L
// is forced, and between consecutive vertices of L the path runs through the
// residual paths, so each gap has only a handful of candidate segments.
// d^δ(v) = min over Ĉ of d(v, s) + δ(s) bounds d(v, P) from above; vertices
// where it exceeds k must be served by a segment. Vertices lying on segments
// prune their own gap; the few remaining ones and the unmet Ĉ-distances
// become a constrained set cover instance over the gaps.

#include <algorithm>
#include <span>
#include <vector>

#include "mesp/csc.hpp"
#include "mesp/modulators.hpp"
#include "mesp/solvers/answer.hpp"

namespace mesp {

struct PathsGuess {
  Vertex first = -1;
  Vertex last = -1;
  std::vector<Vertex> hub;        // Ĉ, ascending
  std::vector<Vertex> on_path;    // L, ascending
  std::vector<Hop> estimate;      // δ, aligned with hub; 0 on L
};

struct CandidateSegment {
  std::size_t gap = 0;            // between order[gap] and order[gap + 1]
  std::vector<Vertex> interior;   // empty when the two ends are adjacent
};

namespace detail {

// d^δ(v, Ĉ) for every vertex.
inline std::vector<Hop> estimated_distances(const DistanceMatrix& d, const PathsGuess& guess) {
  std::vector<Hop> out(d.size(), kUnreachable);
  for (std::size_t i = 0; i < guess.hub.size(); ++i) {
    const auto row = d.row(guess.hub[i]);
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = std::min(out[v], row[v] + guess.estimate[i]);
  }
  return out;
}

// Interiors of shortest a-b paths that avoid every vertex flagged in `blocked`.
inline std::vector<std::vector<Vertex>> candidate_interiors(const Graph& g, const DistanceMatrix& d, Vertex a,
                                                            Vertex b, const std::vector<char>& blocked) {
  std::vector<std::vector<Vertex>> out;
  const Hop len = d(a, b);
  if (len == 1) {
    out.emplace_back();
    return out;
  }
  std::vector<Vertex> stack;
  auto extend = [&](auto& self, Vertex cur) -> void {
    const Hop depth = static_cast<Hop>(stack.size());
    if (depth == len - 1) {
      if (g.adjacent(cur, b)) out.push_back(stack);
      return;
    }
    for (Vertex w : g.neighbors(cur)) {
      if (blocked[w] || d(a, w) != depth + 1 || d(w, b) != len - depth - 1) continue;
      stack.push_back(w);
      self(self, w);
      stack.pop_back();
    }
  };
  extend(extend, a);
  return out;
}

class DisjointPathsSolver {
 public:
  DisjointPathsSolver(const MespQuery& q, std::span<const Vertex> modulator, const SolverOptions& options)
      : q_(q), d_(q.distances), options_(options), modulator_(modulator.begin(), modulator.end()) {
    std::sort(modulator_.begin(), modulator_.end());
  }

  MespAnswer solve() {
    const auto start = Clock::now();
    SolveStats stats;
    const auto n = static_cast<Vertex>(q_.graph.vertex_count());
    std::vector<std::pair<Vertex, Vertex>> tasks;
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = a; b < n; ++b) tasks.emplace_back(a, b);
    }
    auto witness = first_success<Path>(tasks.size(), options_.threads, stats, [&](std::size_t i, SolveStats& local) {
      return search(tasks[i].first, tasks[i].second, local);
    });
    return detail::finish(q_, std::move(witness), stats, start);
  }

 private:
  std::optional<Path> search(Vertex first, Vertex last, SolveStats& stats) const {
    std::vector<Vertex> hub = modulator_;
    hub.push_back(first);
    hub.push_back(last);
    std::sort(hub.begin(), hub.end());
    hub.erase(std::unique(hub.begin(), hub.end()), hub.end());
    std::vector<char> blocked(q_.graph.vertex_count(), 0);
    for (Vertex v : hub) blocked[v] = 1;

    std::vector<Vertex> optional_part;
    for (Vertex v : hub) {
      if (v != first && v != last) optional_part.push_back(v);
    }
    std::optional<Path> found;
    for (std::size_t size = 0; size <= optional_part.size() && !found; ++size) {
      for_each_combination(optional_part.size(), size, [&](const std::vector<std::size_t>& pick) {
        PathsGuess guess{first, last, hub, {first, last}, {}};
        for (std::size_t i : pick) guess.on_path.push_back(optional_part[i]);
        std::sort(guess.on_path.begin(), guess.on_path.end());
        guess.on_path.erase(std::unique(guess.on_path.begin(), guess.on_path.end()), guess.on_path.end());
        found = search_order(guess, blocked, stats);
        return !found;
      });
    }
    return found;
  }

  std::optional<Path> search_order(PathsGuess& guess, const std::vector<char>& blocked, SolveStats& stats) const {
    const auto order = unique_order(d_, guess.first, guess.on_path);
    if (!order || order->back() != guess.last) return std::nullopt;
    std::vector<std::vector<CandidateSegment>> gaps;
    for (std::size_t i = 0; i + 1 < order->size(); ++i) {
      std::vector<CandidateSegment> segs;
      for (auto& interior : candidate_interiors(q_.graph, d_, (*order)[i], (*order)[i + 1], blocked)) {
        segs.push_back(CandidateSegment{i, std::move(interior)});
      }
      if (segs.empty()) return std::nullopt;
      gaps.push_back(std::move(segs));
    }

    // δ over Ĉ \ L: 0 on L, otherwise 1..min(k, d(v, L)).
    std::vector<std::size_t> free_slots;
    std::vector<Hop> upper;
    guess.estimate.assign(guess.hub.size(), 0);
    for (std::size_t i = 0; i < guess.hub.size(); ++i) {
      if (std::binary_search(guess.on_path.begin(), guess.on_path.end(), guess.hub[i])) continue;
      const Hop cap = std::min(q_.k, distance_to_set(d_, guess.hub[i], guess.on_path));
      if (cap < 1) return std::nullopt;
      free_slots.push_back(i);
      upper.push_back(cap);
      guess.estimate[i] = 1;
    }
    while (true) {
      check_deadline(options_);
      ++stats.guesses;
      if (auto path = evaluate(guess, *order, gaps, stats)) return path;
      std::size_t j = free_slots.size();
      while (j > 0 && guess.estimate[free_slots[j - 1]] == upper[j - 1]) guess.estimate[free_slots[--j]] = 1;
      if (j == 0) break;
      ++guess.estimate[free_slots[j - 1]];
    }
    return std::nullopt;
  }

  std::optional<Path> evaluate(const PathsGuess& guess, const std::vector<Vertex>& order,
                               const std::vector<std::vector<CandidateSegment>>& gaps, SolveStats& stats) const {
    const Hop k = q_.k;
    const auto n = q_.graph.vertex_count();
    const auto est = estimated_distances(d_, guess);

    // Filter each gap by the tight vertices (d^δ = k + 1) on its segments.
    std::vector<char> on_segment(n, 0);
    std::vector<std::vector<const CandidateSegment*>> kept(gaps.size());
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      std::vector<Vertex> tight;
      for (const auto& seg : gaps[i]) {
        for (Vertex v : seg.interior) {
          on_segment[v] = 1;
          if (est[v] == k + 1) tight.push_back(v);
        }
      }
      for (const auto& seg : gaps[i]) {
        const bool serves_all = std::all_of(tight.begin(), tight.end(), [&](Vertex t) {
          return distance_to_set(d_, t, seg.interior) <= k;
        });
        if (serves_all) kept[i].push_back(&seg);
      }
      if (kept[i].empty()) return std::nullopt;
    }

    // Vertices needing more than one step past k must sit on a forced segment.
    std::vector<Vertex> chosen = guess.on_path;
    std::vector<char> on_necessary(n, 0);
    for (const auto& segs : kept) {
      if (segs.size() != 1) continue;
      for (Vertex v : segs.front()->interior) {
        on_necessary[v] = 1;
        chosen.push_back(v);
      }
    }
    std::vector<Vertex> off_segment;
    for (std::size_t v = 0; v < n; ++v) {
      if (est[v] > k + 1 && !on_necessary[v]) return std::nullopt;
      if (est[v] == k + 1 && !on_segment[v]) off_segment.push_back(static_cast<Vertex>(v));
    }
    if (off_segment.size() > 2 * (order.size() - 1)) return std::nullopt;

    std::vector<Vertex> req;
    std::vector<Hop> reach;
    for (std::size_t i = 0; i < guess.hub.size(); ++i) {
      const Vertex v = guess.hub[i];
      if (guess.estimate[i] == 0) continue;
      if (distance_to_set(d_, v, chosen) > guess.estimate[i]) {
        req.push_back(v);
        reach.push_back(guess.estimate[i]);
      }
    }
    for (Vertex v : off_segment) {
      if (distance_to_set(d_, v, chosen) > k) {
        req.push_back(v);
        reach.push_back(k);
      }
    }
    if (static_cast<int>(req.size()) > options_.csc_requirement_cap) {
      throw CapacityError("disjoint-paths solver requirement count exceeds the set cover cap");
    }

    CscInstance inst;
    inst.requirements = static_cast<int>(req.size());
    for (const auto& segs : kept) {
      std::vector<CscCandidate> cands;
      for (std::size_t c = 0; c < segs.size(); ++c) {
        RequirementMask mask = 0;
        for (std::size_t j = 0; j < req.size(); ++j) {
          if (distance_to_set(d_, req[j], segs[c]->interior) <= reach[j]) mask |= RequirementMask{1} << j;
        }
        cands.push_back(CscCandidate{c, mask});
      }
      inst.groups.push_back(std::move(cands));
    }
    ++stats.csc_calls;
    const auto sol = solve_csc(inst, options_.csc_requirement_cap);
    if (!sol) return std::nullopt;

    Path path;
    for (std::size_t i = 0; i < order.size(); ++i) {
      path.push_back(order[i]);
      if (i < kept.size()) {
        const auto& interior = kept[i][sol->selection[i]]->interior;
        path.insert(path.end(), interior.begin(), interior.end());
      }
    }
    if (!is_mesp_witness(q_.graph, d_, path, k)) return std::nullopt;
    return path;
  }

  const MespQuery& q_;
  const DistanceMatrix& d_;
  const SolverOptions& options_;
  std::vector<Vertex> modulator_;
};

}  // namespace detail

// Decides MESP given a modulator to disjoint paths.
inline MespAnswer solve_distance_to_disjoint_paths(const MespQuery& q, const Modulator& modulator,
                                                   const SolverOptions& options = {}) {
  detail::validate_query(q);
  if (!is_disjoint_paths_modulator(q.graph, modulator.vertices)) {
    throw DomainError("vertex set is not a modulator to disjoint paths");
  }
  return detail::DisjointPathsSolver(q, modulator.vertices, options).solve();
}

}  // namespace mesp
