#pragma once

// Exhaustive solver: walks every shortest path and keeps, per DFS depth, the
// distance from each vertex to the current prefix. Extending a prefix by one
// vertex costs O(n), so the total work is O(n * #shortest paths). On graphs
// of maximum leaf number l this is at most 2^(4l) * n^3.

#include <span>
#include <vector>

#include "mesp/shortest_paths.hpp"
#include "mesp/solvers/answer.hpp"

namespace mesp {

namespace detail {

// Searches the shortest paths that start at `start`, in DFS order, for the
// first one with eccentricity <= k.
inline std::optional<Path> first_witness_from(const Graph& g, const DistanceMatrix& d, Vertex start, Hop k,
                                              const SolverOptions& options, SolveStats& stats) {
  check_deadline(options);
  const auto n = g.vertex_count();
  std::vector<std::vector<Hop>> nearest;
  std::optional<Path> found;
  std::uint64_t examined = 0;
  enumerate_shortest_paths_from(g, d, start, [&](std::span<const Vertex> path) {
    const std::size_t depth = path.size() - 1;
    if (nearest.size() <= depth) nearest.emplace_back(n);
    auto& level = nearest[depth];
    const auto row = d.row(path.back());
    Hop ecc = 0;
    if (depth == 0) {
      std::copy(row.begin(), row.end(), level.begin());
      ecc = *std::max_element(row.begin(), row.end());
    } else {
      const auto& parent = nearest[depth - 1];
      for (std::size_t v = 0; v < n; ++v) {
        const Hop h = std::min(parent[v], row[v]);
        level[v] = h;
        ecc = std::max(ecc, h);
      }
    }
    if ((++examined & 0xfff) == 0) check_deadline(options);
    if (ecc <= k) {
      found = Path(path.begin(), path.end());
      return false;
    }
    return true;
  });
  stats.paths_examined += examined;
  return found;
}

}  // namespace detail

// Decides MESP by checking every shortest path. The witness is the first
// qualifying path in enumeration order (start vertex ascending, then DFS over
// ascending neighbour lists).
inline MespAnswer solve_bruteforce(const MespQuery& q, const SolverOptions& options = {}) {
  detail::validate_query(q);
  const auto start = Clock::now();
  SolveStats stats;
  auto witness = detail::first_success<Path>(
      q.graph.vertex_count(), options.threads, stats, [&](std::size_t s, SolveStats& local) {
        ++local.guesses;
        return detail::first_witness_from(q.graph, q.distances, static_cast<Vertex>(s), q.k, options, local);
      });
  return detail::finish(q, std::move(witness), stats, start);
}

}  // namespace mesp
