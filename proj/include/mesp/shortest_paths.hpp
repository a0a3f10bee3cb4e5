#pragma once

// Enumeration of every shortest path by depth-first extension from each
// start vertex. A prefix (p_1..p_t) is extended by a neighbour w of p_t only
// when d(p_1, w) = t, so every prefix visited is itself a shortest path and
// every shortest path is visited exactly once per direction.

#include <span>
#include <type_traits>
#include <vector>

#include "mesp/graph.hpp"

namespace mesp {

namespace detail {

template <class Visitor>
bool invoke_visitor(Visitor& visit, std::span<const Vertex> path) {
  if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, std::span<const Vertex>>, void>) {
    visit(path);
    return true;
  } else {
    return static_cast<bool>(visit(path));
  }
}

}  // namespace detail

// Visits every shortest path that starts at `start` (directed, including the
// single-vertex path). The visitor may return bool; false stops the walk.
// Returns false iff the visitor stopped it.
template <class Visitor>
bool enumerate_shortest_paths_from(const Graph& g, const DistanceMatrix& d, Vertex start, Visitor&& visit) {
  const auto from_start = d.row(start);
  std::vector<Vertex> path{start};
  std::vector<std::size_t> cursor{0};
  if (!detail::invoke_visitor(visit, std::span<const Vertex>(path))) return false;
  while (!path.empty()) {
    const Vertex tip = path.back();
    const auto next = g.neighbors(tip);
    std::size_t& i = cursor.back();
    const Hop want = static_cast<Hop>(path.size());
    while (i < next.size() && from_start[next[i]] != want) ++i;
    if (i == next.size()) {
      path.pop_back();
      cursor.pop_back();
      continue;
    }
    path.push_back(next[i++]);
    cursor.push_back(0);
    if (!detail::invoke_visitor(visit, std::span<const Vertex>(path))) return false;
  }
  return true;
}

// Visits every shortest path of g. With `deduplicate`, each undirected path
// is reported once, in the direction whose first vertex is smaller.
template <class Visitor>
bool enumerate_shortest_paths(const Graph& g, const DistanceMatrix& d, Visitor&& visit,
                              bool deduplicate = false) {
  for (Vertex s = 0; s < static_cast<Vertex>(g.vertex_count()); ++s) {
    bool keep_going = true;
    if (deduplicate) {
      keep_going = enumerate_shortest_paths_from(g, d, s, [&](std::span<const Vertex> p) {
        if (p.size() > 1 && p.front() > p.back()) return true;
        return detail::invoke_visitor(visit, p);
      });
    } else {
      keep_going = enumerate_shortest_paths_from(g, d, s, visit);
    }
    if (!keep_going) return false;
  }
  return true;
}

inline std::size_t count_shortest_paths(const Graph& g, const DistanceMatrix& d, bool deduplicate = false) {
  std::size_t count = 0;
  enumerate_shortest_paths(g, d, [&](std::span<const Vertex>) { ++count; }, deduplicate);
  return count;
}

}  // namespace mesp
