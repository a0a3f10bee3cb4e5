#pragma once

// Core graph types: simple undirected graphs over dense vertex ids, all-pairs
// hop distances, and the distance-based queries every solver builds on.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mesp/errors.hpp"

namespace mesp {

using Vertex = std::int32_t;
using Hop = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;
using Path = std::vector<Vertex>;

inline constexpr Hop kUnreachable = std::numeric_limits<Hop>::max() / 4;

class Graph {
 public:
  Graph() = default;

  // Validates ids, rejects loops and parallel edges. Connectivity is not
  // required here; see build_graph.
  Graph(std::size_t n, std::span<const Edge> edges) : adjacency_(n), matrix_(n * n, 0) {
    for (const auto& [u, v] : edges) {
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
        throw FormatError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                          ") references a vertex outside 0.." + std::to_string(n) + "-1");
      }
      if (u == v) throw FormatError("loop at vertex " + std::to_string(u));
      auto& cell = matrix_[index(u, v)];
      if (cell != 0) {
        throw FormatError("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
      }
      cell = 1;
      matrix_[index(v, u)] = 1;
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
      ++edge_count_;
    }
    for (auto& list : adjacency_) std::sort(list.begin(), list.end());
  }

  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  bool adjacent(Vertex u, Vertex v) const { return matrix_[index(u, v)] != 0; }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (const auto& list : adjacency_) best = std::max(best, list.size());
    return best;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < static_cast<Vertex>(vertex_count()); ++u) {
      for (Vertex v : adjacency_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  bool connected() const {
    const auto n = vertex_count();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : adjacency_[u]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    return reached == n;
  }

  // Induced subgraph; vertex i of the result is vertices[i].
  Graph induced(std::span<const Vertex> vertices) const {
    std::vector<Vertex> position(vertex_count(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) position[vertices[i]] = static_cast<Vertex>(i);
    std::vector<Edge> sub;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      for (Vertex w : adjacency_[vertices[i]]) {
        const Vertex j = position[w];
        if (j > static_cast<Vertex>(i)) sub.emplace_back(static_cast<Vertex>(i), j);
      }
    }
    return Graph(vertices.size(), sub);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_ == b.adjacency_;
  }

 private:
  std::size_t index(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u) * adjacency_.size() + static_cast<std::size_t>(v);
  }

  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::uint8_t> matrix_;
  std::size_t edge_count_ = 0;
};

// Builds a graph and enforces connectivity, the precondition for MESP.
inline Graph build_graph(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) throw DomainError("graph has no vertices");
  Graph g(n, edges);
  if (!g.connected()) throw DomainError("graph is disconnected");
  return g;
}

inline Graph build_graph(std::size_t n, std::initializer_list<Edge> edges) {
  return build_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

// Dense n x n hop-count table. Entries between different components hold
// kUnreachable.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  explicit DistanceMatrix(const Graph& g) : n_(g.vertex_count()), dist_(n_ * n_, kUnreachable) {
    std::vector<Vertex> queue(n_);
    for (Vertex s = 0; s < static_cast<Vertex>(n_); ++s) {
      Hop* row = dist_.data() + static_cast<std::size_t>(s) * n_;
      std::size_t head = 0;
      std::size_t tail = 0;
      row[s] = 0;
      queue[tail++] = s;
      while (head < tail) {
        const Vertex u = queue[head++];
        for (Vertex w : g.neighbors(u)) {
          if (row[w] == kUnreachable) {
            row[w] = row[u] + 1;
            queue[tail++] = w;
          }
        }
      }
    }
  }

  std::size_t size() const { return n_; }

  Hop operator()(Vertex u, Vertex v) const {
    return dist_[static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v)];
  }

  std::span<const Hop> row(Vertex u) const {
    return {dist_.data() + static_cast<std::size_t>(u) * n_, n_};
  }

  Hop eccentricity(Vertex v) const {
    const auto r = row(v);
    return *std::max_element(r.begin(), r.end());
  }

  Hop diameter() const {
    return n_ == 0 ? 0 : *std::max_element(dist_.begin(), dist_.end());
  }

 private:
  std::size_t n_ = 0;
  std::vector<Hop> dist_;
};

inline DistanceMatrix all_pairs_distances(const Graph& g) { return DistanceMatrix(g); }

// d(v, S) = min over s in S of d(v, s); kUnreachable for empty S.
inline Hop distance_to_set(const DistanceMatrix& d, Vertex v, std::span<const Vertex> set) {
  Hop best = kUnreachable;
  for (Vertex s : set) best = std::min(best, d(v, s));
  return best;
}

// ecc(S) = max over v of d(v, S).
inline Hop eccentricity_of_set(const DistanceMatrix& d, std::span<const Vertex> set) {
  if (set.empty()) throw DomainError("eccentricity of an empty vertex set is undefined");
  std::vector<Hop> nearest(d.row(set.front()).begin(), d.row(set.front()).end());
  for (std::size_t i = 1; i < set.size(); ++i) {
    const auto r = d.row(set[i]);
    for (std::size_t v = 0; v < nearest.size(); ++v) nearest[v] = std::min(nearest[v], r[v]);
  }
  return nearest.empty() ? 0 : *std::max_element(nearest.begin(), nearest.end());
}

// N^k[v]: all vertices within k hops of v, ascending.
inline std::vector<Vertex> closed_k_neighborhood(const DistanceMatrix& d, Vertex v, Hop k) {
  if (k < 0) throw DomainError("neighborhood radius must be non-negative");
  std::vector<Vertex> out;
  const auto r = d.row(v);
  for (std::size_t u = 0; u < r.size(); ++u) {
    if (r[u] <= k) out.push_back(static_cast<Vertex>(u));
  }
  return out;
}

// True iff `path` is a walk along edges whose length equals the distance
// between its endpoints. Such a walk never repeats a vertex.
inline bool is_shortest_path(const Graph& g, const DistanceMatrix& d, std::span<const Vertex> path) {
  if (path.empty()) return false;
  const auto n = static_cast<Vertex>(g.vertex_count());
  for (Vertex v : path) {
    if (v < 0 || v >= n) return false;
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!g.adjacent(path[i], path[i + 1])) return false;
  }
  return d(path.front(), path.back()) == static_cast<Hop>(path.size() - 1);
}

// Shortest path with eccentricity at most k.
inline bool is_mesp_witness(const Graph& g, const DistanceMatrix& d, std::span<const Vertex> path, Hop k) {
  return is_shortest_path(g, d, path) && eccentricity_of_set(d, path) <= k;
}

// The only order in which a shortest path starting at `start` can visit all
// of `set`, or nothing when no shortest path from `start` covers the set.
// Sorting by distance from the start and checking that the consecutive
// distances telescope decides both at once.
inline std::optional<std::vector<Vertex>> unique_order(const DistanceMatrix& d, Vertex start,
                                                       std::span<const Vertex> set) {
  std::vector<Vertex> order(set.begin(), set.end());
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  if (order.empty()) return order;
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return d(start, a) < d(start, b); });
  Hop total = d(start, order.front());
  for (std::size_t i = 0; i + 1 < order.size(); ++i) total += d(order[i], order[i + 1]);
  if (total != d(start, order.back())) return std::nullopt;
  return order;
}

}  // namespace mesp
