#pragma once

// Random instance families with parameter witnesses known by construction.
// All generators return connected graphs and draw only from the supplied
// engine, so a seed reproduces an instance exactly.

#include <algorithm>
#include <numeric>
#include <random>
#include <string_view>
#include <vector>

#include "mesp/graph.hpp"
#include "mesp/modulators.hpp"

namespace mesp {

using Rng = std::mt19937_64;
inline constexpr std::string_view kRngVersion = "mt19937_64/v1";

namespace detail {

inline Vertex uniform_vertex(Rng& rng, Vertex lo, Vertex hi) {
  return std::uniform_int_distribution<Vertex>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// Edge list with de-duplication on insert.
class EdgeSet {
 public:
  explicit EdgeSet(std::size_t n) : n_(n), present_(n * n, 0) {}

  bool add(Vertex u, Vertex v) {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    auto& slot = present_[static_cast<std::size_t>(u) * n_ + v];
    if (slot) return false;
    slot = 1;
    edges_.emplace_back(u, v);
    return true;
  }
  bool has(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    return present_[static_cast<std::size_t>(u) * n_ + v] != 0;
  }
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  std::size_t n_;
  std::vector<char> present_;
  std::vector<Edge> edges_;
};

// Component id per vertex (union-find).
class Components {
 public:
  explicit Components(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  Vertex find(Vertex v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<Vertex> parent_;
};

}  // namespace detail

// Uniform random labelled tree (random attachment to an earlier vertex after
// a random relabelling).
inline Graph random_tree(std::size_t n, Rng& rng) {
  std::vector<Vertex> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::shuffle(label.begin(), label.end(), rng);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < static_cast<Vertex>(n); ++v) {
    edges.emplace_back(label[v], label[detail::uniform_vertex(rng, 0, v - 1)]);
  }
  return build_graph(n, edges);
}

// Random tree plus every other pair independently with probability `density`.
inline Graph random_connected_graph(std::size_t n, double density, Rng& rng) {
  const Graph tree = random_tree(n, rng);
  detail::EdgeSet edges(n);
  for (const auto& [u, v] : tree.edges()) edges.add(u, v);
  for (Vertex u = 0; u < static_cast<Vertex>(n); ++u) {
    for (Vertex v = u + 1; v < static_cast<Vertex>(n); ++v) {
      if (!edges.has(u, v) && detail::coin(rng, density)) edges.add(u, v);
    }
  }
  return build_graph(n, edges.edges());
}

struct ModulatedGraph {
  Graph graph;
  Modulator modulator;
};

// Cliques of the given sizes plus `p` modulator vertices (ids 0..p-1), each
// adjacent to every clique vertex with probability `attach`. Extra
// modulator edges are added until the graph is connected.
inline ModulatedGraph cluster_plus_p(std::span<const std::size_t> clique_sizes, std::size_t p, double attach,
                                     Rng& rng) {
  std::size_t n = p;
  for (auto s : clique_sizes) n += s;
  if (p == 0 && clique_sizes.size() != 1) throw DomainError("a cluster graph without modulator must be one clique");
  detail::EdgeSet edges(n);
  detail::Components comp(n);
  auto add = [&](Vertex u, Vertex v) {
    edges.add(u, v);
    comp.unite(u, v);
  };
  Vertex next = static_cast<Vertex>(p);
  for (auto s : clique_sizes) {
    for (Vertex a = next; a < next + static_cast<Vertex>(s); ++a) {
      for (Vertex b = a + 1; b < next + static_cast<Vertex>(s); ++b) add(a, b);
    }
    next += static_cast<Vertex>(s);
  }
  for (Vertex u = 0; u < static_cast<Vertex>(p); ++u) {
    for (Vertex v = static_cast<Vertex>(p); v < static_cast<Vertex>(n); ++v) {
      if (detail::coin(rng, attach)) add(u, v);
    }
    if (detail::coin(rng, attach)) {
      for (Vertex w = 0; w < u; ++w) {
        if (detail::coin(rng, 0.5)) add(u, w);
      }
    }
  }
  // Connect leftover pieces through modulator vertices; the residual stays a
  // cluster graph because only modulator edges are added.
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    if (comp.find(v) == comp.find(0)) continue;
    if (v < static_cast<Vertex>(p)) {
      add(0, v);
    } else {
      add(detail::uniform_vertex(rng, 0, static_cast<Vertex>(p) - 1), v);
      if (comp.find(v) != comp.find(0)) add(0, v);
    }
  }
  std::vector<Vertex> mod(p);
  std::iota(mod.begin(), mod.end(), 0);
  return {build_graph(n, edges.edges()), Modulator{ModulatorKind::kCluster, std::move(mod)}};
}

// Paths of the given lengths (vertex counts) plus `c` modulator vertices
// (ids 0..c-1), each adjacent to a random residual vertex with probability
// `attach`; connectivity is completed through modulator vertices.
inline ModulatedGraph paths_plus_c(std::span<const std::size_t> path_sizes, std::size_t c, double attach, Rng& rng) {
  std::size_t n = c;
  for (auto s : path_sizes) n += s;
  if (c == 0 && path_sizes.size() != 1) throw DomainError("disjoint paths without modulator must be one path");
  detail::EdgeSet edges(n);
  detail::Components comp(n);
  auto add = [&](Vertex u, Vertex v) {
    edges.add(u, v);
    comp.unite(u, v);
  };
  Vertex next = static_cast<Vertex>(c);
  for (auto s : path_sizes) {
    for (Vertex a = next; a + 1 < next + static_cast<Vertex>(s); ++a) add(a, a + 1);
    next += static_cast<Vertex>(s);
  }
  for (Vertex u = 0; u < static_cast<Vertex>(c); ++u) {
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
      if (v != u && detail::coin(rng, attach)) add(u, v);
    }
  }
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    if (comp.find(v) == comp.find(0)) continue;
    if (v < static_cast<Vertex>(c)) {
      add(0, v);
    } else {
      add(detail::uniform_vertex(rng, 0, static_cast<Vertex>(c) - 1), v);
      if (comp.find(v) != comp.find(0)) add(0, v);
    }
  }
  std::vector<Vertex> mod(c);
  std::iota(mod.begin(), mod.end(), 0);
  return {build_graph(n, edges.edges()), Modulator{ModulatorKind::kDisjointPaths, std::move(mod)}};
}

struct SubstitutedGraph {
  Graph graph;
  std::vector<std::vector<Vertex>> modules;  // module i replaces pattern vertex i
};

// Replaces pattern vertex i by a random graph on sizes[i] vertices (each
// internal pair an edge with probability `inner`); modules of adjacent
// pattern vertices are fully joined.
inline SubstitutedGraph substitution(const Graph& pattern, std::span<const std::size_t> sizes, double inner,
                                     Rng& rng) {
  if (sizes.size() != pattern.vertex_count()) throw std::invalid_argument("one module size per pattern vertex");
  SubstitutedGraph out;
  Vertex next = 0;
  for (auto s : sizes) {
    if (s == 0) throw DomainError("modules must be non-empty");
    std::vector<Vertex> module(s);
    std::iota(module.begin(), module.end(), next);
    next += static_cast<Vertex>(s);
    out.modules.push_back(std::move(module));
  }
  std::vector<Edge> edges;
  for (const auto& module : out.modules) {
    for (std::size_t i = 0; i < module.size(); ++i) {
      for (std::size_t j = i + 1; j < module.size(); ++j) {
        if (detail::coin(rng, inner)) edges.emplace_back(module[i], module[j]);
      }
    }
  }
  for (const auto& [a, b] : pattern.edges()) {
    for (Vertex u : out.modules[a]) {
      for (Vertex v : out.modules[b]) edges.emplace_back(u, v);
    }
  }
  out.graph = build_graph(static_cast<std::size_t>(next), edges);
  return out;
}

struct SubdividedGraph {
  Graph graph;
  std::size_t leaf_bound = 0;  // upper bound on the maximum leaf number
};

// Replaces every edge of `core` by a path with `factor` edges. A spanning
// tree of the result drops one subdivided edge per independent cycle, which
// creates at most two leaves each, so the maximum leaf number is at most
// n_core + 2 (m_core - n_core + 1).
inline SubdividedGraph subdivided_core(const Graph& core, std::size_t factor) {
  if (factor == 0) throw DomainError("subdivision factor must be positive");
  const auto nc = core.vertex_count();
  const auto mc = core.edge_count();
  std::vector<Edge> edges;
  Vertex next = static_cast<Vertex>(nc);
  for (const auto& [a, b] : core.edges()) {
    Vertex prev = a;
    for (std::size_t i = 1; i < factor; ++i) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
    edges.emplace_back(prev, b);
  }
  SubdividedGraph out{build_graph(static_cast<std::size_t>(next), edges), 0};
  out.leaf_bound = nc + 2 * (mc + 1 - std::min(mc + 1, nc));
  return out;
}

}  // namespace mesp
