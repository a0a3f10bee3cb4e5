#pragma once

// Vertex modulators: sets X whose removal leaves a cluster graph (disjoint
// cliques) or a linear forest (disjoint paths). Both finders are bounded
// search trees that report the first modulator found in a fixed branch order.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mesp/graph.hpp"

namespace mesp {

enum class ModulatorKind { kCluster, kDisjointPaths };

inline std::string_view to_string(ModulatorKind kind) {
  return kind == ModulatorKind::kCluster ? "cluster" : "disjoint-paths";
}

struct Modulator {
  ModulatorKind kind = ModulatorKind::kCluster;
  std::vector<Vertex> vertices;  // ascending

  std::size_t size() const { return vertices.size(); }
};

namespace detail {

inline std::vector<char> membership(std::size_t n, std::span<const Vertex> set) {
  std::vector<char> in(n, 0);
  for (Vertex v : set) in[v] = 1;
  return in;
}

inline std::size_t residual_degree(const Graph& g, const std::vector<char>& removed, Vertex v) {
  std::size_t deg = 0;
  for (Vertex w : g.neighbors(v)) deg += removed[w] ? 0 : 1;
  return deg;
}

// First induced P3 (a, center, b) with a < b, scanning centers in ascending
// order. Returns false when the residual graph is a cluster graph.
inline bool find_induced_p3(const Graph& g, const std::vector<char>& removed, Vertex& a, Vertex& center,
                            Vertex& b) {
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
    if (removed[v]) continue;
    const auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (removed[nb[i]]) continue;
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (removed[nb[j]] || g.adjacent(nb[i], nb[j])) continue;
        a = nb[i];
        center = v;
        b = nb[j];
        return true;
      }
    }
  }
  return false;
}

// In a residual graph of maximum degree 2, the smallest vertex of every
// component that is a cycle.
inline std::vector<Vertex> cycle_representatives(const Graph& g, const std::vector<char>& removed) {
  const auto n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<Vertex> reps;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < static_cast<Vertex>(n); ++s) {
    if (removed[s] || seen[s]) continue;
    bool all_degree_two = true;
    stack.assign(1, s);
    seen[s] = 1;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      if (residual_degree(g, removed, u) != 2) all_degree_two = false;
      for (Vertex w : g.neighbors(u)) {
        if (!removed[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    if (all_degree_two) reps.push_back(s);
  }
  return reps;
}

class DisjointPathsSearch {
 public:
  explicit DisjointPathsSearch(const Graph& g) : g_(g), removed_(g.vertex_count(), 0) {}

  std::optional<std::vector<Vertex>> run(int budget) {
    if (!branch(budget)) return std::nullopt;
    std::vector<Vertex> out = chosen_;
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  bool branch(int budget) {
    Vertex pivot = -1;
    for (Vertex v = 0; v < static_cast<Vertex>(g_.vertex_count()); ++v) {
      if (!removed_[v] && residual_degree(g_, removed_, v) >= 3) {
        pivot = v;
        break;
      }
    }
    if (pivot < 0) {
      const auto reps = cycle_representatives(g_, removed_);
      if (static_cast<int>(reps.size()) > budget) return false;
      chosen_.insert(chosen_.end(), reps.begin(), reps.end());
      return true;
    }
    if (budget <= 0) return false;
    // Either the pivot goes, or all but two of its residual neighbours do.
    take(pivot);
    if (branch(budget - 1)) return true;
    give_back(1);

    std::vector<Vertex> nb;
    for (Vertex w : g_.neighbors(pivot)) {
      if (!removed_[w]) nb.push_back(w);
    }
    const int drop = static_cast<int>(nb.size()) - 2;
    if (drop > budget) return false;
    // Lexicographic enumeration of drop-subsets of nb.
    std::vector<std::size_t> pick(static_cast<std::size_t>(drop));
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    while (true) {
      for (std::size_t i : pick) take(nb[i]);
      if (branch(budget - drop)) return true;
      give_back(static_cast<std::size_t>(drop));
      std::size_t i = pick.size();
      while (i > 0 && pick[i - 1] == nb.size() - pick.size() + (i - 1)) --i;
      if (i == 0) return false;
      ++pick[i - 1];
      for (std::size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  void take(Vertex v) {
    removed_[v] = 1;
    chosen_.push_back(v);
  }

  void give_back(std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      removed_[chosen_.back()] = 0;
      chosen_.pop_back();
    }
  }

  const Graph& g_;
  std::vector<char> removed_;
  std::vector<Vertex> chosen_;
};

class ClusterSearch {
 public:
  explicit ClusterSearch(const Graph& g) : g_(g), removed_(g.vertex_count(), 0) {}

  std::optional<std::vector<Vertex>> run(int budget) {
    if (!branch(budget)) return std::nullopt;
    std::vector<Vertex> out = chosen_;
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  bool branch(int budget) {
    Vertex a = -1;
    Vertex center = -1;
    Vertex b = -1;
    if (!find_induced_p3(g_, removed_, a, center, b)) return true;
    if (budget <= 0) return false;
    std::array<Vertex, 3> options{a, center, b};
    std::sort(options.begin(), options.end());
    for (Vertex v : options) {
      removed_[v] = 1;
      chosen_.push_back(v);
      if (branch(budget - 1)) return true;
      chosen_.pop_back();
      removed_[v] = 0;
    }
    return false;
  }

  const Graph& g_;
  std::vector<char> removed_;
  std::vector<Vertex> chosen_;
};

}  // namespace detail

inline bool is_cluster_modulator(const Graph& g, std::span<const Vertex> set) {
  const auto removed = detail::membership(g.vertex_count(), set);
  Vertex a = 0;
  Vertex c = 0;
  Vertex b = 0;
  return !detail::find_induced_p3(g, removed, a, c, b);
}

inline bool is_disjoint_paths_modulator(const Graph& g, std::span<const Vertex> set) {
  const auto removed = detail::membership(g.vertex_count(), set);
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
    if (!removed[v] && detail::residual_degree(g, removed, v) > 2) return false;
  }
  return detail::cycle_representatives(g, removed).empty();
}

inline bool is_valid_modulator(const Graph& g, const Modulator& m) {
  return m.kind == ModulatorKind::kCluster ? is_cluster_modulator(g, m.vertices)
                                           : is_disjoint_paths_modulator(g, m.vertices);
}

// A modulator to disjoint paths of size at most `budget`, or nothing.
inline std::optional<Modulator> find_disjoint_paths_modulator(const Graph& g, int budget) {
  if (budget < 0) return std::nullopt;
  auto found = detail::DisjointPathsSearch(g).run(budget);
  if (!found) return std::nullopt;
  return Modulator{ModulatorKind::kDisjointPaths, std::move(*found)};
}

// A modulator to cluster graph of size at most `budget`, or nothing.
inline std::optional<Modulator> find_cluster_modulator(const Graph& g, int budget) {
  if (budget < 0) return std::nullopt;
  auto found = detail::ClusterSearch(g).run(budget);
  if (!found) return std::nullopt;
  return Modulator{ModulatorKind::kCluster, std::move(*found)};
}

// Smallest modulator, found by raising the budget from 0 up to `cap`.
inline std::optional<Modulator> minimum_cluster_modulator(const Graph& g, int cap) {
  for (int budget = 0; budget <= cap; ++budget) {
    if (auto m = find_cluster_modulator(g, budget)) return m;
  }
  return std::nullopt;
}

inline std::optional<Modulator> minimum_disjoint_paths_modulator(const Graph& g, int cap) {
  for (int budget = 0; budget <= cap; ++budget) {
    if (auto m = find_disjoint_paths_modulator(g, budget)) return m;
  }
  return std::nullopt;
}

}  // namespace mesp
