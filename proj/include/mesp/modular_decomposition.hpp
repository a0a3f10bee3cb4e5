#pragma once

// Modular decomposition tree.
//
// Built top-down: a vertex set splits into its connected components (union
// node), into the components of its complement (join node), or otherwise into
// its maximal proper modules (prime node). In the prime case those modules
// partition the set, and the maximal module containing v is v together with
// every w whose smallest enclosing module M(v, w) is proper.

#include <algorithm>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mesp/graph.hpp"

namespace mesp {

enum class MDNodeKind { kLeaf, kUnion, kJoin, kPrime };

inline std::string_view to_string(MDNodeKind kind) {
  switch (kind) {
    case MDNodeKind::kLeaf: return "leaf";
    case MDNodeKind::kUnion: return "union";
    case MDNodeKind::kJoin: return "join";
    case MDNodeKind::kPrime: return "prime";
  }
  return "?";
}

struct MDNode {
  MDNodeKind kind = MDNodeKind::kLeaf;
  Vertex vertex = -1;                 // leaves only
  std::vector<std::size_t> children;  // ordered by smallest member
  std::vector<Vertex> members;        // ascending
  Graph pattern;                      // prime only; pattern vertex i is children[i]
};

struct MDTree {
  std::vector<MDNode> nodes;
  std::size_t root = 0;

  const MDNode& root_node() const { return nodes[root]; }
};

// Every vertex outside `set` sees all of it or none of it.
inline bool is_module(const Graph& g, std::span<const Vertex> set) {
  if (set.empty()) return true;
  std::vector<char> inside(g.vertex_count(), 0);
  for (Vertex v : set) inside[v] = 1;
  for (Vertex x = 0; x < static_cast<Vertex>(g.vertex_count()); ++x) {
    if (inside[x]) continue;
    const bool first = g.adjacent(x, set.front());
    for (Vertex v : set) {
      if (g.adjacent(x, v) != first) return false;
    }
  }
  return true;
}

namespace detail {

class ModularDecomposer {
 public:
  explicit ModularDecomposer(const Graph& g) : g_(g), mark_(g.vertex_count(), 0), count_(g.vertex_count(), 0) {}

  MDTree run() {
    std::vector<Vertex> all(g_.vertex_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Vertex>(i);
    tree_.root = build(all);
    return std::move(tree_);
  }

 private:
  std::size_t build(const std::vector<Vertex>& set) {
    const std::size_t id = tree_.nodes.size();
    tree_.nodes.emplace_back();
    tree_.nodes[id].members = set;
    if (set.size() == 1) {
      tree_.nodes[id].kind = MDNodeKind::kLeaf;
      tree_.nodes[id].vertex = set.front();
      return id;
    }
    MDNodeKind kind = MDNodeKind::kUnion;
    auto parts = components(set, false);
    if (parts.size() == 1) {
      kind = MDNodeKind::kJoin;
      parts = components(set, true);
      if (parts.size() == 1) {
        kind = MDNodeKind::kPrime;
        parts = maximal_modules(set);
      }
    }
    std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::vector<std::size_t> children;
    for (const auto& part : parts) children.push_back(build(part));
    MDNode& node = tree_.nodes[id];
    node.kind = kind;
    node.children = std::move(children);
    if (kind == MDNodeKind::kPrime) {
      std::vector<Vertex> reps;
      for (const auto& part : parts) reps.push_back(part.front());
      node.pattern = g_.induced(reps);
    }
    return id;
  }

  // Components of G[set] (or of its complement), each ascending.
  std::vector<std::vector<Vertex>> components(const std::vector<Vertex>& set, bool complement) {
    for (Vertex v : set) mark_[v] = 1;
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> unvisited = set;
    while (!unvisited.empty()) {
      std::vector<Vertex> comp{unvisited.front()};
      mark_[unvisited.front()] = 2;
      for (std::size_t head = 0; head < comp.size(); ++head) {
        const Vertex u = comp[head];
        for (Vertex w : unvisited) {
          if (mark_[w] == 1 && g_.adjacent(u, w) != complement) {
            mark_[w] = 2;
            comp.push_back(w);
          }
        }
      }
      std::vector<Vertex> rest;
      for (Vertex w : unvisited) {
        if (mark_[w] == 1) rest.push_back(w);
      }
      unvisited = std::move(rest);
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
    for (Vertex v : set) mark_[v] = 0;
    return out;
  }

  // Smallest module of G[set] containing a and b; returns its size and
  // leaves it marked with 3 in mark_ (callers clear it).
  std::size_t closure(const std::vector<Vertex>& set, Vertex a, Vertex b, std::vector<Vertex>& module) {
    module.assign({a, b});
    for (Vertex v : set) count_[v] = 0;
    for (Vertex v : module) mark_[v] = 3;
    for (Vertex x : set) {
      count_[x] = static_cast<int>(g_.adjacent(x, a)) + static_cast<int>(g_.adjacent(x, b));
    }
    bool grew = true;
    while (grew && module.size() < set.size()) {
      grew = false;
      for (Vertex x : set) {
        if (mark_[x] == 3) continue;
        const int seen = count_[x];
        if (seen > 0 && seen < static_cast<int>(module.size())) {
          mark_[x] = 3;
          module.push_back(x);
          for (Vertex y : set) count_[y] += static_cast<int>(g_.adjacent(x, y));
          grew = true;
        }
      }
    }
    return module.size();
  }

  std::vector<std::vector<Vertex>> maximal_modules(const std::vector<Vertex>& set) {
    std::vector<std::vector<Vertex>> out;
    std::vector<char> assigned(g_.vertex_count(), 0);
    std::vector<Vertex> module;
    for (Vertex v : set) {
      if (assigned[v]) continue;
      std::vector<Vertex> part{v};
      assigned[v] = 1;
      for (Vertex w : set) {
        if (assigned[w]) continue;
        const bool proper = closure(set, v, w, module) < set.size();
        for (Vertex x : module) mark_[x] = 0;
        if (proper) {
          part.push_back(w);
          assigned[w] = 1;
        }
      }
      std::sort(part.begin(), part.end());
      out.push_back(std::move(part));
    }
    return out;
  }

  const Graph& g_;
  std::vector<int> mark_;
  std::vector<int> count_;
  MDTree tree_;
};

inline void write_sexpr(const MDTree& t, std::size_t id, std::ostream& out) {
  const MDNode& node = t.nodes[id];
  if (node.kind == MDNodeKind::kLeaf) {
    out << "(leaf " << node.vertex << ')';
    return;
  }
  out << '(' << to_string(node.kind);
  for (std::size_t c : node.children) {
    out << ' ';
    write_sexpr(t, c, out);
  }
  out << ')';
}

}  // namespace detail

inline MDTree modular_decomposition(const Graph& g) {
  if (g.vertex_count() == 0) throw DomainError("modular decomposition of an empty graph");
  return detail::ModularDecomposer(g).run();
}

// Largest operand count of any prime node; 0 when there is none.
inline std::size_t modular_width(const MDTree& t) {
  std::size_t width = 0;
  for (const auto& node : t.nodes) {
    if (node.kind == MDNodeKind::kPrime) width = std::max(width, node.children.size());
  }
  return width;
}

// (join (leaf 0) (union (leaf 1) (leaf 2)))
inline std::string to_sexpr(const MDTree& t) {
  std::ostringstream out;
  detail::write_sexpr(t, t.root, out);
  return out.str();
}

// Evaluates the tree as a union/join/substitution expression and returns the
// resulting edge set (u < v, sorted).
inline std::vector<Edge> expand_edges(const MDTree& t) {
  std::vector<Edge> edges;
  for (const auto& node : t.nodes) {
    const auto& ch = node.children;
    for (std::size_t i = 0; i < ch.size(); ++i) {
      for (std::size_t j = i + 1; j < ch.size(); ++j) {
        bool linked = false;
        if (node.kind == MDNodeKind::kJoin) linked = true;
        if (node.kind == MDNodeKind::kPrime) {
          linked = node.pattern.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(j));
        }
        if (!linked) continue;
        for (Vertex a : t.nodes[ch[i]].members) {
          for (Vertex b : t.nodes[ch[j]].members) edges.emplace_back(std::min(a, b), std::max(a, b));
        }
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace mesp
