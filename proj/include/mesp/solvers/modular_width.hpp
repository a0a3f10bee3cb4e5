#pragma once

// Solver parameterised by modular width.
//
// Looks only at the root of the decomposition. A join root admits a crossing
// edge of eccentricity 1 (or is itself a path). Under a prime root some
// optimal path meets every maximal module at most once, and which vertex of
// a module is used does not change the eccentricity, so it suffices to try
// every shortest path of the quotient pattern with one representative per
// module.

#include <span>

#include "mesp/modular_decomposition.hpp"
#include "mesp/shortest_paths.hpp"
#include "mesp/solvers/answer.hpp"

namespace mesp {

inline MespAnswer solve_modular_width(const MespQuery& q, const MDTree& tree, const SolverOptions& options = {}) {
  detail::validate_query(q);
  const auto start = Clock::now();
  SolveStats stats;
  const MDNode& root = tree.root_node();
  if (root.members.size() != q.graph.vertex_count()) {
    throw std::invalid_argument("decomposition does not match the graph");
  }
  std::optional<Path> witness;
  switch (root.kind) {
    case MDNodeKind::kLeaf:
      witness = Path{root.vertex};
      break;
    case MDNodeKind::kUnion:
      throw DomainError("decomposition root is a union node: the graph is disconnected");
    case MDNodeKind::kJoin: {
      if (detail::is_path_graph(q.graph)) {
        witness = detail::path_graph_order(q.graph);
      } else if (q.k >= 1) {
        const Vertex a = tree.nodes[root.children[0]].members.front();
        const Vertex b = tree.nodes[root.children[1]].members.front();
        witness = Path{std::min(a, b), std::max(a, b)};
      }
      break;
    }
    case MDNodeKind::kPrime: {
      std::vector<Vertex> representative;
      for (std::size_t c : root.children) representative.push_back(tree.nodes[c].members.front());
      const DistanceMatrix pattern_distances(root.pattern);
      Path lifted;
      enumerate_shortest_paths(
          root.pattern, pattern_distances,
          [&](std::span<const Vertex> pattern_path) {
            ++stats.paths_examined;
            if ((stats.paths_examined & 0xff) == 0) detail::check_deadline(options);
            lifted.clear();
            for (Vertex t : pattern_path) lifted.push_back(representative[t]);
            if (is_mesp_witness(q.graph, q.distances, lifted, q.k)) {
              witness = lifted;
              return false;
            }
            return true;
          },
          /*deduplicate=*/true);
      break;
    }
  }
  return detail::finish(q, std::move(witness), stats, start);
}

}  // namespace mesp
