#pragma once

// Front door: measures the structural parameters, estimates what each solver
// would cost, and runs the cheapest one that applies. Also the k-minimiser.

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mesp/modular_decomposition.hpp"
#include "mesp/modulators.hpp"
#include "mesp/solvers/bruteforce.hpp"
#include "mesp/solvers/cluster.hpp"
#include "mesp/solvers/disjoint_paths.hpp"
#include "mesp/solvers/modular_width.hpp"

namespace mesp {

enum class SolverKind { kAuto, kBruteForce, kModularWidth, kCluster, kDisjointPaths };

inline std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::kAuto: return "auto";
    case SolverKind::kBruteForce: return "brute";
    case SolverKind::kModularWidth: return "mw";
    case SolverKind::kCluster: return "cluster";
    case SolverKind::kDisjointPaths: return "paths";
  }
  return "?";
}

inline SolverKind parse_solver_kind(std::string_view name) {
  for (auto kind : {SolverKind::kAuto, SolverKind::kBruteForce, SolverKind::kModularWidth, SolverKind::kCluster,
                    SolverKind::kDisjointPaths}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

struct AutoOptions {
  SolverOptions solver;
  int cap_p = 8;                        // largest cluster modulator searched for
  int cap_c = 6;                        // largest disjoint-paths modulator searched for
  std::size_t cap_mw = 24;              // widest prime root the mw solver accepts
  std::size_t mw_max_vertices = 1000;   // skip decomposition on larger graphs
  double brute_force_max_log2 = 40.0;   // brute force refused above 2^40 steps
};

// What was measured. Absent values were not computed or exceeded their cap.
struct GraphParameters {
  std::optional<MDTree> decomposition;
  std::optional<std::size_t> modular_width;  // prime-root width; 0 for non-prime roots
  std::optional<Modulator> cluster;
  std::optional<Modulator> paths;
  double shortest_paths_log2 = 0.0;          // log2 of the number of directed shortest paths
  std::size_t leaf_lower_bound = 2;          // leaves of a greedy spanning tree (<= max leaf number)
};

struct CostEstimate {
  SolverKind kind = SolverKind::kBruteForce;
  bool applicable = false;
  double log2_cost = 0.0;
};

struct SolverPlan {
  SolverKind kind = SolverKind::kBruteForce;
  GraphParameters parameters;
  std::vector<CostEstimate> estimates;
};

namespace detail {

// log2 of the number of directed shortest paths (single vertices included),
// by counting shortest s-t paths layer by layer from every s.
inline double log2_shortest_path_count(const Graph& g, const DistanceMatrix& d) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  std::vector<double> sigma(n);
  std::vector<Vertex> by_distance(n);
  double total = 0.0;
  for (Vertex s = 0; s < n; ++s) {
    for (Vertex v = 0; v < n; ++v) by_distance[v] = v;
    std::sort(by_distance.begin(), by_distance.end(), [&](Vertex a, Vertex b) { return d(s, a) < d(s, b); });
    for (Vertex v : by_distance) {
      if (v == s) {
        sigma[v] = 1.0;
      } else {
        double sum = 0.0;
        for (Vertex w : g.neighbors(v)) {
          if (d(s, w) + 1 == d(s, v)) sum += sigma[w];
        }
        sigma[v] = sum;
      }
      total += sigma[v];
    }
  }
  return std::log2(total);
}

// Leaf count of a greedy spanning tree: grow from a maximum-degree vertex,
// always expanding the tree vertex with the most unreached neighbours. Any
// spanning tree's leaf count is a lower bound on the maximum leaf number.
inline std::size_t greedy_leaf_count(const Graph& g) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  if (n <= 2) return static_cast<std::size_t>(n);
  std::vector<char> reached(n, 0);
  std::vector<int> tree_degree(n, 0);
  std::vector<Vertex> frontier;
  Vertex root = 0;
  for (Vertex v = 1; v < n; ++v) {
    if (g.degree(v) > g.degree(root)) root = v;
  }
  reached[root] = 1;
  frontier.push_back(root);
  while (true) {
    Vertex best = -1;
    std::size_t gain = 0;
    for (Vertex v : frontier) {
      std::size_t fresh = 0;
      for (Vertex w : g.neighbors(v)) fresh += reached[w] ? 0 : 1;
      if (fresh > gain) {
        gain = fresh;
        best = v;
      }
    }
    if (best < 0) break;
    for (Vertex w : g.neighbors(best)) {
      if (reached[w]) continue;
      reached[w] = 1;
      ++tree_degree[best];
      ++tree_degree[w];
      frontier.push_back(w);
    }
  }
  std::size_t leaves = 0;
  for (Vertex v = 0; v < n; ++v) leaves += tree_degree[v] == 1 ? 1 : 0;
  return leaves;
}

// Width that drives the mw solver: size of the root's prime pattern.
inline std::size_t root_width(const MDTree& t) {
  const auto& root = t.root_node();
  return root.kind == MDNodeKind::kPrime ? root.children.size() : 0;
}

}  // namespace detail

inline GraphParameters measure_parameters(const Graph& g, const DistanceMatrix& d, const AutoOptions& options = {}) {
  GraphParameters p;
  if (g.vertex_count() <= options.mw_max_vertices) {
    p.decomposition = modular_decomposition(g);
    p.modular_width = detail::root_width(*p.decomposition);
  }
  p.cluster = minimum_cluster_modulator(g, options.cap_p);
  p.paths = minimum_disjoint_paths_modulator(g, options.cap_c);
  p.shortest_paths_log2 = detail::log2_shortest_path_count(g, d);
  p.leaf_lower_bound = std::max<std::size_t>(detail::greedy_leaf_count(g), 2);
  return p;
}

// log2 cost estimates following the solvers' running-time bounds:
// mw 2^w n^3, cluster 2^(4p) p n^6, paths 2^(5c) k^c c n^4, brute force
// 2^(4l) n^3 with l the leaf lower bound. Brute force is only applicable
// when the exact enumeration size n * #paths stays under its cap.
inline std::vector<CostEstimate> estimate_costs(const GraphParameters& p, std::size_t n, Hop k,
                                                const AutoOptions& options = {}) {
  const double log_n = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  std::vector<CostEstimate> out;
  {
    CostEstimate e{SolverKind::kModularWidth, false, 0.0};
    if (p.modular_width && *p.modular_width <= options.cap_mw) {
      e.applicable = true;
      e.log2_cost = static_cast<double>(*p.modular_width) + 3 * log_n;
    }
    out.push_back(e);
  }
  {
    CostEstimate e{SolverKind::kCluster, false, 0.0};
    if (p.cluster) {
      const double size = static_cast<double>(p.cluster->size());
      e.applicable = true;
      e.log2_cost = 4 * size + std::log2(std::max(size, 1.0)) + 6 * log_n;
    }
    out.push_back(e);
  }
  {
    CostEstimate e{SolverKind::kDisjointPaths, false, 0.0};
    if (p.paths) {
      const double size = static_cast<double>(p.paths->size());
      e.applicable = true;
      e.log2_cost = 5 * size + size * std::log2(std::max<double>(k, 1)) + std::log2(std::max(size, 1.0)) + 4 * log_n;
    }
    out.push_back(e);
  }
  {
    CostEstimate e{SolverKind::kBruteForce, false, 4 * static_cast<double>(p.leaf_lower_bound) + 3 * log_n};
    e.applicable = p.shortest_paths_log2 + log_n <= options.brute_force_max_log2;
    out.push_back(e);
  }
  return out;
}

// Measures, estimates, and picks the cheapest applicable solver (ties go to
// the earlier entry: mw, cluster, paths, brute force).
inline SolverPlan plan_solver(const Graph& g, const DistanceMatrix& d, Hop k, const AutoOptions& options = {}) {
  SolverPlan plan;
  plan.parameters = measure_parameters(g, d, options);
  plan.estimates = estimate_costs(plan.parameters, g.vertex_count(), k, options);
  const CostEstimate* best = nullptr;
  for (const auto& e : plan.estimates) {
    if (e.applicable && (!best || e.log2_cost < best->log2_cost)) best = &e;
  }
  if (!best) throw CapacityError("every structural parameter exceeds its cap and the graph is too large for brute force");
  plan.kind = best->kind;
  return plan;
}

// Runs the solver named by the plan with the witnesses it measured.
inline MespAnswer run_plan(const MespQuery& q, const SolverPlan& plan, const AutoOptions& options = {}) {
  const auto& p = plan.parameters;
  switch (plan.kind) {
    case SolverKind::kModularWidth:
      if (!p.decomposition) throw CapacityError("no modular decomposition available");
      return solve_modular_width(q, *p.decomposition, options.solver);
    case SolverKind::kCluster:
      if (!p.cluster) throw CapacityError("distance to cluster graph exceeds its cap");
      return solve_distance_to_cluster(q, *p.cluster, options.solver);
    case SolverKind::kDisjointPaths:
      if (!p.paths) throw CapacityError("distance to disjoint paths exceeds its cap");
      return solve_distance_to_disjoint_paths(q, *p.paths, options.solver);
    case SolverKind::kBruteForce:
    case SolverKind::kAuto:
      break;
  }
  return solve_bruteforce(q, options.solver);
}

inline MespAnswer solve_auto(const MespQuery& q, const AutoOptions& options = {}) {
  detail::validate_query(q);
  return run_plan(q, plan_solver(q.graph, q.distances, q.k, options), options);
}

using SolverFn = std::function<MespAnswer(const MespQuery&)>;

// A solver of the given kind, bound to the graph's parameter witnesses
// (computed once here and reused for every k).
inline SolverFn make_solver(SolverKind kind, const Graph& g, const AutoOptions& options = {}) {
  switch (kind) {
    case SolverKind::kAuto:
      return [options](const MespQuery& q) { return solve_auto(q, options); };
    case SolverKind::kBruteForce:
      return [options](const MespQuery& q) { return solve_bruteforce(q, options.solver); };
    case SolverKind::kModularWidth: {
      auto tree = std::make_shared<MDTree>(modular_decomposition(g));
      if (detail::root_width(*tree) > options.cap_mw) throw CapacityError("modular width exceeds its cap");
      return [tree, options](const MespQuery& q) { return solve_modular_width(q, *tree, options.solver); };
    }
    case SolverKind::kCluster: {
      auto m = minimum_cluster_modulator(g, options.cap_p);
      if (!m) throw CapacityError("distance to cluster graph exceeds its cap");
      return [m = *m, options](const MespQuery& q) { return solve_distance_to_cluster(q, m, options.solver); };
    }
    case SolverKind::kDisjointPaths: {
      auto m = minimum_disjoint_paths_modulator(g, options.cap_c);
      if (!m) throw CapacityError("distance to disjoint paths exceeds its cap");
      return [m = *m, options](const MespQuery& q) {
        return solve_distance_to_disjoint_paths(q, m, options.solver);
      };
    }
  }
  throw std::invalid_argument("unknown solver kind");
}

struct MinimizeResult {
  Hop k_star = 0;
  Path witness;
  SolveStats stats;
  int solves = 0;
};

// Smallest k with a yes-answer, by binary search over [0, ecc(vertex 0)]
// (the single vertex 0 already witnesses its own eccentricity).
inline MinimizeResult minimize_k(const Graph& g, const DistanceMatrix& d, const SolverFn& solver) {
  if (g.vertex_count() == 0) throw DomainError("graph has no vertices");
  MinimizeResult out;
  Hop lo = 0;
  Hop hi = d.eccentricity(0);
  out.witness = Path{0};
  while (lo < hi) {
    const Hop mid = lo + (hi - lo) / 2;
    const auto answer = solver(MespQuery{g, d, mid});
    ++out.solves;
    out.stats += answer.stats;
    if (answer.decision) {
      hi = mid;
      out.witness = *answer.witness;
    } else {
      lo = mid + 1;
    }
  }
  out.k_star = lo;
  if (!is_mesp_witness(g, d, out.witness, lo)) {
    const auto answer = solver(MespQuery{g, d, lo});
    ++out.solves;
    out.stats += answer.stats;
    if (!answer.decision) throw std::logic_error("solver is not monotone in k");
    out.witness = *answer.witness;
  }
  return out;
}

inline MinimizeResult minimize_k(const Graph& g, SolverKind kind, const AutoOptions& options = {}) {
  const DistanceMatrix d(g);
  return minimize_k(g, d, make_solver(kind, g, options));
}

}  // namespace mesp
