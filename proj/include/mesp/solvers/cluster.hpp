#pragma once

// Solver parameterised by the distance to cluster graph.
//
// With U a modulator to cluster graph, some optimal path meets U. The solver
// guesses which vertices of U lie on the path (L), which one comes first (s),
// and which of the rest are at distance 1 or 2 from it (R1, R2). The order of
// L along the path is then forced, and between two consecutive vertices of L
// the path uses at most two clique vertices. Choosing those vertices so that
// every vertex of R1 / R2 ends up close enough is a constrained set cover
// instance. The path may also start or end with up to two clique vertices
// before reaching U; those ends are tried explicitly.

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "mesp/csc.hpp"
#include "mesp/modulators.hpp"
#include "mesp/solvers/answer.hpp"

namespace mesp {

// One point of the guess space.
struct ClusterGuess {
  std::vector<Vertex> on_path;  // L, ascending
  Vertex first = -1;            // s, the first vertex of L along the path
  std::vector<Vertex> at_one;   // R1
  std::vector<Vertex> at_two;   // R2
};

namespace detail {

using VertexPair = std::pair<Vertex, Vertex>;

// Candidate fillings between two consecutive vertices of L.
struct PairGroup {
  std::size_t after = 0;  // fills the gap between order[after] and order[after + 1]
  std::vector<VertexPair> pairs;
};

// Prefix or suffix of clique vertices, listed in path order.
struct PathEnd {
  Path vertices;
  VertexBits ball;  // vertices within k
};

class ClusterSolver {
 public:
  ClusterSolver(const MespQuery& q, std::span<const Vertex> modulator, const SolverOptions& options)
      : q_(q), d_(q.distances), options_(options), modulator_(modulator.begin(), modulator.end()),
        in_modulator_(q.graph.vertex_count(), 0) {
    std::sort(modulator_.begin(), modulator_.end());
    for (Vertex u : modulator_) in_modulator_[u] = 1;
  }

  MespAnswer solve() {
    const auto start = Clock::now();
    SolveStats stats;
    if (modulator_.empty()) return detail::finish(q_, solve_single_clique(), stats, start);

    // Tasks: (L, s) with L by increasing size then lexicographic, s ascending.
    std::vector<std::pair<std::vector<Vertex>, Vertex>> tasks;
    for (std::size_t size = 1; size <= modulator_.size(); ++size) {
      for_each_combination(modulator_.size(), size, [&](const std::vector<std::size_t>& pick) {
        std::vector<Vertex> on_path;
        for (std::size_t i : pick) on_path.push_back(modulator_[i]);
        for (Vertex s : on_path) tasks.emplace_back(on_path, s);
        return true;
      });
    }
    auto witness = first_success<Path>(tasks.size(), options_.threads, stats, [&](std::size_t i, SolveStats& local) {
      return search(tasks[i].first, tasks[i].second, local);
    });
    return detail::finish(q_, std::move(witness), stats, start);
  }

 private:
  bool in_clique_part(Vertex v) const { return in_modulator_[v] == 0; }

  // G is a single clique.
  std::optional<Path> solve_single_clique() const {
    const auto n = static_cast<Vertex>(q_.graph.vertex_count());
    if (n == 1) return Path{0};
    if (n == 2) return Path{0, 1};
    if (q_.k >= 1) return Path{0};
    return std::nullopt;
  }

  std::optional<Path> search(const std::vector<Vertex>& on_path, Vertex first, SolveStats& stats) const {
    auto order = unique_order(d_, first, on_path);
    if (!order || order->front() != first) return std::nullopt;
    std::vector<PairGroup> groups;
    if (!build_groups(*order, groups)) return std::nullopt;
    const auto prefixes = path_ends(order->front(), true);
    const auto suffixes = path_ends(order->back(), false);

    std::vector<Vertex> rest;
    for (Vertex u : modulator_) {
      if (!std::binary_search(on_path.begin(), on_path.end(), u)) rest.push_back(u);
    }
    // Odometer over rest -> {R1, R2, far}, first vertex most significant.
    std::vector<int> label(rest.size(), 0);
    while (true) {
      check_deadline(options_);
      ClusterGuess guess{on_path, first, {}, {}};
      bool plausible = true;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        const Hop to_l = distance_to_set(d_, rest[i], on_path);
        // The true guess has d(u, L) >= d(u, P) = label distance.
        if (label[i] == 0) guess.at_one.push_back(rest[i]);
        if (label[i] == 1) {
          guess.at_two.push_back(rest[i]);
          plausible = plausible && to_l >= 2;
        }
        if (label[i] == 2) plausible = plausible && to_l >= 3;
      }
      if (plausible) {
        ++stats.guesses;
        if (auto path = evaluate(guess, *order, groups, prefixes, suffixes, stats)) return path;
      }
      std::size_t i = rest.size();
      while (i > 0 && label[i - 1] == 2) label[--i] = 0;
      if (i == 0) break;
      ++label[i - 1];
    }
    return std::nullopt;
  }

  // Candidate sets for every non-adjacent consecutive pair of the order.
  bool build_groups(const std::vector<Vertex>& order, std::vector<PairGroup>& groups) const {
    const auto& g = q_.graph;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const Vertex a = order[i];
      const Vertex b = order[i + 1];
      const Hop gap = d_(a, b);
      if (gap == 1) continue;
      if (gap > 3) return false;
      PairGroup group{i, {}};
      for (Vertex u : g.neighbors(a)) {
        if (!in_clique_part(u)) continue;
        if (gap == 2) {
          if (g.adjacent(u, b)) group.pairs.emplace_back(u, u);
          continue;
        }
        for (Vertex v : g.neighbors(u)) {
          if (in_clique_part(v) && g.adjacent(v, b)) group.pairs.emplace_back(u, v);
        }
      }
      if (group.pairs.empty()) return false;
      groups.push_back(std::move(group));
    }
    return true;
  }

  // Ends of up to two clique vertices attached to `anchor`: the empty end,
  // (a) with a ~ anchor, and (a, b) with b ~ anchor and d(a, anchor) = 2.
  // Prefixes are stored in path order (a, b, anchor ...), suffixes as
  // (... anchor, b, a).
  std::vector<PathEnd> path_ends(Vertex anchor, bool prefix) const {
    const auto& g = q_.graph;
    std::vector<PathEnd> ends;
    ends.push_back(PathEnd{{}, VertexBits(g.vertex_count())});
    for (Vertex a : g.neighbors(anchor)) {
      if (in_clique_part(a)) ends.push_back(make_end({a}));
    }
    for (Vertex b : g.neighbors(anchor)) {
      if (!in_clique_part(b)) continue;
      for (Vertex a : g.neighbors(b)) {
        if (!in_clique_part(a) || d_(a, anchor) != 2) continue;
        ends.push_back(make_end(prefix ? Path{a, b} : Path{b, a}));
      }
    }
    return ends;
  }

  PathEnd make_end(Path vertices) const {
    PathEnd end{std::move(vertices), {}};
    end.ball = ball_of(d_, end.vertices, q_.k);
    return end;
  }

  std::optional<Path> evaluate(const ClusterGuess& guess, const std::vector<Vertex>& order,
                               const std::vector<PairGroup>& base_groups, const std::vector<PathEnd>& prefixes,
                               const std::vector<PathEnd>& suffixes, SolveStats& stats) const {
    const auto& g = q_.graph;
    // Requirements: R1 / R2 vertices not already served by L itself.
    std::vector<Vertex> req;
    std::vector<Hop> reach;
    for (Vertex r : guess.at_one) {
      if (distance_to_set(d_, r, guess.on_path) > 1) {
        req.push_back(r);
        reach.push_back(1);
      }
    }
    for (Vertex r : guess.at_two) {
      if (distance_to_set(d_, r, guess.on_path) > 2) {
        req.push_back(r);
        reach.push_back(2);
      }
    }
    if (static_cast<int>(req.size()) > options_.csc_requirement_cap) {
      throw CapacityError("cluster solver requirement count exceeds the set cover cap");
    }
    auto mask_of = [&](std::span<const Vertex> vertices) {
      RequirementMask mask = 0;
      for (std::size_t j = 0; j < req.size(); ++j) {
        for (Vertex x : vertices) {
          if (d_(req[j], x) <= reach[j]) {
            mask |= RequirementMask{1} << j;
            break;
          }
        }
      }
      return mask;
    };

    std::vector<PairGroup> groups = base_groups;
    if (q_.k == 1) apply_eccentricity_one_filter(guess, groups);

    CscInstance inst;
    inst.requirements = static_cast<int>(req.size());
    for (const auto& group : groups) {
      if (group.pairs.empty()) return std::nullopt;
      std::vector<CscCandidate> cands;
      for (std::size_t c = 0; c < group.pairs.size(); ++c) {
        const auto [u, v] = group.pairs[c];
        const std::array<Vertex, 2> both{u, v};
        cands.push_back(CscCandidate{c, mask_of(both)});
      }
      inst.groups.push_back(std::move(cands));
    }
    ++stats.csc_calls;
    const CscTable table(inst, options_.csc_requirement_cap);
    const RequirementMask full = inst.universe();

    struct Core {
      bool built = false;
      Path path;
      VertexBits uncovered;
    };
    std::vector<Core> cores(std::size_t{1} << req.size());
    auto core_for = [&](RequirementMask target) -> const Core& {
      Core& core = cores[target];
      if (core.built) return core;
      core.built = true;
      const auto sol = table.reconstruct(target);
      std::size_t next_group = 0;
      for (std::size_t i = 0; i < order.size(); ++i) {
        core.path.push_back(order[i]);
        if (next_group < groups.size() && groups[next_group].after == i) {
          const auto [u, v] = groups[next_group].pairs[sol->selection[next_group]];
          core.path.push_back(u);
          if (v != u) core.path.push_back(v);
          ++next_group;
        }
      }
      core.uncovered = VertexBits(g.vertex_count());
      const auto near = ball_of(d_, core.path, q_.k);
      for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        if (!near.test(v)) core.uncovered.set(v);
      }
      return core;
    };

    std::vector<RequirementMask> prefix_masks;
    for (const auto& e : prefixes) prefix_masks.push_back(mask_of(e.vertices));
    std::vector<RequirementMask> suffix_masks;
    for (const auto& e : suffixes) suffix_masks.push_back(mask_of(e.vertices));

    const Vertex head = order.front();
    const Vertex tail = order.back();
    const Hop body = d_(head, tail);
    for (std::size_t pi = 0; pi < prefixes.size(); ++pi) {
      const auto& pre = prefixes[pi].vertices;
      const Vertex first = pre.empty() ? head : pre.front();
      for (std::size_t si = 0; si < suffixes.size(); ++si) {
        const auto& suf = suffixes[si].vertices;
        const Vertex last = suf.empty() ? tail : suf.back();
        if (d_(first, last) != body + static_cast<Hop>(pre.size() + suf.size())) continue;
        const RequirementMask target = full & ~(prefix_masks[pi] | suffix_masks[si]);
        if (!table.coverable(target)) continue;
        const Core& core = core_for(target);
        if (!core.uncovered.covered_by(prefixes[pi].ball, suffixes[si].ball)) continue;
        Path path(pre.begin(), pre.end());
        path.insert(path.end(), core.path.begin(), core.path.end());
        path.insert(path.end(), suf.begin(), suf.end());
        return path;
      }
    }
    return std::nullopt;
  }

  // For k = 1: a clique vertex z with estimated distance 2 to the path must
  // end up adjacent to it, so a gap whose candidates reach z's clique keeps
  // only candidates whose first vertex is z or a neighbour of z.
  void apply_eccentricity_one_filter(const ClusterGuess& guess, std::vector<PairGroup>& groups) const {
    const auto& g = q_.graph;
    const auto n = static_cast<Vertex>(g.vertex_count());
    std::vector<char> estimate_two(g.vertex_count(), 0);
    for (Vertex z = 0; z < n; ++z) {
      if (!in_clique_part(z)) continue;
      Hop est = distance_to_set(d_, z, guess.on_path);
      const Hop one = distance_to_set(d_, z, guess.at_one);
      const Hop two = distance_to_set(d_, z, guess.at_two);
      if (one != kUnreachable) est = std::min(est, one + 1);
      if (two != kUnreachable) est = std::min(est, two + 2);
      estimate_two[z] = est == 2 ? 1 : 0;
    }
    for (auto& group : groups) {
      std::vector<Vertex> witnesses;
      for (const auto& [x, y] : group.pairs) {
        for (Vertex z : g.neighbors(x)) {
          if (estimate_two[z] && in_clique_part(z)) witnesses.push_back(z);
        }
      }
      if (witnesses.empty()) continue;
      std::sort(witnesses.begin(), witnesses.end());
      witnesses.erase(std::unique(witnesses.begin(), witnesses.end()), witnesses.end());
      std::erase_if(group.pairs, [&](const VertexPair& p) {
        for (Vertex z : witnesses) {
          if (z != p.first && !g.adjacent(z, p.first)) return true;
        }
        return false;
      });
    }
  }

  const MespQuery& q_;
  const DistanceMatrix& d_;
  const SolverOptions& options_;
  std::vector<Vertex> modulator_;
  std::vector<char> in_modulator_;
};

}  // namespace detail

// Decides MESP given a modulator to cluster graph.
inline MespAnswer solve_distance_to_cluster(const MespQuery& q, const Modulator& modulator,
                                            const SolverOptions& options = {}) {
  detail::validate_query(q);
  if (!is_cluster_modulator(q.graph, modulator.vertices)) {
    throw DomainError("vertex set is not a modulator to cluster graph");
  }
  return detail::ClusterSolver(q, modulator.vertices, options).solve();
}

}  // namespace mesp
