#include <gtest/gtest.h>

#include "mesp/mesp.hpp"
#include "support/catalog.hpp"
#include "support/oracles.hpp"

using namespace mesp;
using namespace mesp::testing;

namespace {

Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return build_graph(n, e);
}

Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return build_graph(n, e);
}

Graph claw() { return build_graph(4, {{0, 1}, {0, 2}, {0, 3}}); }

// Hubs 0 and 1 joined by three internally disjoint paths of length 3.
Graph theta() {
  return build_graph(8, {{0, 2}, {2, 3}, {3, 1}, {0, 4}, {4, 5}, {5, 1}, {0, 6}, {6, 7}, {7, 1}});
}

struct Instance {
  Graph g;
  DistanceMatrix d;
  explicit Instance(Graph graph) : g(std::move(graph)), d(g) {}
  MespQuery q(Hop k) const { return MespQuery{g, d, k}; }
};

Modulator cluster_mod(std::vector<Vertex> v) { return Modulator{ModulatorKind::kCluster, std::move(v)}; }
Modulator paths_mod(std::vector<Vertex> v) { return Modulator{ModulatorKind::kDisjointPaths, std::move(v)}; }

}  // namespace

// ---- brute force

TEST(BruteForce, PathIsItsOwnWitness) {
  const Instance p(path_graph(6));
  const auto a = solve_bruteforce(p.q(0));
  ASSERT_TRUE(a.decision);
  EXPECT_EQ(*a.witness, (Path{0, 1, 2, 3, 4, 5}));
}

TEST(BruteForce, C6) {
  const Instance c(cycle(6));
  EXPECT_FALSE(solve_bruteforce(c.q(0)).decision);
  const auto a = solve_bruteforce(c.q(1));
  ASSERT_TRUE(a.decision);
  EXPECT_EQ(a.witness->size(), 4u);
}

TEST(BruteForce, Claw) {
  const Instance c(claw());
  EXPECT_FALSE(solve_bruteforce(c.q(0)).decision);
  EXPECT_TRUE(solve_bruteforce(c.q(1)).decision);
}

TEST(BruteForce, MatchesIndependentOracleExhaustively) {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& g : small_catalog()[n]) {
      const Instance inst(g);
      const int best = oracle_min_eccentricity(g);
      for (Hop k = 0; k <= inst.d.diameter(); ++k) {
        ASSERT_EQ(solve_bruteforce(inst.q(k)).decision, k >= best);
      }
    }
  }
}

TEST(BruteForce, NegativeKRejected) {
  const Instance c(cycle(6));
  EXPECT_THROW(solve_bruteforce(c.q(-1)), DomainError);
}

TEST(BruteForce, DeadlineRaisesTimeout) {
  Rng rng(1);
  const Instance big(random_connected_graph(60, 0.08, rng));
  SolverOptions o;
  o.deadline = Clock::now();
  EXPECT_THROW(solve_bruteforce(big.q(0), o), Timeout);
}

TEST(BruteForce, ThreadsGiveTheSameWitness) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst(random_connected_graph(14, 0.2, rng));
    SolverOptions many;
    many.threads = 4;
    for (Hop k = 0; k <= 3; ++k) {
      const auto a = solve_bruteforce(inst.q(k));
      const auto b = solve_bruteforce(inst.q(k), many);
      ASSERT_EQ(a.decision, b.decision);
      ASSERT_EQ(a.witness, b.witness);
    }
  }
}

// ---- modular width

TEST(ModularWidthSolver, C4TakesACrossingEdge) {
  const Instance c(cycle(4));
  const auto t = modular_decomposition(c.g);
  const auto a = solve_modular_width(c.q(1), t);
  ASSERT_TRUE(a.decision);
  ASSERT_EQ(a.witness->size(), 2u);
  EXPECT_FALSE(solve_modular_width(c.q(0), t).decision);
}

TEST(ModularWidthSolver, P3IsTheWholePath) {
  const Instance p(path_graph(3));
  const auto a = solve_modular_width(p.q(0), modular_decomposition(p.g));
  ASSERT_TRUE(a.decision);
  EXPECT_EQ(*a.witness, (Path{0, 1, 2}));
}

TEST(ModularWidthSolver, C5WithASubstitutedEdge) {
  // C5 on 0..4 with vertex 0 replaced by the adjacent pair {0, 5}.
  const Instance g(build_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 1}, {5, 4}, {0, 5}}));
  const auto t = modular_decomposition(g.g);
  for (Hop k = 0; k <= g.d.diameter(); ++k) {
    EXPECT_EQ(solve_modular_width(g.q(k), t).decision, solve_bruteforce(g.q(k)).decision);
  }
}

TEST(ModularWidthSolver, MismatchedTreeRejected) {
  const Instance c(cycle(5));
  const auto t = modular_decomposition(cycle(4));
  EXPECT_THROW(solve_modular_width(c.q(1), t), std::invalid_argument);
}

// Some optimal shortest path uses at most one vertex per module of the prime root.
TEST(ModularWidthSolver, OneVertexPerModuleSuffices) {
  Rng rng(3);
  const auto pattern = cycle(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::size_t> sizes(5);
    for (auto& s : sizes) s = 1 + rng() % 2;
    const auto sub = substitution(pattern, sizes, 0.5, rng);
    const Instance inst(sub.graph);
    const int best = oracle_min_eccentricity(sub.graph);
    bool found = false;
    enumerate_shortest_paths(inst.g, inst.d, [&](std::span<const Vertex> p) {
      std::vector<int> hits(5, 0);
      for (Vertex v : p) {
        for (int m = 0; m < 5; ++m) {
          if (std::find(sub.modules[m].begin(), sub.modules[m].end(), v) != sub.modules[m].end()) ++hits[m];
        }
      }
      if (std::all_of(hits.begin(), hits.end(), [](int h) { return h <= 1; }) &&
          eccentricity_of_set(inst.d, p) == best) {
        found = true;
        return false;
      }
      return true;
    });
    ASSERT_TRUE(found);
  }
}

// ---- cluster

TEST(ClusterSolver, TwoTrianglesBridged) {
  // Triangles {1,2,3} and {4,5,6}; u = 0 adjacent to 1 and 4.
  const Instance g(build_graph(7, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}, {0, 1}, {0, 4}}));
  const auto a = solve_distance_to_cluster(g.q(1), cluster_mod({0}));
  ASSERT_TRUE(a.decision);
  ASSERT_EQ(a.witness->size(), 3u);
  EXPECT_EQ((*a.witness)[1], 0);
}

TEST(ClusterSolver, TriangleAtZero) {
  const Instance k3(build_graph(3, {{0, 1}, {1, 2}, {0, 2}}));
  for (Vertex u = 0; u < 3; ++u) EXPECT_FALSE(solve_distance_to_cluster(k3.q(0), cluster_mod({u})).decision);
}

TEST(ClusterSolver, ClawWithCentre) {
  const Instance c(claw());
  EXPECT_TRUE(solve_distance_to_cluster(c.q(1), cluster_mod({0})).decision);
  EXPECT_FALSE(solve_distance_to_cluster(c.q(0), cluster_mod({0})).decision);
}

TEST(ClusterSolver, EmptyModulatorMeansOneClique) {
  const Instance k4(build_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  EXPECT_FALSE(solve_distance_to_cluster(k4.q(0), cluster_mod({})).decision);
  EXPECT_TRUE(solve_distance_to_cluster(k4.q(1), cluster_mod({})).decision);
  const Instance k2(build_graph(2, {{0, 1}}));
  EXPECT_TRUE(solve_distance_to_cluster(k2.q(0), cluster_mod({})).decision);
}

TEST(ClusterSolver, InvalidModulatorRejected) {
  const Instance p(path_graph(4));
  EXPECT_THROW(solve_distance_to_cluster(p.q(1), cluster_mod({})), DomainError);
}

TEST(ClusterSolver, MatchesBruteForceWithMinimumModulators) {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& g : small_catalog()[n]) {
      const Instance inst(g);
      const auto m = minimum_cluster_modulator(g, n);
      for (Hop k = 0; k <= inst.d.diameter(); ++k) {
        ASSERT_EQ(solve_distance_to_cluster(inst.q(k), *m).decision, solve_bruteforce(inst.q(k)).decision);
      }
    }
  }
}

TEST(ClusterSolver, MatchesBruteForceOnGeneratedFamilies) {
  Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::size_t> sizes;
    for (int i = 0; i < 2 + trial % 4; ++i) sizes.push_back(1 + rng() % 4);
    const auto made = cluster_plus_p(sizes, 1 + trial % 3, 0.25, rng);
    const Instance inst(made.graph);
    for (Hop k = 0; k <= std::min<Hop>(inst.d.diameter(), 4); ++k) {
      ASSERT_EQ(solve_distance_to_cluster(inst.q(k), made.modulator).decision,
                solve_bruteforce(inst.q(k)).decision)
          << "trial " << trial << " k " << k;
    }
  }
}

// δ^P(u) = d(u, P) on U and d(u, P \ N[u]) on the cliques, for shortest
// paths meeting U.
TEST(ClusterSolver, DistanceEstimateIsExact) {
  Rng rng(13);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::size_t> sizes{1 + rng() % 3, 2, 1 + rng() % 3};
    const auto made = cluster_plus_p(sizes, 2, 0.3, rng);
    const Instance inst(made.graph);
    const auto& U = made.modulator.vertices;
    enumerate_shortest_paths(inst.g, inst.d, [&](std::span<const Vertex> p) {
      std::vector<Vertex> L;
      for (Vertex v : p) {
        if (std::find(U.begin(), U.end(), v) != U.end()) L.push_back(v);
      }
      if (L.empty()) return;
      std::vector<Vertex> R1;
      std::vector<Vertex> R2;
      for (Vertex u : U) {
        const Hop du = distance_to_set(inst.d, u, p);
        if (du == 1) R1.push_back(u);
        if (du == 2) R2.push_back(u);
      }
      for (Vertex u = 0; u < static_cast<Vertex>(inst.g.vertex_count()); ++u) {
        Hop est = distance_to_set(inst.d, u, L);
        if (!R1.empty()) est = std::min(est, distance_to_set(inst.d, u, R1) + 1);
        if (!R2.empty()) est = std::min(est, distance_to_set(inst.d, u, R2) + 2);
        const bool in_u = std::find(U.begin(), U.end(), u) != U.end();
        if (in_u) {
          ASSERT_EQ(est, distance_to_set(inst.d, u, p));
        } else {
          std::vector<Vertex> far;
          for (Vertex x : p) {
            const bool clique_neighbour = std::find(U.begin(), U.end(), x) == U.end() && inst.d(u, x) <= 1;
            if (!clique_neighbour) far.push_back(x);
          }
          ASSERT_EQ(est, distance_to_set(inst.d, u, far));
        }
        ++checked;
      }
    });
  }
  EXPECT_GT(checked, 1000);
}

// ---- disjoint paths

TEST(DisjointPathsSolver, C6WithOneVertexRemoved) {
  const Instance c(cycle(6));
  for (Hop k = 0; k <= 2; ++k) {
    EXPECT_EQ(solve_distance_to_disjoint_paths(c.q(k), paths_mod({0})).decision, k >= 1);
  }
}

TEST(DisjointPathsSolver, P7WithEmptyModulator) {
  const Instance p(path_graph(7));
  const auto a = solve_distance_to_disjoint_paths(p.q(0), paths_mod({}));
  ASSERT_TRUE(a.decision);
  EXPECT_EQ(a.witness->size(), 7u);
}

TEST(DisjointPathsSolver, ThetaGraph) {
  const Instance t(theta());
  for (Hop k = 0; k <= t.d.diameter(); ++k) {
    EXPECT_EQ(solve_distance_to_disjoint_paths(t.q(k), paths_mod({0, 1})).decision,
              solve_bruteforce(t.q(k)).decision);
  }
}

TEST(DisjointPathsSolver, InvalidModulatorRejected) {
  const Instance c(cycle(5));
  EXPECT_THROW(solve_distance_to_disjoint_paths(c.q(1), paths_mod({})), DomainError);
}

TEST(DisjointPathsSolver, MatchesBruteForceWithMinimumModulators) {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& g : small_catalog()[n]) {
      const Instance inst(g);
      const auto m = minimum_disjoint_paths_modulator(g, n);
      for (Hop k = 0; k <= inst.d.diameter(); ++k) {
        ASSERT_EQ(solve_distance_to_disjoint_paths(inst.q(k), *m).decision, solve_bruteforce(inst.q(k)).decision);
      }
    }
  }
}

TEST(DisjointPathsSolver, MatchesBruteForceOnGeneratedFamilies) {
  Rng rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::size_t> sizes;
    for (int i = 0; i < 1 + trial % 3; ++i) sizes.push_back(2 + rng() % 5);
    const auto made = paths_plus_c(sizes, 1 + trial % 2, 0.15, rng);
    const Instance inst(made.graph);
    for (Hop k = 0; k <= std::min<Hop>(inst.d.diameter(), 4); ++k) {
      ASSERT_EQ(solve_distance_to_disjoint_paths(inst.q(k), made.modulator).decision,
                solve_bruteforce(inst.q(k)).decision)
          << "trial " << trial << " k " << k;
    }
  }
}

// The hub estimate bounds d(v, P) from above for the guess read off P, and
// few off-path vertices exceed k.
TEST(DisjointPathsSolver, EstimateBoundsAndOffPathCount) {
  Rng rng(15);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::size_t> sizes{2 + rng() % 4, 2 + rng() % 4};
    const auto made = paths_plus_c(sizes, 2, 0.2, rng);
    const Instance inst(made.graph);
    enumerate_shortest_paths(inst.g, inst.d, [&](std::span<const Vertex> p) {
      PathsGuess guess;
      guess.first = p.front();
      guess.last = p.back();
      guess.hub = made.modulator.vertices;
      guess.hub.push_back(p.front());
      guess.hub.push_back(p.back());
      std::sort(guess.hub.begin(), guess.hub.end());
      guess.hub.erase(std::unique(guess.hub.begin(), guess.hub.end()), guess.hub.end());
      for (Vertex h : guess.hub) {
        guess.estimate.push_back(distance_to_set(inst.d, h, p));
        if (guess.estimate.back() == 0) guess.on_path.push_back(h);
      }
      const auto est = detail::estimated_distances(inst.d, guess);
      const Hop k = eccentricity_of_set(inst.d, p);
      std::size_t off = 0;
      for (Vertex v = 0; v < static_cast<Vertex>(inst.g.vertex_count()); ++v) {
        ASSERT_LE(distance_to_set(inst.d, v, p), est[v]);
        if (est[v] > k && std::find(p.begin(), p.end(), v) == p.end()) ++off;
        ++checked;
      }
      ASSERT_LE(off, 2 * (guess.on_path.size() - 1));
    });
  }
  EXPECT_GT(checked, 1000);
}

// ---- auto, minimize, monotonicity

TEST(AutoSolver, CographGoesToModularWidth) {
  // Complete bipartite K_{3,3} plus nothing else: a cograph.
  const Instance g(build_graph(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}}));
  const auto plan = plan_solver(g.g, g.d, 1);
  EXPECT_EQ(plan.kind, SolverKind::kModularWidth);
  EXPECT_EQ(plan.parameters.modular_width, 0u);
  EXPECT_TRUE(solve_auto(g.q(1)).decision);
}

TEST(AutoSolver, ClusterPlusApexGoesToCluster) {
  // Twelve triangles, apex 0 adjacent to one vertex of each.
  std::vector<Edge> e;
  for (int t = 0; t < 12; ++t) {
    const Vertex a = 1 + 3 * t;
    e.insert(e.end(), {{a, a + 1}, {a + 1, a + 2}, {a, a + 2}, {0, a}});
  }
  const Instance g(build_graph(37, e));
  const auto plan = plan_solver(g.g, g.d, 2);
  EXPECT_EQ(plan.kind, SolverKind::kCluster);
  ASSERT_TRUE(plan.parameters.cluster);
  EXPECT_EQ(plan.parameters.cluster->vertices, std::vector<Vertex>{0});
  for (Hop k = 0; k <= 3; ++k) EXPECT_EQ(solve_auto(g.q(k)).decision, solve_bruteforce(g.q(k)).decision);
}

TEST(AutoSolver, RandomTreesMatchOracle) {
  Rng rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance t(random_tree(30, rng));
    for (Hop k = 0; k <= 4; ++k) ASSERT_EQ(solve_auto(t.q(k)).decision, solve_bruteforce(t.q(k)).decision);
  }
}

TEST(AutoSolver, EverythingOverCapIsACapacityError) {
  Rng rng(17);
  const Instance g(random_connected_graph(40, 0.5, rng));
  AutoOptions o;
  o.cap_p = 0;
  o.cap_c = 0;
  o.cap_mw = 0;
  o.brute_force_max_log2 = 1;
  EXPECT_THROW(solve_auto(g.q(2), o), CapacityError);
}

TEST(MinimizeK, Examples) {
  EXPECT_EQ(minimize_k(path_graph(7), SolverKind::kBruteForce).k_star, 0);
  EXPECT_EQ(minimize_k(cycle(6), SolverKind::kBruteForce).k_star, 1);
  EXPECT_EQ(minimize_k(claw(), SolverKind::kBruteForce).k_star, 1);
  for (auto kind : {SolverKind::kAuto, SolverKind::kModularWidth, SolverKind::kCluster, SolverKind::kDisjointPaths}) {
    const auto r = minimize_k(cycle(6), kind);
    EXPECT_EQ(r.k_star, 1) << to_string(kind);
    const DistanceMatrix d(cycle(6));
    EXPECT_TRUE(is_mesp_witness(cycle(6), d, r.witness, 1));
  }
}

TEST(MinimizeK, MatchesOracleOnRandomGraphs) {
  Rng rng(18);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_connected_graph(9, 0.25, rng);
    EXPECT_EQ(minimize_k(g, SolverKind::kAuto).k_star, oracle_min_eccentricity(g));
  }
}

TEST(Monotonicity, YesStaysYes) {
  Rng rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst(random_connected_graph(8 + trial % 13, 0.15, rng));
    bool seen_yes = false;
    for (Hop k = 0; k <= inst.d.diameter(); ++k) {
      const bool yes = solve_bruteforce(inst.q(k)).decision;
      ASSERT_TRUE(!seen_yes || yes);
      seen_yes = yes;
    }
    ASSERT_TRUE(seen_yes);
  }
}

TEST(SolverKinds, NamesRoundTrip) {
  for (auto kind : {SolverKind::kAuto, SolverKind::kBruteForce, SolverKind::kModularWidth, SolverKind::kCluster,
                    SolverKind::kDisjointPaths}) {
    EXPECT_EQ(parse_solver_kind(to_string(kind)), kind);
  }
  EXPECT_THROW(parse_solver_kind("nope"), std::invalid_argument);
}
