#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "mesp/generators.hpp"
#include "mesp/graph.hpp"
#include "mesp/graph_io.hpp"
#include "mesp/shortest_paths.hpp"
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

}  // namespace

TEST(BuildGraph, K2) {
  const auto g = build_graph(2, {{0, 1}});
  EXPECT_EQ(g.vertex_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_TRUE(g.adjacent(0, 1));
}

TEST(BuildGraph, DisconnectedIsDomainError) { EXPECT_THROW(build_graph(3, {{0, 1}}), DomainError); }

TEST(BuildGraph, C4) {
  const auto g = build_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(g.degree(v), 2u);
}

TEST(BuildGraph, RejectsLoopsDuplicatesAndRange) {
  EXPECT_THROW(build_graph(2, {{0, 0}, {0, 1}}), FormatError);
  EXPECT_THROW(build_graph(2, {{0, 1}, {1, 0}}), FormatError);
  EXPECT_THROW(build_graph(2, {{0, 2}}), FormatError);
  EXPECT_THROW(build_graph(0, {}), DomainError);
}

TEST(BuildGraph, NeighboursSortedAndSymmetric) {
  const auto g = build_graph(5, {{4, 0}, {2, 0}, {0, 1}, {3, 2}});
  const auto nb = g.neighbors(0);
  EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
  for (Vertex u = 0; u < 5; ++u) {
    for (Vertex v : g.neighbors(u)) EXPECT_TRUE(g.adjacent(v, u));
  }
}

TEST(Distances, Examples) {
  const DistanceMatrix p4(path_graph(4));
  EXPECT_EQ(p4(0, 3), 3);
  const DistanceMatrix k4(build_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  for (Vertex u = 0; u < 4; ++u) {
    for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(k4(u, v), u == v ? 0 : 1);
  }
  const DistanceMatrix c6(cycle(6));
  EXPECT_EQ(c6(0, 3), 3);
  EXPECT_EQ(c6(0, 4), 2);
}

TEST(Distances, MatchFloydWarshallOnRandomGraphs) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_connected_graph(5 + trial % 20, 0.15, rng);
    const DistanceMatrix d(g);
    const auto fw = floyd_warshall(g);
    for (Vertex u = 0; u < static_cast<Vertex>(g.vertex_count()); ++u) {
      for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        ASSERT_EQ(d(u, v), fw[u][v]);
        ASSERT_EQ(d(u, v), d(v, u));
        ASSERT_EQ(d(u, v) == 1, g.adjacent(u, v));
      }
    }
  }
}

TEST(Eccentricity, OfSets) {
  const DistanceMatrix c6(cycle(6));
  const std::vector<Vertex> half{0, 1, 2, 3};
  EXPECT_EQ(eccentricity_of_set(c6, half), 1);
  const std::vector<Vertex> single{0};
  EXPECT_EQ(eccentricity_of_set(c6, single), 3);
  EXPECT_THROW(eccentricity_of_set(c6, std::vector<Vertex>{}), DomainError);
  EXPECT_EQ(c6.eccentricity(2), 3);
  EXPECT_EQ(c6.diameter(), 3);
}

TEST(Neighbourhood, ClosedK) {
  const DistanceMatrix p4(path_graph(4));
  EXPECT_EQ(closed_k_neighborhood(p4, 1, 1), (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(closed_k_neighborhood(p4, 0, 0), (std::vector<Vertex>{0}));
  EXPECT_THROW(closed_k_neighborhood(p4, 0, -1), DomainError);
}

TEST(ShortestPathCheck, Basics) {
  const auto g = cycle(6);
  const DistanceMatrix d(g);
  EXPECT_TRUE(is_shortest_path(g, d, std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_FALSE(is_shortest_path(g, d, std::vector<Vertex>{0, 1, 2, 3, 4}));
  EXPECT_FALSE(is_shortest_path(g, d, std::vector<Vertex>{0, 2}));
  EXPECT_TRUE(is_shortest_path(g, d, std::vector<Vertex>{5}));
  EXPECT_FALSE(is_shortest_path(g, d, std::vector<Vertex>{}));
  EXPECT_FALSE(is_shortest_path(g, d, std::vector<Vertex>{0, 7}));
}

TEST(UniqueOrder, ExamplesAndRejections) {
  const auto g = path_graph(5);
  const DistanceMatrix d(g);
  const std::vector<Vertex> s{3, 1, 4};
  EXPECT_EQ(unique_order(d, 0, s), (std::vector<Vertex>{1, 3, 4}));
  const DistanceMatrix c6(cycle(6));
  // From 0, vertices 1 and 5 lie on opposite sides: no shortest path holds both.
  EXPECT_FALSE(unique_order(c6, 0, std::vector<Vertex>{1, 5}).has_value());
  EXPECT_EQ(unique_order(c6, 0, std::vector<Vertex>{}), std::vector<Vertex>{});
}

// For every catalog graph, every shortest path P from s and every S ⊆ V(P),
// unique_order reproduces P's visit order; whenever it answers nothing, no
// shortest path from s contains S.
TEST(UniqueOrder, ExhaustiveUpToSixVertices) {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& g : small_catalog()[n]) {
      const DistanceMatrix d(g);
      std::set<std::pair<Vertex, std::uint32_t>> coverable;
      enumerate_shortest_paths(g, d, [&](std::span<const Vertex> p) {
        const auto len = p.size();
        for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
          std::vector<Vertex> expected;
          std::uint32_t vmask = 0;
          for (std::size_t i = 0; i < len; ++i) {
            if ((mask >> i) & 1u) {
              expected.push_back(p[i]);
              vmask |= 1u << p[i];
            }
          }
          coverable.emplace(p.front(), vmask);
          auto got = unique_order(d, p.front(), expected);
          ASSERT_TRUE(got.has_value());
          ASSERT_EQ(*got, expected);
        }
      });
      for (Vertex s = 0; s < n; ++s) {
        for (std::uint32_t vmask = 0; vmask < (1u << n); ++vmask) {
          std::vector<Vertex> set;
          for (Vertex v = 0; v < n; ++v) {
            if ((vmask >> v) & 1u) set.push_back(v);
          }
          if (!unique_order(d, s, set)) ASSERT_FALSE(coverable.count({s, vmask}));
        }
      }
    }
  }
}

TEST(Enumeration, CountsMatchOracle) {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& g : small_catalog()[n]) {
      const DistanceMatrix d(g);
      ASSERT_EQ(count_shortest_paths(g, d), oracle_count_shortest_paths(g));
    }
  }
}

TEST(Enumeration, DeduplicationKeepsOneDirection) {
  const auto g = cycle(6);
  const DistanceMatrix d(g);
  const auto all = count_shortest_paths(g, d);
  const auto dedup = count_shortest_paths(g, d, true);
  EXPECT_EQ(all - 6, 2 * (dedup - 6));
  enumerate_shortest_paths(
      g, d, [&](std::span<const Vertex> p) { EXPECT_TRUE(p.size() == 1 || p.front() < p.back()); }, true);
}

TEST(Enumeration, EveryEmittedPathIsShortest) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_connected_graph(10, 0.2, rng);
    const DistanceMatrix d(g);
    enumerate_shortest_paths(g, d, [&](std::span<const Vertex> p) { ASSERT_TRUE(is_shortest_path(g, d, p)); });
  }
}

TEST(Enumeration, VisitorCanStop) {
  const auto g = cycle(6);
  const DistanceMatrix d(g);
  int seen = 0;
  const bool finished = enumerate_shortest_paths(g, d, [&](std::span<const Vertex>) { return ++seen < 3; });
  EXPECT_FALSE(finished);
  EXPECT_EQ(seen, 3);
}

// Subdivided cores: the path count stays under 2^(4l) n^2 with l bounded by
// construction.
TEST(Enumeration, SubdividedCoreBound) {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto core = random_connected_graph(4 + trial % 4, 0.5, rng);
    const auto sub = subdivided_core(core, 2 + trial % 5);
    const DistanceMatrix d(sub.graph);
    const double n = static_cast<double>(sub.graph.vertex_count());
    const double count = static_cast<double>(count_shortest_paths(sub.graph, d));
    EXPECT_LE(std::log2(count), 4.0 * static_cast<double>(sub.leaf_bound) + 2 * std::log2(n));
  }
}

TEST(GraphIo, EdgeList) {
  std::istringstream in("# comment\n4 3\n0 1\n1 2\n\n2 3\n");
  const auto g = read_graph(in);
  EXPECT_EQ(g.vertex_count(), 4u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_TRUE(g.adjacent(2, 3));
}

TEST(GraphIo, Dimacs) {
  std::istringstream in("c claw\np edge 4 3\ne 1 2\ne 1 3\ne 1 4\n");
  const auto g = read_graph(in);
  EXPECT_EQ(g.degree(0), 3u);
}

TEST(GraphIo, Errors) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
  };
  EXPECT_THROW(parse("3 2\n0 1\n"), FormatError);          // edge count mismatch
  EXPECT_THROW(parse("3 2\n0 1\n1 x\n"), FormatError);     // junk
  EXPECT_THROW(parse("3 2\n0 1\n1 1\n"), FormatError);     // loop
  EXPECT_THROW(parse("2 1\n0 5\n"), FormatError);          // range
  EXPECT_THROW(parse("3 1\n0 1\n"), DomainError);          // disconnected
  EXPECT_THROW(parse(""), FormatError);
  EXPECT_THROW(parse("p edge 2 1\ne 0 1\n"), FormatError); // DIMACS is 1-based
}

TEST(GraphIo, RoundTrip) {
  Rng rng(9);
  const auto g = random_connected_graph(12, 0.3, rng);
  std::stringstream buf;
  write_edge_list(buf, g);
  EXPECT_EQ(read_graph(buf), g);
}
