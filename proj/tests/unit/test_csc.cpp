#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "mesp/csc.hpp"

using namespace mesp;

namespace {

CscInstance make(int r, std::vector<std::vector<RequirementMask>> groups) {
  CscInstance inst;
  inst.requirements = r;
  for (auto& g : groups) {
    std::vector<CscCandidate> cands;
    for (std::size_t i = 0; i < g.size(); ++i) cands.push_back({i, g[i]});
    inst.groups.push_back(cands);
  }
  return inst;
}

CscInstance random_instance(std::mt19937_64& rng, int max_r, int max_m, int max_c) {
  const int r = std::uniform_int_distribution<int>(0, max_r)(rng);
  const int m = std::uniform_int_distribution<int>(0, max_m)(rng);
  std::vector<std::vector<RequirementMask>> groups(m);
  const RequirementMask full = r == 0 ? 0 : (RequirementMask{1} << r) - 1;
  for (auto& g : groups) {
    const int c = std::uniform_int_distribution<int>(1, max_c)(rng);
    for (int i = 0; i < c; ++i) {
      // Sparse sets make feasibility a coin flip rather than a foregone conclusion.
      RequirementMask s = 0;
      for (int b = 0; b < r; ++b) {
        if (std::bernoulli_distribution(0.3)(rng)) s |= RequirementMask{1} << b;
      }
      g.push_back(s & full);
    }
  }
  return make(r, groups);
}

// Is `subset` covered by some choice from the first `layer` groups?
bool oracle_reachable(const CscInstance& inst, std::size_t layer, RequirementMask subset) {
  std::vector<RequirementMask> reach{0};
  for (std::size_t i = 0; i < layer; ++i) {
    std::vector<RequirementMask> next;
    for (auto k : reach) {
      for (const auto& c : inst.groups[i]) next.push_back(k | c.satisfies);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    reach = next;
  }
  return std::any_of(reach.begin(), reach.end(), [&](RequirementMask k) { return (k & subset) == subset; });
}

}  // namespace

TEST(Csc, TwoSingletons) {
  const auto inst = make(2, {{0b01}, {0b10}});
  const auto sol = solve_csc(inst);
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->selection, (std::vector<std::size_t>{0, 0}));
}

TEST(Csc, PicksTheCoveringCandidate) {
  const auto inst = make(1, {{0b0, 0b1}});
  const auto sol = solve_csc(inst);
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->selection, std::vector<std::size_t>{1});
}

// a={0,1} b={1,2} in group 1; c={2} d={0} in group 2: only (a,c) and (b,d) cover.
TEST(Csc, OnlyTwoValidPairs) {
  const auto inst = make(3, {{0b011, 0b110}, {0b100, 0b001}});
  const auto sol = solve_csc(inst);
  ASSERT_TRUE(sol);
  const bool ac = sol->selection == std::vector<std::size_t>{0, 0};
  const bool bd = sol->selection == std::vector<std::size_t>{1, 1};
  EXPECT_TRUE(ac || bd);
  EXPECT_TRUE(covers(inst, *sol));
  EXPECT_FALSE(covers(inst, CscSolution{{0, 1}}));
  EXPECT_FALSE(covers(inst, CscSolution{{1, 0}}));
}

TEST(Csc, EmptyInstanceIsVacuouslyCovered) {
  const auto sol = solve_csc(make(0, {}));
  ASSERT_TRUE(sol);
  EXPECT_TRUE(sol->selection.empty());
  EXPECT_TRUE(solve_csc_bruteforce(make(0, {})));
}

TEST(Csc, UncoverableRequirement) {
  const auto inst = make(2, {{0b01}});
  EXPECT_FALSE(solve_csc(inst));
  EXPECT_FALSE(solve_csc_bruteforce(inst));
}

TEST(Csc, EmptyGroupIsInfeasible) {
  CscInstance inst = make(0, {{0}});
  inst.groups.emplace_back();
  EXPECT_FALSE(solve_csc(inst));
  EXPECT_FALSE(solve_csc_bruteforce(inst));
}

TEST(Csc, RequirementCap) {
  CscInstance inst = make(0, {});
  inst.requirements = 27;
  EXPECT_THROW(solve_csc(inst), CapacityError);
  inst.requirements = 3;
  EXPECT_NO_THROW(solve_csc(inst, 3));
  EXPECT_THROW(solve_csc(inst, 2), CapacityError);
}

TEST(Csc, SatisfactionOutsideUniverseRejected) {
  EXPECT_THROW(solve_csc(make(1, {{0b10}})), DomainError);
}

TEST(Csc, BruteForceTupleCap) {
  const auto inst = make(1, {{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}});
  EXPECT_THROW(solve_csc_bruteforce(inst, 63), CapacityError);
  EXPECT_TRUE(solve_csc_bruteforce(inst, 64));
}

TEST(Csc, LayerZeroHoldsOnlyTheEmptySet) {
  const auto inst = make(3, {{0b111}});
  const CscTable table(inst);
  EXPECT_TRUE(table.reachable(0, 0));
  for (RequirementMask q = 1; q < 8; ++q) EXPECT_FALSE(table.reachable(0, q));
}

TEST(Csc, FirstCandidateWinsTies) {
  const auto inst = make(1, {{0b1, 0b1}});
  EXPECT_EQ(solve_csc(inst)->selection, std::vector<std::size_t>{0});
}

// Layer semantics against direct enumeration of partial choices.
TEST(Csc, LayersMatchDefinition) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto inst = random_instance(rng, 6, 4, 3);
    const CscTable table(inst);
    for (std::size_t layer = 0; layer <= inst.groups.size(); ++layer) {
      for (RequirementMask q = 0; q <= inst.universe(); ++q) {
        ASSERT_EQ(table.reachable(layer, q), oracle_reachable(inst, layer, q)) << "trial " << trial;
      }
    }
  }
}

TEST(Csc, FeasibilityMatchesBruteForceAndSelectionsCover) {
  std::mt19937_64 rng(7);
  int feasible = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto inst = random_instance(rng, 8, 5, 4);
    const auto dp = solve_csc(inst);
    const auto bf = solve_csc_bruteforce(inst);
    ASSERT_EQ(dp.has_value(), bf.has_value()) << "trial " << trial;
    if (dp) {
      ++feasible;
      ASSERT_TRUE(covers(inst, *dp));
    }
  }
  // Both outcomes must be well represented for the comparison to mean anything.
  EXPECT_GT(feasible, 1000);
  EXPECT_LT(feasible, 9000);
}

TEST(Csc, ReversedCandidateOrderKeepsFeasibility) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 2000; ++trial) {
    auto inst = random_instance(rng, 6, 4, 4);
    const bool before = solve_csc(inst).has_value();
    for (auto& g : inst.groups) std::reverse(g.begin(), g.end());
    ASSERT_EQ(before, solve_csc(inst).has_value());
  }
}

TEST(Csc, ReconstructSubsetsCoverTheirTarget) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = random_instance(rng, 6, 4, 3);
    const CscTable table(inst);
    for (RequirementMask q = 0; q <= inst.universe(); ++q) {
      const auto sol = table.reconstruct(q);
      ASSERT_EQ(sol.has_value(), table.coverable(q));
      if (sol) ASSERT_TRUE(covers(inst, *sol, q));
    }
  }
}

TEST(CscFormat, RoundTrip) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_instance(rng, 8, 5, 4);
    std::stringstream buf;
    write_csc_instance(buf, inst);
    const auto back = read_csc_instance(buf);
    ASSERT_EQ(back.requirements, inst.requirements);
    ASSERT_EQ(back.groups.size(), inst.groups.size());
    for (std::size_t i = 0; i < inst.groups.size(); ++i) {
      ASSERT_EQ(back.groups[i].size(), inst.groups[i].size());
      for (std::size_t c = 0; c < inst.groups[i].size(); ++c) {
        ASSERT_EQ(back.groups[i][c].satisfies, inst.groups[i][c].satisfies);
      }
    }
  }
}

TEST(CscFormat, Errors) {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_csc_instance(in);
  };
  EXPECT_THROW(parse("2 1\n1\n5\n"), FormatError);
  EXPECT_THROW(parse("2 2\n1\n0\n"), FormatError);
  EXPECT_THROW(parse("x\n"), FormatError);
  EXPECT_THROW(parse("31 0\n"), CapacityError);
}
