#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "fdspan/generators.hpp"
#include "fdspan/lbc.hpp"
#include "oracles.hpp"

using namespace fdspan;
using oracle::enumerate_paths;
using oracle::naive_min_max_cut;

namespace {

double path_weight(const std::vector<EdgeId>& p, const std::vector<double>& c) {
  double s = 0;
  for (EdgeId e : p) s += c[static_cast<std::size_t>(e)];
  return s;
}

Graph triangle() { return gen::complete(3); }

}  // namespace

TEST(RelevantEdges, LayeredBfs) {
  Graph p = gen::path(4);
  EXPECT_TRUE(lbc_relevant_edges(p, 0, 3, 2).empty());
  EXPECT_EQ(lbc_relevant_edges(p, 0, 3, 3).size(), 3u);
  // In C6 with k = 3 only the short side is relevant.
  Graph c6 = gen::cycle(6);
  EXPECT_EQ(lbc_relevant_edges(c6, 0, 2, 3), (std::vector<EdgeId>{0, 1}));
  EXPECT_EQ(lbc_relevant_edges(c6, 0, 2, 4).size(), 6u);
}

TEST(LbcExact, Examples) {
  Graph p = gen::path(4);
  auto far = lbc_bruteforce({&p, 0, 3, 2});
  EXPECT_EQ(far.value, 0);
  EXPECT_TRUE(far.edges.empty());

  Graph t = triangle();
  auto tri = lbc_bruteforce({&t, 0, 1, 2});
  EXPECT_EQ(tri.value, 2);
  EXPECT_TRUE(is_length_bounded_cut(t, tri.edges, 0, 1, 2));

  Graph k4 = gen::complete(4);
  auto c = lbc_bruteforce({&k4, 0, 1, 3});
  EXPECT_EQ(c.value, 2);
  EXPECT_TRUE(is_length_bounded_cut(k4, c.edges, 0, 1, 3));
  EXPECT_EQ(cut_degree(k4, c.edges), 2);
}

TEST(LbcExact, RejectsBadInstances) {
  Graph t = triangle();
  EXPECT_THROW(lbc_bruteforce({&t, 0, 0, 2}), Error);
  EXPECT_THROW(lbc_bruteforce({&t, 0, 1, 0}), Error);
  Graph k8 = gen::complete(8);
  EXPECT_THROW(lbc_bruteforce({&k8, 0, 1, 3}), Error);
}

TEST(LbcExact, MatchesSubsetEnumeration) {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 60 && seed < 400; ++seed) {
    Rng rng(seed);
    const int n = 5 + static_cast<int>(rng.below(5));
    Graph g = gen::gnp(n, 0.3 + 0.3 * rng.uniform01(), seed);
    const int k = 1 + static_cast<int>(rng.below(4));
    NodeId u = 0, v = static_cast<NodeId>(1 + rng.below(static_cast<std::uint64_t>(n - 1)));
    auto universe = lbc_relevant_edges(g, u, v, k);
    if (universe.size() > 16) continue;
    int expected = naive_min_max_cut(g, u, v, k);
    auto sol = lbc_bruteforce({&g, u, v, k});
    EXPECT_EQ(sol.value, expected) << "seed " << seed;
    EXPECT_TRUE(is_length_bounded_cut(g, sol.edges, u, v, k));
    EXPECT_EQ(cut_degree(g, sol.edges), sol.value);
    ++checked;
  }
  EXPECT_GE(checked, 60);
}

TEST(LbcDecide, AgreesWithOptimum) {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 60 && seed < 400; ++seed) {
    Rng rng(seed + 31);
    const int n = 5 + static_cast<int>(rng.below(5));
    Graph g = gen::gnp(n, 0.3 + 0.3 * rng.uniform01(), seed + 500);
    const int k = 1 + static_cast<int>(rng.below(4));
    if (lbc_relevant_edges(g, 0, n - 1, k).size() > 16) continue;
    const int opt = naive_min_max_cut(g, 0, n - 1, k);
    for (int budget = 0; budget <= opt + 1; ++budget) {
      auto cut = lbc_decide({&g, 0, n - 1, k}, budget, -1);
      ASSERT_EQ(cut.has_value(), opt <= budget) << "seed " << seed << " budget " << budget;
      if (!cut) continue;
      EXPECT_TRUE(is_length_bounded_cut(g, cut->edges, 0, n - 1, k));
      EXPECT_EQ(cut->value, cut_degree(g, cut->edges));
      EXPECT_LE(cut->value, budget);
    }
    ++checked;
  }
  EXPECT_GE(checked, 60);
  Graph k8 = gen::complete(8);
  EXPECT_THROW(lbc_decide({&k8, 0, 1, 3}, 3, 1), Error);
}

TEST(SeparationOracle, Examples) {
  Graph t = triangle();
  std::vector<double> ones(3, 1.0), zeros(3, 0.0);
  EXPECT_FALSE(lbc_separation_oracle(t, ones, 0, 1, 2).has_value());
  auto p = lbc_separation_oracle(t, zeros, 0, 1, 2);
  ASSERT_TRUE(p.has_value());
  std::vector<double> direct{1.0, 0.0, 0.0};  // edge 0 = (0,1)
  auto detour = lbc_separation_oracle(t, direct, 0, 1, 2);
  ASSERT_TRUE(detour.has_value());
  EXPECT_EQ(detour->size(), 2u);
  EXPECT_EQ(path_weight(*detour, direct), 0.0);
}

TEST(SeparationOracle, FindsMinimumWeightShortPath) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    Graph g = gen::gnp(9, 0.45, seed);
    std::vector<double> c(static_cast<std::size_t>(g.num_edges()));
    for (double& x : c) x = 0.6 * rng.uniform01();
    const int k = 2 + static_cast<int>(rng.below(3));
    auto paths = enumerate_paths(g, 0, 8, k);
    double best = kInfinity;
    for (auto& p : paths) best = std::min(best, path_weight(p, c));
    double reported = 0;
    auto found = lbc_separation_oracle(g, c, 0, 8, k, &reported);
    if (paths.empty()) {
      EXPECT_FALSE(found.has_value());
      continue;
    }
    EXPECT_NEAR(reported, best, 1e-12);
    if (best < 1.0 - 1e-9) {
      ASSERT_TRUE(found.has_value());
      EXPECT_LE(static_cast<int>(found->size()), k);
      EXPECT_NEAR(path_weight(*found, c), best, 1e-12);
      EXPECT_FALSE(is_length_bounded_cut(g, {}, 0, 8, k));
    } else {
      EXPECT_FALSE(found.has_value());
    }
  }
}

TEST(LbcLp, Examples) {
  Graph p = gen::path(4);
  auto far = lbc_lp_solve({&p, 0, 3, 2});
  EXPECT_EQ(far.f_lp, 0.0);
  for (double x : far.c) EXPECT_EQ(x, 0.0);

  Graph e(2);
  e.add_edge(0, 1);
  auto single = lbc_lp_solve({&e, 0, 1, 1});
  EXPECT_NEAR(single.c[0], 1.0, 1e-9);
  EXPECT_NEAR(single.f_lp, 1.0, 1e-9);

  // Triangle, k = 2: c_uv = 1 and the detour split evenly gives 3/2.
  Graph t = triangle();
  auto tri = lbc_lp_solve({&t, 0, 1, 2});
  EXPECT_NEAR(tri.f_lp, 1.5, 1e-6);
  EXPECT_LE(tri.f_lp, 2.0);
}

TEST(LbcLp, FeasibleOptimalAndBelowIntegerOptimum) {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 60 && seed < 400; ++seed) {
    Rng rng(seed);
    const int n = 5 + static_cast<int>(rng.below(6));
    Graph g = gen::gnp(n, 0.3 + 0.3 * rng.uniform01(), seed + 1000);
    const int k = 1 + static_cast<int>(rng.below(4));
    NodeId u = 0, v = static_cast<NodeId>(n - 1);
    auto universe = lbc_relevant_edges(g, u, v, k);
    if (universe.empty() || universe.size() > 16) continue;
    auto paths = enumerate_paths(g, u, v, k);
    if (paths.size() > 100000) continue;
    FractionalCut lp = lbc_lp_solve({&g, u, v, k});
    ASSERT_TRUE(lp.converged);
    // Primal feasibility by explicit path enumeration.
    for (double x : lp.c) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
    for (auto& path : paths) EXPECT_GE(path_weight(path, lp.c), 1.0 - 1e-6) << "seed " << seed;
    // Optimality: the dual objective certifies the primal value.
    EXPECT_NEAR(lp.f_lp, lp.lower_bound, 1e-6) << "seed " << seed;
    EXPECT_LE(lp.f_lp, naive_min_max_cut(g, u, v, k) + 1e-6);
    ++checked;
  }
  EXPECT_GE(checked, 60);
}

TEST(LbcLp, EarlyStopCertifiesLowerBound) {
  Graph k6 = gen::complete(6);
  FractionalCut full = lbc_lp_solve({&k6, 0, 1, 2});
  FractionalCut early = lbc_lp_solve({&k6, 0, 1, 2}, 1.0);
  EXPECT_FALSE(early.converged);
  EXPECT_GT(early.lower_bound, 1.0);
  EXPECT_LE(early.lower_bound, full.f_lp + 1e-9);
}

TEST(LbcRound, Examples) {
  Graph p = gen::path(4);
  auto far = approx_min_max_lbc({&p, 0, 3, 2}, {});
  EXPECT_EQ(far.value, 0);
  EXPECT_TRUE(far.edges.empty());

  Graph e(2);
  e.add_edge(0, 1);
  auto single = approx_min_max_lbc({&e, 0, 1, 1}, {});
  EXPECT_EQ(single.value, 1);
  EXPECT_EQ(single.edges, std::vector<EdgeId>{0});

  Graph t = triangle();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RoundingOptions opt;
    opt.seed = seed;
    auto sol = approx_min_max_lbc({&t, 0, 1, 2}, opt);
    EXPECT_TRUE(is_length_bounded_cut(t, sol.edges, 0, 1, 2));
    EXPECT_GE(sol.value, 2);
    EXPECT_LE(sol.value, std::ceil(4 * 2 * std::log(3.0) * 2));
    ASSERT_TRUE(sol.fractional.has_value());
    EXPECT_LE(sol.fractional->f_lp, sol.value + 1e-9);
  }
}

TEST(LbcRound, SandwichOnRandomInstances) {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 50 && seed < 400; ++seed) {
    Rng rng(seed);
    Graph g = gen::gnp(10, 0.4, seed + 77);
    const int k = 1 + static_cast<int>(rng.below(4));
    auto universe = lbc_relevant_edges(g, 0, 9, k);
    if (universe.size() > 20) continue;
    LbcInstance inst{&g, 0, 9, k};
    RoundingOptions opt;
    opt.seed = seed;
    auto approx = approx_min_max_lbc(inst, opt);
    auto exact = lbc_bruteforce(inst);
    EXPECT_LE(approx.fractional->f_lp, exact.value + 1e-6);
    EXPECT_LE(exact.value, approx.value);
    EXPECT_TRUE(is_length_bounded_cut(g, approx.edges, 0, 9, k));
    ++checked;
  }
  EXPECT_GE(checked, 50);
}

TEST(LbcRound, Deterministic) {
  Graph g = gen::gnp(10, 0.5, 3);
  RoundingOptions opt;
  opt.seed = 9;
  auto a = approx_min_max_lbc({&g, 0, 9, 3}, opt);
  auto b = approx_min_max_lbc({&g, 0, 9, 3}, opt);
  EXPECT_EQ(a.edges, b.edges);
  EXPECT_EQ(a.rounding->attempts, b.rounding->attempts);
}

TEST(LbcRound, ZeroFractionalFailsLoudly) {
  Graph t = triangle();
  FractionalCut zero;
  zero.c.assign(3, 0.0);
  RoundingOptions opt;
  opt.retries = 2;
  EXPECT_THROW(lbc_round({&t, 0, 1, 2}, zero, opt), Error);
}
