#include <gtest/gtest.h>

#include "fdspan/fault.hpp"
#include "fdspan/generators.hpp"

using namespace fdspan;

namespace {

std::vector<EdgeId> all_edges(const Graph& g) {
  std::vector<EdgeId> ids(static_cast<std::size_t>(g.num_edges()));
  for (EdgeId e = 0; e < g.num_edges(); ++e) ids[static_cast<std::size_t>(e)] = e;
  return ids;
}

std::vector<EdgeId> all_but(const Graph& g, EdgeId skip) {
  std::vector<EdgeId> ids;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (e != skip) ids.push_back(e);
  return ids;
}

}  // namespace

TEST(SampleFaults, Basics) {
  Graph g = gen::gnp(40, 0.3, 2);
  EXPECT_TRUE(sample_fault_set(g, 0, 1.0, 1).empty());
  // f = 1, density 1: a maximal matching.
  FaultSet m = sample_fault_set(g, 1, 1.0, 1);
  EXPECT_LE(m.max_degree(), 1);
  for (const Edge& e : g.edges()) EXPECT_TRUE(m.degree(e.u) == 1 || m.degree(e.v) == 1);
  EXPECT_EQ(static_cast<int>(sample_fault_set(g, g.max_degree(), 1.0, 1).size()), g.num_edges());
  for (std::uint64_t s = 0; s < 20; ++s) EXPECT_TRUE(sample_fault_set(g, 2, 0.5, s).valid_for(2));
}

TEST(AdversarialBlowup, Degrees) {
  Graph base = gen::petersen();
  Graph g1 = gen::girth_blowup(base, 1);
  EXPECT_TRUE(adversarial_blowup_fault(g1, base, 1, 0, 1, 0, 0).empty());
  Graph g2 = gen::girth_blowup(base, 2);
  FaultSet f2 = adversarial_blowup_fault(g2, base, 2, 0, 1, 0, 0);
  EXPECT_EQ(f2.size(), 3u);
  EXPECT_EQ(f2.degree(0), 1);
  EXPECT_EQ(f2.degree(2), 1);
  EXPECT_EQ(f2.degree(1), 2);
  EXPECT_EQ(f2.degree(3), 2);
  Graph g3 = gen::girth_blowup(base, 3);
  FaultSet f3 = adversarial_blowup_fault(g3, base, 3, 0, 1, 1, 2);
  EXPECT_EQ(f3.size(), 8u);
  EXPECT_EQ(f3.max_degree(), 3);
  EXPECT_THROW(adversarial_blowup_fault(g2, base, 2, 0, 2, 0, 0), Error);
}

TEST(AdversarialHypercube, Counts) {
  Graph q3 = gen::generalized_hypercube(2, 3);
  gen::HypercubeShape s3{2, 3};
  EdgeId kept = *q3.find_edge(0, 1);
  FaultSet f = adversarial_hypercube_fault(q3, s3, 0, kept);
  EXPECT_EQ(f.size(), 3u);
  EXPECT_EQ(f.max_degree(), 1);
  Graph rook = gen::generalized_hypercube(3, 2);
  gen::HypercubeShape r{3, 2};
  EdgeId col = *rook.find_edge(0, 3);
  FaultSet fr = adversarial_hypercube_fault(rook, r, 1, col);
  EXPECT_EQ(fr.size(), 8u);
  EXPECT_EQ(fr.max_degree(), 2);
  Graph line = gen::generalized_hypercube(2, 1);
  EXPECT_TRUE(adversarial_hypercube_fault(line, {2, 1}, 0, 0).empty());
  EXPECT_THROW(adversarial_hypercube_fault(q3, s3, 1, kept), Error);
}

TEST(VerifySpanner, Examples) {
  Graph g = gen::gnp(25, 0.3, 4);
  std::vector<FaultSet> faults;
  for (std::uint64_t s = 0; s < 10; ++s) faults.push_back(sample_fault_set(g, 2, 0.6, s));
  EXPECT_TRUE(verify_spanner(g, all_edges(g), 1.0, faults).violations.empty());

  Graph c5 = gen::cycle(5);
  std::vector<FaultSet> none{FaultSet(c5)};
  auto report = verify_spanner(c5, all_but(c5, 0), 3.0, none);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].edge, 0);
  EXPECT_EQ(report.violations[0].ratio, 4.0);
  EXPECT_EQ(report.worst_ratio, 4.0);

  Graph tri = gen::complete(3);
  auto t = verify_spanner(tri, all_but(tri, 0), 3.0, std::vector<FaultSet>{FaultSet(tri)});
  EXPECT_TRUE(t.violations.empty());
  EXPECT_EQ(t.worst_ratio, 2.0);
  EXPECT_THROW(verify_spanner(tri, std::vector<EdgeId>{7}, 3.0, none), Error);
}

TEST(VerifySpanner, WeightedMstNeedsTree) {
  // With f = 0 and t = 1, an MST passes only if it is all of g.
  Graph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  g.add_edge(2, 3, 1.0);
  g.add_edge(0, 3, 2.5);
  std::vector<FaultSet> none{FaultSet(g)};
  auto r = verify_spanner(g, std::vector<EdgeId>{0, 1, 2}, 1.0, none);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_DOUBLE_EQ(r.violations[0].ratio, 3.0 / 2.5);
  EXPECT_TRUE(verify_spanner(g, std::vector<EdgeId>{0, 1, 2}, 1.2, none).violations.empty());
}

TEST(VerifySpanner, BitsetPathAgreesWithDijkstra) {
  // The same unit graph, once more with a heavy pendant edge so the weighted
  // (Dijkstra) path runs instead of bitset BFS.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = gen::gnp(70, 0.1, seed);
    Graph gw(g.num_nodes() + 1);
    for (const Edge& e : g.edges()) gw.add_edge(e.u, e.v, 1.0);
    gw.add_edge(0, g.num_nodes(), 1000.0);  // pendant, changes no distance
    std::vector<EdgeId> h;
    for (EdgeId e = 0; e < g.num_edges(); e += 2) h.push_back(e);
    FaultSet f = sample_fault_set(g, 1, 0.5, seed);
    FaultSet fw(gw, f.sorted_ids());
    auto a = verify_spanner(g, h, 3.0, std::vector<FaultSet>{f});
    std::vector<EdgeId> hw = h;
    hw.push_back(gw.num_edges() - 1);
    auto b = verify_spanner(gw, hw, 3.0, std::vector<FaultSet>{fw});
    ASSERT_EQ(a.violations.size(), b.violations.size());
    for (std::size_t i = 0; i < a.violations.size(); ++i) {
      EXPECT_EQ(a.violations[i].edge, b.violations[i].edge);
      EXPECT_EQ(a.violations[i].ratio, b.violations[i].ratio);
    }
  }
}

TEST(VerifyCertificate, DetectsSplit) {
  Graph c4 = gen::cycle(4);
  FaultSet f(c4);
  f.insert(c4, 0);
  auto ok = verify_certificate(c4, all_edges(c4), std::vector<FaultSet>{f});
  EXPECT_TRUE(ok.violations.empty());
  auto bad = verify_certificate(c4, all_but(c4, 2), std::vector<FaultSet>{f});
  EXPECT_EQ(bad.violations.size(), 1u);
  auto fine = verify_certificate(c4, all_but(c4, 2), std::vector<FaultSet>{FaultSet(c4)});
  EXPECT_TRUE(fine.violations.empty());
}

TEST(Exhaustive, TriangleAndC4) {
  Graph tri = gen::complete(3);
  // Triangle minus an edge is a 2-spanner with no faults, but a single fault
  // on the detour breaks it.
  EXPECT_TRUE(bruteforce_verify_spanner_small(tri, all_but(tri, 0), 2.0, 0));
  auto r = exhaustive_verify_spanner(tri, all_but(tri, 0), 2.0, 1);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.witness_edge, 0);
  EXPECT_TRUE(bruteforce_verify_spanner_small(tri, all_edges(tri), 1.0, 2));
  // f = 1 on C4: 1 + 4 + 2 valid fault sets (empty, singles, two matchings).
  Graph c4 = gen::cycle(4);
  EXPECT_EQ(exhaustive_verify_spanner(c4, all_edges(c4), 1.0, 1).fault_sets_checked, 7u);
  EXPECT_THROW(exhaustive_verify_spanner(gen::complete(7), all_edges(gen::complete(7)), 3.0, 1), Error);
}

TEST(Exhaustive, BlowupRejectsAnyDeletion) {
  Graph base = gen::cycle(5);
  Graph g = gen::girth_blowup(base, 2);  // 20 edges
  for (EdgeId e = 0; e < g.num_edges(); e += 3) {
    auto r = exhaustive_verify_spanner(g, all_but(g, e), 3.0, 2);
    EXPECT_FALSE(r.ok);
    FaultSet adv = adversarial_blowup_fault_for_edge(g, base, 2, e);
    EXPECT_FALSE(verify_spanner(g, all_but(g, e), 3.0, std::vector<FaultSet>{adv}).violations.empty());
  }
}
