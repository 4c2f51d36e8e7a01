#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lsrbd/structure.hpp"
#include "oracles.hpp"

using namespace lsrbd;
using oracle::L;
using oracle::make_cnf;

namespace {

Cnf two_triangles() { return make_cnf(6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}}); }

Partition part(std::vector<std::uint32_t> c) {
  Partition p;
  p.count = c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
  p.community = std::move(c);
  return p;
}

std::vector<Lit> backbone_by_enumeration(const Cnf& f) {
  const auto models = oracle::all_models(f);
  std::vector<Lit> out;
  for (std::uint32_t v = 0; v < f.num_vars; ++v) {
    bool all1 = true, all0 = true;
    for (std::uint64_t m : models) {
      const bool b = (m >> v) & 1u;
      all1 = all1 && b;
      all0 = all0 && !b;
    }
    if (all1) out.emplace_back(Var(v), true);
    if (all0) out.emplace_back(Var(v), false);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Replays a weak-backdoor witness with the naive propagator.
bool replay_witness(const Cnf& f, const std::vector<Lit>& witness) {
  const auto r = oracle::naive_up(f.clauses, f.num_vars, witness);
  if (r.conflict) return false;
  for (const Clause& c : f.clauses) {
    bool sat = false;
    for (Lit l : c) sat = sat || r.values[l.var().index()] == (l.positive() ? 1 : 0);
    if (!sat) return false;
  }
  return true;
}

}  // namespace

TEST(Vig, SingleTernaryClause) {
  const Vig g = build_vig(make_cnf(3, {{1, 2, 3}}));
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(g.weight(0, 1), 0.5);
  EXPECT_EQ(g.weight(0, 2), 0.5);
  EXPECT_EQ(g.weight(1, 2), 0.5);
  EXPECT_EQ(g.weight(2, 1), 0.5);
}

TEST(Vig, RepeatedBinaryClause) {
  const Vig g = build_vig(make_cnf(2, {{1, 2}, {1, 2}}));
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.weight(0, 1), 2.0);
}

TEST(Vig, UnitsOnly) {
  const Vig g = build_vig(make_cnf(3, {{1}, {-2}, {3}}));
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.total_weight, 0.0);
}

TEST(Vig, TotalWeightClosedForm) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 100; ++t) {
    Cnf f;
    f.num_vars = 20;
    double expected = 0.0;
    for (int i = 0; i < 30; ++i) {
      Clause c;
      const std::size_t len = 1 + rng() % 6;
      while (c.size() < len) {
        const Var v(static_cast<std::uint32_t>(rng() % 20));
        if (std::none_of(c.begin(), c.end(), [&](Lit l) { return l.var() == v; })) c.emplace_back(v, (rng() & 1u) != 0);
      }
      if (c.size() >= 2) expected += static_cast<double>(c.size()) / 2.0;
      f.clauses.push_back(c);
    }
    const Vig g = build_vig(f);
    EXPECT_NEAR(g.total_weight, expected, 1e-9);
    for (std::uint32_t a = 0; a < 20; ++a) {
      for (const Vig::Edge& e : g.adj[a]) {
        EXPECT_GT(e.weight, 0.0);
        EXPECT_NE(e.to, a);
        EXPECT_EQ(g.weight(e.to, a), e.weight);
      }
    }
  }
}

TEST(Modularity, Examples) {
  const Vig tri = build_vig(two_triangles());
  EXPECT_NEAR(modularity(tri, part({0, 0, 0, 0, 0, 0})), 0.0, 1e-15);
  EXPECT_NEAR(modularity(tri, part({0, 0, 0, 1, 1, 1})), 0.5, 1e-15);
  const Vig k3 = build_vig(make_cnf(3, {{1, 2}, {2, 3}, {1, 3}}));
  EXPECT_NEAR(modularity(k3, part({0, 1, 2})), -1.0 / 3.0, 1e-15);
  EXPECT_EQ(modularity(build_vig(make_cnf(2, {})), part({0, 1})), 0.0);
  EXPECT_THROW(modularity(k3, part({0, 1})), std::invalid_argument);
}

TEST(Louvain, TwoTriangles) {
  const Vig g = build_vig(two_triangles());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LouvainResult r = louvain(g, seed);
    EXPECT_EQ(r.partition.count, 2u);
    EXPECT_NEAR(r.q, 0.5, 1e-9);
    EXPECT_EQ(r.partition.community[0], r.partition.community[2]);
    EXPECT_NE(r.partition.community[0], r.partition.community[3]);
  }
}

TEST(Louvain, CompleteGraph) {
  const Vig g = build_vig(make_cnf(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}));
  const LouvainResult r = louvain(g, 1);
  EXPECT_EQ(r.partition.count, 1u);
  EXPECT_NEAR(r.q, 0.0, 1e-12);
}

TEST(Louvain, EdgelessGraph) {
  const LouvainResult r = louvain(build_vig(make_cnf(4, {{1}, {2}})), 0);
  EXPECT_EQ(r.partition.count, 4u);
  EXPECT_EQ(r.q, 0.0);
  EXPECT_THROW(louvain(Vig{}, 0), std::invalid_argument);
}

TEST(Louvain, Properties) {
  std::mt19937_64 rng(62);
  for (int t = 0; t < 60; ++t) {
    const Cnf f = oracle::random_3cnf(rng, 40, 60 + rng() % 100);
    const Vig g = build_vig(f);
    const LouvainResult r = louvain(g, static_cast<std::uint64_t>(t));
    std::vector<std::uint32_t> singletons(g.num_nodes);
    for (std::uint32_t v = 0; v < g.num_nodes; ++v) singletons[v] = v;
    EXPECT_GE(r.q, modularity(g, part(singletons)) - 1e-12);
    EXPECT_NEAR(modularity(g, r.partition), r.q, 1e-12);
    for (std::size_t i = 1; i < r.q_per_round.size(); ++i) EXPECT_GE(r.q_per_round[i], r.q_per_round[i - 1]);
    EXPECT_GE(r.q, -0.5);
    EXPECT_LT(r.q, 1.0);
    // Dense ids.
    std::vector<bool> used(r.partition.count, false);
    for (std::uint32_t c : r.partition.community) used.at(c) = true;
    EXPECT_TRUE(std::all_of(used.begin(), used.end(), [](bool b) { return b; }));
    EXPECT_EQ(louvain(g, static_cast<std::uint64_t>(t)).partition.community, r.partition.community);
  }
}

TEST(Backbone, Examples) {
  EXPECT_EQ(backbone(make_cnf(2, {{1}, {1, 2}})).literals, (std::vector<Lit>{L(1)}));
  EXPECT_EQ(backbone(make_cnf(2, {{1, 2}, {-1, 2}})).literals, (std::vector<Lit>{L(2)}));
  EXPECT_TRUE(backbone(make_cnf(2, {{1, 2}})).literals.empty());
  EXPECT_THROW(backbone(make_cnf(1, {{1}, {-1}})), UnsatisfiableInput);
}

TEST(Backbone, MatchesEnumeration) {
  std::mt19937_64 rng(63);
  int sat = 0;
  for (int t = 0; t < 150; ++t) {
    const std::uint32_t n = 6 + static_cast<std::uint32_t>(rng() % 10);
    const Cnf f = oracle::random_3cnf(rng, n, n * 3 + rng() % (n * 2));
    if (!oracle::brute_force_sat(f)) continue;
    ++sat;
    const BackboneResult r = backbone(f);
    EXPECT_TRUE(r.complete);
    EXPECT_EQ(r.literals, backbone_by_enumeration(f)) << "instance " << t;
  }
  EXPECT_GT(sat, 50);
}

TEST(Backbone, BudgetFlagsPartial) {
  // Pigeonhole 7 into 6 conjoined with a free var: UNSAT probes are hard.
  Cnf f;
  const int holes = 6, pigeons = 7;
  auto var = [&](int p, int h) { return p * holes + h + 1; };
  f.num_vars = static_cast<std::uint32_t>(pigeons * holes + 1);
  for (int p = 0; p < pigeons - 1; ++p) {
    Clause c;
    for (int h = 0; h < holes; ++h) c.push_back(L(var(p, h)));
    f.clauses.push_back(c);
  }
  Clause last;
  for (int h = 0; h < holes; ++h) last.push_back(L(var(pigeons - 1, h)));
  last.push_back(L(static_cast<int>(f.num_vars)));
  f.clauses.push_back(last);
  for (int h = 0; h < holes; ++h) {
    for (int p = 0; p < pigeons; ++p) {
      for (int q = p + 1; q < pigeons; ++q) f.clauses.push_back({L(-var(p, h)), L(-var(q, h))});
    }
  }
  const BackboneResult r = backbone(f, 5);
  EXPECT_FALSE(r.complete);
}

TEST(Treewidth, Fixtures) {
  EXPECT_EQ(treewidth_ub(make_cnf(4, {{1, 2}, {2, 3}, {3, 4}})), 1u);
  for (int k = 2; k <= 8; ++k) {
    Cnf f;
    f.num_vars = static_cast<std::uint32_t>(k);
    Clause c;
    for (int i = 1; i <= k; ++i) c.push_back(L(i));
    f.clauses.push_back(c);
    EXPECT_EQ(treewidth_ub(f), static_cast<std::size_t>(k - 1));
  }
  EXPECT_EQ(treewidth_ub(make_cnf(5, {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {3, 5}})), 2u);
  EXPECT_EQ(treewidth_ub(make_cnf(3, {{1}, {2}})), 0u);
}

TEST(Treewidth, TreesAndCycles) {
  std::mt19937_64 rng(64);
  for (int t = 0; t < 50; ++t) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 30);
    Cnf tree;
    tree.num_vars = n;
    for (std::uint32_t v = 1; v < n; ++v) {
      tree.clauses.push_back({Lit(Var(v), true), Lit(Var(static_cast<std::uint32_t>(rng() % v)), false)});
    }
    EXPECT_EQ(treewidth_ub(tree), 1u);
    if (n >= 3) {
      Cnf cycle;
      cycle.num_vars = n;
      for (std::uint32_t v = 0; v < n; ++v) cycle.clauses.push_back({Lit(Var(v), true), Lit(Var((v + 1) % n), true)});
      EXPECT_EQ(treewidth_ub(cycle), 2u);
    }
  }
}

TEST(WeakBackdoor, Examples) {
  const Cnf f = make_cnf(2, {{1, 2}, {-1, 2}});
  const WeakBackdoorResult r = weak_backdoor(f, 200, 1);
  EXPECT_EQ(r.backdoor, (std::vector<Var>{Var(1)}));
  EXPECT_EQ(r.witness, (std::vector<Lit>{L(2)}));
  EXPECT_TRUE(up_witnesses(f, r.witness));

  const WeakBackdoorResult unit = weak_backdoor(make_cnf(1, {{1}}), 100, 1);
  EXPECT_TRUE(unit.backdoor.empty());
  EXPECT_GE(unit.min_weak_count, 1u);
  EXPECT_THROW(weak_backdoor(make_cnf(1, {{1}, {-1}}), 10, 0), UnsatisfiableInput);
}

TEST(WeakBackdoor, RandomReplay) {
  std::mt19937_64 rng(65);
  int sat = 0;
  for (int t = 0; t < 100; ++t) {
    const Cnf f = oracle::random_3cnf(rng, 10, 20 + rng() % 25);
    if (!oracle::brute_force_sat(f)) continue;
    ++sat;
    const WeakBackdoorResult r = weak_backdoor(f, 500, static_cast<std::uint64_t>(t));
    ASSERT_EQ(r.witness.size(), r.backdoor.size());
    for (std::size_t i = 0; i < r.backdoor.size(); ++i) EXPECT_EQ(r.witness[i].var(), r.backdoor[i]);
    EXPECT_TRUE(replay_witness(f, r.witness)) << "instance " << t;
    EXPECT_TRUE(up_witnesses(f, r.witness));
    EXPECT_LE(r.checks, 500u);
  }
  EXPECT_GT(sat, 30);
}

TEST(WeakBackdoor, NoSingleRemovalAtLocalMinimum) {
  std::mt19937_64 rng(66);
  for (int t = 0; t < 40; ++t) {
    const Cnf f = oracle::random_3cnf(rng, 12, 30);
    if (!oracle::brute_force_sat(f)) continue;
    const WeakBackdoorResult r = weak_backdoor(f, 2000, 3);
    if (r.checks >= 2000) continue;
    for (std::size_t i = 0; i < r.witness.size(); ++i) {
      std::vector<Lit> smaller = r.witness;
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
      EXPECT_FALSE(replay_witness(f, smaller));
    }
  }
}
