#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "lsrbd/absorption.hpp"
#include "lsrbd/sepgen.hpp"
#include "oracles.hpp"

using namespace lsrbd;
using oracle::L;

namespace {

std::vector<Assignment> parse_seq(std::initializer_list<const char*> strs) {
  std::vector<Assignment> out;
  for (const char* s : strs) out.push_back(static_cast<Assignment>(std::stoul(s, nullptr, 2)));
  return out;
}

OrderingSpec expl(unsigned n, std::initializer_list<const char*> strs) {
  return ordering_explicit(n, parse_seq(strs));
}

std::vector<std::uint32_t> as_u32(const std::vector<Assignment>& v) { return {v.begin(), v.end()}; }

// Some coordinate is constant on the first half and takes the other value on
// the whole second half, checked bit by bit.
bool key_property_naive(const std::vector<Assignment>& ord, unsigned n) {
  const std::size_t half = ord.size() / 2;
  for (unsigned i = 0; i < n; ++i) {
    for (int b = 0; b < 2; ++b) {
      bool ok = true;
      for (std::size_t k = 0; k < ord.size() && ok; ++k) {
        const int bit = assignment_bit(ord[k], i, n);
        ok = k < half ? bit == b : bit != b;
      }
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace

TEST(GenFo, Counts) {
  for (unsigned n = 1; n <= 6; ++n) {
    const FoInstance inst = gen_fo(n, ordering_lex(n));
    const std::size_t count = std::size_t{1} << n;
    EXPECT_EQ(inst.cnf.num_vars, n + 3 * count);
    EXPECT_EQ(inst.cnf.clauses.size(), 4 * count);
  }
  EXPECT_EQ(gen_fo(1, ordering_lex(1)).cnf.num_vars, 7u);
  EXPECT_EQ(gen_fo(1, ordering_lex(1)).cnf.clauses.size(), 8u);
  EXPECT_EQ(gen_fo(3, ordering_interleaved(3)).cnf.num_vars, 27u);
  EXPECT_EQ(gen_fo(3, ordering_interleaved(3)).cnf.clauses.size(), 32u);
  EXPECT_THROW(gen_fo(0, ordering_lex(1)), std::invalid_argument);
  EXPECT_THROW(gen_fo(21, ordering_lex(1)), std::invalid_argument);
  EXPECT_THROW(gen_fo(2, ordering_lex(3)), std::invalid_argument);
}

TEST(GenFo, LexMaximalClauseHasAllQ) {
  const FoInstance inst = gen_fo(2, ordering_lex(2));
  const Clause& c = inst.cnf.clauses[4 * 3];  // alpha = 11 is last in lex
  // C_11 = (¬x1 ∨ ¬x2), then ¬q for every alpha.
  EXPECT_EQ(c, (Clause{L(-1), L(-2), L(-3), L(-6), L(-9), L(-12)}));
}

TEST(GenFo, LayoutAndPrefixStructure) {
  const OrderingSpec o = ordering_interleaved(3);
  const FoInstance inst = gen_fo(3, o);
  for (std::size_t k = 0; k < o.sequence.size(); ++k) {
    EXPECT_EQ(inst.q(k).dimacs(), static_cast<int>(3 + 3 * k + 1));
    EXPECT_EQ(inst.a(k).dimacs(), static_cast<int>(3 + 3 * k + 2));
    EXPECT_EQ(inst.b(k).dimacs(), static_cast<int>(3 + 3 * k + 3));
    const Clause& c = inst.cnf.clauses[4 * k];
    std::size_t q_count = 0;
    for (Lit l : c) q_count += l.var().index() >= 3;
    EXPECT_EQ(q_count, k + 1);
    // The x part is falsified exactly by alpha.
    for (unsigned i = 0; i < 3; ++i) {
      EXPECT_EQ(c[i].positive(), assignment_bit(o.sequence[k], i, 3) == 0);
    }
  }
  EXPECT_EQ(inst.cnf.comments[0], "n 3");
  EXPECT_EQ(inst.cnf.comments[1], "ordering interleaved");
  EXPECT_EQ(inst.cnf.comments[2], "sequence 000 111 001 110 010 101 011 100");
}

TEST(GenFo, UnsatByEnumeration) {
  for (unsigned n = 1; n <= 2; ++n) {
    EXPECT_FALSE(oracle::brute_force_sat(gen_fo(n, ordering_lex(n)).cnf));
    EXPECT_FALSE(oracle::brute_force_sat(gen_fo(n, ordering_interleaved(n)).cnf));
  }
}

TEST(GenFo, UnsatBySolver) {
  for (unsigned n = 1; n <= 4; ++n) {
    for (const char* name : {"lex", "interleaved"}) {
      EXPECT_EQ(solve(gen_fo(n, ordering_by_name(name, n)).cnf).status, Status::unsat) << n << name;
    }
  }
}

TEST(GenFo, MinimallyUnsatAtN1AndN2) {
  for (unsigned n = 1; n <= 2; ++n) {
    const Cnf f = gen_fo(n, ordering_lex(n)).cnf;
    for (std::size_t drop = 0; drop < f.clauses.size(); ++drop) {
      Cnf g = f;
      g.clauses.erase(g.clauses.begin() + static_cast<std::ptrdiff_t>(drop));
      EXPECT_TRUE(oracle::brute_force_sat(g)) << "n=" << n << " drop " << drop;
    }
  }
}

TEST(Orderings, Interleaved) {
  EXPECT_EQ(ordering_interleaved(2).sequence, parse_seq({"00", "11", "01", "10"}));
  EXPECT_EQ(ordering_interleaved(1).sequence, parse_seq({"0", "1"}));
}

TEST(Orderings, InterleavedBalance) {
  for (unsigned n = 2; n <= 10; ++n) {
    const auto seq = ordering_interleaved(n).sequence;
    const std::size_t half = seq.size() / 2;
    for (unsigned i = 0; i < n; ++i) {
      for (int b = 0; b < 2; ++b) {
        std::size_t first = 0, total = 0;
        for (std::size_t k = 0; k < seq.size(); ++k) {
          if (assignment_bit(seq[k], i, n) != b) continue;
          ++total;
          first += k < half;
        }
        EXPECT_EQ(2 * first, total) << "n=" << n << " i=" << i << " b=" << b;
      }
    }
  }
}

TEST(Orderings, ExplicitValidation) {
  EXPECT_NO_THROW(expl(2, {"10", "00", "11", "01"}));
  EXPECT_THROW(ordering_explicit(2, parse_seq({"10", "10", "11", "01"})), std::invalid_argument);
  EXPECT_THROW(ordering_explicit(2, parse_seq({"10", "00"})), std::invalid_argument);
  EXPECT_THROW(ordering_by_name("random", 2), std::invalid_argument);
}

TEST(Trees, OrderingFromTreeExamples) {
  const DecisionTree t1{1, {{0, 0}}};
  EXPECT_EQ(ordering_from_tree(t1).sequence, parse_seq({"0", "1"}));
  const DecisionTree t2{2, {{1, 1}, {0, 0}, {0, 0}}};
  const auto seq = ordering_from_tree(t2).sequence;
  EXPECT_EQ(seq, parse_seq({"01", "11", "00", "10"}));
  EXPECT_TRUE(key_property_holds(seq, 2));
  // Root var's bit is constant (1) on the first half.
  EXPECT_EQ(assignment_bit(seq[0], 1, 2), 1);
  EXPECT_EQ(assignment_bit(seq[1], 1, 2), 1);
}

TEST(Trees, Validation) {
  EXPECT_FALSE((DecisionTree{2, {{1, 1}, {1, 0}, {0, 0}}}).valid());
  EXPECT_FALSE((DecisionTree{2, {{1, 1}, {0, 0}}}).valid());
  EXPECT_FALSE((DecisionTree{2, {{2, 1}, {0, 0}, {0, 0}}}).valid());
  EXPECT_THROW(ordering_from_tree(DecisionTree{2, {{1, 1}}}), std::invalid_argument);
}

TEST(Trees, CountsMatchClosedForm) {
  EXPECT_EQ(tree_count(1), 2u);
  EXPECT_EQ(tree_count(2), 16u);
  EXPECT_EQ(tree_count(3), 1536u);
  EXPECT_EQ(tree_count(4), 18874368u);
  for (unsigned n = 1; n <= 4; ++n) EXPECT_EQ(TreeEnumerator(n).count(), tree_count(n));
  EXPECT_THROW(TreeEnumerator(5), std::invalid_argument);
}

TEST(Trees, EnumeratorAgreesWithOrderingFromTree) {
  for (unsigned n = 1; n <= 3; ++n) {
    const TreeEnumerator en(n);
    std::set<std::vector<TreeNode>, std::less<>> seen_trees;
    std::set<std::vector<Assignment>> seen_orderings;
    for (std::uint64_t i = 0; i < en.count(); ++i) {
      const DecisionTree t = en.tree_at(i);
      ASSERT_TRUE(t.valid());
      ASSERT_EQ(ordering_from_tree(t).sequence, en.ordering_at(i));
      seen_orderings.insert(en.ordering_at(i));
    }
    // Injective: distinct trees give distinct orderings.
    EXPECT_EQ(seen_orderings.size(), en.count()) << "n=" << n;
  }
}

TEST(DMeasure, Examples) {
  for (unsigned n = 1; n <= 4; ++n) {
    const OrderingSpec o = ordering_interleaved(n);
    EXPECT_EQ(d_measure(o, o), 0u);
  }
  EXPECT_EQ(d_measure(ordering_lex(2), expl(2, {"00", "10", "01", "11"})), 1u);
  for (unsigned n = 1; n <= 5; ++n) {
    OrderingSpec rev = ordering_lex(n);
    std::reverse(rev.sequence.begin(), rev.sequence.end());
    EXPECT_EQ(d_measure(rev, ordering_lex(n)), (std::size_t{1} << n) - 1);
  }
  EXPECT_THROW(d_measure(ordering_lex(2), ordering_lex(3)), std::invalid_argument);
}

TEST(DMeasure, FastEqualsDefinition) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 1000; ++t) {
    const unsigned n = 1 + static_cast<unsigned>(rng() % 6);
    OrderingSpec a = ordering_lex(n), b = ordering_lex(n);
    std::shuffle(a.sequence.begin(), a.sequence.end(), rng);
    std::shuffle(b.sequence.begin(), b.sequence.end(), rng);
    ASSERT_EQ(d_measure(a, b), oracle::naive_d(as_u32(a.sequence), as_u32(b.sequence)));
  }
}

TEST(MinD, N1Lex) {
  const MinDResult r = min_d_exhaustive(ordering_lex(1));
  EXPECT_EQ(r.min_value, 0u);
  EXPECT_EQ(r.trees_evaluated, 2u);
  EXPECT_EQ(ordering_from_tree(r.witness).sequence, ordering_lex(1).sequence);
}

TEST(MinD, N2InterleavedFixture) {
  const OrderingSpec o = ordering_interleaved(2);
  const TreeEnumerator en(2);
  std::size_t best = SIZE_MAX;
  for (std::uint64_t i = 0; i < en.count(); ++i) {
    best = std::min(best, oracle::naive_d(as_u32(o.sequence), as_u32(en.ordering_at(i))));
  }
  const MinDResult r = min_d_exhaustive(o);
  EXPECT_EQ(r.min_value, best);
  EXPECT_EQ(r.min_value, 1u);
  EXPECT_EQ(r.trees_evaluated, 16u);
  EXPECT_EQ(d_measure(o, ordering_from_tree(r.witness)), r.min_value);
}

TEST(MinD, ParallelMatchesSerial) {
  for (unsigned n = 1; n <= 3; ++n) {
    for (const char* name : {"lex", "interleaved"}) {
      const OrderingSpec o = ordering_by_name(name, n);
      const MinDResult p = min_d_exhaustive(o);
      const MinDResult s = min_d_exhaustive_serial(o);
      EXPECT_EQ(p.min_value, s.min_value);
      EXPECT_EQ(p.witness, s.witness);
      EXPECT_EQ(p.key_property_violations, 0u);
      EXPECT_EQ(s.key_property_violations, 0u);
    }
  }
}

TEST(MinD, AllTreesMatchNaiveUpToN3) {
  std::mt19937_64 rng(52);
  for (unsigned n = 1; n <= 3; ++n) {
    const TreeEnumerator en(n);
    OrderingSpec o = ordering_lex(n);
    std::shuffle(o.sequence.begin(), o.sequence.end(), rng);
    std::vector<std::uint32_t> pos(o.sequence.size());
    for (std::size_t i = 0; i < o.sequence.size(); ++i) pos[o.sequence[i]] = static_cast<std::uint32_t>(i);
    for (std::uint64_t i = 0; i < en.count(); ++i) {
      const auto ot = en.ordering_at(i);
      ASSERT_EQ(en.d_at(pos, i), oracle::naive_d(as_u32(o.sequence), as_u32(ot)));
      ASSERT_TRUE(key_property_naive(ot, n));
      ASSERT_EQ(key_property_holds(ot, n), key_property_naive(ot, n));
    }
  }
}

TEST(MinD, SpotCheckN4) {
  std::mt19937_64 rng(53);
  const TreeEnumerator en(4);
  const OrderingSpec o = ordering_interleaved(4);
  std::vector<std::uint32_t> pos(16);
  for (std::size_t i = 0; i < 16; ++i) pos[o.sequence[i]] = static_cast<std::uint32_t>(i);
  for (int k = 0; k < 1000; ++k) {
    const std::uint64_t i = rng() % en.count();
    const auto ot = en.ordering_at(i);
    ASSERT_EQ(en.d_at(pos, i), oracle::naive_d(as_u32(o.sequence), as_u32(ot)));
    ASSERT_TRUE(key_property_naive(ot, 4));
  }
}

TEST(MinD, ExhaustiveRejectsLargeN) {
  EXPECT_THROW(min_d_exhaustive(ordering_lex(5)), std::invalid_argument);
  EXPECT_THROW(min_d_exhaustive_serial(ordering_lex(5)), std::invalid_argument);
}

TEST(MinD, SampledParallelMatchesSerial) {
  for (unsigned n : {3u, 5u}) {
    const OrderingSpec o = ordering_interleaved(n);
    const MinDResult p = min_d_sampled(o, 3000, 99);
    const MinDResult s = min_d_sampled_serial(o, 3000, 99);
    EXPECT_EQ(p.min_value, s.min_value);
    EXPECT_EQ(p.witness, s.witness);
    EXPECT_TRUE(p.witness.valid());
  }
  const MinDResult exact = min_d_exhaustive(ordering_interleaved(3));
  EXPECT_GE(min_d_sampled(ordering_interleaved(3), 500, 1).min_value, exact.min_value);
}

TEST(MinD, SampledTreesAreValidAndSeeded) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const DecisionTree t = sample_tree(5, 7, i);
    ASSERT_TRUE(t.valid());
    ASSERT_EQ(t, sample_tree(5, 7, i));
  }
  EXPECT_NE(sample_tree(5, 7, 0), sample_tree(5, 8, 0));
}

TEST(Lemma3, LexN2) {
  const FoInstance inst = gen_fo(2, ordering_lex(2));
  Lemma3Trace trace;
  const SolveOutcome out = lemma3_drive(inst, &trace);
  EXPECT_EQ(out.status, Status::unsat);
  EXPECT_EQ(trace.learnt_units_before_final, 4u);
  for (Var v : trace.decision_vars) EXPECT_LT(v.index(), 2u);
}

TEST(Lemma3, InterleavedN3) {
  const FoInstance inst = gen_fo(3, ordering_interleaved(3));
  Lemma3Trace trace;
  const SolveOutcome out = lemma3_drive(inst, &trace);
  EXPECT_EQ(out.status, Status::unsat);
  EXPECT_FALSE(trace.decision_vars.empty());
  for (Var v : trace.decision_vars) EXPECT_LT(v.index(), 3u);
}

TEST(Lemma3, VerifyWithX) {
  for (unsigned n = 1; n <= 3; ++n) {
    for (const char* name : {"lex", "interleaved"}) {
      const FoInstance inst = gen_fo(n, ordering_by_name(name, n));
      const VerifyReport r = verify_lsr(inst.cnf, inst.x_vars());
      EXPECT_TRUE(r.pass) << n << " " << name << ": " << r.fail_reason;
    }
  }
}
