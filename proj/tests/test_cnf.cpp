#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "lsrbd/cnf.hpp"
#include "lsrbd/sepgen.hpp"
#include "oracles.hpp"

using namespace lsrbd;
using oracle::L;

TEST(Lit, NegationIsInvolution) {
  for (int v = 1; v <= 50; ++v) {
    const Lit p = L(v);
    EXPECT_EQ(~~p, p);
    EXPECT_NE(~p, p);
    EXPECT_EQ((~p).var(), p.var());
    EXPECT_EQ(p.dimacs(), v);
    EXPECT_EQ((~p).dimacs(), -v);
  }
}

TEST(Parse, SimpleClause) {
  ParseReport rep;
  Cnf f = parse_dimacs("p cnf 2 1\n1 -2 0", &rep);
  EXPECT_EQ(f.num_vars, 2u);
  ASSERT_EQ(f.clauses.size(), 1u);
  EXPECT_EQ(f.clauses[0], (Clause{L(1), L(-2)}));
  EXPECT_EQ(rep.tautologies_dropped, 0u);
}

TEST(Parse, TautologyDropped) {
  ParseReport rep;
  Cnf f = parse_dimacs("p cnf 1 1\n1 -1 0", &rep);
  EXPECT_EQ(f.num_vars, 1u);
  EXPECT_TRUE(f.clauses.empty());
  EXPECT_EQ(rep.tautologies_dropped, 1u);
}

TEST(Parse, DuplicatesRemoved) {
  ParseReport rep;
  Cnf f = parse_dimacs("p cnf 3 1\n1 2 1 3 2 0\n", &rep);
  ASSERT_EQ(f.clauses.size(), 1u);
  EXPECT_EQ(f.clauses[0], (Clause{L(1), L(2), L(3)}));
  EXPECT_EQ(rep.duplicate_literals_removed, 2u);
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_dimacs("p cnf 1 1\n2 0"), ParseError);
  EXPECT_THROW(parse_dimacs(""), ParseError);
  EXPECT_THROW(parse_dimacs("c only a comment\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf x 1\n1 0"), ParseError);
  EXPECT_THROW(parse_dimacs("p dnf 2 1\n1 0"), ParseError);
  EXPECT_THROW(parse_dimacs("1 2 0\np cnf 2 1\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 a 0"), ParseError);
}

TEST(Parse, MultiLineClausesAndComments) {
  Cnf f = parse_dimacs("c hello\np cnf 3 2\n1 2\n3 0 -1\n-2 0\n");
  ASSERT_EQ(f.clauses.size(), 2u);
  EXPECT_EQ(f.clauses[0], (Clause{L(1), L(2), L(3)}));
  EXPECT_EQ(f.clauses[1], (Clause{L(-1), L(-2)}));
  ASSERT_EQ(f.comments.size(), 1u);
}

TEST(Parse, ClauseCountMismatchIsWarning) {
  ParseReport rep;
  Cnf f = parse_dimacs("p cnf 2 3\n1 0\n2 0\n", &rep);
  EXPECT_EQ(f.clauses.size(), 2u);
  EXPECT_TRUE(rep.clause_count_mismatch);
  EXPECT_EQ(rep.header_clause_count, 3u);
}

TEST(Write, Examples) {
  Cnf f;
  f.num_vars = 2;
  f.clauses.push_back({L(1), L(-2)});
  EXPECT_EQ(write_dimacs(f), "p cnf 2 1\n1 -2 0\n");
  EXPECT_EQ(write_dimacs(Cnf{}), "p cnf 0 0\n");
}

TEST(Write, RoundTripFo) {
  const FoInstance inst = gen_fo(2, ordering_lex(2));
  ParseReport rep;
  const Cnf back = parse_dimacs(write_dimacs(inst.cnf), &rep);
  EXPECT_EQ(back, inst.cnf);
  EXPECT_EQ(back.comments, inst.cnf.comments);
  EXPECT_EQ(rep.duplicate_literals_removed, 0u);
  EXPECT_EQ(rep.tautologies_dropped, 0u);
}

TEST(Write, RoundTripRandomProperty) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    std::uniform_int_distribution<std::uint32_t> nv(1, 30);
    const std::uint32_t vars = nv(rng);
    Cnf f;
    f.num_vars = vars;
    const int nc = static_cast<int>(rng() % 40);
    for (int i = 0; i < nc; ++i) {
      Clause c;
      const int len = 1 + static_cast<int>(rng() % 6);
      for (int j = 0; j < len; ++j) {
        const Var v(static_cast<std::uint32_t>(rng() % vars));
        bool clash = false;
        for (Lit l : c) clash = clash || l.var() == v;
        if (!clash) c.push_back(Lit(v, (rng() & 1u) != 0));
      }
      f.clauses.push_back(c);
    }
    ParseReport rep;
    const Cnf back = parse_dimacs(write_dimacs(f), &rep);
    ASSERT_EQ(back, f);
    EXPECT_EQ(rep.duplicate_literals_removed, 0u);
    EXPECT_EQ(rep.tautologies_dropped, 0u);
    EXPECT_FALSE(rep.clause_count_mismatch);
  }
}

TEST(Parse, NormalizationIdempotent) {
  ParseReport first;
  const Cnf f = parse_dimacs("p cnf 4 4\n1 1 2 0\n3 -3 0\n-4 2 -4 0\n1 2 3 4 0\n", &first);
  EXPECT_EQ(first.duplicate_literals_removed, 2u);
  EXPECT_EQ(first.tautologies_dropped, 1u);
  ParseReport second;
  const Cnf g = parse_dimacs(write_dimacs(f), &second);
  EXPECT_EQ(g, f);
  EXPECT_EQ(second.duplicate_literals_removed, 0u);
  EXPECT_EQ(second.tautologies_dropped, 0u);
}

TEST(Parse, PercentTerminatesInput) {
  Cnf f = parse_dimacs("p cnf 2 1\n1 2 0\n%\n0\n");
  EXPECT_EQ(f.clauses.size(), 1u);
}
