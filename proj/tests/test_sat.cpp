#include <gtest/gtest.h>

#include <set>

#include "oracles/fixtures.hpp"
#include "oracles/oracles.hpp"
#include "saqc/sat.hpp"

using namespace saqc;

namespace {

Clause clause(int a, int b, int c) { return {Literal::from_signed(a), Literal::from_signed(b), Literal::from_signed(c)}; }

}  // namespace

TEST(Clause, AllNegatedFailsOnlyOnOnes) {
  const Clause c = clause(-1, -2, -3);
  for (std::uint64_t z = 0; z < 8; ++z) EXPECT_EQ(evaluate_clause(c, Assignment(3, z)), z != 0b111) << z;
}

TEST(Clause, AllPositiveFailsOnlyOnZeros) {
  const Clause c = clause(1, 2, 3);
  for (std::uint64_t z = 0; z < 8; ++z) EXPECT_EQ(evaluate_clause(c, Assignment(3, z)), z != 0) << z;
}

TEST(Clause, FirstLiteralSatisfiedIsEnough) {
  EXPECT_TRUE(evaluate_clause(clause(2, -1, 3), Assignment(3, 0b010)));
  EXPECT_TRUE(evaluate_clause(clause(-3, 1, 2), Assignment(3, 0b000)));
}

TEST(Clause, OutOfRangeVariableIsInputError) {
  try {
    evaluate_clause(clause(1, 2, 5), Assignment(3, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::input);
  }
}

TEST(WorkedInstance, HasExactlyOneSolution) {
  const CnfInstance p = fixtures::worked_instance();
  EXPECT_EQ(p.m(), 27);
  EXPECT_EQ(count_satisfying(p), 1U);
}

// Direct substitution gives x = (0,1,0,1,0,0) as the unique solution. The
// assignment (1,1,0,1,0,0) quoted alongside the instance falsifies
// (~x1 | ~x2 | ~x4).
TEST(WorkedInstance, UniqueSolutionBySubstitution) {
  const CnfInstance p = fixtures::worked_instance();
  const auto& raw = fixtures::worked_instance_clauses();
  std::vector<std::uint64_t> sols;
  for (std::uint64_t z = 0; z < 64; ++z)
    if (oracle::substitute(raw, z) == 0) sols.push_back(z);
  ASSERT_EQ(sols.size(), 1U);
  EXPECT_EQ(Assignment(6, sols[0]).to_string(), "001010");  // x6..x1
  EXPECT_EQ(unsatisfied_count(p, Assignment(6, sols[0])), 0);

  const Assignment quoted = Assignment::parse("001011");
  EXPECT_EQ(unsatisfied_count(p, quoted), 1);
  EXPECT_FALSE(evaluate_clause(clause(-1, -2, -4), quoted));
}

TEST(WorkedInstance, AllZerosMatchesSubstitution) {
  const CnfInstance p = fixtures::worked_instance();
  const int expected = oracle::substitute(fixtures::worked_instance_clauses(), 0);
  EXPECT_EQ(expected, 4);  // the four all-positive clauses
  EXPECT_EQ(unsatisfied_count(p, Assignment(6, 0)), expected);
}

TEST(WorkedInstance, EveryAssignmentMatchesSubstitution) {
  const CnfInstance p = fixtures::worked_instance();
  for (std::uint64_t z = 0; z < 64; ++z)
    EXPECT_EQ(unsatisfied_count(p, Assignment(6, z)), oracle::substitute(fixtures::worked_instance_clauses(), z));
}

TEST(WorkedInstance, GuessMetricsOfAllZeros) {
  CnfInstance p = fixtures::worked_instance();
  p.set_unique_solution(Assignment::parse("001010"));
  const GuessMetrics gm = guess_metrics(p, Assignment(6, 0));
  EXPECT_EQ(gm.bf, oracle::popcount(0b001010));
  EXPECT_EQ(gm.bf, 2);
  EXPECT_EQ(gm.uc, 4);
}

TEST(UnsatisfiedCount, EmptyFormulaIsZero) {
  const CnfInstance empty(3, {});
  for (std::uint64_t z = 0; z < 8; ++z) EXPECT_EQ(unsatisfied_count(empty, Assignment(3, z)), 0);
}

TEST(UnsatisfiedCount, LengthMismatchIsInputError) {
  const CnfInstance inst(3, {clause(1, 2, 3)});
  EXPECT_THROW(unsatisfied_count(inst, Assignment(4, 0)), Error);
}

TEST(CountSatisfying, SmallCases) {
  EXPECT_EQ(count_satisfying(CnfInstance(3, {})), 8U);
  EXPECT_EQ(count_satisfying(CnfInstance(3, {clause(1, 2, 3)})), 7U);
}

TEST(CountSatisfying, RefusesAboveCap) {
  const CnfInstance inst(10, {clause(1, 2, 3)});
  try {
    count_satisfying(inst, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::capacity);
  }
}

TEST(CnfInstance, RejectsRepeatedVariable) {
  EXPECT_THROW(CnfInstance(3, {clause(1, -1, 2)}), Error);
  EXPECT_THROW(CnfInstance(3, {clause(1, 2, 4)}), Error);
}

TEST(CnfInstance, RejectsWrongSolution) {
  EXPECT_THROW(CnfInstance(3, {clause(1, 2, 3)}, Assignment(3, 0)), Error);
  // Satisfies, but seven solutions exist.
  EXPECT_THROW(CnfInstance(3, {clause(1, 2, 3)}, Assignment(3, 1)), Error);
}

TEST(GuessMetrics, IdentityAndComplement) {
  Rng rng = substream(3, "test");
  const CnfInstance inst = generate_usa_instance(6, 26, rng);
  const GuessMetrics same = guess_metrics(inst, inst.solution());
  EXPECT_EQ(same.bf, 0);
  EXPECT_EQ(same.uc, 0);
  EXPECT_EQ(guess_metrics(inst, inst.solution().complement()).bf, 6);
}

TEST(GuessMetrics, MissingSolutionIsStateError) {
  const CnfInstance inst(3, {clause(1, 2, 3)});
  try {
    guess_metrics(inst, Assignment(3, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::state);
  }
}

TEST(GuessMetrics, HammingIsAMetric) {
  Rng rng = substream(11, "metric");
  std::uniform_int_distribution<std::uint64_t> pick(0, 255);
  for (int t = 0; t < 500; ++t) {
    const Assignment a(8, pick(rng)), b(8, pick(rng)), c(8, pick(rng));
    EXPECT_EQ(hamming_distance(a, a), 0);
    EXPECT_EQ(hamming_distance(a, b), hamming_distance(b, a));
    EXPECT_LE(hamming_distance(a, c), hamming_distance(a, b) + hamming_distance(b, c));
  }
}

TEST(Assignment, BitOrderIsXnDownToX1) {
  const Assignment a = Assignment::parse("1010");
  EXPECT_EQ(a.bits(), 0b1010U);
  EXPECT_FALSE(a.value(1));
  EXPECT_TRUE(a.value(2));
  EXPECT_TRUE(a.value(4));
  EXPECT_EQ(a.to_string(), "1010");
  EXPECT_THROW(Assignment::parse("10x0"), Error);
}

TEST(Generation, UsaInstanceIsVerified) {
  Rng rng = substream(42, "generation");
  const CnfInstance inst = generate_usa_instance(6, 26, rng);
  EXPECT_EQ(inst.m(), 26);
  EXPECT_EQ(count_satisfying(inst), 1U);
  EXPECT_EQ(unsatisfied_count(inst, inst.solution()), 0);
  // Independent check by substitution.
  int sols = 0;
  for (std::uint64_t z = 0; z < 64; ++z) sols += oracle::substitute(fixtures::signed_clauses(inst), z) == 0;
  EXPECT_EQ(sols, 1);
}

TEST(Generation, NoDuplicateClausesOrRepeatedVariables) {
  Rng rng = substream(5, "generation");
  for (int t = 0; t < 20; ++t) {
    const CnfInstance inst = generate_usa_instance(6, 26, rng);
    std::set<Clause> seen;
    for (const Clause& c : inst.clauses()) {
      EXPECT_TRUE(seen.insert(canonical(c)).second);
      EXPECT_NE(c[0].variable, c[1].variable);
      EXPECT_NE(c[0].variable, c[2].variable);
      EXPECT_NE(c[1].variable, c[2].variable);
    }
  }
}

TEST(Generation, ReproducibleFromSeed) {
  Rng a = substream(9, "generation");
  Rng b = substream(9, "generation");
  const CnfInstance x = generate_usa_instance(7, 30, a);
  const CnfInstance y = generate_usa_instance(7, 30, b);
  EXPECT_EQ(x.clauses(), y.clauses());
  EXPECT_EQ(x.solution(), y.solution());
}

// With n=3 every clause touches all three variables and falsifies exactly one
// of the 8 patterns, so 7 distinct clauses leave exactly one solution.
TEST(Generation, ThreeVariablesSevenClausesAlwaysUsa) {
  int falsified_patterns = 0;
  std::vector<std::vector<int>> all7;
  for (std::uint64_t z = 0; z < 8; ++z) {
    if (z == 0b011) continue;
    std::vector<int> c;
    for (int j = 1; j <= 3; ++j) c.push_back(((z >> (j - 1)) & 1U) ? -j : j);
    all7.push_back(c);
  }
  for (std::uint64_t z = 0; z < 8; ++z) falsified_patterns += oracle::substitute(all7, z) > 0;
  EXPECT_EQ(falsified_patterns, 7);

  Rng rng = substream(1, "toy");
  GenerationOptions opts;
  opts.max_attempts = 1;
  const CnfInstance toy = generate_usa_instance(3, 7, rng, opts);
  EXPECT_EQ(count_satisfying(toy), 1U);
}

TEST(Generation, BadArguments) {
  Rng rng = substream(1, "x");
  EXPECT_THROW(generate_usa_instance(2, 5, rng), Error);
  EXPECT_THROW(generate_usa_instance(6, 0, rng), Error);
  EXPECT_THROW(generate_usa_instance(3, 9, rng), Error);  // only 8 distinct clauses exist
}

TEST(Generation, BudgetExhaustion) {
  Rng rng = substream(1, "x");
  GenerationOptions opts;
  opts.max_attempts = 3;
  // Two clauses over six variables never leave a unique solution.
  try {
    generate_usa_instance(6, 2, rng, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::generation);
  }
}

TEST(Generation, CoverSetN6) {
  Rng rng = substream(1, "generation");
  const auto set = generate_solution_cover_set(6, 26, rng);
  ASSERT_EQ(set.size(), 64U);
  std::set<std::uint64_t> sols;
  for (const CnfInstance& inst : set) {
    EXPECT_EQ(count_satisfying(inst), 1U);
    sols.insert(inst.solution().bits());
  }
  EXPECT_EQ(sols.size(), 64U);
}

TEST(Generation, CoverSetN7) {
  Rng rng = substream(2, "generation");
  const auto set = generate_solution_cover_set(7, 30, rng);
  ASSERT_EQ(set.size(), 128U);
  std::set<std::uint64_t> sols;
  for (const CnfInstance& inst : set) sols.insert(inst.solution().bits());
  EXPECT_EQ(sols.size(), 128U);
}

TEST(Generation, CoverSetBadInput) {
  Rng rng = substream(1, "x");
  EXPECT_THROW(generate_solution_cover_set(1, 4, rng), Error);
  EXPECT_THROW(generate_solution_cover_set(9, 38, rng), Error);
}

TEST(Generation, PartialCoverReportsMissing) {
  Rng rng = substream(1, "x");
  GenerationOptions opts;
  opts.max_attempts = 20;
  try {
    generate_solution_cover_set(6, 26, rng, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::generation);
    EXPECT_NE(std::string(e.what()).find("missing solutions"), std::string::npos);
  }
}

TEST(Generation, DefaultClauseCounts) {
  EXPECT_EQ(default_clause_count(6), 26);
  EXPECT_EQ(default_clause_count(7), 30);
}

TEST(Properties, UnsatisfiedCountRangeAndSolutionCount) {
  Rng rng = substream(77, "props");
  for (int t = 0; t < 30; ++t) {
    const CnfInstance inst(7, detail::random_formula(7, 25, rng));
    std::uint64_t zeros = 0;
    for (std::uint64_t z = 0; z < 128; ++z) {
      const int u = unsatisfied_count(inst, Assignment(7, z));
      EXPECT_GE(u, 0);
      EXPECT_LE(u, inst.m());
      zeros += u == 0;
    }
    EXPECT_EQ(zeros, count_satisfying(inst));
  }
}
