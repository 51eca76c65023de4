#include <gtest/gtest.h>

#include "nspcp/errors.hpp"
#include "nspcp/measures.hpp"
#include "nspcp/salp.hpp"
#include "support/toys.hpp"

using namespace nspcp;
using namespace nspcp::testing;

namespace {

Query pt(const char* bits) { return Query::single(BitVector::parse(bits)); }

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST(SaProgram, SingleSetHasOnlyNormalization) {
  SaProgram p = build_sa_lp(2, 1, {QuerySet{pt("00"), pt("01")}}, 2);
  EXPECT_EQ(p.lp.rows(), 1);
  EXPECT_EQ(p.lp.variables(), 4);
  EXPECT_TRUE(p.relaxation);
  p.lp.set_objective(p.vars[0][2].second, 1);
  const LpSolution s = solve(p.lp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(s.objective, 1);
  EXPECT_EQ(s.primal[p.vars[0][2].second], 1);
}

TEST(SaProgram, DisjointSetsAddNoMarginalRows) {
  const SaProgram p = build_sa_lp(2, 1, {QuerySet{pt("00")}, QuerySet{pt("11")}}, 1);
  EXPECT_EQ(p.lp.rows(), 2);
}

TEST(SaProgram, SharedPointExactVersusNoisy) {
  const std::vector<QuerySet> family{QuerySet{pt("00"), pt("01")}, QuerySet{pt("00"), pt("10")}};
  // Gap objective: Pr_S[F(00) = 1] - Pr_T[F(00) = 1]. 00 is item 0 of both.
  auto gap = [](SaProgram& p) {
    for (const auto& [a, v] : p.vars[0]) {
      if (a & 1U) p.lp.set_objective(v, 1);
    }
    for (const auto& [a, v] : p.vars[1]) {
      if (a & 1U) p.lp.set_objective(v, -1);
    }
    return solve(p.lp);
  };
  SaProgram exact = build_sa_lp(2, 1, family, 2);
  // Two marginal equalities, one implied by normalization.
  EXPECT_EQ(exact.lp.rows(), 3);
  EXPECT_EQ(gap(exact).objective, 0);

  for (const Rational eps : {q(1, 8), q(1, 3)}) {
    SaProgram noisy = build_sa_lp(2, 1, family, 2, {PolytopeMode::Noisy, eps, nullptr});
    const LpSolution s = gap(noisy);
    EXPECT_EQ(s.objective, eps);
    EXPECT_TRUE(verify_certificate(noisy.lp, s).ok);
  }
}

TEST(SaProgram, RejectsOversizedSets) {
  EXPECT_THROW(build_sa_lp(2, 1, {QuerySet{pt("00"), pt("01"), pt("10")}}, 2), InvalidInput);
}

TEST(SaProgram, LinearityFilterKeepsLinearAssignments) {
  const QuerySet s{pt("00"), pt("01"), pt("10"), pt("11")};
  const SaProgram p = build_sa_lp(2, 1, {s}, 4, {PolytopeMode::Exact, 0, linearity_filter(1)});
  // The four linear functions on {0,1}^2.
  EXPECT_EQ(p.vars[0].size(), 4U);
  for (const auto& [a, v] : p.vars[0]) EXPECT_EQ(a & 1U, 0U);
}

TEST(SaProgram, CompleteFamilyIsNotARelaxation) {
  const auto family = maximal_complete_family(2, 1, 2);
  EXPECT_EQ(family.size(), 6U);
  EXPECT_FALSE(build_sa_lp(2, 1, family, 2).relaxation);
  EXPECT_TRUE(build_sa_lp(2, 1, {family[0], family[1]}, 2).relaxation);
  EXPECT_EQ(maximal_complete_family(2, 1, 9).size(), 1U);
}

TEST(MaxAcceptance, AntiPairMonotoneInLocalityAndNoise) {
  const AntiPairGame game(2);
  Rational previous = 2;
  for (int k = 2; k <= 4; ++k) {
    const SaResult r = max_acceptance(game, k);
    ASSERT_EQ(r.solution.status, LpStatus::Optimal);
    EXPECT_TRUE(r.certificate.ok) << r.certificate.failure;
    EXPECT_LE(r.value, previous);
    previous = r.value;
    EXPECT_EQ(r.value, k == 2 ? q(3, 4) : q(1, 2));
  }
  Rational last = 0;
  for (const Rational eps : {q(0), q(1, 8), q(1, 4)}) {
    const SaResult r = max_acceptance(game, 3, {PolytopeMode::Noisy, eps, nullptr});
    EXPECT_TRUE(r.certificate.ok);
    EXPECT_GE(r.value, last);
    last = r.value;
  }
  EXPECT_GT(last, q(1, 2));
}

TEST(MaxAcceptance, SatisfiableInstanceReachesOne) {
  const ConstraintSystem cs = arithmetize(one_wire(), BitVector::parse("1"));
  const SaResult r = max_acceptance(RepeatedAlmss(cs, 1), 4);
  EXPECT_EQ(r.value, 1);
  EXPECT_TRUE(r.certificate.ok);
  EXPECT_FALSE(r.relaxation);
}

TEST(MaxAcceptance, OptimalFamilyReplaysThroughTheVerifier) {
  const ConstraintSystem cs = arithmetize(not_circuit(), BitVector::parse("1"));
  const RepeatedAlmss v(cs, 1);
  const SaResult r = max_acceptance(v, 4, {}, FamilyChoice::Issued);
  ASSERT_EQ(r.solution.status, LpStatus::Optimal);
  EXPECT_TRUE(r.relaxation);
  std::map<QuerySet, LocalDistribution> table(r.strategy.begin(), r.strategy.end());
  const TableStrategy f(v.dim(), 1, 4, std::move(table));
  EXPECT_EQ(acceptance_exact(f, v).value, r.value);
}

TEST(Nearest, ExactInputIsItsOwnRounding) {
  const auto linear = make_product(2, 1, [](const BitVector& x) { return x[0]; });
  const NearestResult r = nearest_exact(*linear, 2, 4);
  EXPECT_EQ(r.distance, 0);
  EXPECT_TRUE(r.certificate.ok);
  const RoundingResult l = nearest_linear(*linear, 3);
  EXPECT_EQ(l.scale, 0);
  EXPECT_EQ(l.linearity_defect, 0);
  EXPECT_TRUE(l.within_bound);
}
