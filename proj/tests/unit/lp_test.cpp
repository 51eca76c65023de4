#include <gtest/gtest.h>

#include <sstream>

#include "nspcp/lp.hpp"

using namespace nspcp;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

void expect_certified(const LinearProgram& lp, const LpSolution& s) {
  const CertificateCheck c = verify_certificate(lp, s);
  EXPECT_TRUE(c.ok) << c.failure;
}

}  // namespace

TEST(Lp, SingleBound) {
  LinearProgram lp;
  const int x = lp.add_variable("x", 1);
  lp.add_row({{x, 1}}, Sense::LessEqual, q(1, 3));
  const LpSolution s = solve(lp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(s.objective, q(1, 3));
  EXPECT_EQ(s.primal[x], q(1, 3));
  EXPECT_EQ(s.dual[0], 1);
  expect_certified(lp, s);
}

TEST(Lp, MixedSensesAndMinimize) {
  // min 2x + 3y  s.t. x + y >= 4, x - y = 1, y <= 10.
  LinearProgram lp(LinearProgram::Goal::Minimize);
  const int x = lp.add_variable("x", 2);
  const int y = lp.add_variable("y", 3);
  lp.add_row({{x, 1}, {y, 1}}, Sense::GreaterEqual, 4);
  lp.add_row({{x, 1}, {y, -1}}, Sense::Equal, 1);
  lp.add_row({{y, 1}}, Sense::LessEqual, 10);
  const LpSolution s = solve(lp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(s.objective, q(19, 2));
  EXPECT_EQ(s.primal[x], q(5, 2));
  expect_certified(lp, s);
}

TEST(Lp, NegativeRightHandSide) {
  // max x s.t. -x >= -5 (x <= 5), x - y <= -1.
  LinearProgram lp;
  const int x = lp.add_variable("x", 1);
  const int y = lp.add_variable("y", 0);
  lp.add_row({{x, -1}}, Sense::GreaterEqual, -5);
  lp.add_row({{x, 1}, {y, -1}}, Sense::LessEqual, -1);
  lp.add_row({{y, 1}}, Sense::LessEqual, 3);
  const LpSolution s = solve(lp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(s.objective, 2);
  expect_certified(lp, s);
}

TEST(Lp, InfeasibleAndUnbounded) {
  LinearProgram bad;
  const int x = bad.add_variable("x", 1);
  bad.add_row({{x, 1}}, Sense::GreaterEqual, 2);
  bad.add_row({{x, 1}}, Sense::LessEqual, 1);
  EXPECT_EQ(solve(bad).status, LpStatus::Infeasible);

  LinearProgram open;
  const int a = open.add_variable("a", 1);
  const int b = open.add_variable("b", 0);
  open.add_row({{a, 1}, {b, -1}}, Sense::LessEqual, 1);
  EXPECT_EQ(solve(open).status, LpStatus::Unbounded);
}

TEST(Lp, RedundantEqualitiesKeepDualsValid) {
  // Two copies of one normalization row.
  LinearProgram lp;
  const int a = lp.add_variable("a", q(1, 2));
  const int b = lp.add_variable("b", q(3, 4));
  lp.add_row({{a, 1}, {b, 1}}, Sense::Equal, 1);
  lp.add_row({{a, 2}, {b, 2}}, Sense::Equal, 2);
  const LpSolution s = solve(lp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(s.objective, q(3, 4));
  expect_certified(lp, s);
}

TEST(Lp, BealeCycleTerminatesUnderBothRules) {
  // Beale's example cycles under pure largest-coefficient pricing.
  LinearProgram lp;
  const int x4 = lp.add_variable("x4", q(3, 4));
  const int x5 = lp.add_variable("x5", -20);
  const int x6 = lp.add_variable("x6", q(1, 2));
  const int x7 = lp.add_variable("x7", -6);
  lp.add_row({{x4, q(1, 4)}, {x5, -8}, {x6, -1}, {x7, 9}}, Sense::LessEqual, 0);
  lp.add_row({{x4, q(1, 2)}, {x5, -12}, {x6, q(-1, 2)}, {x7, 3}}, Sense::LessEqual, 0);
  lp.add_row({{x6, 1}}, Sense::LessEqual, 1);
  const LpSolution a = solve(lp, Pricing::Bland);
  const LpSolution b = solve(lp, Pricing::DantzigBland);
  ASSERT_EQ(a.status, LpStatus::Optimal);
  ASSERT_EQ(b.status, LpStatus::Optimal);
  EXPECT_EQ(a.objective, q(5, 4));
  EXPECT_EQ(a.objective, b.objective);
  expect_certified(lp, a);
  expect_certified(lp, b);
}

TEST(Lp, CertificateCatchesTampering) {
  LinearProgram lp;
  const int x = lp.add_variable("x", 1);
  const int y = lp.add_variable("y", 1);
  lp.add_row({{x, 1}, {y, 2}}, Sense::LessEqual, 4);
  lp.add_row({{x, 3}, {y, 1}}, Sense::LessEqual, 6);
  LpSolution s = solve(lp);
  expect_certified(lp, s);
  LpSolution wrong_dual = s;
  wrong_dual.dual[0] += 1;
  EXPECT_FALSE(verify_certificate(lp, wrong_dual).ok);
  LpSolution infeasible = s;
  infeasible.primal[x] += 1;
  infeasible.objective += 1;
  EXPECT_FALSE(verify_certificate(lp, infeasible).ok);
}

TEST(Lp, ExportWritesSidecarForNonDecimals) {
  LinearProgram lp;
  const int x = lp.add_variable("x", q(1, 3));
  const int y = lp.add_variable("y", q(1, 4));
  lp.add_row({{x, 1}, {y, q(-5, 2)}}, Sense::LessEqual, q(2, 7), "cap");
  std::ostringstream out;
  std::ostringstream side;
  write_lp(lp, out, side);
  const std::string text = out.str();
  EXPECT_NE(text.find("Maximize"), std::string::npos);
  EXPECT_NE(text.find("+ 0.25 y"), std::string::npos);
  EXPECT_NE(text.find("- 2.5 y"), std::string::npos);
  EXPECT_NE(text.find("End"), std::string::npos);
  EXPECT_EQ(side.str(), "obj x 1/3\ncap rhs 2/7\n");
}
