#include <gtest/gtest.h>

#include "nspcp/errors.hpp"
#include "nspcp/measures.hpp"
#include "nspcp/strategy.hpp"
#include "nspcp/strategy_io.hpp"
#include "nspcp/transforms.hpp"

using namespace nspcp;

namespace {

Query pt(const char* bits) { return Query::single(BitVector::parse(bits)); }
Query tup(std::initializer_list<const char*> coords) {
  std::vector<BitVector> v;
  for (const char* c : coords) v.push_back(BitVector::parse(c));
  return Query(std::move(v));
}

// x -> <a, x> on {0,1}^n.
ProductStrategy::Base linear(const char* a) {
  const auto av = BitVector::parse(a);
  return [av](const BitVector& x) { return av.dot(x); };
}

ProductStrategy::Base flipped(ProductStrategy::Base f, const char* at) {
  const auto p = BitVector::parse(at);
  return [f, p](const BitVector& x) { return f(x) != (x == p); };
}

}  // namespace

TEST(LocalDistribution, ValidatesMass) {
  EXPECT_THROW(LocalDistribution(1, 1, {{0, Rational(1, 2)}}), InvalidInput);
  EXPECT_THROW(LocalDistribution(1, 1, {{0, Rational(3, 2)}, {1, Rational(-1, 2)}}), InvalidInput);
  EXPECT_THROW(LocalDistribution(1, 1, {{2, Rational(1)}}), InvalidInput);
  const LocalDistribution d(2, 1, {{0, Rational(1, 2)}, {3, Rational(1, 2)}, {1, Rational(0)}});
  EXPECT_EQ(d.masses().size(), 2U);
}

TEST(Marginalize, SpecExamples) {
  const QuerySet s({pt("00"), pt("01")});
  const LocalDistribution corr(2, 1, {{0b00, Rational(1, 2)}, {0b11, Rational(1, 2)}});
  EXPECT_EQ(marginalize(corr, s, s), corr);
  const LocalDistribution one = marginalize(corr, s, QuerySet({pt("01")}));
  EXPECT_EQ(one, LocalDistribution(1, 1, {{0, Rational(1, 2)}, {1, Rational(1, 2)}}));
  const auto point = LocalDistribution::point(2, 1, 0b10);
  EXPECT_EQ(marginalize(point, s, QuerySet({pt("01")})), LocalDistribution::point(1, 1, 1));
  EXPECT_EQ(marginalize(point, s, QuerySet({pt("00")})), LocalDistribution::point(1, 1, 0));
  EXPECT_THROW(marginalize(corr, s, QuerySet({pt("11")})), InvalidInput);
}

TEST(TvDistance, SpecExamples) {
  const LocalDistribution u(1, 1, {{0, Rational(1, 2)}, {1, Rational(1, 2)}});
  EXPECT_EQ(tv_distance(u, u), 0);
  EXPECT_EQ(tv_distance(LocalDistribution::point(1, 1, 0), LocalDistribution::point(1, 1, 1)), 1);
  EXPECT_EQ(tv_distance(u, LocalDistribution::point(1, 1, 0)), Rational(1, 2));
  EXPECT_THROW(tv_distance(u, LocalDistribution::point(2, 1, 0)), InvalidInput);
}

TEST(Classical, PointDistributionsAgreeOnIntersections) {
  const auto f = make_product(2, 1, linear("11"));
  const auto d = f->answer(QuerySet({pt("01"), pt("10"), pt("11")}));
  ASSERT_EQ(d.masses().size(), 1U);
  // Canonical order 01 < 10 < 11, answers 1, 1, 0.
  EXPECT_EQ(d.masses().begin()->first, 0b011U);
  EXPECT_EQ(ns_defect(*f, 4).epsilon, 0);
}

TEST(Mixture, SingletonMarginalIsAveragedPointMass) {
  const auto a = make_product(2, 1, linear("10"));
  const auto b = make_product(2, 1, linear("01"));
  const auto m = make_mixture({{Rational(1, 2), a}, {Rational(1, 2), b}});
  EXPECT_EQ(m->answer(QuerySet({pt("10")})),
            LocalDistribution(1, 1, {{0, Rational(1, 2)}, {1, Rational(1, 2)}}));
  EXPECT_EQ(m->answer(QuerySet({pt("11")})), LocalDistribution::point(1, 1, 1));
  EXPECT_EQ(ns_defect(*m, 4).epsilon, 0);
  ASSERT_NE(m->proof_mixture(), nullptr);
  EXPECT_EQ(m->proof_mixture()->size(), 2U);
  EXPECT_THROW(make_mixture({{Rational(1, 3), a}, {Rational(1, 3), b}}), InvalidInput);
}

TEST(NsDefect, PerturbedTwoSetFamily) {
  // F_{a,b} uniform on {00, 11}; F_{b,c} gives b = 1 with probability 1/2 + delta.
  const Rational delta(1, 8);
  const QuerySet ab({pt("00"), pt("01")});
  const QuerySet bc({pt("01"), pt("10")});
  std::map<QuerySet, LocalDistribution> table;
  table.emplace(ab, LocalDistribution(2, 1, {{0b00, Rational(1, 2)}, {0b11, Rational(1, 2)}}));
  // Item 0 of bc is "01" = b.
  table.emplace(bc, LocalDistribution(2, 1, {{0b00, Rational(1, 2) - delta}, {0b01, Rational(1, 2) + delta}}));
  const TableStrategy f(2, 1, 2, std::move(table), StrategyMode::Almost, delta);
  const NsDefect d = ns_defect(f, std::vector<QuerySet>{ab, bc});
  EXPECT_EQ(d.epsilon, delta);
  EXPECT_EQ(d.first, ab);
  EXPECT_EQ(d.second, bc);
}

TEST(DistanceL, LinearVersusFlippedPoint) {
  const auto l = make_product(2, 1, linear("10"));
  const auto g = make_product(2, 1, flipped(linear("10"), "11"));
  EXPECT_EQ(distance_l(*l, *l, 4), 0);
  Rational prev = 0;
  for (int ell = 1; ell <= 4; ++ell) {
    const Rational d = distance_l(*l, *g, ell);
    EXPECT_GE(d, prev);
    prev = d;
  }
  EXPECT_EQ(distance_l(*l, *g, 4), 1);
  EXPECT_EQ(distance_l(*l, *g, 1), 1);
}

TEST(Linearity, SpecExamples) {
  const auto l = make_product(2, 1, linear("11"));
  EXPECT_EQ(min_linearity(*l).value, 1);
  // X = Y asks {X, 0}: passes iff F(0) = 0.
  const auto g = make_product(2, 1, flipped(linear("11"), "00"));
  EXPECT_EQ(linearity_probability(*g, pt("10"), pt("10")), 0);
  EXPECT_EQ(linearity_probability(*l, pt("10"), pt("10")), 1);
  const auto h = make_product(2, 1, flipped(linear("11"), "01"));
  EXPECT_EQ(min_linearity(*h).value, 0);
  // Uniform answers pass a generic triple half the time.
  const IndependentUniformStrategy u(2, 1, 3);
  EXPECT_EQ(linearity_probability(u, pt("10"), pt("01")), Rational(1, 2));
}

TEST(Consistency, SpecExamples) {
  const auto q = tup({"01", "10"});
  const auto q2 = tup({"01", "11"});
  const IndependentUniformStrategy u(2, 2, 2);
  EXPECT_EQ(consistency_probability(u, q, q), 1);
  EXPECT_EQ(consistency_probability(u, q, q2), Rational(1, 2));
  const auto f = make_product(2, 2, linear("01"));
  EXPECT_EQ(min_consistency(*f).value, 1);
}

TEST(ZeroOnZeros, SpecExamples) {
  const auto f = make_product(2, 2, linear("01"));
  EXPECT_EQ(min_zero_on_zeros(*f).value, 1);
  const IndependentUniformStrategy u(2, 2, 1);
  EXPECT_EQ(zero_on_zeros_probability(u, tup({"01", "10"})), 1);
  EXPECT_EQ(zero_on_zeros_probability(u, tup({"00", "10"})), Rational(1, 2));
  EXPECT_EQ(zero_on_zeros_probability(u, tup({"00", "00"})), Rational(1, 4));
}

TEST(Fold, ConstantAnswerGetsSymmetrized) {
  // Always answers (0, 1): the fold is uniform on {(0,1), (1,0)} at a
  // query with distinct coordinates.
  const auto f = make_classical(2, 2, [](const Query&) { return Answer{0b10}; });
  const auto folded = fold(f);
  const Query q = tup({"01", "10"});
  const auto d = folded->answer(QuerySet({q}));
  EXPECT_EQ(d, LocalDistribution(1, 2, {{0b01, Rational(1, 2)}, {0b10, Rational(1, 2)}}));
  const Permutation swap({1, 0});
  EXPECT_EQ(folded->answer(QuerySet({swap.apply(q)})), d);
  // Unfolded, the permuted query answers differ from the permuted answers.
  EXPECT_EQ(f->answer(QuerySet({swap.apply(q)})), LocalDistribution::point(1, 2, 0b10));
}

TEST(Fold, EquivarianceOnPairsExhaustive) {
  // A non-equivariant mixture; its fold must satisfy the folding equality
  // for every pair of queries and every pair of permutations.
  const auto f = make_mixture(
      {{Rational(1, 3), make_classical(2, 2, [](const Query& q) { return Answer(q[0][0]) | (Answer(q[0][1]) << 1); })},
       {Rational(2, 3), make_classical(2, 2, [](const Query& q) { return Answer(q[1].weight() & 1); })}});
  const auto folded = fold(f);
  const auto points = all_points(2, 2);
  const auto perms = Permutation::all(2);
  for (std::size_t i = 0; i < points.size(); i += 3) {
    for (std::size_t j = i + 1; j < points.size(); j += 5) {
      const QuerySet s({points[i], points[j]});
      const auto base = folded->answer(s);
      for (const auto& p1 : perms) {
        for (const auto& p2 : perms) {
          const Query a = p1.apply(s[0]);
          const Query b = p2.apply(s[1]);
          const QuerySet moved({a, b});
          if (moved.size() != 2) continue;
          DistributionBuilder expect(2, 2);
          for (const auto& [asg, m] : base.masses()) {
            std::vector<Answer> ans(2);
            ans[*moved.index_of(a)] = p1.apply(unpack(asg, 0, 2));
            ans[*moved.index_of(b)] = p2.apply(unpack(asg, 1, 2));
            expect.add(pack(ans, 2), m);
          }
          EXPECT_EQ(folded->answer(moved), expect.build());
        }
      }
    }
  }
}

TEST(Fold, IdempotentAndFixesProducts) {
  const auto f = make_classical(2, 2, [](const Query& q) { return Answer(q[0][0] ^ q[1][1]); });
  const auto once = fold(f);
  const auto twice = fold(once);
  EXPECT_EQ(distance_l(*once, *twice, 2), 0);
  const auto p = make_product(2, 2, flipped(linear("10"), "11"));
  EXPECT_EQ(distance_l(*p, *fold(p), 2), 0);
}

TEST(Fold, SamplesBeyondBudget) {
  const auto f = make_classical(2, 2, [](const Query& q) { return Answer(q[0][0]); });
  const auto tiny = std::make_shared<const MixtureStrategy>(
      std::vector<std::pair<Rational, StrategyPtr>>{{Rational(1), std::make_shared<IndependentUniformStrategy>(2, 2, 4)}});
  WrapperOptions opts;
  opts.exact_budget = 2;
  opts.samples = 64;
  const auto d = fold(tiny, opts)->answer(QuerySet({tup({"00", "01"}), tup({"11", "01"})}));
  ASSERT_TRUE(d.samples().has_value());
  EXPECT_EQ(*d.samples(), 64U);
  const auto exact = fold(f)->answer(QuerySet({tup({"00", "01"})}));
  EXPECT_FALSE(exact.samples().has_value());
}

TEST(Flatten, ClassicalProductMatchesBase) {
  const auto base = linear("11");
  const auto p = make_product(2, 3, base);
  const auto flat = flatten(p);
  EXPECT_EQ(flat->repetition(), 1);
  EXPECT_EQ(flat->locality(), 3);
  const auto direct = make_product(2, 1, base);
  EXPECT_EQ(distance_l(*flat, *direct, 3), 0);
  EXPECT_THROW(flat->answer(QuerySet({pt("00"), pt("01"), pt("10"), pt("11")})), InvalidInput);
}

TEST(SelfCorrect, LinearBaseIsReproduced) {
  const auto base = make_product(2, 2, linear("10"));
  const auto corrected = self_correct(base, 8);
  EXPECT_EQ(corrected->repetition(), 1);
  EXPECT_EQ(corrected->locality(), 4);
  EXPECT_EQ(distance_l(*corrected, *make_product(2, 1, linear("10")), 2), 0);
  EXPECT_EQ(min_zero_on_zeros(*corrected).value, 1);
  EXPECT_THROW(self_correct(base, 6)->answer(complete_family(2, 1, 4).back()), InvalidInput);
  EXPECT_THROW(self_correct(make_product(2, 3, linear("10")), 8), InvalidInput);
}

TEST(SelfCorrect, GenericPathMatchesMixturePath) {
  // The table copy of a mixture has no proof_mixture(), so it goes through
  // full outcome enumeration.
  const auto mix = make_mixture({{Rational(3, 4), make_product(1, 2, linear("1"))},
                                 {Rational(1, 4), make_product(1, 2, flipped(linear("1"), "0"))}});
  const auto table = std::make_shared<TableStrategy>(tabulate(*mix, complete_family(1, 2, 4)));
  const auto a = self_correct(mix, 4);
  const auto b = self_correct(table, 4);
  EXPECT_EQ(distance_l(*a, *b, 2), 0);
}

TEST(StrategyJson, RoundTripIsBitExact) {
  const auto mix = make_mixture({{Rational(1, 3), make_product(2, 1, linear("10"))},
                                 {Rational(2, 3), make_product(2, 1, flipped(linear("01"), "11"))}});
  const TableStrategy t = tabulate(*mix, complete_family(2, 1, 2), StrategyMode::Almost, Rational(1, 7));
  const std::string text = dump_strategy(t);
  const TableStrategy back = load_strategy(text);
  EXPECT_EQ(dump_strategy(back), text);
  EXPECT_EQ(back.table(), t.table());
  EXPECT_EQ(back.epsilon(), Rational(1, 7));
  EXPECT_THROW(load_strategy("{\"t\": 1}"), InvalidInput);
  EXPECT_THROW(load_strategy("not json"), InvalidInput);
}

TEST(TableStrategy, AnswersSubsetsByMarginalizing) {
  const auto f = make_product(2, 1, linear("11"));
  const TableStrategy t = tabulate(*f, {QuerySet({pt("00"), pt("01"), pt("10")})});
  EXPECT_EQ(t.answer(QuerySet({pt("01")})), f->answer(QuerySet({pt("01")})));
  EXPECT_THROW(t.answer(QuerySet({pt("11")})), InvalidInput);
}
