#include <gtest/gtest.h>

#include <map>
#include <random>

#include "nspcp/arithmetize.hpp"
#include "nspcp/errors.hpp"
#include "nspcp/strategy.hpp"
#include "nspcp/verifier.hpp"

using namespace nspcp;

namespace {

Circuit and_circuit() { return Circuit(2, 3, {{GateKind::And, 3, {1, 2}}}); }
Circuit not_circuit() { return Circuit(1, 2, {{GateKind::Not, 2, {1}}}); }
Circuit one_wire() { return Circuit(1, 1, {}); }

StrategyPtr intended(const ConstraintSystem& cs, const BitVector& wires, int t) {
  const HadamardProof proof(wires);
  (void)cs;
  return make_product(wires.size() * wires.size(), t, [proof](const BitVector& m) { return proof(m); });
}

StrategyPtr table_product(int dim, int t, std::vector<bool> table) {
  return make_product(dim, t, [table = std::move(table)](const BitVector& x) { return static_cast<bool>(table[x.word()]); });
}

}  // namespace

TEST(Almss, QueriesSpecExamples) {
  const ConstraintSystem cs = arithmetize(not_circuit(), BitVector::parse("0"));
  const auto q = almss_queries(cs, BitVector::parse("10"), BitVector::parse("01"), BitVector(cs.size()));
  EXPECT_EQ(q[0], diag(BitVector::parse("10")));
  EXPECT_EQ(q[1], diag(BitVector::parse("01")));
  EXPECT_EQ(q[2], tensor(BitVector::parse("10"), BitVector::parse("01")));
  EXPECT_TRUE(q[3].is_zero());

  const auto zero = almss_queries(cs, BitVector(2), BitVector(2), BitVector(cs.size()));
  std::vector<Query> roles;
  for (const auto& m : zero) roles.push_back(Query::single(m.as_vector()));
  EXPECT_EQ(QuerySet(roles).size(), 1);
}

TEST(Almss, DrawsMatchQueriesForEveryOutcome) {
  const Circuit c(2, 4, {{GateKind::And, 3, {1, 2}}, {GateKind::Not, 4, {3}}});
  const ConstraintSystem cs = arithmetize(c, BitVector::parse("10"));
  const RepeatedAlmss v(cs, 2);
  const int n = cs.wires();
  const int block = 2 * n + cs.size();
  Draw reused;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << v.randomness_bits()); r += 97) {
    EnumeratedBits bits(r);
    const Draw d = v.draw(bits);
    EnumeratedBits again(r);
    v.redraw(again, reused);
    EXPECT_EQ(reused.roles, d.roles);
    EXPECT_EQ(reused.aux, d.aux);
    for (int i = 0; i < 2; ++i) {
      const std::uint64_t part = r >> (i * block);
      const BitVector s = BitVector::from_word(part >> (2 * n), cs.size());
      const auto q = almss_queries(cs, BitVector::from_word(part, n), BitVector::from_word(part >> n, n), s);
      for (int role = 0; role < 4; ++role) EXPECT_EQ(d.roles[role][i], q[role].as_vector());
      EXPECT_EQ(((d.aux >> i) & 1U) != 0, cs.combined_value(s));
    }
  }
}

TEST(Almss, DecideRejectsBrokenProduct) {
  const bool a[4] = {true, true, false, false};
  EXPECT_FALSE(almss_decide(a, false).first);
  const bool b[4] = {true, true, true, true};
  EXPECT_EQ(almss_decide(b, true), std::make_pair(true, true));
  EXPECT_THROW(almss_decide(std::span<const bool>(a, 3), false), InvalidInput);
}

TEST(Almss, IntendedProofAcceptsEveryOutcome) {
  const BitVector x = BitVector::parse("11");
  const ConstraintSystem cs = arithmetize(and_circuit(), x);
  const BitVector w = evaluate(and_circuit(), x);
  const RepeatedAlmss v(cs, 1);
  const HadamardProof proof(w);
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << v.randomness_bits()); ++r) {
    EnumeratedBits bits(r);
    const Draw d = v.draw(bits);
    std::vector<Answer> answers;
    for (const auto& q : d.roles) answers.push_back(proof(q[0]));
    ASSERT_TRUE(v.decide(d.aux, answers).accept) << r;
  }
}

TEST(Almss, ZeroProofFailsHalfTheSelectors) {
  // AND(1,0) does not satisfy the output constraint, so some c_j = 1.
  const ConstraintSystem cs = arithmetize(and_circuit(), BitVector::parse("10"));
  const auto zero = make_product(9, 1, [](const BitVector&) { return false; });
  const Acceptance a = acceptance_exact(*zero, RepeatedAlmss(cs, 1));
  EXPECT_EQ(a.sub_tests[0], Rational(1));
  EXPECT_EQ(a.sub_tests[1], Rational(1, 2));
  EXPECT_EQ(a.value, Rational(1, 2));
  EXPECT_EQ(a.method, "enumerated");
}

TEST(RepeatedAlmss, TwoCoordinatesAreTwoIndependentDraws) {
  const ConstraintSystem cs = arithmetize(not_circuit(), BitVector::parse("0"));
  const RepeatedAlmss one(cs, 1);
  const RepeatedAlmss two(cs, 2);
  const int b = one.randomness_bits();
  std::map<std::pair<std::vector<Query>, std::uint64_t>, std::uint64_t> single;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << b); ++r) {
    EnumeratedBits bits(r);
    Draw d = one.draw(bits);
    ++single[{d.roles, d.aux}];
  }
  std::map<std::pair<std::vector<Query>, std::uint64_t>, std::uint64_t> expected;
  for (const auto& [k1, c1] : single) {
    for (const auto& [k2, c2] : single) {
      std::vector<Query> roles;
      for (int i = 0; i < 4; ++i) roles.push_back(Query({k1.first[i][0], k2.first[i][0]}));
      expected[{roles, k1.second | (k2.second << 1)}] += c1 * c2;
    }
  }
  std::map<std::pair<std::vector<Query>, std::uint64_t>, std::uint64_t> actual;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << (2 * b)); ++r) {
    EnumeratedBits bits(r);
    Draw d = two.draw(bits);
    ++actual[{d.roles, d.aux}];
  }
  EXPECT_EQ(actual, expected);
}

TEST(RepeatedAlmss, QueriesDoNotDependOnTheInput) {
  const ConstraintSystem a = arithmetize(and_circuit(), BitVector::parse("00"));
  const ConstraintSystem b = arithmetize(and_circuit(), BitVector::parse("11"));
  const FullVerifier va(a, 1);
  const FullVerifier vb(b, 1);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t r = rng();
    EnumeratedBits ba(r);
    EnumeratedBits bb(r);
    EXPECT_EQ(va.draw(ba).roles, vb.draw(bb).roles);
  }
}

TEST(RepeatedAlmss, FactoredMatchesEnumerated) {
  std::mt19937_64 rng(11);
  const ConstraintSystem cs = arithmetize(not_circuit(), BitVector::parse("1"));
  for (int t = 1; t <= 2; ++t) {
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<bool> table(16);
      for (std::size_t i = 0; i < table.size(); ++i) table[i] = rng() & 1U;
      const auto f = table_product(4, t, table);
      const RepeatedAlmss v(cs, t);
      const Acceptance e = acceptance_exact(*f, v);
      const Acceptance p = acceptance_exact(*f, v, {.prefer_factored = true});
      EXPECT_EQ(e.method, "enumerated");
      EXPECT_EQ(p.method, "factored");
      EXPECT_EQ(e.value, p.value);
      EXPECT_EQ(e.sub_tests, p.sub_tests);
    }
  }
}

TEST(LinearityTest, SpecExamples) {
  // f on {0,1}^2 with a single flipped value away from 0.
  const auto flipped = table_product(2, 1, {false, false, false, true});
  const Acceptance a = acceptance_exact(*flipped, LinearityTest(2, 1));
  EXPECT_EQ(a.value, Rational(5, 8));

  const IndependentUniformStrategy uniform(2, 1, 3);
  EXPECT_EQ(acceptance_exact(uniform, LinearityTest(2, 1)).value, Rational(1, 2));

  const auto linear = make_product(3, 2, [](const BitVector& x) { return x[0] != x[2]; });
  EXPECT_EQ(acceptance_exact(*linear, LinearityTest(3, 2)).value, Rational(1));
}

TEST(LinearityTest, FourierFormMatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int dim = 1; dim <= 4; ++dim) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<bool> table(std::size_t{1} << dim);
      for (std::size_t i = 0; i < table.size(); ++i) table[i] = rng() & 1U;
      std::uint64_t pass = 0;
      for (std::uint64_t x = 0; x < table.size(); ++x) {
        for (std::uint64_t y = 0; y < table.size(); ++y) pass += (table[x] ^ table[y]) == table[x ^ y];
      }
      EXPECT_EQ(blr_pass_probability(table, dim), ratio(pass, table.size() * table.size()));

      const auto corr = autocorrelation(table, dim);
      for (std::uint64_t q = 0; q < table.size(); ++q) {
        std::int64_t c = 0;
        for (std::uint64_t r = 0; r < table.size(); ++r) c += table[r] == table[r ^ q] ? 1 : -1;
        EXPECT_EQ(corr[q], c);
      }
    }
  }
}

TEST(ConsistencyTest, SpecExamples) {
  const IndependentUniformStrategy uniform(2, 2, 2);
  EXPECT_EQ(acceptance_exact(uniform, ConsistencyTest(2, 1)).value, Rational(5, 8));

  const auto product = make_product(2, 2, [](const BitVector& x) { return x[0] && x[1]; });
  EXPECT_EQ(acceptance_exact(*product, ConsistencyTest(2, 1)).value, Rational(1));
}

TEST(FullVerifier, IntendedProofIsAcceptedAndFactoredAgrees) {
  for (int x = 0; x <= 1; ++x) {
    const BitVector in = BitVector::from_word(x, 1);
    const ConstraintSystem cs = arithmetize(one_wire(), in);
    const FullVerifier v(cs, 1);
    const auto f = intended(cs, evaluate(one_wire(), in), 2);
    const Acceptance e = acceptance_exact(*f, v);
    const Acceptance p = acceptance_exact(*f, v, {.prefer_factored = true});
    EXPECT_EQ(e.value, p.value);
    EXPECT_EQ(e.sub_tests, p.sub_tests);
    EXPECT_EQ(e.value, x == 1 ? Rational(1) : Rational(1, 2));
  }
}

TEST(FullVerifier, FactoredMatchesEnumeratedOnEveryBase) {
  const ConstraintSystem cs = arithmetize(one_wire(), BitVector::parse("1"));
  const FullVerifier v(cs, 1);
  for (int code = 0; code < 4; ++code) {
    const auto f = table_product(1, 2, {(code & 1) != 0, (code & 2) != 0});
    const Acceptance e = acceptance_exact(*f, v);
    const Acceptance p = acceptance_exact(*f, v, {.prefer_factored = true});
    EXPECT_EQ(e.value, p.value) << code;
    EXPECT_EQ(e.sub_tests, p.sub_tests) << code;
    EXPECT_LE(e.value, *std::min_element(e.sub_tests.begin(), e.sub_tests.end()));
  }
}

TEST(FullVerifier, RejectsLowLocality) {
  const ConstraintSystem cs = arithmetize(and_circuit(), BitVector::parse("11"));
  const FullVerifier v(cs, 1);
  EXPECT_EQ(v.required_locality(), 13);
  const IndependentUniformStrategy weak(9, 2, 12);
  EXPECT_THROW(acceptance_exact(weak, v), InvalidInput);
  const IndependentUniformStrategy wrong_shape(9, 1, 13);
  EXPECT_THROW(acceptance_mc(wrong_shape, v, 10, 0), InvalidInput);
}

TEST(AcceptanceExact, RefusesHugeRandomness) {
  const ConstraintSystem cs = arithmetize(and_circuit(), BitVector::parse("11"));
  const IndependentUniformStrategy f(9, 2, 13);
  EXPECT_THROW(acceptance_exact(f, FullVerifier(cs, 1)), ScopeExceeded);
}

TEST(AcceptanceMc, IntendedProofAndReproducibility) {
  const BitVector x = BitVector::parse("11");
  const ConstraintSystem cs = arithmetize(and_circuit(), x);
  const auto f = intended(cs, evaluate(and_circuit(), x), 2);
  const FullVerifier v(cs, 1);
  const McEstimate m = acceptance_mc(*f, v, 500, 42, 1);
  EXPECT_EQ(m.estimate, 1.0);
  EXPECT_DOUBLE_EQ(m.half_width, std::sqrt(std::log(200.0) / 1000.0));
  EXPECT_THROW(acceptance_mc(*f, v, 0, 42), InvalidInput);

  const IndependentUniformStrategy uniform(2, 1, 3);
  const LinearityTest lt(2, 1);
  const McEstimate one = acceptance_mc(uniform, lt, 5000, 9, 1);
  const McEstimate many = acceptance_mc(uniform, lt, 5000, 9, 4);
  EXPECT_EQ(one.estimate, many.estimate);
  EXPECT_EQ(one.sub_tests, many.sub_tests);
}

TEST(AcceptanceMc, CoversTheExactValue) {
  const auto flipped = table_product(2, 1, {false, false, false, true});
  const LinearityTest lt(2, 1);
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const McEstimate m = acceptance_mc(*flipped, lt, 400, seed, 1);
    covered += std::abs(m.estimate - 0.625) <= m.half_width;
  }
  EXPECT_GE(covered, 99);
}
