#include <gtest/gtest.h>

#include <sstream>

#include "nspcp/arithmetize.hpp"
#include "nspcp/errors.hpp"

using namespace nspcp;

namespace {

Circuit and_circuit() { return Circuit(2, 3, {{GateKind::And, 3, {1, 2}}}); }
Circuit not_circuit() { return Circuit(1, 2, {{GateKind::Not, 2, {1}}}); }

// Every well-formed circuit with at most `max_wires` wires, built by
// choosing an input count and then one gate per remaining wire.
std::vector<Circuit> all_small_circuits(int max_wires) {
  std::vector<Circuit> out;
  for (int n_wires = 1; n_wires <= max_wires; ++n_wires) {
    for (int inputs = 1; inputs <= n_wires; ++inputs) {
      std::vector<std::vector<Gate>> partial{{}};
      for (int w = inputs + 1; w <= n_wires; ++w) {
        std::vector<std::vector<Gate>> next;
        for (const auto& gates : partial) {
          for (int a = 1; a < w; ++a) {
            auto g = gates;
            g.push_back({GateKind::Not, w, {a}});
            next.push_back(g);
            for (int b = 1; b < w; ++b) {
              auto ga = gates;
              ga.push_back({GateKind::And, w, {a, b}});
              next.push_back(ga);
              auto go = gates;
              go.push_back({GateKind::Or, w, {a, b}});
              next.push_back(go);
            }
          }
        }
        partial = std::move(next);
      }
      for (auto& gates : partial) out.emplace_back(inputs, n_wires, std::move(gates));
    }
  }
  return out;
}

// Independent evaluation of <P, w (x) w> as an explicit polynomial.
bool poly_value(const BitMatrix& p, const BitVector& w) {
  bool v = false;
  for (int i = 0; i < p.dim(); ++i) {
    for (int j = 0; j < p.dim(); ++j) v ^= p(i, j) && w[i] && w[j];
  }
  return v;
}

}  // namespace

TEST(Evaluate, SpecExamples) {
  EXPECT_EQ(evaluate(and_circuit(), BitVector::parse("11")), BitVector::parse("111"));
  EXPECT_EQ(evaluate(and_circuit(), BitVector::parse("10")), BitVector::parse("100"));
  EXPECT_EQ(evaluate(not_circuit(), BitVector::parse("0")), BitVector::parse("01"));
  EXPECT_THROW(evaluate(and_circuit(), BitVector::parse("1")), InvalidInput);
}

TEST(Arithmetize, NotGateMatrix) {
  const auto cs = arithmetize(not_circuit(), BitVector::parse("0"));
  ASSERT_EQ(cs.size(), 3);
  const auto& gate = cs[1];
  EXPECT_EQ(gate.matrix.nonzeros(), (std::vector<std::pair<int, int>>{{0, 0}, {1, 1}}));
  EXPECT_TRUE(gate.value);
}

TEST(Arithmetize, AndGateMatrix) {
  const auto cs = arithmetize(and_circuit(), BitVector::parse("11"));
  ASSERT_EQ(cs.size(), 4);
  EXPECT_EQ(cs[2].matrix.nonzeros(), (std::vector<std::pair<int, int>>{{0, 1}, {2, 2}}));
  EXPECT_FALSE(cs[2].value);
  // Input constraints carry x, output constraint pins w_N = 1.
  EXPECT_TRUE(cs[0].value);
  EXPECT_TRUE(cs[1].value);
  EXPECT_EQ(cs[3].matrix.nonzeros(), (std::vector<std::pair<int, int>>{{2, 2}}));
  EXPECT_TRUE(cs[3].value);
}

TEST(Arithmetize, OrGateCollapsedForm) {
  const Circuit c(2, 3, {{GateKind::Or, 3, {1, 2}}});
  const auto cs = arithmetize(c, BitVector::parse("01"));
  EXPECT_EQ(cs[2].matrix.nonzeros(),
            (std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 1}, {2, 2}}));
}

TEST(Arithmetize, RepeatedInputCancels) {
  // AND(a, a) = a and OR(a, a) = a as polynomials; the matrices must still
  // be upper triangular with the right value.
  const Circuit c(1, 3, {{GateKind::And, 2, {1, 1}}, {GateKind::Or, 3, {2, 2}}});
  const auto cs = arithmetize(c, BitVector::parse("1"));
  EXPECT_EQ(cs[1].matrix.nonzeros(), (std::vector<std::pair<int, int>>{{0, 0}, {1, 1}}));
  EXPECT_EQ(cs[2].matrix.nonzeros(), (std::vector<std::pair<int, int>>{{1, 1}, {2, 2}}));
}

TEST(Arithmetize, ExhaustiveOutputIffSatisfied) {
  int checked = 0;
  for (const auto& c : all_small_circuits(4)) {
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << c.inputs()); ++x) {
      const auto input = BitVector::from_word(x, c.inputs());
      const auto w = evaluate(c, input);
      const auto cs = arithmetize(c, input);
      ASSERT_EQ(cs.size(), c.wires() + 1);
      bool all_hold = true;
      for (int j = 0; j < cs.size(); ++j) {
        const auto& p = cs[j].matrix;
        for (auto [r, col] : p.nonzeros()) EXPECT_LE(r, col);
        // At most three variables per constraint.
        std::uint64_t vars = 0;
        for (auto [r, col] : p.nonzeros()) vars |= (1U << r) | (1U << col);
        EXPECT_LE(std::popcount(vars), 3);
        const bool holds = poly_value(p, w) == cs[j].value;
        if (j < c.wires()) EXPECT_TRUE(holds) << format_circuit(c);
        all_hold = all_hold && holds;
      }
      EXPECT_EQ(all_hold, w[c.wires() - 1]);
      EXPECT_EQ(cs.satisfied_by(w), all_hold);
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(Arithmetize, StructureIsInputOblivious) {
  for (const auto& c : all_small_circuits(3)) {
    const auto a = arithmetize(c, BitVector(c.inputs()));
    const auto b = arithmetize(c, BitVector::from_word(~0ULL, c.inputs()));
    for (int j = 0; j < a.size(); ++j) {
      EXPECT_EQ(a[j].matrix, b[j].matrix);
      if (j >= c.inputs()) EXPECT_EQ(a[j].value, b[j].value);
    }
  }
}

TEST(Arithmetize, CombineMatchesDenseSum) {
  const auto c = and_circuit();
  const auto cs = arithmetize(c, BitVector::parse("11"));
  for (std::uint64_t s = 0; s < 16; ++s) {
    const auto sel = BitVector::from_word(s, 4);
    BitMatrix dense(3);
    bool value = false;
    for (int j = 0; j < 4; ++j) {
      if (sel[j]) {
        dense += cs[j].matrix;
        value ^= cs[j].value;
      }
    }
    EXPECT_EQ(cs.combine(sel), dense);
    EXPECT_EQ(cs.combined_value(sel), value);
  }
}

TEST(IntendedProof, LinearAndSatisfiesEveryCombination) {
  for (const auto& c : all_small_circuits(3)) {
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << c.inputs()); ++x) {
      const auto input = BitVector::from_word(x, c.inputs());
      const auto w = evaluate(c, input);
      const auto proof = intended_proof(w);
      const int n = c.wires();
      EXPECT_FALSE(proof(BitMatrix(n)));
      for (std::uint64_t u = 0; u < (1U << n); ++u) {
        const auto uv = BitVector::from_word(u, n);
        EXPECT_EQ(proof(diag(uv)), uv.dot(w));
      }
      if (!w[n - 1]) continue;
      const auto cs = arithmetize(c, input);
      for (std::uint64_t s = 0; s < (1U << cs.size()); ++s) {
        const auto sel = BitVector::from_word(s, cs.size());
        EXPECT_EQ(proof(cs.combine(sel)), cs.combined_value(sel));
      }
    }
  }
}

TEST(IntendedProof, ExactlyLinear) {
  const auto w = BitVector::parse("101");
  const auto proof = intended_proof(w);
  for (std::uint64_t a = 0; a < 512; ++a) {
    for (std::uint64_t b = 0; b < 512; b += 7) {
      const auto A = BitMatrix::from_vector(BitVector::from_word(a, 9), 3);
      const auto B = BitMatrix::from_vector(BitVector::from_word(b, 9), 3);
      EXPECT_EQ(proof(A) ^ proof(B), proof(A + B));
    }
  }
}

TEST(ParseCircuit, WellFormed) {
  std::istringstream in("# and gate\ninputs 2 wires 3\nAND 3 1 2\n");
  const auto c = parse_circuit(in);
  EXPECT_EQ(c.inputs(), 2);
  EXPECT_EQ(c.wires(), 3);
  ASSERT_EQ(c.gates().size(), 1U);
  std::istringstream again(format_circuit(c));
  EXPECT_EQ(format_circuit(parse_circuit(again)), format_circuit(c));
}

TEST(ParseCircuit, ErrorsNameTheLine) {
  auto message = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_circuit(in);
    } catch (const InvalidInput& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message("inputs 2 wires 3\nAND 3 0 2\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("inputs 1 wires 3\nNOT 3 2\nNOT 2 1\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("inputs 1 wires 2\nXOR 2 1 1\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("inputs 1 wires 2\n\nNOT 2\n").find("line 3"), std::string::npos);
  EXPECT_NE(message("wires 2\n").find("line 1"), std::string::npos);
  EXPECT_FALSE(message("inputs 1 wires 3\nNOT 2 1\n").empty());
}

TEST(Circuit, RejectsMalformed) {
  EXPECT_THROW(Circuit(2, 3, {{GateKind::And, 3, {1}}}), InvalidInput);
  EXPECT_THROW(Circuit(2, 3, {{GateKind::And, 2, {1, 1}}}), InvalidInput);
  EXPECT_THROW(Circuit(2, 3, {}), InvalidInput);
  EXPECT_THROW(Circuit(1, 3, {{GateKind::Not, 3, {2}}, {GateKind::Not, 2, {1}}}), InvalidInput);
}
