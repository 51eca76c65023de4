#pragma once

// Verifiers as (query sampler, decision predicate) pairs.
//
// A draw lists the verifier's logical queries ("roles") plus an opaque aux
// word; the strategy is asked the SET of the roles, and the decision reads
// one answer per role (colliding roles read the same answer). Decisions may
// depend only on the answers and aux, which lets the exact engine group
// randomness outcomes.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nspcp/arithmetize.hpp"
#include "nspcp/gf2.hpp"
#include "nspcp/random.hpp"
#include "nspcp/rational.hpp"

namespace nspcp {

class ProductStrategy;

struct Draw {
  std::vector<Query> roles;
  std::uint64_t aux = 0;
};

struct Decision {
  bool accept = false;
  std::uint32_t passed = 0;  // bit i: sub-test i passed
};

struct Acceptance {
  Rational value;
  std::vector<Rational> sub_tests;
  std::string method;  // "enumerated" or "factored"
  std::uint64_t outcomes = 0;
};

class VerifierSpec {
 public:
  virtual ~VerifierSpec() = default;

  virtual std::string name() const = 0;
  // Shape of the strategy the verifier talks to.
  virtual int dim() const = 0;
  virtual int repetition() const = 0;
  virtual int randomness_bits() const = 0;
  virtual int roles() const = 0;
  virtual std::vector<std::string> sub_tests() const = 0;

  virtual Draw draw(BitSource& bits) const = 0;
  // draw() into `out`, reusing its storage where the verifier can.
  virtual void redraw(BitSource& bits, Draw& out) const { out = draw(bits); }
  virtual Decision decide(std::uint64_t aux, std::span<const Answer> answers) const = 0;

  // Largest query set the verifier can issue: min(roles, domain size).
  int required_locality() const;

  // Closed-form acceptance for a coordinate-wise classical proof, when the
  // verifier has one.
  virtual std::optional<Acceptance> factored(const ProductStrategy&) const { return std::nullopt; }
};

// Algorithm 1 building blocks. Queries are N x N matrices flattened
// row-major into BitVectors of length N*N.
std::array<BitMatrix, 4> almss_queries(const ConstraintSystem& cs, const BitVector& u,
                                       const BitVector& v, const BitVector& s);
// {multiplication check, constraint check} for answers to the four roles.
std::pair<bool, bool> almss_decide(std::span<const bool> answers, bool combined_value);

// Algorithm 2 (Algorithm 1 when t = 1): t independent ALMSS draws packed
// coordinate-wise into four t-repeated queries.
class RepeatedAlmss final : public VerifierSpec {
 public:
  RepeatedAlmss(ConstraintSystem cs, int t);

  std::string name() const override { return t_ == 1 ? "almss" : "repeated-almss"; }
  int dim() const override { return cs_.wires() * cs_.wires(); }
  int repetition() const override { return t_; }
  int randomness_bits() const override;
  int roles() const override { return 4; }
  // "multiplication", "constraints", "coordinate_1" (both checks on the
  // first coordinate only).
  std::vector<std::string> sub_tests() const override;

  Draw draw(BitSource& bits) const override;
  void redraw(BitSource& bits, Draw& out) const override;
  Decision decide(std::uint64_t aux, std::span<const Answer> answers) const override;
  std::optional<Acceptance> factored(const ProductStrategy& f) const override;

  const ConstraintSystem& system() const { return cs_; }

 private:
  friend class FullVerifier;
  struct Block {
    std::array<std::uint64_t, 4> queries;
    bool value;
  };
  // One coordinate's queries and constraint value for randomness r.
  Block block(std::uint64_t r) const;

  ConstraintSystem cs_;
  int t_;
  std::vector<Block> blocks_;  // every single-coordinate outcome, when small
};

// Linearity test on an r-repeated strategy: roles X, Y, X+Y.
class LinearityTest final : public VerifierSpec {
 public:
  LinearityTest(int dim, int repetition) : dim_(dim), r_(repetition) {}

  std::string name() const override { return "linearity-test"; }
  int dim() const override { return dim_; }
  int repetition() const override { return r_; }
  int randomness_bits() const override { return 2 * r_ * dim_; }
  int roles() const override { return 3; }
  std::vector<std::string> sub_tests() const override { return {"linearity"}; }

  Draw draw(BitSource& bits) const override;
  Decision decide(std::uint64_t aux, std::span<const Answer> answers) const override;
  std::optional<Acceptance> factored(const ProductStrategy& f) const override;

 private:
  int dim_;
  int r_;
};

// Consistency test on a 2t-repeated strategy: roles [W; Z1], [W; Z2],
// accept iff the answers agree on the W block.
class ConsistencyTest final : public VerifierSpec {
 public:
  ConsistencyTest(int dim, int t) : dim_(dim), t_(t) {}

  std::string name() const override { return "consistency-test"; }
  int dim() const override { return dim_; }
  int repetition() const override { return 2 * t_; }
  int randomness_bits() const override { return 3 * t_ * dim_; }
  int roles() const override { return 2; }
  std::vector<std::string> sub_tests() const override { return {"consistency"}; }

  Draw draw(BitSource& bits) const override;
  Decision decide(std::uint64_t aux, std::span<const Answer> answers) const override;
  std::optional<Acceptance> factored(const ProductStrategy& f) const override;

 private:
  int dim_;
  int t_;
};

// Algorithm 3 on a 2t-repeated strategy. Roles, all asked as one set:
//   0..2   linearity test X, Y, X+Y (2t-tuples)
//   3..4   consistency test [W; Z1], [W; Z2]
//   5..12  self-correction of the four Algorithm 2 queries Q_i:
//          [R_i; W_i] at 5 + 2i, [Q_i + R_i; W_i] at 6 + 2i
// Equal Q_i share one (R_i, W_i) pair. The linear-PCP step runs the
// Algorithm 2 decision on the corrected answers (first t bits of the sum).
class FullVerifier final : public VerifierSpec {
 public:
  FullVerifier(ConstraintSystem cs, int t);

  std::string name() const override { return "full"; }
  int dim() const override { return cs_.wires() * cs_.wires(); }
  int repetition() const override { return 2 * t_; }
  int randomness_bits() const override;
  int roles() const override { return 13; }
  std::vector<std::string> sub_tests() const override {
    return {"linearity", "consistency", "linear_pcp"};
  }

  Draw draw(BitSource& bits) const override;
  Decision decide(std::uint64_t aux, std::span<const Answer> answers) const override;
  // Implemented for t = 1.
  std::optional<Acceptance> factored(const ProductStrategy& f) const override;

 private:
  ConstraintSystem cs_;
  int t_;
  RepeatedAlmss inner_;
};

class Strategy;

struct ExactOptions {
  // Largest randomness space enumerated outcome by outcome.
  std::uint64_t budget = std::uint64_t{1} << 22;
  // Use the verifier's closed form for product strategies even when the
  // space is enumerable.
  bool prefer_factored = false;
};

// Checks dimension, repetition and locality of `f` against the verifier.
void check_compatible(const Strategy& f, const VerifierSpec& spec);

// sum_r Pr[r] Pr[accept | r]. Mixtures of deterministic proofs are evaluated
// outcome by outcome; otherwise outcomes that induce the same roles and aux
// are grouped, and F is asked each distinct set once. Product strategies
// beyond the budget use the verifier's closed form when it has one;
// otherwise throws ScopeExceeded.
Acceptance acceptance_exact(const Strategy& f, const VerifierSpec& spec, const ExactOptions& options = {});

struct McEstimate {
  double estimate = 0;
  double half_width = 0;  // 99% Hoeffding
  std::vector<double> sub_tests;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Mean over sampled verifier randomness of the exact Pr[accept | r]. Draws
// come in fixed-size chunks with per-chunk seeds, so the result does not
// depend on `threads` (0: hardware concurrency).
McEstimate acceptance_mc(const Strategy& f, const VerifierSpec& spec, std::uint64_t samples,
                         std::uint64_t seed, int threads = 0);

double hoeffding_half_width(std::uint64_t samples);

// Pr over uniform x, y in {0,1}^dim of f(x) + f(y) = f(x + y), for a
// function given by its truth table (index = word of the point).
Rational blr_pass_probability(const std::vector<bool>& table, int dim);
// sum_r (-1)^(f(r) + f(r + q)) for every q.
std::vector<std::int64_t> autocorrelation(const std::vector<bool>& table, int dim);

}  // namespace nspcp
