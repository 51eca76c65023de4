#pragma once

// Strategy wrappers: permutation folding, flattening and self-correction.
//
// Each wrapper answers a query set with the exact mixture over its internal
// randomness when that space has at most `exact_budget` outcomes, and with
// an empirical mixture over `samples` seeded draws otherwise. Sampled
// distributions carry their sample count.

#include <cstdint>

#include "nspcp/strategy.hpp"

namespace nspcp {

struct WrapperOptions {
  std::uint64_t exact_budget = std::uint64_t{1} << 20;
  std::uint64_t samples = std::uint64_t{1} << 14;
  std::uint64_t seed = 0;
};

// Q -> pi^-1(F(pi(Q))) with a uniform pi. Queries of the set that are
// coordinate permutations of each other share one draw: the base is asked
// once per orbit, at pi(rep) for the sorted representative rep, and
// Q = rho(rep) is answered by rho(pi^-1(F(pi(rep)))). Distinct orbits draw
// independently.
class FoldedStrategy : public Strategy {
 public:
  FoldedStrategy(StrategyPtr base, WrapperOptions options = {});

  const StrategyPtr& base() const { return base_; }
  bool permutation_folded() const override { return true; }

 protected:
  LocalDistribution do_answer(const QuerySet& s) const override;

 private:
  StrategyPtr base_;
  WrapperOptions options_;
};

// Non-repeated strategy of locality t: the set {q_1 < ... < q_s} is asked
// as the single query (q_1, ..., q_s, q_s, ..., q_s) of the folded base,
// and the first s answer bits are returned.
class FlattenedStrategy : public Strategy {
 public:
  FlattenedStrategy(StrategyPtr base, WrapperOptions options = {});

  const StrategyPtr& folded_base() const { return base_; }

 protected:
  LocalDistribution do_answer(const QuerySet& s) const override;

 private:
  StrategyPtr base_;
};

// t-repeated strategy from a 2t-repeated base: each query Q_i of the set
// draws its own uniform (R_i, W_i) in (D^t)^2, all 2s base queries
// [R_i; W_i], [Q_i + R_i; W_i] go out as one set, and the answer for Q_i is
// the first t bits of the sum of the two base answers.
class SelfCorrectedStrategy : public Strategy {
 public:
  // `base_locality` is the k the base is trusted at (at most its locality).
  SelfCorrectedStrategy(StrategyPtr base, int base_locality, WrapperOptions options = {});

  const StrategyPtr& base() const { return base_; }
  // The locality the correction guarantees are stated for, floor(k/2) - 5.
  int guaranteed_locality() const { return base_locality_ / 2 - 5; }
  bool permutation_folded() const override { return base_->permutation_folded(); }

 protected:
  LocalDistribution do_answer(const QuerySet& s) const override;

 private:
  StrategyPtr base_;
  int base_locality_;
  WrapperOptions options_;
};

StrategyPtr fold(StrategyPtr f, WrapperOptions options = {});
// Folds first unless `f` already reports permutation_folded().
StrategyPtr flatten(StrategyPtr f, WrapperOptions options = {});
StrategyPtr self_correct(StrategyPtr f, int k, WrapperOptions options = {});

}  // namespace nspcp
