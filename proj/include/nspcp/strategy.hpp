#pragma once

// Non-signaling strategies: oracles that map a query set S (|S| <= k) of
// t-repeated queries over {0,1}^dim to a distribution over answer
// assignments in ({0,1}^t)^S.

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nspcp/distribution.hpp"
#include "nspcp/gf2.hpp"
#include "nspcp/rational.hpp"

namespace nspcp {

using ProofFunction = std::function<Answer(const Query&)>;

// A finite convex combination of deterministic proofs.
struct WeightedProof {
  Rational weight;
  ProofFunction proof;
};
using ProofMixture = std::vector<WeightedProof>;

constexpr int kUnboundedLocality = std::numeric_limits<int>::max() / 4;

class Strategy {
 public:
  virtual ~Strategy() = default;

  int dim() const { return dim_; }
  int repetition() const { return repetition_; }
  int locality() const { return locality_; }

  // Checks that `s` is nonempty, of this strategy's shape and of size at
  // most locality(); then delegates.
  LocalDistribution answer(const QuerySet& s) const;

  // Whether the answer distributions satisfy the folding equality for every
  // permutation tuple.
  virtual bool permutation_folded() const { return false; }

  // Non-null when the strategy is a mixture of deterministic proofs.
  virtual const ProofMixture* proof_mixture() const { return nullptr; }

 protected:
  Strategy(int dim, int repetition, int locality);
  virtual LocalDistribution do_answer(const QuerySet& s) const = 0;

 private:
  int dim_;
  int repetition_;
  int locality_;
};

using StrategyPtr = std::shared_ptr<const Strategy>;

// Point distribution on the restriction of one total function.
class ClassicalStrategy : public Strategy {
 public:
  // `equivariant` declares f(pi(Q)) = pi(f(Q)) for all pi, Q.
  ClassicalStrategy(int dim, int repetition, ProofFunction f, bool equivariant = false,
                    int locality = kUnboundedLocality);

  Answer operator()(const Query& q) const { return f_(q) & low_mask(repetition()); }
  bool permutation_folded() const override { return equivariant_; }
  const ProofMixture* proof_mixture() const override { return &self_; }

 protected:
  LocalDistribution do_answer(const QuerySet& s) const override;

 private:
  ProofFunction f_;
  bool equivariant_;
  ProofMixture self_;
};

// Coordinate-wise repetition of a non-repeated proof: F(Q)_j = base(Q_j).
class ProductStrategy : public ClassicalStrategy {
 public:
  using Base = std::function<bool(const BitVector&)>;
  ProductStrategy(int dim, int repetition, Base base, int locality = kUnboundedLocality);

  const Base& base() const { return base_; }

 private:
  Base base_;
};

class MixtureStrategy : public Strategy {
 public:
  // Weights must be positive and sum to 1; components share one shape.
  explicit MixtureStrategy(std::vector<std::pair<Rational, StrategyPtr>> components);

  const std::vector<std::pair<Rational, StrategyPtr>>& components() const { return components_; }
  bool permutation_folded() const override { return folded_; }
  const ProofMixture* proof_mixture() const override {
    return deterministic_ ? &flat_ : nullptr;
  }

 protected:
  LocalDistribution do_answer(const QuerySet& s) const override;

 private:
  std::vector<std::pair<Rational, StrategyPtr>> components_;
  bool folded_ = true;
  bool deterministic_ = true;
  ProofMixture flat_;
};

// Every answer bit an independent fair coin.
class IndependentUniformStrategy : public Strategy {
 public:
  IndependentUniformStrategy(int dim, int repetition, int locality);

 protected:
  LocalDistribution do_answer(const QuerySet& s) const override;
};

enum class StrategyMode { Exact, Almost };

// An explicit family {F_S} on a finite list of query sets. Sets not in the
// table are answered by marginalizing the first (canonical order) table
// set that contains them.
class TableStrategy : public Strategy {
 public:
  TableStrategy(int dim, int repetition, int locality, std::map<QuerySet, LocalDistribution> table,
                StrategyMode mode = StrategyMode::Exact, Rational epsilon = 0,
                bool folded = false);

  const std::map<QuerySet, LocalDistribution>& table() const { return table_; }
  StrategyMode mode() const { return mode_; }
  const Rational& epsilon() const { return epsilon_; }
  bool permutation_folded() const override { return folded_; }

 protected:
  LocalDistribution do_answer(const QuerySet& s) const override;

 private:
  std::map<QuerySet, LocalDistribution> table_;
  StrategyMode mode_;
  Rational epsilon_;
  bool folded_;
};

// Freeze a strategy's answers on `family` into a table.
TableStrategy tabulate(const Strategy& f, const std::vector<QuerySet>& family,
                       StrategyMode mode = StrategyMode::Exact, Rational epsilon = 0);

// Convenience constructors.
StrategyPtr make_classical(int dim, int repetition, ProofFunction f, bool equivariant = false);
StrategyPtr make_product(int dim, int repetition, ProductStrategy::Base base);
StrategyPtr make_mixture(std::vector<std::pair<Rational, StrategyPtr>> components);

}  // namespace nspcp
