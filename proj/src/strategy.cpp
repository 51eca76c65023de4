#include "nspcp/strategy.hpp"

#include <algorithm>

#include "nspcp/errors.hpp"

namespace nspcp {
namespace {

int min_locality(const std::vector<std::pair<Rational, StrategyPtr>>& components) {
  int k = components.empty() ? 1 : kUnboundedLocality;
  for (const auto& c : components) k = std::min(k, c.second->locality());
  return k;
}

}  // namespace

Strategy::Strategy(int dim, int repetition, int locality)
    : dim_(dim), repetition_(repetition), locality_(locality) {
  if (dim < 1 || dim > BitVector::kMaxSize) throw InvalidInput("strategy domain dimension out of range");
  if (repetition < 1 || repetition > kMaxRepetition) {
    throw InvalidInput("strategy repetition out of range");
  }
  if (locality < 1) throw InvalidInput("strategy locality must be positive");
}

LocalDistribution Strategy::answer(const QuerySet& s) const {
  if (s.empty()) throw InvalidInput("empty query set");
  if (s.size() > locality_) {
    throw InvalidInput("query set of size " + std::to_string(s.size()) + " exceeds locality " +
                       std::to_string(locality_));
  }
  if (s.size() * repetition_ > 64) {
    throw ScopeExceeded("assignment of " + std::to_string(s.size() * repetition_) +
                        " answer bits exceeds the 64-bit assignment word");
  }
  for (const auto& q : s) {
    if (q.repetition() != repetition_ || q.dim() != dim_) {
      throw InvalidInput("query " + q.to_string() + " does not match the strategy's domain");
    }
  }
  return do_answer(s);
}

ClassicalStrategy::ClassicalStrategy(int dim, int repetition, ProofFunction f, bool equivariant,
                                     int locality)
    : Strategy(dim, repetition, locality), f_(std::move(f)), equivariant_(equivariant) {
  const Answer mask = low_mask(repetition);
  self_.push_back({Rational(1), [f = f_, mask](const Query& q) { return f(q) & mask; }});
}

LocalDistribution ClassicalStrategy::do_answer(const QuerySet& s) const {
  std::vector<Answer> answers;
  answers.reserve(s.size());
  for (const auto& q : s) answers.push_back((*this)(q));
  return LocalDistribution::point(s.size(), repetition(), pack(answers, repetition()));
}

ProductStrategy::ProductStrategy(int dim, int repetition, Base base, int locality)
    : ClassicalStrategy(
          dim, repetition,
          [base](const Query& q) {
            Answer a = 0;
            for (int j = 0; j < q.repetition(); ++j) a |= static_cast<Answer>(base(q[j])) << j;
            return a;
          },
          true, locality),
      base_(std::move(base)) {}

MixtureStrategy::MixtureStrategy(std::vector<std::pair<Rational, StrategyPtr>> components)
    : Strategy(components.empty() ? 1 : components.front().second->dim(),
               components.empty() ? 1 : components.front().second->repetition(),
               min_locality(components)),
      components_(std::move(components)) {
  if (components_.empty()) throw InvalidInput("mixture of no strategies");
  Rational total = 0;
  for (const auto& [w, f] : components_) {
    if (w <= 0) throw InvalidInput("mixture weight " + to_string(w) + " is not positive");
    if (f->dim() != dim() || f->repetition() != repetition()) {
      throw InvalidInput("mixture components of different shape");
    }
    total += w;
    folded_ = folded_ && f->permutation_folded();
    const ProofMixture* pm = f->proof_mixture();
    if (pm == nullptr) {
      deterministic_ = false;
    } else {
      for (const auto& p : *pm) flat_.push_back({w * p.weight, p.proof});
    }
  }
  if (total != 1) throw InvalidInput("mixture weights sum to " + to_string(total));
  if (!deterministic_) flat_.clear();
}

LocalDistribution MixtureStrategy::do_answer(const QuerySet& s) const {
  DistributionBuilder out(s.size(), repetition());
  for (const auto& [w, f] : components_) {
    if (s.size() > f->locality()) {
      throw InvalidInput("query set exceeds the locality of a mixture component");
    }
    out.add(f->answer(s), w);
  }
  return out.build();
}

IndependentUniformStrategy::IndependentUniformStrategy(int dim, int repetition, int locality)
    : Strategy(dim, repetition, locality) {}

LocalDistribution IndependentUniformStrategy::do_answer(const QuerySet& s) const {
  const int bits = s.size() * repetition();
  if (bits > 20) throw ScopeExceeded("uniform distribution over 2^" + std::to_string(bits) + " assignments exceeds 2^20");
  const std::uint64_t count = std::uint64_t{1} << bits;
  std::map<Assignment, Rational> masses;
  const Rational each(1, count);
  for (std::uint64_t a = 0; a < count; ++a) masses.emplace(a, each);
  return LocalDistribution(s.size(), repetition(), std::move(masses));
}

TableStrategy::TableStrategy(int dim, int repetition, int locality,
                             std::map<QuerySet, LocalDistribution> table, StrategyMode mode,
                             Rational epsilon, bool folded)
    : Strategy(dim, repetition, locality),
      table_(std::move(table)),
      mode_(mode),
      epsilon_(std::move(epsilon)),
      folded_(folded) {
  if (epsilon_ < 0) throw InvalidInput("negative epsilon");
  if (mode_ == StrategyMode::Exact && epsilon_ != 0) {
    throw InvalidInput("exact-mode table with nonzero epsilon");
  }
  for (const auto& [s, d] : table_) {
    if (s.empty() || s.size() > locality) throw InvalidInput("table set size outside 1..k");
    if (d.set_size() != s.size() || d.answer_bits() != repetition) {
      throw InvalidInput("table distribution does not match its set " + s.to_string());
    }
    for (const auto& q : s) {
      if (q.repetition() != repetition || q.dim() != dim) {
        throw InvalidInput("table set " + s.to_string() + " does not match the domain");
      }
    }
  }
}

LocalDistribution TableStrategy::do_answer(const QuerySet& s) const {
  if (auto it = table_.find(s); it != table_.end()) return it->second;
  for (const auto& [t, d] : table_) {
    if (t.size() > s.size() && s.is_subset_of(t)) return marginalize(d, t, s);
  }
  throw InvalidInput("query set " + s.to_string() + " is outside the table's family");
}

TableStrategy tabulate(const Strategy& f, const std::vector<QuerySet>& family, StrategyMode mode,
                       Rational epsilon) {
  std::map<QuerySet, LocalDistribution> table;
  int k = 1;
  for (const auto& s : family) {
    table.emplace(s, f.answer(s));
    k = std::max(k, s.size());
  }
  return TableStrategy(f.dim(), f.repetition(), k, std::move(table), mode, std::move(epsilon),
                       f.permutation_folded());
}

StrategyPtr make_classical(int dim, int repetition, ProofFunction f, bool equivariant) {
  return std::make_shared<ClassicalStrategy>(dim, repetition, std::move(f), equivariant);
}

StrategyPtr make_product(int dim, int repetition, ProductStrategy::Base base) {
  return std::make_shared<ProductStrategy>(dim, repetition, std::move(base));
}

StrategyPtr make_mixture(std::vector<std::pair<Rational, StrategyPtr>> components) {
  return std::make_shared<MixtureStrategy>(std::move(components));
}

}  // namespace nspcp
