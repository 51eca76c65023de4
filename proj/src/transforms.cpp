#include "nspcp/transforms.hpp"

#include <algorithm>
#include <unordered_map>

#include "nspcp/errors.hpp"
#include "nspcp/random.hpp"

namespace nspcp {
namespace {

using ItemLaw = std::map<Answer, Rational>;

// Joint law of independent per-item answers.
LocalDistribution product_distribution(const std::vector<ItemLaw>& items, int answer_bits) {
  std::map<Assignment, Rational> joint{{0, Rational(1)}};
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::map<Assignment, Rational> next;
    for (const auto& [a, p] : joint) {
      for (const auto& [ans, q] : items[i]) {
        next[a | (static_cast<Assignment>(ans) << (i * answer_bits))] += p * q;
      }
    }
    joint = std::move(next);
  }
  return LocalDistribution(static_cast<int>(items.size()), answer_bits, std::move(joint));
}

// Saturating outcome count radix^s.
std::uint64_t outcome_count(std::uint64_t radix, int s, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (int i = 0; i < s; ++i) {
    if (total > cap / radix) return cap + 1;
    total *= radix;
  }
  return total;
}

// Caches base answers across the outcomes of one wrapper call.
class BaseCache {
 public:
  explicit BaseCache(const Strategy& base) : base_(base) {}
  const LocalDistribution& operator()(const QuerySet& s) {
    auto it = cache_.find(s);
    if (it == cache_.end()) it = cache_.emplace(s, base_.answer(s)).first;
    return it->second;
  }

 private:
  const Strategy& base_;
  std::unordered_map<QuerySet, LocalDistribution, QuerySetHash> cache_;
};

// Adds the law of the wrapped answers for one outcome of the internal
// randomness. The base is asked the set of `asked`; `combine(i, answer_of)`
// builds item i's answer, where answer_of(j) is the base answer to asked[j].
template <class Combine>
void add_outcome(DistributionBuilder& out, BaseCache& cache, const std::vector<Query>& asked,
                 int items, int answer_bits, const Rational& weight, Combine&& combine) {
  const QuerySet set(asked);
  const LocalDistribution& d = cache(set);
  std::vector<int> pos(asked.size());
  for (std::size_t j = 0; j < asked.size(); ++j) pos[j] = *set.index_of(asked[j]);
  const int base_bits = d.answer_bits();
  for (const auto& [a, m] : d.masses()) {
    Assignment r = 0;
    for (int i = 0; i < items; ++i) {
      const Answer v = combine(i, [&](int j) { return unpack(a, pos[j], base_bits); });
      r |= static_cast<Assignment>(v) << (i * answer_bits);
    }
    out.add(r, m * weight);
  }
}

}  // namespace

// ------------------------------------------------------------------ folding

FoldedStrategy::FoldedStrategy(StrategyPtr base, WrapperOptions options)
    : Strategy(base->dim(), base->repetition(), base->locality()),
      base_(std::move(base)),
      options_(options) {}

LocalDistribution FoldedStrategy::do_answer(const QuerySet& s) const {
  const int t = repetition();
  const auto perms = Permutation::all(t);
  std::vector<Permutation> inverses;
  for (const auto& p : perms) inverses.push_back(p.inverse());
  const std::uint64_t radix = perms.size();

  // Queries of one orbit share a representative (sorted coordinates) and one
  // permutation; Q = rho(rep) is answered by rho applied to the rep's answer.
  std::vector<Query> reps;
  std::vector<int> orbit_of(s.size());
  std::vector<Permutation> rho;
  for (int i = 0; i < s.size(); ++i) {
    std::vector<BitVector> sorted(s[i].coords().begin(), s[i].coords().end());
    std::sort(sorted.begin(), sorted.end());
    const Query rep(sorted);
    auto it = std::find(reps.begin(), reps.end(), rep);
    orbit_of[i] = static_cast<int>(it - reps.begin());
    if (it == reps.end()) reps.push_back(rep);
    std::vector<int> image(t);
    std::vector<bool> used(t, false);
    for (int j = 0; j < t; ++j) {
      for (int c = 0; c < t; ++c) {
        if (!used[c] && sorted[c] == s[i][j]) {
          image[j] = c;
          used[c] = true;
          break;
        }
      }
    }
    rho.emplace_back(std::move(image));
  }
  const int orbits = static_cast<int>(reps.size());

  const std::uint64_t outcomes = outcome_count(radix, orbits, options_.exact_budget);
  const bool exact = outcomes <= options_.exact_budget;
  const std::uint64_t rounds = exact ? outcomes : options_.samples;
  Rng rng(derive_seed(options_.seed, QuerySetHash{}(s)));
  std::uniform_int_distribution<std::uint64_t> pick(0, radix - 1);

  DistributionBuilder out(s.size(), t);
  BaseCache cache(*base_);
  const Rational weight(1, rounds);
  std::vector<std::size_t> choice(orbits);
  std::vector<Query> asked(orbits);
  for (std::uint64_t r = 0; r < rounds; ++r) {
    std::uint64_t rest = r;
    for (int c = 0; c < orbits; ++c) {
      if (exact) {
        choice[c] = rest % radix;
        rest /= radix;
      } else {
        choice[c] = pick(rng);
      }
      asked[c] = perms[choice[c]].apply(reps[c]);
    }
    add_outcome(out, cache, asked, s.size(), t, weight, [&](int i, auto&& answer_of) {
      const int c = orbit_of[i];
      return rho[i].apply(inverses[choice[c]].apply(answer_of(c)));
    });
  }
  return exact ? out.build() : out.build(rounds);
}

// --------------------------------------------------------------- flattening

FlattenedStrategy::FlattenedStrategy(StrategyPtr base, WrapperOptions options)
    : Strategy(base->dim(), 1, base->repetition()),
      base_(base->permutation_folded() ? std::move(base)
                                       : std::make_shared<FoldedStrategy>(std::move(base), options)) {
  if (base_->locality() < 1) throw InvalidInput("flattening needs locality >= 1");
}

LocalDistribution FlattenedStrategy::do_answer(const QuerySet& s) const {
  const int t = base_->repetition();
  std::vector<BitVector> coords;
  coords.reserve(t);
  for (const auto& q : s) coords.push_back(q[0]);
  while (static_cast<int>(coords.size()) < t) coords.push_back(coords.back());
  const LocalDistribution d = base_->answer(QuerySet({Query(std::move(coords))}));
  DistributionBuilder out(s.size(), 1);
  for (const auto& [a, m] : d.masses()) out.add(a & low_mask(s.size()), m);
  return out.build(d.samples());
}

// ----------------------------------------------------------- self-correction

SelfCorrectedStrategy::SelfCorrectedStrategy(StrategyPtr base, int base_locality,
                                             WrapperOptions options)
    : Strategy(base->dim(), std::max(1, base->repetition() / 2),
               std::max(1, std::min(base_locality, base->locality()) / 2)),
      base_(std::move(base)),
      base_locality_(std::min(base_locality, base_->locality())),
      options_(options) {
  if (base_->repetition() % 2 != 0) {
    throw InvalidInput("self-correction needs an even (2t) repetition, got " +
                       std::to_string(base_->repetition()));
  }
  if (base_locality_ < 2) throw InvalidInput("self-correction needs base locality >= 2");
}

LocalDistribution SelfCorrectedStrategy::do_answer(const QuerySet& s) const {
  const int t = repetition();
  const int n = dim();
  const int per_item_bits = 2 * t * n;
  if (per_item_bits > 40) {
    throw ScopeExceeded("self-correction randomness of 2^" + std::to_string(per_item_bits) +
                        " per query exceeds 2^40");
  }
  const std::uint64_t radix = std::uint64_t{1} << per_item_bits;
  const Answer mask = low_mask(t);

  auto split = [&](std::uint64_t bits) {
    std::vector<BitVector> r(t), w(t);
    for (int j = 0; j < t; ++j) {
      r[j] = BitVector::from_word(bits >> (j * n), n);
      w[j] = BitVector::from_word(bits >> ((t + j) * n), n);
    }
    return std::pair<Query, Query>(Query(std::move(r)), Query(std::move(w)));
  };

  const ProofMixture* mixture = base_->proof_mixture();
  if (mixture != nullptr && radix <= options_.exact_budget) {
    DistributionBuilder out(s.size(), t);
    for (const auto& [weight, f] : *mixture) {
      std::vector<ItemLaw> items;
      for (const auto& q : s) {
        std::map<Answer, std::uint64_t> counts;
        for (std::uint64_t b = 0; b < radix; ++b) {
          auto [r, w] = split(b);
          ++counts[(f(concat(r, w)) ^ f(concat(q + r, w))) & mask];
        }
        ItemLaw law;
        for (const auto& [a, c] : counts) law.emplace(a, ratio(c, radix));
        items.push_back(std::move(law));
      }
      out.add(product_distribution(items, t), weight);
    }
    return out.build();
  }

  const std::uint64_t outcomes = outcome_count(radix, s.size(), options_.exact_budget);
  const bool exact = outcomes <= options_.exact_budget;
  const std::uint64_t rounds = exact ? outcomes : options_.samples;
  Rng rng(derive_seed(options_.seed, QuerySetHash{}(s)));
  std::uniform_int_distribution<std::uint64_t> pick(0, radix - 1);

  DistributionBuilder out(s.size(), t);
  BaseCache cache(*base_);
  const Rational weight(1, rounds);
  std::vector<Query> asked(2 * s.size());
  for (std::uint64_t o = 0; o < rounds; ++o) {
    std::uint64_t rest = o;
    for (int i = 0; i < s.size(); ++i) {
      std::uint64_t bits;
      if (exact) {
        bits = rest % radix;
        rest /= radix;
      } else {
        bits = pick(rng);
      }
      auto [r, w] = split(bits);
      asked[2 * i] = concat(r, w);
      asked[2 * i + 1] = concat(s[i] + r, w);
    }
    add_outcome(out, cache, asked, s.size(), t, weight, [&](int i, auto&& answer_of) {
      return (answer_of(2 * i) ^ answer_of(2 * i + 1)) & mask;
    });
  }
  return exact ? out.build() : out.build(rounds);
}

StrategyPtr fold(StrategyPtr f, WrapperOptions options) {
  return std::make_shared<FoldedStrategy>(std::move(f), options);
}

StrategyPtr flatten(StrategyPtr f, WrapperOptions options) {
  return std::make_shared<FlattenedStrategy>(std::move(f), options);
}

StrategyPtr self_correct(StrategyPtr f, int k, WrapperOptions options) {
  return std::make_shared<SelfCorrectedStrategy>(std::move(f), k, options);
}

}  // namespace nspcp
