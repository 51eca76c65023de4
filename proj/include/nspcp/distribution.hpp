#pragma once

// Exact local distributions F_S over answer assignments for one query set.
//
// An assignment packs one answer per query of the set, in canonical set
// order: the answer of item i occupies bits [i*b, (i+1)*b) where b is the
// answer width (the repetition t). So set_size * b <= 64.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "nspcp/gf2.hpp"
#include "nspcp/rational.hpp"

namespace nspcp {

using Assignment = std::uint64_t;

Assignment pack(std::span<const Answer> answers, int answer_bits);
inline Answer unpack(Assignment a, int item, int answer_bits) {
  return static_cast<Answer>((a >> (item * answer_bits)) & low_mask(answer_bits));
}

class LocalDistribution {
 public:
  LocalDistribution() = default;
  // Drops zero masses. Throws InvalidInput on negative masses, masses that
  // do not sum to exactly 1, or assignments wider than the shape allows.
  LocalDistribution(int set_size, int answer_bits, std::map<Assignment, Rational> masses,
                    std::optional<std::uint64_t> samples = std::nullopt);

  static LocalDistribution point(int set_size, int answer_bits, Assignment a);

  int set_size() const { return set_size_; }
  int answer_bits() const { return answer_bits_; }
  const std::map<Assignment, Rational>& masses() const { return masses_; }
  Rational probability(Assignment a) const;

  // Set when the masses are an empirical estimate from this many samples.
  std::optional<std::uint64_t> samples() const { return samples_; }

  template <class Pred>
  Rational probability_if(Pred&& pred) const {
    Rational p = 0;
    for (const auto& [a, m] : masses_) {
      if (pred(a)) p += m;
    }
    return p;
  }

  friend bool operator==(const LocalDistribution& a, const LocalDistribution& b) {
    return a.set_size_ == b.set_size_ && a.answer_bits_ == b.answer_bits_ && a.masses_ == b.masses_;
  }

 private:
  int set_size_ = 0;
  int answer_bits_ = 0;
  std::map<Assignment, Rational> masses_;
  std::optional<std::uint64_t> samples_;
};

// Accumulates weighted assignments; build() requires total mass exactly 1,
// build_normalized() divides by the total.
class DistributionBuilder {
 public:
  DistributionBuilder(int set_size, int answer_bits) : set_size_(set_size), answer_bits_(answer_bits) {}

  void add(Assignment a, const Rational& weight);
  void add(const LocalDistribution& d, const Rational& weight);
  const Rational& total() const { return total_; }

  LocalDistribution build(std::optional<std::uint64_t> samples = std::nullopt) const;
  LocalDistribution build_normalized(std::optional<std::uint64_t> samples = std::nullopt) const;

 private:
  int set_size_;
  int answer_bits_;
  Rational total_ = 0;
  std::map<Assignment, Rational> masses_;
};

// Pushforward onto the items at `positions` (output item j is input item
// positions[j]).
LocalDistribution marginalize(const LocalDistribution& d, std::span<const int> positions);
// Restriction from the distribution of `from` to its subset `to`.
LocalDistribution marginalize(const LocalDistribution& d, const QuerySet& from, const QuerySet& to);

// Half the L1 distance; equals the largest probability gap over events.
Rational tv_distance(const LocalDistribution& a, const LocalDistribution& b);

}  // namespace nspcp
