#include "nspcp/distribution.hpp"

#include <string>

#include "nspcp/errors.hpp"

namespace nspcp {
namespace {

void check_shape(int set_size, int answer_bits) {
  if (set_size < 0 || answer_bits < 1 || answer_bits > kMaxRepetition ||
      set_size * answer_bits > 64) {
    throw InvalidInput("distribution shape " + std::to_string(set_size) + " x " +
                       std::to_string(answer_bits) + " bits does not fit an assignment word");
  }
}

std::uint64_t assignment_limit(int set_size, int answer_bits) {
  const int bits = set_size * answer_bits;
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

}  // namespace

Assignment pack(std::span<const Answer> answers, int answer_bits) {
  Assignment a = 0;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    a |= static_cast<Assignment>(answers[i] & low_mask(answer_bits)) << (i * answer_bits);
  }
  return a;
}

LocalDistribution::LocalDistribution(int set_size, int answer_bits,
                                     std::map<Assignment, Rational> masses,
                                     std::optional<std::uint64_t> samples)
    : set_size_(set_size), answer_bits_(answer_bits), samples_(samples) {
  check_shape(set_size, answer_bits);
  const std::uint64_t limit = assignment_limit(set_size, answer_bits);
  Rational total = 0;
  for (auto& [a, m] : masses) {
    if (a > limit) throw InvalidInput("assignment outside the answer space");
    if (m < 0) throw InvalidInput("negative probability " + to_string(m));
    if (m == 0) continue;
    total += m;
    masses_.emplace(a, std::move(m));
  }
  if (total != 1) throw InvalidInput("probabilities sum to " + to_string(total) + ", not 1");
}

LocalDistribution LocalDistribution::point(int set_size, int answer_bits, Assignment a) {
  return LocalDistribution(set_size, answer_bits, {{a, Rational(1)}});
}

Rational LocalDistribution::probability(Assignment a) const {
  auto it = masses_.find(a);
  return it == masses_.end() ? Rational(0) : it->second;
}

void DistributionBuilder::add(Assignment a, const Rational& weight) {
  if (weight == 0) return;
  masses_[a] += weight;
  total_ += weight;
}

void DistributionBuilder::add(const LocalDistribution& d, const Rational& weight) {
  if (d.set_size() != set_size_ || d.answer_bits() != answer_bits_) {
    throw InvalidInput("mixing distributions of different shape");
  }
  for (const auto& [a, m] : d.masses()) add(a, m * weight);
}

LocalDistribution DistributionBuilder::build(std::optional<std::uint64_t> samples) const {
  return LocalDistribution(set_size_, answer_bits_, masses_, samples);
}

LocalDistribution DistributionBuilder::build_normalized(std::optional<std::uint64_t> samples) const {
  if (total_ <= 0) throw InvalidInput("normalizing an empty distribution");
  std::map<Assignment, Rational> scaled;
  for (const auto& [a, m] : masses_) scaled.emplace(a, m / total_);
  return LocalDistribution(set_size_, answer_bits_, std::move(scaled), samples);
}

LocalDistribution marginalize(const LocalDistribution& d, std::span<const int> positions) {
  const int b = d.answer_bits();
  for (int p : positions) {
    if (p < 0 || p >= d.set_size()) throw InvalidInput("marginal position outside the set");
  }
  DistributionBuilder out(static_cast<int>(positions.size()), b);
  for (const auto& [a, m] : d.masses()) {
    Assignment r = 0;
    for (std::size_t j = 0; j < positions.size(); ++j) {
      r |= static_cast<Assignment>(unpack(a, positions[j], b)) << (j * b);
    }
    out.add(r, m);
  }
  return out.build(d.samples());
}

LocalDistribution marginalize(const LocalDistribution& d, const QuerySet& from, const QuerySet& to) {
  if (from.size() != d.set_size()) throw InvalidInput("distribution does not match its query set");
  std::vector<int> positions;
  positions.reserve(to.size());
  for (const auto& q : to) {
    auto idx = from.index_of(q);
    if (!idx) throw InvalidInput("marginal set is not contained in " + from.to_string());
    positions.push_back(*idx);
  }
  return marginalize(d, positions);
}

Rational tv_distance(const LocalDistribution& a, const LocalDistribution& b) {
  if (a.set_size() != b.set_size() || a.answer_bits() != b.answer_bits()) {
    throw InvalidInput("total variation between distributions of different shape");
  }
  Rational l1 = 0;
  auto ia = a.masses().begin();
  auto ib = b.masses().begin();
  while (ia != a.masses().end() || ib != b.masses().end()) {
    if (ib == b.masses().end() || (ia != a.masses().end() && ia->first < ib->first)) {
      l1 += ia->second;
      ++ia;
    } else if (ia == a.masses().end() || ib->first < ia->first) {
      l1 += ib->second;
      ++ib;
    } else {
      l1 += abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return l1 / 2;
}

}  // namespace nspcp
