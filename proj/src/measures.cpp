#include "nspcp/measures.hpp"

#include <map>

#include "nspcp/errors.hpp"

namespace nspcp {
namespace {

// Binomial sum with saturation.
std::uint64_t family_size(std::uint64_t points, int k, std::uint64_t cap) {
  std::uint64_t total = 0;
  std::uint64_t c = 1;
  for (int s = 1; s <= k && static_cast<std::uint64_t>(s) <= points; ++s) {
    // c = C(points, s), computed incrementally; exact for desk-scale sizes.
    const unsigned __int128 next = static_cast<unsigned __int128>(c) * (points - s + 1) / s;
    if (next > cap) return cap + 1;
    c = static_cast<std::uint64_t>(next);
    total += c;
    if (total > cap) return cap + 1;
  }
  return total;
}

// Every nonempty proper-or-full subset of `s`.
std::vector<QuerySet> nonempty_subsets(const QuerySet& s) {
  std::vector<QuerySet> out;
  const int n = s.size();
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
    std::vector<Query> qs;
    for (int i = 0; i < n; ++i) {
      if ((m >> i) & 1U) qs.push_back(s[i]);
    }
    out.emplace_back(std::move(qs));
  }
  return out;
}

}  // namespace

std::vector<QuerySet> complete_family(int dim, int repetition, int k, std::uint64_t budget) {
  const int bits = dim * repetition;
  if (bits > 24) throw ScopeExceeded("domain of 2^" + std::to_string(bits) + " points exceeds 2^24");
  const std::uint64_t count = family_size(std::uint64_t{1} << bits, k, budget);
  if (count > budget) {
    throw ScopeExceeded("complete family of sets of size <= " + std::to_string(k) + " exceeds " +
                        std::to_string(budget) + " sets");
  }
  const auto points = all_points(dim, repetition);
  return all_sets(points, k);
}

NsDefect ns_defect(const Strategy& f, const std::vector<QuerySet>& family) {
  // Marginals of every set onto every nonempty subset, grouped by subset.
  std::map<QuerySet, std::vector<std::pair<const QuerySet*, LocalDistribution>>> by_part;
  for (const auto& s : family) {
    const LocalDistribution d = f.answer(s);
    for (auto& part : nonempty_subsets(s)) {
      by_part[part].emplace_back(&s, marginalize(d, s, part));
    }
  }
  NsDefect best;
  for (const auto& [part, margins] : by_part) {
    for (std::size_t i = 0; i < margins.size(); ++i) {
      for (std::size_t j = i + 1; j < margins.size(); ++j) {
        const Rational gap = tv_distance(margins[i].second, margins[j].second);
        if (gap > best.epsilon) {
          best.epsilon = gap;
          best.first = *margins[i].first;
          best.second = *margins[j].first;
        }
      }
    }
  }
  return best;
}

NsDefect ns_defect(const Strategy& f, int k) {
  if (k > f.locality()) throw InvalidInput("defect scope above the strategy's locality");
  return ns_defect(f, complete_family(f.dim(), f.repetition(), k));
}

Rational distance_l(const Strategy& a, const Strategy& b, const std::vector<QuerySet>& family) {
  if (a.dim() != b.dim() || a.repetition() != b.repetition()) {
    throw InvalidInput("distance between strategies over different domains");
  }
  Rational best = 0;
  for (const auto& s : family) {
    const Rational d = tv_distance(a.answer(s), b.answer(s));
    if (d > best) best = d;
  }
  return best;
}

Rational distance_l(const Strategy& a, const Strategy& b, int l) {
  if (l > a.locality() || l > b.locality()) throw InvalidInput("distance scope above a locality");
  return distance_l(a, b, complete_family(a.dim(), a.repetition(), l));
}

Rational linearity_probability(const Strategy& f, const Query& x, const Query& y) {
  const Query z = x + y;
  const QuerySet s({x, y, z});
  const int ix = *s.index_of(x);
  const int iy = *s.index_of(y);
  const int iz = *s.index_of(z);
  const int b = f.repetition();
  return f.answer(s).probability_if([&](Assignment a) {
    return (unpack(a, ix, b) ^ unpack(a, iy, b) ^ unpack(a, iz, b)) == 0;
  });
}

Rational consistency_probability(const Strategy& f, const Query& q, const Query& q2) {
  if (q.repetition() != q2.repetition()) throw InvalidInput("consistency of queries of different repetition");
  Answer agree = 0;
  for (int j = 0; j < q.repetition(); ++j) {
    if (q[j] == q2[j]) agree |= Answer{1} << j;
  }
  if (q == q2) return 1;
  const QuerySet s({q, q2});
  const int i1 = *s.index_of(q);
  const int i2 = *s.index_of(q2);
  const int b = f.repetition();
  return f.answer(s).probability_if([&](Assignment a) {
    return ((unpack(a, i1, b) ^ unpack(a, i2, b)) & agree) == 0;
  });
}

Rational zero_on_zeros_probability(const Strategy& f, const Query& q) {
  Answer zeros = 0;
  for (int j = 0; j < q.repetition(); ++j) {
    if (q[j].is_zero()) zeros |= Answer{1} << j;
  }
  const int b = f.repetition();
  return f.answer(QuerySet({q})).probability_if([&](Assignment a) {
    return (unpack(a, 0, b) & zeros) == 0;
  });
}

Extremum min_linearity(const Strategy& f) {
  const auto points = all_points(f.dim(), f.repetition());
  Extremum best{2, {}};
  for (const auto& x : points) {
    for (const auto& y : points) {
      if (y < x) continue;  // symmetric in (X, Y)
      Rational p = linearity_probability(f, x, y);
      if (p < best.value) best = {std::move(p), {x, y}};
    }
  }
  return best;
}

Extremum min_consistency(const Strategy& f) {
  const auto points = all_points(f.dim(), f.repetition());
  Extremum best{2, {}};
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      Rational p = consistency_probability(f, points[i], points[j]);
      if (p < best.value) best = {std::move(p), {points[i], points[j]}};
    }
  }
  if (best.witness.empty()) best.value = 1;
  return best;
}

Extremum min_zero_on_zeros(const Strategy& f) {
  Extremum best{2, {}};
  for (const auto& q : all_points(f.dim(), f.repetition())) {
    Rational p = zero_on_zeros_probability(f, q);
    if (p < best.value) best = {std::move(p), {q}};
  }
  return best;
}

}  // namespace nspcp
