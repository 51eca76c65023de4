#pragma once

// Exact measurements on strategies: non-signaling defect, the distance
// Delta_l, and the per-query linearity / consistency / zero-on-zeros
// probabilities.

#include <vector>

#include "nspcp/strategy.hpp"

namespace nspcp {

struct NsDefect {
  Rational epsilon = 0;
  // A pair of sets whose marginals on their intersection attain epsilon
  // (both empty when epsilon = 0).
  QuerySet first;
  QuerySet second;
};

// Every set of size 1..k over the full domain ({0,1}^dim)^t. Refuses when
// the family would have more than `budget` sets.
std::vector<QuerySet> complete_family(int dim, int repetition, int k,
                                      std::uint64_t budget = std::uint64_t{1} << 20);

// Largest total-variation gap between the marginals of two sets on their
// common part, over all pairs of sets in scope.
NsDefect ns_defect(const Strategy& f, const std::vector<QuerySet>& family);
NsDefect ns_defect(const Strategy& f, int k);

// max over sets S in scope of TV(F_S, F'_S).
Rational distance_l(const Strategy& a, const Strategy& b, const std::vector<QuerySet>& family);
Rational distance_l(const Strategy& a, const Strategy& b, int l);

// Pr[F(X) + F(Y) = F(X + Y)] in every coordinate, asking the set {X, Y, X+Y}.
Rational linearity_probability(const Strategy& f, const Query& x, const Query& y);
// Pr[F(Q)_j = F(Q')_j for every j with Q_j = Q'_j], asking {Q, Q'}.
Rational consistency_probability(const Strategy& f, const Query& q, const Query& q2);
// Pr[F(Q)_j = 0 for every j with Q_j = 0].
Rational zero_on_zeros_probability(const Strategy& f, const Query& q);

struct Extremum {
  Rational value;
  std::vector<Query> witness;
};

// Minima over the whole domain (pairs (X, Y), pairs (Q, Q'), points Q).
Extremum min_linearity(const Strategy& f);
Extremum min_consistency(const Strategy& f);
Extremum min_zero_on_zeros(const Strategy& f);

}  // namespace nspcp
