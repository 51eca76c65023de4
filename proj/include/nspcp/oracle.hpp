#pragma once

// Brute-force reference computations. Everything here is written against
// the GF(2) core and GMP only: strategies are plain functions returning
// laws, verifiers are explicit lists of weighted checks, and each wrapper
// is re-derived by enumerating all of its internal randomness.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "nspcp/gf2.hpp"

namespace nspcp::oracle {

using Q = mpq_class;

// Joint law of the answers to a list of distinct queries, keyed by the
// answers in list order.
using Law = std::map<std::vector<Answer>, Q>;
using Base = std::function<Law(const std::vector<Query>&)>;

struct Scope {
  std::uint64_t budget = std::uint64_t{1} << 22;  // enumerated outcomes
};

// A deterministic proof as a function of the query.
Base deterministic(std::function<Answer(const Query&)> proof);
// Convex combination of deterministic proofs.
Base mixture(std::vector<std::pair<Q, std::function<Answer(const Query&)>>> parts);

// One verifier outcome: its probability, the logical queries it asks and
// the accept predicate on one answer per query.
struct Check {
  Q weight;
  std::vector<Query> roles;
  std::function<bool(std::span<const Answer>)> accept;
};

struct RawConstraint {
  BitMatrix p;
  bool c;
};

// t independent ALMSS tests packed coordinate-wise (t = 1 is the plain
// 4-query test). Queries are row-major flattened N x N matrices.
std::vector<Check> almss_checks(int wires, const std::vector<RawConstraint>& constraints, int t,
                                const Scope& scope = {});
// X, Y uniform in ({0,1}^dim)^r; accept iff F(X) + F(Y) = F(X + Y).
std::vector<Check> linearity_checks(int dim, int r);
// x, y uniform in {0,1}^dim; accept iff the answers differ.
std::vector<Check> anti_pair_checks(int dim);

Q acceptance(const std::vector<Check>& checks, const Base& f);

struct ClassicalMax {
  Q value;
  // Answer at each point of points(dim, t), in that order.
  std::vector<Answer> witness;
};

// All 2^(dim*t) points of ({0,1}^dim)^t, ordered by coordinates then bits.
std::vector<Query> points(int dim, int t);

// Maximum over every deterministic proof D^t -> {0,1}^t. Refuses beyond
// 2^16 proofs.
ClassicalMax classical_max_acceptance(const std::vector<Check>& checks, int dim, int t);

// Orbit-coupled permutation folding of a t-repeated base: each orbit under
// coordinate permutations draws one sigma; Q = rho(rep) uses
// pi_Q = rho^-1 o sigma, and is answered pi_Q^-1(F(pi_Q(Q))).
Law fold_law(const Base& base, int t, const std::vector<Query>& queries, const Scope& scope = {});
// Non-repeated query list, answered through one padded t-tuple of `base`.
Law flatten_law(const Base& base, int t, const std::vector<Query>& queries);
// Base is 2t-repeated; one (R, W) per distinct query.
Law self_correct_law(const Base& base, int t, const std::vector<Query>& queries, const Scope& scope = {});

// max over events E of |P(E) - P'(E)|, by listing every event on the union
// of the supports (at most 20 outcomes).
template <class Key>
Q tv_by_events(const std::map<Key, Q>& a, const std::map<Key, Q>& b);

// Maximum of c.x over {x >= 0, A x <= b} by enumerating every basis of
// tight constraints. For bounded toy programs with a handful of variables.
struct VertexMax {
  bool feasible = false;
  Q value;
  std::vector<Q> x;
};
VertexMax vertex_max(const std::vector<std::vector<Q>>& a, const std::vector<Q>& b, const std::vector<Q>& c);

template <class Key>
Q tv_by_events(const std::map<Key, Q>& a, const std::map<Key, Q>& b) {
  std::vector<Key> outcomes;
  for (const auto& [k, p] : a) outcomes.push_back(k);
  for (const auto& [k, p] : b) {
    if (!a.contains(k)) outcomes.push_back(k);
  }
  if (outcomes.size() > 20) throw std::length_error("event enumeration over more than 20 outcomes");
  auto mass = [](const std::map<Key, Q>& d, const Key& k) {
    auto it = d.find(k);
    return it == d.end() ? Q(0) : it->second;
  };
  Q best = 0;
  for (std::uint64_t e = 0; e < (std::uint64_t{1} << outcomes.size()); ++e) {
    Q gap = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if ((e >> i) & 1U) gap += mass(a, outcomes[i]) - mass(b, outcomes[i]);
    }
    if (abs(gap) > best) best = abs(gap);
  }
  return best;
}

}  // namespace nspcp::oracle
