#pragma once

// Sherali-Adams programs: one variable per (query set, assignment), with
// normalization, marginal consistency (exact) or pairwise half-L1 <= eps
// (noisy), and optional side constraints that pin assignments to zero.

#include <functional>
#include <map>
#include <vector>

#include "nspcp/lp.hpp"
#include "nspcp/strategy.hpp"
#include "nspcp/verifier.hpp"

namespace nspcp {

enum class PolytopeMode { Exact, Noisy };

// Whether an assignment of a set may carry mass. Rejected assignments get
// no variable, which is the same as pinning them to probability 0.
using AssignmentFilter = std::function<bool(const QuerySet&, Assignment)>;

// F(X) + F(Y) = F(X + Y) with probability 1 for X, Y, X + Y in the set.
AssignmentFilter linearity_filter(int repetition);
// F(q) = value with probability 1 for sets containing q.
AssignmentFilter pin_filter(Query q, Answer value);
AssignmentFilter all_of(std::vector<AssignmentFilter> filters);

struct SaOptions {
  PolytopeMode mode = PolytopeMode::Exact;
  Rational epsilon = 0;
  AssignmentFilter allowed;
};

// Every set of size min(k, |D^t|) over the domain: the maximal sets of the
// complete size-<=k family. Refuses beyond `budget` sets.
std::vector<QuerySet> maximal_complete_family(int dim, int repetition, int k,
                                              std::uint64_t budget = std::uint64_t{1} << 16);
// Sorted, with sets contained in another member removed.
std::vector<QuerySet> maximal_sets(std::vector<QuerySet> sets);

class SaProgram {
 public:
  LinearProgram lp;
  int dim = 0;
  int repetition = 0;
  int k = 0;
  PolytopeMode mode = PolytopeMode::Exact;
  Rational epsilon = 0;
  // Sorted maximal sets.
  std::vector<QuerySet> family;
  // Per family set: (assignment, variable) for each allowed assignment.
  std::vector<std::vector<std::pair<Assignment, int>>> vars;
  // The family is not the complete size-<=k family.
  bool relaxation = false;

  // Exact match first, else the first superset in canonical order; -1 if
  // no family set contains `s`.
  int host_of(const QuerySet& s) const;
  // Variables of family[host] grouped by their restriction to `s`.
  std::map<Assignment, std::vector<int>> marginal_vars(int host, const QuerySet& s) const;
  // The family of local distributions at a primal point.
  TableStrategy extract(const std::vector<Rational>& primal) const;
};

SaProgram build_sa_lp(int dim, int repetition, std::vector<QuerySet> family, int k,
                      const SaOptions& options = {});

struct SaResult {
  LpSolution solution;
  Rational value = 0;
  CertificateCheck certificate;
  bool relaxation = false;
  int variables = 0;
  int rows = 0;
  // Optimal family; empty unless solution.status is optimal.
  std::vector<std::pair<QuerySet, LocalDistribution>> strategy;
};

enum class FamilyChoice {
  Complete,  // every set of size <= k over the domain
  Issued,    // only the sets the verifier can ask (a relaxation)
};

// The acceptance-probability objective over the verifier's enumerated
// randomness (at most 2^22 outcomes) added to `program`.
void add_acceptance_objective(SaProgram& program, const VerifierSpec& spec);
std::vector<QuerySet> issued_sets(const VerifierSpec& spec);

// Maximum acceptance over k-non-signaling (or (eps, k)-non-signaling)
// families. Throws InternalError if the exact-mode program is infeasible.
SaResult max_acceptance(const VerifierSpec& spec, int k, const SaOptions& options = {},
                        FamilyChoice family = FamilyChoice::Complete);

struct NearestResult {
  Rational distance = 0;
  LpSolution solution;
  CertificateCheck certificate;
  std::vector<std::pair<QuerySet, LocalDistribution>> nearest;
  // TV(F_S, F'_S) at the optimum, for every scoped set.
  std::vector<std::pair<QuerySet, Rational>> per_set;
};

// min over k'-non-signaling F' of max TV(F_S, F'_S) over all sets S of size
// <= min(l, k') over the domain of `f` (a non-repeated strategy).
NearestResult nearest_exact(const Strategy& f, int k_prime, int ell);

struct RoundingResult {
  NearestResult fit;
  // Largest Pr[F(x) + F(y) != F(x + y)] over x, y.
  Rational linearity_defect = 0;
  // min over linear k-bar-non-signaling L of max_S TV(F_S, L_S) / (6|S| + 3).
  Rational scale = 0;
  // scale <= sqrt(linearity_defect), checked as scale^2 <= defect.
  bool within_bound = false;
};

RoundingResult nearest_linear(const Strategy& f, int k_bar);

}  // namespace nspcp
