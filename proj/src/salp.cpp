#include "nspcp/salp.hpp"

#include <algorithm>
#include <set>

#include "nspcp/errors.hpp"
#include "nspcp/measures.hpp"

namespace nspcp {
namespace {

Assignment restrict_to(Assignment a, const std::vector<int>& pos, int bits) {
  Assignment out = 0;
  for (std::size_t j = 0; j < pos.size(); ++j) {
    out |= static_cast<Assignment>(unpack(a, pos[j], bits)) << (j * bits);
  }
  return out;
}

std::vector<int> positions(const QuerySet& host, const QuerySet& part) {
  std::vector<int> pos;
  for (const auto& q : part) {
    const auto i = host.index_of(q);
    if (!i) throw InvalidInput("set " + part.to_string() + " is not inside " + host.to_string());
    pos.push_back(*i);
  }
  return pos;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t r, std::uint64_t cap) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  // Exact product with a saturating cap.
  mpz_class c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    c *= static_cast<unsigned long>(n - r + i);
    c /= static_cast<unsigned long>(i);
  }
  return c > cap ? cap + 1 : c.get_ui();
}

std::vector<Term> merged_terms(const std::vector<int>& plus, const std::vector<int>& minus) {
  std::vector<Term> t;
  t.reserve(plus.size() + minus.size());
  for (int v : plus) t.push_back({v, Rational(1)});
  for (int v : minus) t.push_back({v, Rational(-1)});
  return t;
}

const std::vector<int>& lookup(const std::map<Assignment, std::vector<int>>& m, Assignment b) {
  static const std::vector<int> kNone;
  auto it = m.find(b);
  return it == m.end() ? kNone : it->second;
}

std::vector<std::pair<QuerySet, LocalDistribution>> as_pairs(const TableStrategy& t) {
  return {t.table().begin(), t.table().end()};
}

// Shared body of nearest_exact / nearest_linear: min t subject to
// TV(F_S, F'_S) <= weight(|S|) * t for every S of size <= scope.
NearestResult fit(const Strategy& f, int k_prime, int scope, const AssignmentFilter& allowed,
                  const std::function<Rational(int)>& weight) {
  if (f.repetition() != 1) throw InvalidInput("rounding probes take a non-repeated strategy");
  if (scope > f.locality()) throw InvalidInput("scope exceeds the strategy's locality");
  SaOptions options;
  options.allowed = allowed;
  SaProgram p = build_sa_lp(f.dim(), 1, maximal_complete_family(f.dim(), 1, k_prime), k_prime, options);
  p.lp.set_goal(LinearProgram::Goal::Minimize);
  const int t = p.lp.add_variable("t", 1);

  const auto points = all_points(f.dim(), 1);
  const auto scoped = all_sets(points, scope);
  for (std::size_t si = 0; si < scoped.size(); ++si) {
    const QuerySet& s = scoped[si];
    const int host = p.host_of(s);
    const auto margin = p.marginal_vars(host, s);
    const LocalDistribution target = f.answer(s);
    std::vector<Term> sum;
    for (Assignment b = 0; b < (Assignment{1} << s.size()); ++b) {
      const int d = p.lp.add_variable("e" + std::to_string(si) + "_" + std::to_string(b));
      const Rational fb = target.probability(b);
      std::vector<Term> up{{d, Rational(1)}};
      std::vector<Term> down{{d, Rational(1)}};
      for (int v : lookup(margin, b)) {
        up.push_back({v, Rational(-1)});
        down.push_back({v, Rational(1)});
      }
      p.lp.add_row(std::move(up), Sense::GreaterEqual, -fb);
      p.lp.add_row(std::move(down), Sense::GreaterEqual, fb);
      sum.push_back({d, Rational(1)});
    }
    sum.push_back({t, -2 * weight(s.size())});
    p.lp.add_row(std::move(sum), Sense::LessEqual, 0, "tv" + std::to_string(si));
  }

  NearestResult out;
  out.solution = solve(p.lp);
  if (out.solution.status != LpStatus::Optimal) {
    throw InternalError("rounding program is " + to_string(out.solution.status));
  }
  out.certificate = verify_certificate(p.lp, out.solution);
  out.distance = out.solution.objective;
  const TableStrategy nearest = p.extract(out.solution.primal);
  out.nearest = as_pairs(nearest);
  for (const auto& s : scoped) {
    out.per_set.emplace_back(s, tv_distance(f.answer(s), nearest.answer(s)));
  }
  return out;
}

}  // namespace

AssignmentFilter linearity_filter(int repetition) {
  return [repetition](const QuerySet& s, Assignment a) {
    for (int i = 0; i < s.size(); ++i) {
      for (int j = i; j < s.size(); ++j) {
        const auto k = s.index_of(s[i] + s[j]);
        if (!k) continue;
        const Answer sum = unpack(a, i, repetition) ^ unpack(a, j, repetition);
        if (sum != unpack(a, *k, repetition)) return false;
      }
    }
    return true;
  };
}

AssignmentFilter pin_filter(Query q, Answer value) {
  return [q = std::move(q), value](const QuerySet& s, Assignment a) {
    const auto i = s.index_of(q);
    return !i || unpack(a, *i, q.repetition()) == value;
  };
}

AssignmentFilter all_of(std::vector<AssignmentFilter> filters) {
  return [filters = std::move(filters)](const QuerySet& s, Assignment a) {
    for (const auto& f : filters) {
      if (f && !f(s, a)) return false;
    }
    return true;
  };
}

std::vector<QuerySet> maximal_complete_family(int dim, int repetition, int k, std::uint64_t budget) {
  const int bits = dim * repetition;
  if (bits > 16) throw ScopeExceeded("domain of 2^" + std::to_string(bits) + " points exceeds 2^16");
  const auto points = all_points(dim, repetition);
  const int n = static_cast<int>(points.size());
  const int m = std::min(k, n);
  if (binomial(n, m, budget) > budget) {
    throw ScopeExceeded("complete family of " + std::to_string(m) + "-sets over " + std::to_string(n) +
                        " points exceeds " + std::to_string(budget) + " sets");
  }
  std::vector<QuerySet> out;
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    std::vector<Query> items;
    for (int i : idx) items.push_back(points[i]);
    out.emplace_back(std::move(items));
    int i = m - 1;
    while (i >= 0 && idx[i] == n - m + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QuerySet> maximal_sets(std::vector<QuerySet> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::stable_sort(sets.begin(), sets.end(),
                   [](const QuerySet& a, const QuerySet& b) { return a.size() > b.size(); });
  std::vector<QuerySet> kept;
  for (auto& s : sets) {
    const bool covered = std::any_of(kept.begin(), kept.end(),
                                     [&](const QuerySet& big) { return s.is_subset_of(big); });
    if (!covered) kept.push_back(std::move(s));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

int SaProgram::host_of(const QuerySet& s) const {
  auto it = std::lower_bound(family.begin(), family.end(), s);
  if (it != family.end() && *it == s) return static_cast<int>(it - family.begin());
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (s.is_subset_of(family[i])) return static_cast<int>(i);
  }
  return -1;
}

std::map<Assignment, std::vector<int>> SaProgram::marginal_vars(int host, const QuerySet& s) const {
  if (host < 0) throw InvalidInput("no family set contains " + s.to_string());
  const auto pos = positions(family[host], s);
  std::map<Assignment, std::vector<int>> out;
  for (const auto& [a, v] : vars[host]) out[restrict_to(a, pos, repetition)].push_back(v);
  return out;
}

TableStrategy SaProgram::extract(const std::vector<Rational>& primal) const {
  std::map<QuerySet, LocalDistribution> table;
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::map<Assignment, Rational> masses;
    for (const auto& [a, v] : vars[i]) {
      if (primal[v] != 0) masses[a] = primal[v];
    }
    table.emplace(family[i], LocalDistribution(family[i].size(), repetition, std::move(masses)));
  }
  return TableStrategy(dim, repetition, k, std::move(table),
                       mode == PolytopeMode::Exact ? StrategyMode::Exact : StrategyMode::Almost, epsilon);
}

SaProgram build_sa_lp(int dim, int repetition, std::vector<QuerySet> family, int k, const SaOptions& options) {
  if (family.empty()) throw InvalidInput("empty set family");
  if (options.mode == PolytopeMode::Noisy && options.epsilon < 0) throw InvalidInput("negative epsilon");
  SaProgram p;
  p.dim = dim;
  p.repetition = repetition;
  p.k = k;
  p.mode = options.mode;
  p.epsilon = options.mode == PolytopeMode::Noisy ? options.epsilon : Rational(0);
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  for (const auto& s : family) {
    if (s.empty()) throw InvalidInput("empty set in family");
    if (s.size() > k) {
      throw InvalidInput("set " + s.to_string() + " of size " + std::to_string(s.size()) + " exceeds k = " +
                         std::to_string(k));
    }
    if (s.size() * repetition > 20) {
      throw ScopeExceeded("set of " + std::to_string(s.size()) + " queries has 2^" +
                          std::to_string(s.size() * repetition) + " assignments, above 2^20");
    }
    for (const auto& q : s) {
      if (q.dim() != dim || q.repetition() != repetition) throw InvalidInput("family query of the wrong shape");
    }
  }
  p.family = std::move(family);

  // Completeness: all sets of size min(k, |D|), and every one of them.
  const int bits = dim * repetition;
  if (bits >= 20) {
    p.relaxation = true;
  } else {
    const std::uint64_t n = std::uint64_t{1} << bits;
    const int m = static_cast<int>(std::min<std::uint64_t>(k, n));
    const bool sized = std::all_of(p.family.begin(), p.family.end(), [&](const QuerySet& s) { return s.size() == m; });
    p.relaxation = !(sized && binomial(n, m, p.family.size()) == p.family.size());
  }

  p.vars.resize(p.family.size());
  for (std::size_t i = 0; i < p.family.size(); ++i) {
    const QuerySet& s = p.family[i];
    std::vector<Term> norm;
    for (Assignment a = 0; a < (Assignment{1} << (s.size() * repetition)); ++a) {
      if (options.allowed && !options.allowed(s, a)) continue;
      const int v = p.lp.add_variable("f" + std::to_string(i) + "_" + std::to_string(a));
      p.vars[i].emplace_back(a, v);
      norm.push_back({v, Rational(1)});
    }
    p.lp.add_row(std::move(norm), Sense::Equal, 1, "n" + std::to_string(i));
  }

  const auto assignments = [&](const QuerySet& j) { return Assignment{1} << (j.size() * repetition); };
  if (options.mode == PolytopeMode::Exact) {
    std::set<QuerySet> parts;
    for (std::size_t i = 0; i < p.family.size(); ++i) {
      for (std::size_t j = i + 1; j < p.family.size(); ++j) {
        QuerySet part = p.family[i].intersect(p.family[j]);
        if (!part.empty()) parts.insert(std::move(part));
      }
    }
    // Every holder of a shared part agrees with the first holder (the hub).
    // The last assignment's row follows from normalization.
    int row = 0;
    for (const auto& part : parts) {
      std::vector<int> holders;
      for (std::size_t i = 0; i < p.family.size(); ++i) {
        if (part.is_subset_of(p.family[i])) holders.push_back(static_cast<int>(i));
      }
      const auto hub = p.marginal_vars(holders[0], part);
      for (std::size_t h = 1; h < holders.size(); ++h) {
        const auto other = p.marginal_vars(holders[h], part);
        for (Assignment b = 0; b + 1 < assignments(part); ++b) {
          p.lp.add_row(merged_terms(lookup(other, b), lookup(hub, b)), Sense::Equal, 0,
                       "m" + std::to_string(row++));
        }
      }
    }
  } else {
    int pair = 0;
    for (std::size_t i = 0; i < p.family.size(); ++i) {
      for (std::size_t j = i + 1; j < p.family.size(); ++j) {
        const QuerySet part = p.family[i].intersect(p.family[j]);
        if (part.empty()) continue;
        const auto a = p.marginal_vars(static_cast<int>(i), part);
        const auto b = p.marginal_vars(static_cast<int>(j), part);
        std::vector<Term> total;
        for (Assignment x = 0; x < assignments(part); ++x) {
          const int d = p.lp.add_variable("d" + std::to_string(pair) + "_" + std::to_string(x));
          auto up = merged_terms(lookup(b, x), lookup(a, x));
          up.push_back({d, Rational(1)});
          auto down = merged_terms(lookup(a, x), lookup(b, x));
          down.push_back({d, Rational(1)});
          p.lp.add_row(std::move(up), Sense::GreaterEqual, 0);
          p.lp.add_row(std::move(down), Sense::GreaterEqual, 0);
          total.push_back({d, Rational(1)});
        }
        p.lp.add_row(std::move(total), Sense::LessEqual, 2 * p.epsilon, "tv" + std::to_string(pair));
        ++pair;
      }
    }
  }
  return p;
}

std::vector<QuerySet> issued_sets(const VerifierSpec& spec) {
  const int bits = spec.randomness_bits();
  if (bits > 22) throw ScopeExceeded(spec.name() + " randomness of 2^" + std::to_string(bits) + " exceeds 2^22");
  std::set<QuerySet> sets;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << bits); ++r) {
    EnumeratedBits source(r);
    sets.insert(QuerySet(spec.draw(source).roles));
  }
  return {sets.begin(), sets.end()};
}

void add_acceptance_objective(SaProgram& p, const VerifierSpec& spec) {
  if (spec.dim() != p.dim || spec.repetition() != p.repetition) {
    throw InvalidInput("verifier and program use different domains");
  }
  const int bits = spec.randomness_bits();
  if (bits > 22) throw ScopeExceeded(spec.name() + " randomness of 2^" + std::to_string(bits) + " exceeds 2^22");
  std::map<std::pair<std::vector<Query>, std::uint64_t>, std::uint64_t> groups;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << bits); ++r) {
    EnumeratedBits source(r);
    Draw d = spec.draw(source);
    ++groups[{std::move(d.roles), d.aux}];
  }
  std::vector<std::uint64_t> counts(p.lp.variables(), 0);
  std::vector<Answer> answers;
  for (const auto& [key, count] : groups) {
    const auto& [roles, aux] = key;
    const int host = p.host_of(QuerySet(roles));
    if (host < 0) throw InvalidInput("set family does not cover the verifier's query " + QuerySet(roles).to_string());
    std::vector<int> pos;
    for (const auto& q : roles) pos.push_back(*p.family[host].index_of(q));
    answers.resize(roles.size());
    for (const auto& [a, v] : p.vars[host]) {
      for (std::size_t j = 0; j < pos.size(); ++j) answers[j] = unpack(a, pos[j], p.repetition);
      if (spec.decide(aux, answers).accept) counts[v] += count;
    }
  }
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (int v = 0; v < p.lp.variables(); ++v) {
    if (counts[v] != 0) p.lp.set_objective(v, ratio(counts[v], total));
  }
}

SaResult max_acceptance(const VerifierSpec& spec, int k, const SaOptions& options, FamilyChoice choice) {
  std::vector<QuerySet> family = choice == FamilyChoice::Complete
                                     ? maximal_complete_family(spec.dim(), spec.repetition(), k)
                                     : maximal_sets(issued_sets(spec));
  SaProgram p = build_sa_lp(spec.dim(), spec.repetition(), std::move(family), k, options);
  add_acceptance_objective(p, spec);

  SaResult out;
  out.relaxation = p.relaxation;
  out.variables = p.lp.variables();
  out.rows = p.lp.rows();
  out.solution = solve(p.lp);
  if (out.solution.status == LpStatus::Infeasible && options.mode == PolytopeMode::Exact && !options.allowed) {
    throw InternalError("exact Sherali-Adams program is infeasible");
  }
  if (out.solution.status != LpStatus::Optimal) {
    out.certificate = {false, "program is " + to_string(out.solution.status)};
    return out;
  }
  out.value = out.solution.objective;
  out.certificate = verify_certificate(p.lp, out.solution);
  out.strategy = as_pairs(p.extract(out.solution.primal));
  return out;
}

NearestResult nearest_exact(const Strategy& f, int k_prime, int ell) {
  return fit(f, k_prime, std::min(ell, k_prime), nullptr, [](int) { return Rational(1); });
}

RoundingResult nearest_linear(const Strategy& f, int k_bar) {
  RoundingResult out;
  out.linearity_defect = 1 - min_linearity(f).value;
  out.fit = fit(f, k_bar, k_bar, linearity_filter(1), [](int size) { return Rational(6 * size + 3); });
  out.scale = out.fit.distance;
  out.within_bound = out.scale * out.scale <= out.linearity_defect;
  return out;
}

}  // namespace nspcp
