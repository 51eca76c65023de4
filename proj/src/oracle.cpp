#include "nspcp/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nspcp::oracle {
namespace {

Q inverse_power_of_two(int bits) {
  Q w(1);
  w /= Q(mpz_class(1) << bits);
  return w;
}

void check_budget(int bits, const Scope& scope, const char* what) {
  if (bits >= 63 || (std::uint64_t{1} << bits) > scope.budget) {
    throw std::length_error(std::string(what) + ": 2^" + std::to_string(bits) + " outcomes exceed the oracle budget");
  }
}

std::vector<std::vector<int>> permutations(int t) {
  std::vector<int> p(t);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Distinct queries in order of first appearance, and each role's index.
std::pair<std::vector<Query>, std::vector<int>> distinct(const std::vector<Query>& roles) {
  std::vector<Query> list;
  std::vector<int> index;
  for (const auto& q : roles) {
    auto it = std::find(list.begin(), list.end(), q);
    index.push_back(static_cast<int>(it - list.begin()));
    if (it == list.end()) list.push_back(q);
  }
  return {list, index};
}

Answer bit_permute(Answer a, const std::vector<int>& p) {
  // out_i = a_{p(i)}
  Answer out = 0;
  for (std::size_t i = 0; i < p.size(); ++i) out |= ((a >> p[i]) & 1U) << i;
  return out;
}

Query tuple_permute(const Query& q, const std::vector<int>& p) {
  std::vector<BitVector> c(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) c[i] = q[p[i]];
  return Query(std::move(c));
}

Q sum_over_law(const Law& law, const std::vector<int>& index, const std::function<bool(std::span<const Answer>)>& accept) {
  Q total = 0;
  std::vector<Answer> answers(index.size());
  for (const auto& [key, p] : law) {
    for (std::size_t j = 0; j < index.size(); ++j) answers[j] = key[index[j]];
    if (accept(answers)) total += p;
  }
  return total;
}

}  // namespace

Base deterministic(std::function<Answer(const Query&)> proof) {
  return [proof = std::move(proof)](const std::vector<Query>& qs) {
    std::vector<Answer> key;
    for (const auto& q : qs) key.push_back(proof(q));
    return Law{{key, Q(1)}};
  };
}

Base mixture(std::vector<std::pair<Q, std::function<Answer(const Query&)>>> parts) {
  return [parts = std::move(parts)](const std::vector<Query>& qs) {
    Law law;
    for (const auto& [w, proof] : parts) {
      std::vector<Answer> key;
      for (const auto& q : qs) key.push_back(proof(q));
      law[key] += w;
    }
    return law;
  };
}

std::vector<Check> almss_checks(int wires, const std::vector<RawConstraint>& constraints, int t, const Scope& scope) {
  const int m = static_cast<int>(constraints.size());
  const int per = 2 * wires + m;
  check_budget(per * t, scope, "ALMSS randomness");
  const Q weight = inverse_power_of_two(per * t);
  std::vector<Check> out;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << (per * t)); ++r) {
    std::vector<std::vector<BitVector>> coords(4);
    std::vector<bool> c(t);
    for (int i = 0; i < t; ++i) {
      const std::uint64_t word = r >> (i * per);
      const BitVector u = BitVector::from_word(word, wires);
      const BitVector v = BitVector::from_word(word >> wires, wires);
      BitMatrix sum(wires);
      bool value = false;
      for (int j = 0; j < m; ++j) {
        if ((word >> (2 * wires + j)) & 1U) {
          sum += constraints[j].p;
          value = value != constraints[j].c;
        }
      }
      coords[0].push_back(diag(u).as_vector());
      coords[1].push_back(diag(v).as_vector());
      coords[2].push_back(tensor(u, v).as_vector());
      coords[3].push_back(sum.as_vector());
      c[i] = value;
    }
    Check check;
    check.weight = weight;
    for (auto& co : coords) check.roles.emplace_back(std::move(co));
    check.accept = [c, t](std::span<const Answer> a) {
      for (int i = 0; i < t; ++i) {
        const bool x = (a[0] >> i) & 1U;
        const bool y = (a[1] >> i) & 1U;
        const bool z = (a[2] >> i) & 1U;
        const bool w = (a[3] >> i) & 1U;
        if ((x && y) != z || w != c[i]) return false;
      }
      return true;
    };
    out.push_back(std::move(check));
  }
  return out;
}

std::vector<Check> linearity_checks(int dim, int r) {
  const int bits = 2 * r * dim;
  check_budget(bits, Scope{}, "linearity randomness");
  const Q weight = inverse_power_of_two(bits);
  std::vector<Check> out;
  for (std::uint64_t o = 0; o < (std::uint64_t{1} << bits); ++o) {
    std::vector<BitVector> x, y, s;
    for (int j = 0; j < r; ++j) {
      x.push_back(BitVector::from_word(o >> (j * dim), dim));
      y.push_back(BitVector::from_word(o >> ((r + j) * dim), dim));
      s.push_back(x.back() + y.back());
    }
    out.push_back({weight, {Query(x), Query(y), Query(s)},
                   [](std::span<const Answer> a) { return (a[0] ^ a[1]) == a[2]; }});
  }
  return out;
}

std::vector<Check> anti_pair_checks(int dim) {
  const Q weight = inverse_power_of_two(2 * dim);
  std::vector<Check> out;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << dim); ++x) {
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << dim); ++y) {
      out.push_back({weight,
                     {Query::single(BitVector::from_word(x, dim)), Query::single(BitVector::from_word(y, dim))},
                     [](std::span<const Answer> a) { return a[0] != a[1]; }});
    }
  }
  return out;
}

Q acceptance(const std::vector<Check>& checks, const Base& f) {
  Q total = 0;
  for (const auto& c : checks) {
    const auto [list, index] = distinct(c.roles);
    total += c.weight * sum_over_law(f(list), index, c.accept);
  }
  return total;
}

std::vector<Query> points(int dim, int t) {
  std::vector<Query> out;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << (dim * t)); ++x) {
    std::vector<BitVector> c;
    for (int j = 0; j < t; ++j) c.push_back(BitVector::from_word(x >> (j * dim), dim));
    out.emplace_back(std::move(c));
  }
  return out;
}

ClassicalMax classical_max_acceptance(const std::vector<Check>& checks, int dim, int t) {
  const auto pts = points(dim, t);
  const int bits = static_cast<int>(pts.size()) * t;
  if (bits > 16) throw std::length_error("more than 2^16 classical proofs");
  std::map<Query, int> where;
  for (std::size_t i = 0; i < pts.size(); ++i) where[pts[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> idx;
  for (const auto& c : checks) {
    std::vector<int> v;
    for (const auto& q : c.roles) v.push_back(where.at(q));
    idx.push_back(std::move(v));
  }
  const Answer mask = static_cast<Answer>((1U << t) - 1);
  ClassicalMax best{Q(-1), {}};
  std::vector<Answer> answers;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << bits); ++w) {
    Q value = 0;
    for (std::size_t k = 0; k < checks.size(); ++k) {
      answers.clear();
      for (int p : idx[k]) answers.push_back(static_cast<Answer>(w >> (p * t)) & mask);
      if (checks[k].accept(answers)) value += checks[k].weight;
    }
    if (value > best.value) {
      best.value = value;
      best.witness.clear();
      for (std::size_t p = 0; p < pts.size(); ++p) best.witness.push_back(static_cast<Answer>(w >> (p * t)) & mask);
    }
  }
  return best;
}

Law fold_law(const Base& base, int t, const std::vector<Query>& queries, const Scope& scope) {
  const auto perms = permutations(t);
  std::vector<Query> reps;
  std::vector<int> orbit;
  std::vector<std::vector<int>> rho_inv;
  for (const auto& q : queries) {
    std::vector<BitVector> sorted(q.coords().begin(), q.coords().end());
    std::sort(sorted.begin(), sorted.end());
    const Query rep(sorted);
    auto it = std::find(reps.begin(), reps.end(), rep);
    orbit.push_back(static_cast<int>(it - reps.begin()));
    if (it == reps.end()) reps.push_back(rep);
    // rho(i) = first unused c with rep_c = q_i, so q = rho(rep).
    std::vector<int> rho(t);
    std::vector<bool> used(t, false);
    for (int i = 0; i < t; ++i) {
      for (int c = 0; c < t; ++c) {
        if (!used[c] && sorted[c] == q[i]) {
          rho[i] = c;
          used[c] = true;
          break;
        }
      }
    }
    std::vector<int> inv(t);
    for (int i = 0; i < t; ++i) inv[rho[i]] = i;
    rho_inv.push_back(inv);
  }

  const int orbits = static_cast<int>(reps.size());
  std::uint64_t outcomes = 1;
  for (int c = 0; c < orbits; ++c) {
    outcomes *= perms.size();
    if (outcomes > scope.budget) throw std::length_error("fold randomness exceeds the oracle budget");
  }
  const Q weight = Q(1) / Q(static_cast<unsigned long>(outcomes));

  Law out;
  for (std::uint64_t o = 0; o < outcomes; ++o) {
    std::vector<const std::vector<int>*> sigma(orbits);
    std::uint64_t rest = o;
    for (int c = 0; c < orbits; ++c) {
      sigma[c] = &perms[rest % perms.size()];
      rest /= perms.size();
    }
    std::vector<std::vector<int>> pi(queries.size(), std::vector<int>(t));
    std::vector<Query> asked(orbits);
    std::vector<bool> set(orbits, false);
    for (std::size_t i = 0; i < queries.size(); ++i) {
      for (int j = 0; j < t; ++j) pi[i][j] = rho_inv[i][(*sigma[orbit[i]])[j]];
      const Query a = tuple_permute(queries[i], pi[i]);
      if (!set[orbit[i]]) {
        asked[orbit[i]] = a;
        set[orbit[i]] = true;
      } else if (!(asked[orbit[i]] == a)) {
        throw std::logic_error("orbit members ask different base queries");
      }
    }
    for (const auto& [key, p] : base(asked)) {
      std::vector<Answer> answers;
      for (std::size_t i = 0; i < queries.size(); ++i) {
        std::vector<int> inv(t);
        for (int j = 0; j < t; ++j) inv[pi[i][j]] = j;
        answers.push_back(bit_permute(key[orbit[i]], inv));
      }
      out[answers] += p * weight;
    }
  }
  return out;
}

Law flatten_law(const Base& base, int t, const std::vector<Query>& queries) {
  if (queries.empty() || static_cast<int>(queries.size()) > t) throw std::invalid_argument("flatten set size");
  std::vector<BitVector> sorted;
  for (const auto& q : queries) sorted.push_back(q[0]);
  std::sort(sorted.begin(), sorted.end());
  std::vector<BitVector> tuple = sorted;
  while (static_cast<int>(tuple.size()) < t) tuple.push_back(sorted.back());
  Law out;
  for (const auto& [key, p] : base({Query(tuple)})) {
    std::vector<Answer> answers;
    for (const auto& q : queries) {
      const int k = static_cast<int>(std::find(sorted.begin(), sorted.end(), q[0]) - sorted.begin());
      answers.push_back((key[0] >> k) & 1U);
    }
    out[answers] += p;
  }
  return out;
}

Law self_correct_law(const Base& base, int t, const std::vector<Query>& queries, const Scope& scope) {
  const int n = queries.front().dim();
  const int per = 2 * t * n;
  const int s = static_cast<int>(queries.size());
  check_budget(per * s, scope, "self-correction randomness");
  const Q weight = inverse_power_of_two(per * s);
  const Answer mask = static_cast<Answer>((1U << t) - 1);
  Law out;
  for (std::uint64_t o = 0; o < (std::uint64_t{1} << (per * s)); ++o) {
    std::vector<Query> asked;
    for (int i = 0; i < s; ++i) {
      const std::uint64_t word = o >> (i * per);
      std::vector<BitVector> first, second;
      for (int j = 0; j < t; ++j) {
        const BitVector r = BitVector::from_word(word >> (j * n), n);
        first.push_back(r);
        second.push_back(queries[i][j] + r);
      }
      for (int j = 0; j < t; ++j) {
        const BitVector w = BitVector::from_word(word >> ((t + j) * n), n);
        first.push_back(w);
        second.push_back(w);
      }
      asked.emplace_back(std::move(first));
      asked.emplace_back(std::move(second));
    }
    const auto [list, index] = distinct(asked);
    for (const auto& [key, p] : base(list)) {
      std::vector<Answer> answers;
      for (int i = 0; i < s; ++i) answers.push_back((key[index[2 * i]] ^ key[index[2 * i + 1]]) & mask);
      out[answers] += p * weight;
    }
  }
  return out;
}

VertexMax vertex_max(const std::vector<std::vector<Q>>& a, const std::vector<Q>& b, const std::vector<Q>& c) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(a.size());
  // Rows 0..m-1 are A x <= b; rows m..m+n-1 are -x_j <= 0.
  auto row = [&](int r, int j) -> Q {
    if (r < m) return a[r][j];
    return r - m == j ? Q(-1) : Q(0);
  };
  auto rhs = [&](int r) -> Q { return r < m ? b[r] : Q(0); };

  VertexMax best;
  std::vector<int> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  const int total = m + n;
  if (n > total) return best;
  while (true) {
    // Solve the n x n system of the picked rows at equality.
    std::vector<std::vector<Q>> mat(n, std::vector<Q>(n + 1));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) mat[i][j] = row(pick[i], j);
      mat[i][n] = rhs(pick[i]);
    }
    bool singular = false;
    for (int col = 0; col < n && !singular; ++col) {
      int piv = -1;
      for (int i = col; i < n; ++i) {
        if (mat[i][col] != 0) {
          piv = i;
          break;
        }
      }
      if (piv < 0) {
        singular = true;
        break;
      }
      std::swap(mat[col], mat[piv]);
      for (int i = 0; i < n; ++i) {
        if (i == col || mat[i][col] == 0) continue;
        const Q f = mat[i][col] / mat[col][col];
        for (int j = col; j <= n; ++j) mat[i][j] -= f * mat[col][j];
      }
    }
    if (!singular) {
      std::vector<Q> x(n);
      for (int i = 0; i < n; ++i) x[i] = mat[i][n] / mat[i][i];
      bool ok = true;
      for (int r = 0; r < total && ok; ++r) {
        Q lhs = 0;
        for (int j = 0; j < n; ++j) lhs += row(r, j) * x[j];
        ok = lhs <= rhs(r);
      }
      if (ok) {
        Q value = 0;
        for (int j = 0; j < n; ++j) value += c[j] * x[j];
        if (!best.feasible || value > best.value) {
          best.feasible = true;
          best.value = value;
          best.x = x;
        }
      }
    }
    int i = n - 1;
    while (i >= 0 && pick[i] == total - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

}  // namespace nspcp::oracle
