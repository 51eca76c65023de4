#include "nspcp/lp.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include "nspcp/errors.hpp"

namespace nspcp {

int LinearProgram::add_variable(std::string name, Rational objective) {
  names_.push_back(std::move(name));
  objective_.push_back(std::move(objective));
  return variables() - 1;
}

void LinearProgram::set_objective(int var, Rational coef) { objective_.at(var) = std::move(coef); }

void LinearProgram::add_objective(int var, const Rational& coef) { objective_.at(var) += coef; }

void LinearProgram::add_row(std::vector<Term> terms, Sense sense, Rational rhs, std::string name) {
  std::map<int, Rational> merged;
  for (auto& t : terms) {
    if (t.var < 0 || t.var >= variables()) throw InvalidInput("row refers to an unknown variable");
    merged[t.var] += t.coef;
  }
  std::vector<Term> clean;
  for (auto& [v, c] : merged) {
    if (c != 0) clean.push_back({v, c});
  }
  if (name.empty()) name = "c" + std::to_string(rows_.size());
  rows_.push_back({std::move(clean), sense, std::move(rhs), std::move(name)});
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, Pricing pricing) : lp_(lp), pricing_(pricing) {
    const int m = lp.rows();
    n_ = lp.variables();
    sign_.assign(m, 1);
    unit_.assign(m, -1);
    int cols = n_;
    std::vector<int> slack(m, -1);
    for (int i = 0; i < m; ++i) {
      const Row& row = lp.constraints()[i];
      Sense sense = row.sense;
      if (row.rhs < 0) {
        sign_[i] = -1;
        if (sense == Sense::LessEqual) {
          sense = Sense::GreaterEqual;
        } else if (sense == Sense::GreaterEqual) {
          sense = Sense::LessEqual;
        }
      }
      sense_.push_back(sense);
      if (sense != Sense::Equal) slack[i] = cols++;
    }
    first_artificial_ = cols;
    for (int i = 0; i < m; ++i) {
      unit_[i] = sense_[i] == Sense::LessEqual ? slack[i] : cols++;
    }
    cols_ = cols;
    rows_.assign(m, std::vector<Rational>(cols_ + 1, Rational(0)));
    basis_.assign(m, -1);
    for (int i = 0; i < m; ++i) {
      const Row& row = lp.constraints()[i];
      auto& t = rows_[i];
      for (const auto& term : row.terms) t[term.var] = sign_[i] * term.coef;
      t[cols_] = sign_[i] * row.rhs;
      if (slack[i] >= 0) t[slack[i]] = sense_[i] == Sense::LessEqual ? 1 : -1;
      t[unit_[i]] = 1;
      basis_[i] = unit_[i];
    }
  }

  LpSolution run() {
    LpSolution out;
    // Phase 1: maximize -(sum of artificials).
    std::vector<Rational> cost(cols_, Rational(0));
    for (int j = first_artificial_; j < cols_; ++j) cost[j] = -1;
    price(cost);
    if (!iterate(cols_)) throw InternalError("phase 1 of the simplex method is unbounded");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] >= first_artificial_ && rows_[i][cols_] != 0) {
        out.status = LpStatus::Infeasible;
        out.pivots = pivots_;
        return out;
      }
    }
    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (int j = 0; j < first_artificial_; ++j) {
        if (rows_[i][j] != 0) {
          pivot(static_cast<int>(i), j);
          break;
        }
      }
    }

    // Phase 2 on the goal, written as a maximization.
    const Rational flip = lp_.goal() == LinearProgram::Goal::Maximize ? 1 : -1;
    std::fill(cost.begin(), cost.end(), Rational(0));
    for (int j = 0; j < n_; ++j) cost[j] = flip * lp_.objective(j);
    price(cost);
    if (!iterate(first_artificial_)) {
      out.status = LpStatus::Unbounded;
      out.pivots = pivots_;
      return out;
    }

    out.status = LpStatus::Optimal;
    out.primal.assign(n_, Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < n_) out.primal[basis_[i]] = rows_[i][cols_];
    }
    for (int j = 0; j < n_; ++j) out.objective += lp_.objective(j) * out.primal[j];
    out.dual.resize(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      out.dual[i] = -reduced_[unit_[i]] * sign_[i] * flip;
    }
    out.pivots = pivots_;
    return out;
  }

 private:
  void price(const std::vector<Rational>& cost) {
    reduced_ = cost;
    reduced_.push_back(Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      const auto& t = rows_[i];
      for (int j = 0; j <= cols_; ++j) {
        if (t[j] != 0) reduced_[j] -= cb * t[j];
      }
    }
  }

  // Runs pivots until optimal (true) or unbounded (false). Columns at or
  // beyond `limit` never enter.
  bool iterate(int limit) {
    bool bland = pricing_ == Pricing::Bland;
    while (true) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (reduced_[j] <= 0) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (enter < 0 || reduced_[j] > reduced_[enter]) enter = j;
      }
      if (enter < 0) return true;

      int leave = -1;
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& a = rows_[i][enter];
        if (a <= 0) continue;
        Rational r = rows_[i][cols_] / a;
        if (leave < 0 || r < best || (r == best && basis_[i] < basis_[leave])) {
          leave = static_cast<int>(i);
          best = std::move(r);
        }
      }
      if (leave < 0) return false;
      const bool degenerate = best == 0;
      pivot(leave, enter);
      bland = pricing_ == Pricing::Bland || degenerate;
    }
  }

  void pivot(int r, int c) {
    ++pivots_;
    auto& pr = rows_[r];
    const Rational inv = 1 / pr[c];
    std::vector<int> nz;
    for (int j = 0; j <= cols_; ++j) {
      if (pr[j] != 0) {
        pr[j] *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[c] == 0) return;
      const Rational f = row[c];
      for (int j : nz) row[j] -= f * pr[j];
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (static_cast<int>(i) != r) eliminate(rows_[i]);
    }
    if (!reduced_.empty()) eliminate(reduced_);
    basis_[r] = c;
  }

  const LinearProgram& lp_;
  Pricing pricing_;
  int n_ = 0;
  int cols_ = 0;
  int first_artificial_ = 0;
  std::vector<int> sign_;
  std::vector<Sense> sense_;
  std::vector<int> unit_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> basis_;
  std::vector<Rational> reduced_;
  std::uint64_t pivots_ = 0;
};

bool finite_decimal(const Rational& q) {
  mpz_class d = q.get_den();
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) d /= 2;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) d /= 5;
  return d == 1;
}

std::string decimal(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  if (finite_decimal(q)) {
    // Scale by 10^digits until integral.
    mpz_class scale = 1;
    int digits = 0;
    while (true) {
      mpz_class num = q.get_num() * scale;
      if (mpz_divisible_p(num.get_mpz_t(), q.get_den().get_mpz_t())) {
        mpz_class v = num / q.get_den();
        const bool negative = v < 0;
        if (negative) v = -v;
        std::string s = v.get_str();
        if (static_cast<int>(s.size()) <= digits) s.insert(0, digits - s.size() + 1, '0');
        s.insert(s.size() - digits, ".");
        return negative ? "-" + s : s;
      }
      scale *= 10;
      ++digits;
    }
  }
  std::ostringstream os;
  os.precision(17);
  os << to_double(q);
  return os.str();
}

void write_terms(std::ostream& out, std::ostream& sidecar, const std::string& row,
                 const std::vector<std::pair<int, Rational>>& terms, const LinearProgram& lp) {
  if (terms.empty()) {
    out << " 0 " << (lp.variables() > 0 ? lp.name(0) : "x");
    return;
  }
  int col = 0;
  for (const auto& [v, c] : terms) {
    out << (c < 0 ? " - " : " + ") << decimal(abs(c)) << ' ' << lp.name(v);
    if (!finite_decimal(c)) sidecar << row << ' ' << lp.name(v) << ' ' << to_string(c) << '\n';
    if (++col % 6 == 0) out << "\n  ";
  }
}

}  // namespace

LpSolution solve(const LinearProgram& lp, Pricing pricing) {
  // Structural, slack and artificial columns of the dense tableau.
  const std::uint64_t cells = static_cast<std::uint64_t>(lp.rows()) * (lp.variables() + 2ULL * lp.rows() + 1);
  if (cells > kMaxTableauCells) {
    throw ScopeExceeded("LP tableau of " + std::to_string(lp.rows()) + " rows x " +
                        std::to_string(lp.variables()) + " variables exceeds " +
                        std::to_string(kMaxTableauCells) + " cells");
  }
  Tableau t(lp, pricing);
  return t.run();
}

CertificateCheck verify_certificate(const LinearProgram& lp, const LpSolution& s) {
  auto fail = [](std::string why) { return CertificateCheck{false, std::move(why)}; };
  if (s.status != LpStatus::Optimal) return fail("solution is not optimal");
  if (static_cast<int>(s.primal.size()) != lp.variables()) return fail("primal has the wrong length");
  if (static_cast<int>(s.dual.size()) != lp.rows()) return fail("dual has the wrong length");
  const bool maximize = lp.goal() == LinearProgram::Goal::Maximize;

  for (int j = 0; j < lp.variables(); ++j) {
    if (s.primal[j] < 0) return fail("variable " + lp.name(j) + " is negative");
  }
  Rational primal_value = 0;
  for (int j = 0; j < lp.variables(); ++j) primal_value += lp.objective(j) * s.primal[j];
  if (primal_value != s.objective) return fail("reported objective differs from c.x");

  std::vector<Rational> column(lp.variables(), Rational(0));
  Rational dual_value = 0;
  for (int i = 0; i < lp.rows(); ++i) {
    const Row& row = lp.constraints()[i];
    Rational lhs = 0;
    for (const auto& t : row.terms) {
      lhs += t.coef * s.primal[t.var];
      column[t.var] += t.coef * s.dual[i];
    }
    const bool ok = row.sense == Sense::LessEqual      ? lhs <= row.rhs
                    : row.sense == Sense::GreaterEqual ? lhs >= row.rhs
                                                       : lhs == row.rhs;
    if (!ok) return fail("row " + row.name + " is violated");
    const Rational& y = s.dual[i];
    // Sign conventions of the dual of a maximization; mirrored for a
    // minimization.
    const Rational oriented = maximize ? y : Rational(-y);
    if (row.sense == Sense::LessEqual && oriented < 0) return fail("dual of row " + row.name + " has the wrong sign");
    if (row.sense == Sense::GreaterEqual && oriented > 0) {
      return fail("dual of row " + row.name + " has the wrong sign");
    }
    dual_value += row.rhs * y;
  }
  for (int j = 0; j < lp.variables(); ++j) {
    const bool ok = maximize ? column[j] >= lp.objective(j) : column[j] <= lp.objective(j);
    if (!ok) return fail("dual constraint of variable " + lp.name(j) + " is violated");
  }
  if (dual_value != primal_value) {
    return fail("duality gap " + to_string(Rational(primal_value - dual_value)));
  }
  return {true, {}};
}

void write_lp(const LinearProgram& lp, std::ostream& out, std::ostream& sidecar) {
  out << (lp.goal() == LinearProgram::Goal::Maximize ? "Maximize\n" : "Minimize\n") << " obj:";
  std::vector<std::pair<int, Rational>> obj;
  for (int j = 0; j < lp.variables(); ++j) {
    if (lp.objective(j) != 0) obj.emplace_back(j, lp.objective(j));
  }
  write_terms(out, sidecar, "obj", obj, lp);
  out << "\nSubject To\n";
  for (const auto& row : lp.constraints()) {
    out << ' ' << row.name << ':';
    std::vector<std::pair<int, Rational>> terms;
    for (const auto& t : row.terms) terms.emplace_back(t.var, t.coef);
    write_terms(out, sidecar, row.name, terms, lp);
    out << (row.sense == Sense::LessEqual ? " <= " : row.sense == Sense::GreaterEqual ? " >= " : " = ")
        << decimal(row.rhs) << '\n';
    if (!finite_decimal(row.rhs)) sidecar << row.name << " rhs " << to_string(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.variables(); ++j) out << ' ' << lp.name(j) << " >= 0\n";
  out << "End\n";
}

}  // namespace nspcp
