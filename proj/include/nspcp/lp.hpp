#pragma once

// Exact-rational linear programs over nonnegative variables, solved by a
// two-phase tableau simplex.
//
// Pricing is Dantzig's largest reduced cost, switching to Bland's rule
// (lowest index enters, lowest basic index leaves on ties) for as long as
// pivots are degenerate, so the method cannot cycle. Pricing::Bland uses
// Bland's rule throughout.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nspcp/rational.hpp"

namespace nspcp {

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Term {
  int var;
  Rational coef;
};

struct Row {
  std::vector<Term> terms;
  Sense sense;
  Rational rhs;
  std::string name;
};

class LinearProgram {
 public:
  enum class Goal { Maximize, Minimize };

  explicit LinearProgram(Goal goal = Goal::Maximize) : goal_(goal) {}

  void set_goal(Goal goal) { goal_ = goal; }
  int add_variable(std::string name, Rational objective = 0);
  void set_objective(int var, Rational coef);
  void add_objective(int var, const Rational& coef);
  // Duplicate variables in `terms` are summed.
  void add_row(std::vector<Term> terms, Sense sense, Rational rhs, std::string name = {});

  Goal goal() const { return goal_; }
  int variables() const { return static_cast<int>(names_.size()); }
  int rows() const { return static_cast<int>(rows_.size()); }
  const std::string& name(int var) const { return names_[var]; }
  const Rational& objective(int var) const { return objective_[var]; }
  const std::vector<Rational>& objective() const { return objective_; }
  const std::vector<Row>& constraints() const { return rows_; }

 private:
  Goal goal_;
  std::vector<std::string> names_;
  std::vector<Rational> objective_;
  std::vector<Row> rows_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class Pricing { Bland, DantzigBland };

std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational objective = 0;
  std::vector<Rational> primal;
  // One multiplier per row, signed for the program's own goal: for a
  // maximization, y >= 0 on <= rows, y <= 0 on >= rows, and A^T y >= c.
  std::vector<Rational> dual;
  std::uint64_t pivots = 0;
};

// Dense exact tableaus beyond this many entries are refused (ScopeExceeded).
inline constexpr std::uint64_t kMaxTableauCells = std::uint64_t{1} << 22;

LpSolution solve(const LinearProgram& lp, Pricing pricing = Pricing::DantzigBland);

struct CertificateCheck {
  bool ok = false;
  std::string failure;  // empty when ok
};

// Re-derives primal feasibility, dual feasibility and a zero duality gap by
// substitution into the program's rows.
CertificateCheck verify_certificate(const LinearProgram& lp, const LpSolution& solution);

// CPLEX LP text. Coefficients that are not finite decimals are written to
// 17 significant digits and listed exactly ("row var p/q" or
// "row rhs p/q") in the sidecar.
void write_lp(const LinearProgram& lp, std::ostream& out, std::ostream& sidecar);

}  // namespace nspcp
