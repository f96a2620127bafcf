#pragma once

#include "polycone/rational.hpp"

#include <vector>

namespace polycone {

enum class Relation { LessEq, GreaterEq, Equal };

struct LinearConstraint {
  RationalVector coeffs;
  Relation rel;
  Rational rhs;
};

struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<bool> free_vars;  // empty: every variable is >= 0
  std::vector<LinearConstraint> constraints;
  RationalVector objective;
  bool maximize = false;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  RationalVector x;
};

// exact two-phase tableau simplex with Bland's rule
LpResult solve_lp(const LinearProgram& lp);

}  // namespace polycone
