#include "polycone/lp.hpp"

#include "polycone/errors.hpp"

namespace polycone {

namespace {

struct Tableau {
  std::vector<RationalVector> rows;  // each row: coefficients..., rhs
  RationalVector obj;                // reduced costs..., -value
  std::vector<std::size_t> basis;
  std::size_t ncols = 0;             // structural + slack + artificial columns
  std::vector<bool> allowed;

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = 0; j <= ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    if (sgn(obj[c]) != 0) {
      Rational f = obj[c];
      for (std::size_t j = 0; j <= ncols; ++j) obj[j] -= f * rows[r][j];
    }
    basis[r] = c;
  }

  void price(const RationalVector& cost) {
    obj.assign(ncols + 1, 0);
    for (std::size_t j = 0; j < ncols; ++j) obj[j] = cost[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational& cb = cost[basis[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= ncols; ++j) obj[j] -= cb * rows[i][j];
    }
  }

  // false when unbounded
  bool run() {
    while (true) {
      std::size_t enter = ncols;
      for (std::size_t j = 0; j < ncols; ++j)
        if (allowed[j] && sgn(obj[j]) < 0) {
          enter = j;
          break;
        }
      if (enter == ncols) return true;
      std::size_t leave = rows.size();
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (sgn(rows[i][enter]) <= 0) continue;
        Rational ratio = rows[i][ncols] / rows[i][enter];
        if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows.size()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  std::size_t n = lp.num_vars;
  if (lp.objective.size() != n) throw DimensionMismatch("lp: objective size");
  std::vector<bool> is_free = lp.free_vars;
  if (is_free.empty()) is_free.assign(n, false);
  // structural columns: x_j or x_j+ , x_j-
  std::vector<std::size_t> col_of(n);
  std::size_t ns = 0;
  for (std::size_t j = 0; j < n; ++j) {
    col_of[j] = ns;
    ns += is_free[j] ? 2 : 1;
  }
  std::size_t m = lp.constraints.size();
  std::size_t nslack = 0;
  for (const auto& c : lp.constraints)
    if (c.rel != Relation::Equal) ++nslack;
  Tableau t;
  t.ncols = ns + nslack + m;
  t.rows.assign(m, RationalVector(t.ncols + 1, 0));
  t.basis.assign(m, 0);
  std::size_t slack = ns;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    if (c.coeffs.size() != n) throw DimensionMismatch("lp: constraint size");
    auto& row = t.rows[i];
    for (std::size_t j = 0; j < n; ++j) {
      row[col_of[j]] = c.coeffs[j];
      if (is_free[j]) row[col_of[j] + 1] = -c.coeffs[j];
    }
    if (c.rel == Relation::LessEq) row[slack++] = 1;
    else if (c.rel == Relation::GreaterEq) row[slack++] = -1;
    row[t.ncols] = c.rhs;
    if (sgn(c.rhs) < 0)
      for (auto& v : row) v = -v;
    row[ns + nslack + i] = 1;
    t.basis[i] = ns + nslack + i;
  }
  t.allowed.assign(t.ncols, true);
  // phase one
  RationalVector cost1(t.ncols, 0);
  for (std::size_t i = 0; i < m; ++i) cost1[ns + nslack + i] = 1;
  t.price(cost1);
  t.run();
  LpResult res;
  if (sgn(t.obj[t.ncols]) != 0) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  // drive artificials out of the basis; drop redundant rows
  for (std::size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < ns + nslack) {
      ++i;
      continue;
    }
    std::size_t c = ns + nslack;
    for (std::size_t j = 0; j < ns + nslack; ++j)
      if (sgn(t.rows[i][j]) != 0) {
        c = j;
        break;
      }
    if (c < ns + nslack) {
      t.pivot(i, c);
      ++i;
    } else {
      t.rows.erase(t.rows.begin() + static_cast<long>(i));
      t.basis.erase(t.basis.begin() + static_cast<long>(i));
    }
  }
  for (std::size_t j = ns + nslack; j < t.ncols; ++j) t.allowed[j] = false;
  RationalVector cost2(t.ncols, 0);
  for (std::size_t j = 0; j < n; ++j) {
    Rational c = lp.maximize ? Rational(-lp.objective[j]) : lp.objective[j];
    cost2[col_of[j]] = c;
    if (is_free[j]) cost2[col_of[j] + 1] = -c;
  }
  t.price(cost2);
  if (!t.run()) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  RationalVector cols(t.ncols, 0);
  for (std::size_t i = 0; i < t.rows.size(); ++i) cols[t.basis[i]] = t.rows[i][t.ncols];
  res.x.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    res.x[j] = cols[col_of[j]];
    if (is_free[j]) res.x[j] -= cols[col_of[j] + 1];
  }
  res.value = dot(lp.objective, res.x);
  res.status = LpStatus::Optimal;
  return res;
}

}  // namespace polycone
