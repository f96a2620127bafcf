#include "polycone/linalg.hpp"

#include <algorithm>

namespace polycone {

std::size_t rank(const RationalMatrix& m, std::size_t ncols) { return rref(m, ncols).rows.size(); }

RationalMatrix nullspace(const RationalMatrix& m, std::size_t ncols) {
  auto e = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(ncols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalMatrix row_basis(const RationalMatrix& m, std::size_t ncols) { return rref(m, ncols).rows; }

std::vector<std::size_t> independent_rows(const RationalMatrix& m, std::size_t ncols) {
  std::vector<std::size_t> idx;
  RationalMatrix cur;
  for (std::size_t i = 0; i < m.size(); ++i) {
    cur.push_back(m[i]);
    if (rank(cur, ncols) == cur.size()) idx.push_back(i);
    else cur.pop_back();
    if (cur.size() == ncols) break;
  }
  return idx;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  std::size_t n = a.size();
  RationalMatrix aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw DimensionMismatch("inverse: matrix not square");
    aug[i] = a[i];
    aug[i].resize(2 * n, 0);
    aug[i][n + i] = 1;
  }
  auto e = rref(std::move(aug), 2 * n);
  if (e.rows.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  RationalMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i].assign(e.rows[i].begin() + n, e.rows[i].end());
  return inv;
}

std::optional<RationalVector> solve_square(const RationalMatrix& a, const RationalVector& b) {
  if (rank(a, a.size()) < a.size()) return std::nullopt;
  return solve_particular(a, b, a.size());
}

Rational determinant(RationalMatrix a) {
  std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

RationalMatrix transpose(const RationalMatrix& a, std::size_t ncols) {
  RationalMatrix t(ncols, RationalVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) t[j][i] = a[i][j];
  return t;
}

RationalVector mat_vec(const RationalMatrix& a, const RationalVector& x) {
  RationalVector r;
  r.reserve(a.size());
  for (const auto& row : a) r.push_back(dot(row, x));
  return r;
}

namespace {

// Column-style Hermite reduction: returns H = E U (lower echelon) and U unimodular.
struct ColumnHermite {
  IntegerMatrix h;
  IntegerMatrix u;  // n x n
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};

ColumnHermite column_hermite(const std::vector<IntVector>& e, std::size_t n) {
  ColumnHermite ch;
  std::size_t m = e.size();
  ch.h.assign(m, std::vector<Integer>(n));
  for (std::size_t i = 0; i < m; ++i) {
    if (e[i].size() != n) throw DimensionMismatch("integer matrix column mismatch");
    for (std::size_t j = 0; j < n; ++j) ch.h[i][j] = static_cast<long>(e[i][j]);
  }
  ch.u.assign(n, std::vector<Integer>(n));
  for (std::size_t j = 0; j < n; ++j) ch.u[j][j] = 1;
  auto col_swap = [&](std::size_t a, std::size_t b) {
    for (auto& row : ch.h) std::swap(row[a], row[b]);
    for (auto& row : ch.u) std::swap(row[a], row[b]);
  };
  // col[b] -= q col[a]
  auto col_axpy = [&](std::size_t a, std::size_t b, const Integer& q) {
    for (auto& row : ch.h) row[b] -= q * row[a];
    for (auto& row : ch.u) row[b] -= q * row[a];
  };
  std::size_t c = 0;
  for (std::size_t i = 0; i < m && c < n; ++i) {
    // Euclid across columns c..n-1 on row i
    while (true) {
      std::size_t best = n;
      for (std::size_t j = c; j < n; ++j)
        if (ch.h[i][j] != 0 && (best == n || abs(ch.h[i][j]) < abs(ch.h[i][best]))) best = j;
      if (best == n) break;
      col_swap(c, best);
      bool done = true;
      for (std::size_t j = c + 1; j < n; ++j) {
        if (ch.h[i][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), ch.h[i][j].get_mpz_t(), ch.h[i][c].get_mpz_t());
        col_axpy(c, j, q);
        if (ch.h[i][j] != 0) done = false;
      }
      if (done) break;
    }
    if (ch.h[i][c] != 0) {
      if (ch.h[i][c] < 0) {
        for (auto& row : ch.h) row[c] = -row[c];
        for (auto& row : ch.u) row[c] = -row[c];
      }
      ch.pivot_rows.push_back(i);
      ++c;
    }
  }
  ch.rank = c;
  return ch;
}

}  // namespace

IntegerKernel integer_kernel(const std::vector<IntVector>& e, std::size_t n) {
  auto ch = column_hermite(e, n);
  IntegerKernel k;
  for (std::size_t j = ch.rank; j < n; ++j) {
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = to_int64(ch.u[i][j]);
    k.basis.push_back(std::move(v));
  }
  return k;
}

std::optional<IntVector> integer_solve(const std::vector<IntVector>& e, const IntVector& h, std::size_t n) {
  if (e.size() != h.size()) throw DimensionMismatch("integer_solve: size mismatch");
  auto ch = column_hermite(e, n);
  // H y = h with H lower echelon in its first rank columns
  std::vector<Integer> y(n, 0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    Integer r = static_cast<long>(h[i]);
    std::size_t upto = (k < ch.rank && ch.pivot_rows[k] == i) ? k : std::min(k, ch.rank);
    for (std::size_t j = 0; j < upto; ++j) r -= ch.h[i][j] * y[j];
    if (k < ch.rank && ch.pivot_rows[k] == i) {
      if (!mpz_divisible_p(r.get_mpz_t(), ch.h[i][k].get_mpz_t())) return std::nullopt;
      y[k] = r / ch.h[i][k];
      ++k;
    } else if (r != 0) {
      return std::nullopt;
    }
  }
  IntVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < n; ++j) s += ch.u[i][j] * y[j];
    x[i] = to_int64(s);
  }
  return x;
}

std::vector<IntVector> orthogonal_complement(const RationalMatrix& span, std::size_t n) {
  std::vector<IntVector> out;
  if (span.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      IntVector e(n, 0);
      e[i] = 1;
      out.push_back(e);
    }
    return out;
  }
  for (const auto& v : nullspace(span, n)) out.push_back(primitive(v));
  return out;
}

std::vector<IntVector> lattice_basis_of_span(const RationalMatrix& span, std::size_t n) {
  return integer_kernel(orthogonal_complement(span, n), n).basis;
}

}  // namespace polycone
