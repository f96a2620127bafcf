#pragma once

#include "polycone/errors.hpp"
#include "polycone/rational.hpp"
#include "polycone/scalar.hpp"

#include <optional>
#include <vector>

namespace polycone {

template <class T>
struct Echelon {
  std::vector<std::vector<T>> rows;  // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column of each row
};

// Gauss-Jordan over Q or over a quadratic field
template <class T>
Echelon<T> rref(std::vector<std::vector<T>> m, std::size_t ncols) {
  Echelon<T> e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && is_zero(m[p][c])) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    T inv = T(1) / m[r][c];
    for (std::size_t j = c; j < ncols; ++j) m[r][j] = m[r][j] * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      T f = m[i][c];
      for (std::size_t j = c; j < ncols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

std::size_t rank(const RationalMatrix& m, std::size_t ncols);
inline std::size_t rank(const RationalMatrix& m) { return m.empty() ? 0 : rank(m, m[0].size()); }

// basis of {x : m x = 0}, one vector per free column (canonical from the rref)
RationalMatrix nullspace(const RationalMatrix& m, std::size_t ncols);
// rows forming a basis of the row space, in rref
RationalMatrix row_basis(const RationalMatrix& m, std::size_t ncols);
// indices of a maximal independent subset of rows, chosen greedily in order
std::vector<std::size_t> independent_rows(const RationalMatrix& m, std::size_t ncols);

std::optional<RationalMatrix> inverse(const RationalMatrix& a);
std::optional<RationalVector> solve_square(const RationalMatrix& a, const RationalVector& b);
Rational determinant(RationalMatrix a);
RationalMatrix transpose(const RationalMatrix& a, std::size_t ncols);
RationalVector mat_vec(const RationalMatrix& a, const RationalVector& x);

// one solution of a x = b over the field of b, plus rational kernel
template <class T>
std::optional<std::vector<T>> solve_particular(const RationalMatrix& a, const std::vector<T>& b,
                                               std::size_t ncols) {
  if (a.size() != b.size()) throw DimensionMismatch("solve: row count mismatch");
  std::vector<std::vector<T>> aug;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != ncols) throw DimensionMismatch("solve: column count mismatch");
    std::vector<T> row;
    for (const auto& q : a[i]) row.push_back(T(q));
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  auto e = rref(std::move(aug), ncols + 1);
  std::vector<T> x(ncols, T(0));
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivots[i] == ncols) return std::nullopt;
    x[e.pivots[i]] = e.rows[i][ncols];
  }
  return x;
}

// Integer lattice tools. Column operations keep a unimodular record.
using IntegerMatrix = std::vector<std::vector<Integer>>;

struct IntegerKernel {
  std::vector<IntVector> basis;  // Z-basis of {x in Z^n : E x = 0}
};
IntegerKernel integer_kernel(const std::vector<IntVector>& e, std::size_t n);
// particular integer solution of E x = h, if any
std::optional<IntVector> integer_solve(const std::vector<IntVector>& e, const IntVector& h, std::size_t n);
// Z-basis of Z^n intersected with the rational span of the given vectors
std::vector<IntVector> lattice_basis_of_span(const RationalMatrix& span, std::size_t n);
// integer rows whose common kernel is exactly the span of the given vectors
std::vector<IntVector> orthogonal_complement(const RationalMatrix& span, std::size_t n);

}  // namespace polycone
