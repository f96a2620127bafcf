#include "polycone/affine.hpp"

#include "polycone/errors.hpp"
#include "polycone/linalg.hpp"

namespace polycone {

AffineSubspace::AffineSubspace(ExactVector base, RationalMatrix directions) : base_(std::move(base)) {
  std::size_t n = base_.size();
  for (const auto& d : directions)
    if (d.size() != n) throw DimensionMismatch("direction has wrong dimension");
  dirs_ = row_basis(directions, n);
  equations_ = orthogonal_complement(dirs_, n);
  // the base can be swapped for a rational point iff every radical component
  // of it is a direction
  bool ok = true;
  RationalVector rat(n, 0);
  for (const auto& [d, comp] : split_components(base_)) {
    if (d == 1) {
      rat = comp;
      continue;
    }
    for (const auto& e : equations_)
      if (sgn(dot(e, comp)) != 0) ok = false;
  }
  if (ok) rational_point_ = rat;
}

bool AffineSubspace::contains(const ExactVector& x) const {
  if (x.size() != base_.size()) throw DimensionMismatch("contains: dimension mismatch");
  ExactVector diff = sub(x, base_);
  for (const auto& e : equations_)
    if (!dot(e, diff).is_zero()) return false;
  return true;
}

std::optional<AffineSubspace> solve_affine(const RationalMatrix& a, const ExactVector& b) {
  if (a.empty()) throw DimensionMismatch("solve_affine: empty system has no ambient dimension");
  std::size_t n = a[0].size();
  if (a.size() != b.size()) throw DimensionMismatch("solve_affine: rows and right-hand side differ");
  auto x = solve_particular(a, b, n);
  if (!x) return std::nullopt;
  return AffineSubspace(*x, nullspace(a, n));
}

}  // namespace polycone
