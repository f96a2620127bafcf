#pragma once

#include "polycone/rational.hpp"
#include "polycone/scalar.hpp"

#include <optional>
#include <vector>

namespace polycone {

// base + span(directions); directions are rational and kept in rref
class AffineSubspace {
 public:
  AffineSubspace(ExactVector base, RationalMatrix directions);

  const ExactVector& base_point() const { return base_; }
  const RationalMatrix& direction_basis() const { return dirs_; }
  std::size_t ambient_dim() const { return base_.size(); }
  std::size_t dim() const { return dirs_.size(); }

  bool contains(const ExactVector& x) const;
  bool is_rational() const { return rational_point_.has_value(); }
  // a rational point of the subspace, when one exists
  const std::optional<RationalVector>& rational_point() const { return rational_point_; }
  // integer rows E with {x : E x = E base} equal to the subspace
  const std::vector<IntVector>& equations() const { return equations_; }

 private:
  ExactVector base_;
  RationalMatrix dirs_;
  std::vector<IntVector> equations_;
  std::optional<RationalVector> rational_point_;
};

// full solution set of A x = b, or nullopt when infeasible
std::optional<AffineSubspace> solve_affine(const RationalMatrix& a, const ExactVector& b);

}  // namespace polycone
