#pragma once

#include "polycone/cone.hpp"

namespace polycone {

class RationalPolytope {
 public:
  RationalPolytope() = default;
  explicit RationalPolytope(std::size_t dim) : ambient_(dim) {}
  static RationalPolytope from_points(const std::vector<RationalVector>& pts, std::size_t dim);

  std::size_t ambient_dim() const { return ambient_; }
  bool empty() const { return vertices_.empty(); }
  const std::vector<RationalVector>& vertices() const { return vertices_; }
  // dimension of the affine hull; -1 for the empty polytope
  int dim() const;
  bool contains(const RationalVector& x) const;
  // cone over {1} x P
  const RationalCone& homogenization() const { return hom_; }

  bool operator==(const RationalPolytope& o) const {
    return ambient_ == o.ambient_ && vertices_ == o.vertices_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<RationalVector> vertices_;
  RationalCone hom_;
};

RationalPolytope minkowski_sum(const RationalPolytope& p, const RationalPolytope& q);
RationalCone cone_over(const RationalPolytope& b);

}  // namespace polycone
