#include "polycone/polytope.hpp"

#include "polycone/errors.hpp"
#include "polycone/linalg.hpp"

#include <algorithm>

namespace polycone {

RationalPolytope RationalPolytope::from_points(const std::vector<RationalVector>& pts, std::size_t dim) {
  RationalPolytope p(dim);
  if (pts.empty()) return p;
  std::vector<RationalVector> lifted;
  for (const auto& x : pts) {
    if (x.size() != dim) throw DimensionMismatch("point has wrong dimension");
    RationalVector y{1};
    y.insert(y.end(), x.begin(), x.end());
    lifted.push_back(std::move(y));
  }
  p.hom_ = RationalCone::from_generators(lifted, dim + 1);
  for (const auto& r : p.hom_.extremal_rays()) {
    RationalVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = Rational(static_cast<long>(r[i + 1]), static_cast<long>(r[0]));
    for (auto& q : v) q.canonicalize();
    p.vertices_.push_back(std::move(v));
  }
  std::sort(p.vertices_.begin(), p.vertices_.end());
  return p;
}

int RationalPolytope::dim() const {
  if (vertices_.empty()) return -1;
  RationalMatrix diffs;
  for (const auto& v : vertices_) diffs.push_back(sub(v, vertices_[0]));
  return static_cast<int>(rank(diffs, ambient_));
}

bool RationalPolytope::contains(const RationalVector& x) const {
  if (vertices_.empty()) return false;
  RationalVector y{1};
  y.insert(y.end(), x.begin(), x.end());
  return hom_.contains(y);
}

RationalPolytope minkowski_sum(const RationalPolytope& p, const RationalPolytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw DimensionMismatch("minkowski_sum: dimension mismatch");
  std::vector<RationalVector> pts;
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) pts.push_back(add(a, b));
  return RationalPolytope::from_points(pts, p.ambient_dim());
}

RationalCone cone_over(const RationalPolytope& b) {
  if (b.empty()) throw InvalidInput("cone_over: empty polytope");
  return RationalCone::from_generators(b.vertices(), b.ambient_dim());
}

}  // namespace polycone
