#pragma once

#include "polycone/rational.hpp"
#include "polycone/scalar.hpp"

#include <optional>
#include <vector>

namespace polycone {

// Extreme rays of the pointed cone {y in R^d : A y >= 0}, by incremental
// double description. Throws NotPointed if rank A < d.
std::vector<IntVector> extreme_rays_dd(const RationalMatrix& a, std::size_t d);

enum class Membership { Closure, RelativeInterior, Interior };

// Pointed rational polyhedral cone. Both descriptions are computed eagerly
// and the object is immutable afterwards.
class RationalCone {
 public:
  RationalCone() = default;
  static RationalCone from_generators(const std::vector<RationalVector>& gens, std::size_t dim);
  static RationalCone from_generators(const std::vector<IntVector>& gens, std::size_t dim);
  static RationalCone from_inequalities(const std::vector<RationalVector>& ineqs, std::size_t dim,
                                        const std::vector<RationalVector>& eqs = {});
  static RationalCone from_inequalities(const std::vector<IntVector>& ineqs, std::size_t dim,
                                        const std::vector<IntVector>& eqs = {});
  static RationalCone orthant(std::size_t dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return ambient_ - equations_.size(); }
  bool is_full_dimensional() const { return equations_.empty(); }
  bool is_zero() const { return rays_.empty(); }

  // primitive, deduplicated input generators (sorted)
  const std::vector<IntVector>& generators() const { return gens_; }
  const std::vector<IntVector>& extremal_rays() const { return rays_; }
  // facet normals lying in the linear span, primitive, sorted
  const std::vector<IntVector>& facets() const { return facets_; }
  // primitive integer basis of the orthogonal complement of the span
  const std::vector<IntVector>& equations() const { return equations_; }
  // facets followed by +/- each equation: cone = {x : l(x) >= 0 for all rows}
  std::vector<IntVector> dual_description() const;

  bool contains(const RationalVector& x) const;
  bool contains(const IntVector& x) const;
  bool membership(const ExactVector& x, Membership mode) const;
  // sum of extremal rays: lies in the relative interior
  IntVector interior_ray() const;

  bool operator==(const RationalCone& o) const {
    return ambient_ == o.ambient_ && rays_ == o.rays_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<IntVector> gens_;
  std::vector<IntVector> rays_;
  std::vector<IntVector> facets_;
  std::vector<IntVector> equations_;
};

struct RayEscape {
  std::optional<ExactScalar> t_sup;  // nullopt means +infinity
  std::optional<ExactScalar> t_star;
  std::optional<ExactVector> witness;
};

// sup{t >= 1 : base + t (through - base) in cone} with the deterministic witness
RayEscape ray_escape(const RationalCone& cone, const ExactVector& base, const ExactVector& through);

// parameter t in [0,1] where l(p + t (q - p)) = c, if the segment meets the hyperplane
// in a single point
std::optional<ExactScalar> segment_hyperplane_intersection(const RationalVector& l, const ExactScalar& c,
                                                           const ExactVector& p, const ExactVector& q);

}  // namespace polycone
