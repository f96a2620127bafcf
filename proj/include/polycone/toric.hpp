#pragma once

#include "polycone/monoid.hpp"
#include "polycone/plfun.hpp"
#include "polycone/polytope.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polycone {

// Complete fan with primitive ray generators; maximal cones are index lists.
class ToricModel {
 public:
  ToricModel() = default;
  // throws InvalidInput unless the rays are primitive and the fan is complete
  ToricModel(std::vector<IntVector> rays, std::vector<std::vector<std::size_t>> max_cones);

  std::size_t dim() const { return dim_; }
  std::size_t num_rays() const { return rays_.size(); }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<std::vector<std::size_t>>& max_cones() const { return cones_; }
  // every maximal cone simplicial and unimodular; other fans are best effort
  bool smooth() const { return smooth_; }
  bool simplicial() const { return simplicial_; }

  // toric canonical class -sum D_rho
  RationalVector canonical() const { return RationalVector(rays_.size(), Rational(-1)); }

 private:
  std::size_t dim_ = 0;
  std::vector<IntVector> rays_;
  std::vector<std::vector<std::size_t>> cones_;
  bool smooth_ = false;
  bool simplicial_ = false;
};

// standard small models
ToricModel projective_line();
ToricModel projective_plane();
// plane blown up at the fixed point of cone((1,0),(0,1)); the exceptional ray (1,1) is last
ToricModel blown_up_plane();
ToricModel hirzebruch(std::int64_t a);

// coefficient a_rho per ray
using TorusDivisor = RationalVector;

// mu(s) = matrix * s for s in N^l; matrix has one row per ray
struct DivisorFamily {
  std::size_t grading_rank = 0;
  RationalMatrix matrix;
  TorusDivisor at(const RationalVector& s) const;
};

// P_D = {u : <u, v_rho> >= -a_rho}
RationalPolytope section_polytope(const ToricModel& x, const TorusDivisor& d);
std::vector<IntVector> lattice_points(const ToricModel& x, const TorusDivisor& d);
// lcm of the vertex denominators of P_D; P_{kD} has lattice vertices for k in this multiple
std::int64_t vertex_denominator(const ToricModel& x, const TorusDivisor& d);

struct FixMob {
  TorusDivisor fix;
  TorusDivisor mob;
};

// integral minima over the lattice points of P_D; throws InvalidInput without sections
FixMob fixed_part(const ToricModel& x, const TorusDivisor& d);

// min over the real polytope P_D of <u, v_rho> + a_rho, by exact LP
Rational asymptotic_ord(const ToricModel& x, const TorusDivisor& d, std::size_t rho);
TorusDivisor nsigma(const ToricModel& x, const TorusDivisor& d);

bool is_nef(const ToricModel& x, const TorusDivisor& d);
bool is_ample(const ToricModel& x, const TorusDivisor& d);
// smallest k <= k_max with d/k - K ample, i.e. d = k(K + A) with A ample
std::optional<std::int64_t> adjoint_shape(const ToricModel& x, const TorusDivisor& d, std::int64_t k_max = 12);

struct AdjointSemigroup {
  AffineMonoid total;               // in Z^{l+n}, grading coordinates first
  std::vector<IntVector> basis;     // Hilbert basis, sorted
  std::int64_t truncation = 2;
  bool integral_over_truncation = false;  // kappa x lies in the uniform truncation for sampled x
};

// Hilbert basis of {(s,u) : s in R^l_{>=0}, u in P_{mu(s)}}
AdjointSemigroup adjoint_semigroup(const ToricModel& x, const DivisorFamily& f, std::int64_t truncation = 2);

// graded piece {u : (s,u) in the total semigroup}, by lattice enumeration
std::vector<IntVector> graded_piece(const ToricModel& x, const DivisorFamily& f, const IntVector& s);

struct OrdDecomposition {
  PLFunction ord;           // s -> ord_rho ||mu(s)||, convex
  RationalCone domain;      // part of the grading cone with nonempty section polytopes
  bool covers_grading_cone = false;
  std::size_t lp_bases = 0; // vertices of the dual polyhedron enumerated
};

// chamber decomposition by enumerating bases of the dual LP
// max{-a(s).y : y >= 0, V^T y = v_rho}
OrdDecomposition ord_pl_decomposition(const ToricModel& x, const DivisorFamily& f, std::size_t rho);

// Mob along the family as a superadditive oracle on N^l (integral matrix only)
SuperadditiveOracle mobile_oracle(const ToricModel& x, const DivisorFamily& f);

// mu(s) - N_sigma(mu(s)), the expected straightening of Mob
TorusDivisor straightened_mobile(const ToricModel& x, const DivisorFamily& f, const RationalVector& s);

// smallest p <= p_max with Mob(i p s) = i Mob(p s) for i <= i_max
std::optional<std::int64_t> mobile_truncation(const ToricModel& x, const DivisorFamily& f, const IntVector& s,
                                              std::int64_t p_max = 24, std::int64_t i_max = 5);

}  // namespace polycone
