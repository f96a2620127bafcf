#pragma once

#include "polycone/affine.hpp"
#include "polycone/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polycone {

// (x_i, k, k_i, r_i) uniformly approximating x
struct ApproximationTuple {
  std::vector<RationalVector> points;
  std::int64_t k = 1;
  std::vector<std::int64_t> denominators;
  std::vector<ExactScalar> weights;
};

// empty string when all three conditions and positivity hold exactly
std::string check_tuple(const ExactVector& x, const Rational& eps, const ApproximationTuple& t);

// a0 + span of the radical components of x
AffineSubspace smallest_rational_affine(const ExactVector& x);

// Points of W, the smallest rational affine space of x, with x in the relative
// interior of their convex hull. Scans denominators up to the budget.
ApproximationTuple uniform_approximate(const ExactVector& x, std::int64_t k, const Rational& eps,
                                       std::int64_t denominator_budget = 1000000);

struct Extension {
  ApproximationTuple tuple;  // x1, x2 first, then points of W
  RationalVector x2;
  std::int64_t k2 = 0;
  ExactVector xi;   // x - (k1 x1 + k2 x2)/(k1 + k2)
  ExactVector aux;  // y/k2, lies in W
};

Extension extend_approximation(const ExactVector& x, std::int64_t k, const Rational& eps, const Rational& eta,
                               const RationalVector& x1, std::int64_t k1, std::int64_t budget = 1000000);

// smallest N in [1, budget] with N x within delta of target modulo Z^n (sup-norm)
std::optional<std::int64_t> torus_scan(const ExactVector& x, const ExactVector& target, const Rational& delta,
                                       std::int64_t budget);

// Rational s in K with |s - r| < eps: the free coordinates of r are cut to
// decimals and the rest follows from K. Rows of keep_positive that are
// positive at r stay positive at s.
RationalVector nearest_rational_in_subspace(const AffineSubspace& k, const ExactVector& r, const Rational& eps,
                                            const std::vector<RationalVector>& keep_positive = {});

}  // namespace polycone
