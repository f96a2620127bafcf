#pragma once

#include "polycone/cone.hpp"
#include "polycone/monoid.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace polycone {

// Piecewise linear function: pieces[i] is the (value_dim x n) matrix of the
// linear map on fan[i].
struct PLFunction {
  std::vector<RationalCone> fan;
  std::vector<RationalMatrix> pieces;
  std::size_t value_dim = 1;

  static PLFunction scalar(std::vector<RationalCone> fan, const std::vector<RationalVector>& pieces);

  std::size_t ambient_dim() const { return fan.empty() ? 0 : fan[0].ambient_dim(); }
  RationalCone support() const;
  // value on the first cone containing x; throws InvalidInput outside the support
  RationalVector evaluate(const RationalVector& x) const;
  Rational evaluate_scalar(const RationalVector& x) const { return evaluate(x)[0]; }
  // consistency on overlaps and coverage of the support; throws InvalidInput
  void validate(std::size_t samples = 64) const;
};

struct ConcavityCertificate {
  bool concave = true;
  // on failure: piece i falls below piece j on a ray of cone j
  std::size_t component = 0, cone_i = 0, cone_j = 0;
  IntVector wall;  // primitive normal of l_i = l_j
  IntVector ray;
};

ConcavityCertificate check_concave(const PLFunction& f);

// rational point of (0,1)^dim, Halton sequence
RationalVector low_discrepancy(std::size_t index, std::size_t dim);

struct SuperadditiveOracle {
  AffineMonoid domain;
  std::function<IntVector(const IntVector&)> evaluate;
  // lambda_s > 0 with f additive on N lambda_s s
  std::function<std::int64_t(const IntVector&)> ray_truncation;
  std::size_t value_dim = 1;
};

// first pair (a, b) of sampled elements with f(a) + f(b) not <= f(a+b)
std::optional<std::pair<IntVector, IntVector>> superadditivity_violation(const SuperadditiveOracle& f,
                                                                         std::int64_t degree_bound);

enum class Verdict { Pass, Fail, HypothesisUnmet };
std::string to_string(Verdict v);

struct AdditivityReport {
  Verdict verdict = Verdict::Pass;
  IntVector s0_coefficients;
  std::string reason;
  std::optional<IntVector> witness;  // coefficient vector where additivity fails
  std::size_t checked = 0;
};

// One-point test: checks f(s0) = sum s_i f(e_i) and f(k s0) = k f(s0) for
// k <= kappa_budget, then f(p) = sum p_i f(e_i) over coefficient vectors p
// with sum p_i <= box_sum. Throws InvalidInput if s0 has no strictly positive
// presentation.
AdditivityReport additivity_certificate(const SuperadditiveOracle& f, const IntVector& s0,
                                        std::int64_t kappa_budget = 8, std::int64_t box_sum = 15);

// f#(s) = f(k s)/k with k from ray_truncation; the truncation is re-checked on
// a few multiples and HypothesisViolated is thrown if it fails
RationalVector straightened_value(const SuperadditiveOracle& f, const RationalVector& s);

struct DetectionResult {
  PLFunction candidate;
  bool complete = false;
  std::size_t samples = 0;
  std::size_t evaluations = 0;
  std::string note;
};

// Certified search for the linearity domains of a superlinear f on a
// full-dimensional cone. Any region reported in a complete result has been
// checked exactly; completeness within the budget is best effort.
// Throws HypothesisViolated when sampled values contradict superlinearity.
DetectionResult detect_pl_2plane(const std::function<Rational(const RationalVector&)>& f, const RationalCone& c,
                                 std::size_t sample_budget, std::uint64_t seed = 0);

struct ConeReport {
  RationalCone cone;
  RationalMatrix piece;
  bool sharp_linear = false;
  bool additive_up_to_truncation = false;
  std::int64_t truncation = 1;
};

struct StraightenResult {
  PLFunction candidate;
  std::vector<ConeReport> cones;
  bool complete = false;
};

// Without a fan, the fan is detected componentwise on f# and refined.
StraightenResult straighten(const SuperadditiveOracle& f, const std::vector<RationalCone>& fan = {},
                            std::size_t sample_budget = 200, std::uint64_t seed = 0, std::int64_t box_sum = 8);

struct LipschitzBound {
  Rational delta;
  Rational m;        // sup of |f - f(x)| on B(x, 2 delta)
  Rational coarse_l;  // 2M/delta
  Rational exact_l;  // largest dual norm of a gradient whose piece meets B(x, delta)
  Rational l;        // min of the two
};

// sup-norm balls; delta defaults to a quarter of the distance from x to the boundary
LipschitzBound lipschitz_bound(const PLFunction& f, const RationalVector& x,
                               std::optional<Rational> delta = std::nullopt);

}  // namespace polycone
