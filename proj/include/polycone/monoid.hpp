#pragma once

#include "polycone/cone.hpp"

#include <optional>
#include <vector>

namespace polycone {

enum class Lattice { N, Z };

// Hilbert basis of {x in N^n : A x >= 0, E x = 0} by completion (pair reduction)
std::vector<IntVector> hilbert_basis_orthant(const std::vector<IntVector>& ineqs,
                                             const std::vector<IntVector>& eqs, std::size_t n);
// cone given as {x : l(x) >= 0 for every row}; Z mode needs the rows to have rank n
std::vector<IntVector> hilbert_basis(const std::vector<IntVector>& halfspaces, std::size_t n, Lattice mode);
std::vector<IntVector> hilbert_basis(const RationalCone& cone, Lattice mode);

class AffineMonoid {
 public:
  AffineMonoid() = default;
  // generators keep their presented order (duplicates and zeros dropped)
  AffineMonoid(std::vector<IntVector> gens, std::size_t dim, Lattice lattice = Lattice::Z,
               std::optional<bool> saturated = std::nullopt);

  const std::vector<IntVector>& generators() const { return gens_; }
  std::size_t ambient_dim() const { return dim_; }
  Lattice lattice() const { return lattice_; }
  std::optional<bool> saturated_flag() const { return saturated_; }

  const RationalCone& cone() const { return cone_; }
  // integral functional positive on every nonzero element
  const IntVector& grading() const { return grading_; }
  // the unique minimal generating set, sorted
  std::vector<IntVector> minimal_generators() const;
  bool contains(const IntVector& x) const;
  bool is_saturated() const;

 private:
  std::vector<IntVector> gens_;
  std::size_t dim_ = 0;
  Lattice lattice_ = Lattice::Z;
  std::optional<bool> saturated_;
  RationalCone cone_;
  IntVector grading_;
};

// rows are target coordinates
struct AdditiveMap {
  std::vector<IntVector> matrix;
  std::size_t source_dim = 0;
  IntVector apply(const IntVector& x) const;
  std::size_t target_dim() const { return matrix.size(); }
};

// lex-smallest N-coefficients over S.generators(), absent if x is not in S
std::optional<IntVector> decompose(const AffineMonoid& s, const IntVector& x);

AffineMonoid intersect_with_cone(const AffineMonoid& s, const std::vector<IntVector>& halfspaces);
AffineMonoid intersect_with_cone(const AffineMonoid& s, const RationalCone& c);
AffineMonoid saturate(const AffineMonoid& s);
AffineMonoid truncate(const AffineMonoid& s, const std::vector<std::int64_t>& kappas);
AffineMonoid truncate_uniform(const AffineMonoid& s, std::int64_t kappa);
AffineMonoid preimage(const AdditiveMap& lambda, const AffineMonoid& t, const AffineMonoid& source);

// every element of S of grading degree <= bound, by closing the generators under addition
std::vector<IntVector> elements_up_to_degree(const std::vector<IntVector>& gens, const IntVector& grading,
                                             std::int64_t bound);

}  // namespace polycone
