#pragma once

#include "polycone/rational.hpp"

#include <compare>
#include <memory>
#include <utility>
#include <vector>

namespace polycone {

// Q(sqrt d1, ..., sqrt dm). The basis is every square-free product of the
// generators, so arithmetic stays closed and normal forms are unique.
class QuadraticField {
 public:
  explicit QuadraticField(std::vector<long> generators);

  const std::vector<long>& generators() const { return generators_; }
  // square-free radicands > 1 reachable from the generators, sorted
  const std::vector<long>& radicands() const { return radicands_; }
  // primes dividing some radicand
  const std::vector<long>& primes() const { return primes_; }
  bool contains(long d) const;
  bool operator==(const QuadraticField& o) const { return radicands_ == o.radicands_; }

 private:
  std::vector<long> generators_;
  std::vector<long> radicands_;
  std::vector<long> primes_;
};

using FieldPtr = std::shared_ptr<const QuadraticField>;

FieldPtr make_field(std::vector<long> generators);
bool is_square_free(long d);

struct RadicalTerm {
  long d;
  Rational coeff;
  bool operator==(const RadicalTerm& o) const { return d == o.d && coeff == o.coeff; }
};

// a0 + sum c_j sqrt(d_j). A null field means plain Q, which mixes with any context.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(const Rational& q) : rat_(q) {}  // NOLINT implicit on purpose
  ExactScalar(long v) : rat_(v) {}             // NOLINT
  ExactScalar(int v) : rat_(v) {}              // NOLINT
  ExactScalar(Rational rat, std::vector<RadicalTerm> terms, FieldPtr field);

  static ExactScalar sqrt_of(long d, FieldPtr field);

  const Rational& rational_part() const { return rat_; }
  const std::vector<RadicalTerm>& radical_terms() const { return terms_; }
  const FieldPtr& field() const { return field_; }
  Rational coefficient(long d) const;

  bool is_rational() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty() && sgn(rat_) == 0; }
  int sign() const;

  // sigma_p: flips sqrt(d) for every radicand divisible by p
  ExactScalar conjugate(long p) const;
  ExactScalar inverse() const;
  Integer floor() const;
  Integer ceil() const;
  // rational lo <= value <= hi with hi - lo <= sum |c_j| 2^-bits
  std::pair<Rational, Rational> enclosure(unsigned bits) const;
  double to_double() const;

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.rat_ == b.rat_ && a.terms_ == b.terms_;
  }
  friend std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b);

  std::string to_string() const;

 private:
  static FieldPtr merge_fields(const FieldPtr& a, const FieldPtr& b);
  void normalize();

  Rational rat_;
  std::vector<RadicalTerm> terms_;  // sorted by d, nonzero coefficients
  FieldPtr field_;
};

inline bool is_zero(const ExactScalar& x) { return x.is_zero(); }
ExactScalar abs(const ExactScalar& x);

using ExactVector = std::vector<ExactScalar>;

ExactVector to_exact(const RationalVector& v);
ExactVector to_exact(const IntVector& v);
bool is_rational(const ExactVector& v);
RationalVector rational_part(const ExactVector& v);  // throws if not rational
ExactScalar dot(const RationalVector& a, const ExactVector& x);
ExactScalar dot(const IntVector& a, const ExactVector& x);
ExactVector add(const ExactVector& a, const ExactVector& b);
ExactVector sub(const ExactVector& a, const ExactVector& b);
ExactVector scale(const ExactScalar& c, const ExactVector& v);
ExactScalar sup_norm(const ExactVector& v);
ExactScalar sup_distance(const ExactVector& x, const ExactVector& y);

// x = sum_d sqrt(d) * comp[d], with d = 1 for the rational component
std::vector<std::pair<long, RationalVector>> split_components(const ExactVector& x);
FieldPtr common_field(const ExactVector& x);

}  // namespace polycone
