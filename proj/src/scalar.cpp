#include "polycone/scalar.hpp"

#include "polycone/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace polycone {

namespace {

std::vector<long> prime_factors(long d) {
  std::vector<long> ps;
  for (long p = 2; p * p <= d; ++p) {
    if (d % p == 0) {
      ps.push_back(p);
      while (d % p == 0) d /= p;
    }
  }
  if (d > 1) ps.push_back(d);
  return ps;
}

// sqrt(a) sqrt(b) = g sqrt(a b / g^2) for square-free a, b
std::pair<long, long> radical_product(long a, long b) {
  long g = std::gcd(a, b);
  return {g, (a / g) * (b / g)};
}

}  // namespace

bool is_square_free(long d) {
  if (d < 1) return false;
  for (long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

QuadraticField::QuadraticField(std::vector<long> generators) : generators_(std::move(generators)) {
  std::sort(generators_.begin(), generators_.end());
  generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
  std::vector<long> span{1};
  for (long g : generators_) {
    if (g <= 1 || !is_square_free(g))
      throw InvalidInput("radicand must be square-free and > 1: " + std::to_string(g));
    std::vector<long> next = span;
    for (long s : span) next.push_back(radical_product(s, g).second);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    span = next;
  }
  for (long s : span)
    if (s > 1) radicands_.push_back(s);
  for (long g : generators_)
    for (long p : prime_factors(g)) primes_.push_back(p);
  std::sort(primes_.begin(), primes_.end());
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

bool QuadraticField::contains(long d) const {
  return d == 1 || std::binary_search(radicands_.begin(), radicands_.end(), d);
}

FieldPtr make_field(std::vector<long> generators) {
  return std::make_shared<const QuadraticField>(std::move(generators));
}

ExactScalar::ExactScalar(Rational rat, std::vector<RadicalTerm> terms, FieldPtr field)
    : rat_(std::move(rat)), terms_(std::move(terms)), field_(std::move(field)) {
  for (const auto& t : terms_) {
    if (t.d <= 1 || !is_square_free(t.d))
      throw InvalidInput("radicand must be square-free and > 1: " + std::to_string(t.d));
    if (!field_ && sgn(t.coeff) != 0) throw InvalidInput("radical term without a field context");
    if (field_ && !field_->contains(t.d))
      throw ContextMismatch("radicand " + std::to_string(t.d) + " outside the field");
  }
  normalize();
}

ExactScalar ExactScalar::sqrt_of(long d, FieldPtr field) {
  if (d == 1) return ExactScalar(1);
  if (!field) field = make_field({d});
  return ExactScalar(Rational(0), {{d, Rational(1)}}, std::move(field));
}

void ExactScalar::normalize() {
  std::map<long, Rational> acc;
  for (auto& t : terms_)
    if (sgn(t.coeff) != 0) acc[t.d] += t.coeff;
  terms_.clear();
  for (auto& [d, c] : acc)
    if (sgn(c) != 0) terms_.push_back({d, c});
}

Rational ExactScalar::coefficient(long d) const {
  if (d == 1) return rat_;
  for (const auto& t : terms_)
    if (t.d == d) return t.coeff;
  return 0;
}

FieldPtr ExactScalar::merge_fields(const FieldPtr& a, const FieldPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (*a == *b) return a;
  throw ContextMismatch("arithmetic between different radicand contexts");
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar r = *this;
  r.rat_ = -r.rat_;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  field_ = merge_fields(field_, o.field_);
  rat_ += o.rat_;
  if (!o.terms_.empty()) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
  }
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) { return *this += -o; }

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  field_ = merge_fields(field_, o.field_);
  if (terms_.empty() && o.terms_.empty()) {
    rat_ *= o.rat_;
    return *this;
  }
  std::map<long, Rational> acc;
  acc[1] = rat_ * o.rat_;
  for (const auto& t : terms_) acc[t.d] += t.coeff * o.rat_;
  for (const auto& t : o.terms_) acc[t.d] += t.coeff * rat_;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      auto [g, d] = radical_product(a.d, b.d);
      acc[d] += a.coeff * b.coeff * Rational(g);
    }
  rat_ = acc[1];
  terms_.clear();
  for (auto& [d, c] : acc)
    if (d != 1 && sgn(c) != 0) terms_.push_back({d, c});
  return *this;
}

ExactScalar ExactScalar::conjugate(long p) const {
  ExactScalar r = *this;
  for (auto& t : r.terms_)
    if (t.d % p == 0) t.coeff = -t.coeff;
  return r;
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (terms_.empty()) return ExactScalar(Rational(1) / rat_, {}, field_);
  // multiply by conjugates until the denominator is fixed by every sigma_p
  ExactScalar num(1);
  num.field_ = field_;
  ExactScalar den = *this;
  while (!den.terms_.empty()) {
    long p = prime_factors(den.terms_.front().d).front();
    ExactScalar c = den.conjugate(p);
    den *= c;
    num *= c;
  }
  return num * ExactScalar(Rational(1) / den.rat_);
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) { return *this *= o.inverse(); }

std::pair<Rational, Rational> ExactScalar::enclosure(unsigned bits) const {
  Rational lo = rat_, hi = rat_;
  Integer scale_pow;
  mpz_ui_pow_ui(scale_pow.get_mpz_t(), 2, bits);
  for (const auto& t : terms_) {
    Integer n = Integer(t.d) * scale_pow * scale_pow;
    Integer s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    Rational a(s, scale_pow), b(Integer(s + 1), scale_pow);
    a.canonicalize();
    b.canonicalize();
    if (sgn(t.coeff) > 0) {
      lo += t.coeff * a;
      hi += t.coeff * b;
    } else {
      lo += t.coeff * b;
      hi += t.coeff * a;
    }
  }
  return {lo, hi};
}

int ExactScalar::sign() const {
  if (terms_.empty()) return sgn(rat_);
  // nonzero coordinates in a basis of independent radicals means nonzero value
  for (unsigned bits = 32;; bits *= 2) {
    auto [lo, hi] = enclosure(bits);
    if (sgn(lo) > 0) return 1;
    if (sgn(hi) < 0) return -1;
  }
}

namespace {
Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}
}  // namespace

Integer ExactScalar::floor() const {
  if (terms_.empty()) return floor_q(rat_);
  for (unsigned bits = 32;; bits *= 2) {
    auto [lo, hi] = enclosure(bits);
    Integer a = floor_q(lo), b = floor_q(hi);
    if (a == b) return a;
  }
}

Integer ExactScalar::ceil() const { return -((-*this).floor()); }

double ExactScalar::to_double() const {
  if (terms_.empty()) return rat_.get_d();
  auto [lo, hi] = enclosure(64);
  Rational mid = (lo + hi) / 2;
  return mid.get_d();
}

std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
  int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ExactScalar::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (sgn(rat_) != 0 || terms_.empty()) {
    os << rat_.get_str();
    first = false;
  }
  for (const auto& t : terms_) {
    if (!first) os << (sgn(t.coeff) < 0 ? " - " : " + ");
    else if (sgn(t.coeff) < 0) os << "-";
    Rational c = ::abs(t.coeff);
    if (c != 1) os << c.get_str() << "*";
    os << "sqrt(" << t.d << ")";
    first = false;
  }
  return os.str();
}

ExactScalar abs(const ExactScalar& x) { return x.sign() < 0 ? -x : x; }

ExactVector to_exact(const RationalVector& v) { return ExactVector(v.begin(), v.end()); }

ExactVector to_exact(const IntVector& v) {
  ExactVector r;
  for (auto x : v) r.emplace_back(static_cast<long>(x));
  return r;
}

bool is_rational(const ExactVector& v) {
  return std::all_of(v.begin(), v.end(), [](const ExactScalar& s) { return s.is_rational(); });
}

RationalVector rational_part(const ExactVector& v) {
  RationalVector r;
  for (const auto& s : v) {
    if (!s.is_rational()) throw InvalidInput("vector is not rational");
    r.push_back(s.rational_part());
  }
  return r;
}

ExactScalar dot(const RationalVector& a, const ExactVector& x) {
  if (a.size() != x.size()) throw DimensionMismatch("dot: size mismatch");
  ExactScalar s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0) s += ExactScalar(a[i]) * x[i];
  return s;
}

ExactScalar dot(const IntVector& a, const ExactVector& x) { return dot(to_rational(a), x); }

ExactVector add(const ExactVector& a, const ExactVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("add: size mismatch");
  ExactVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

ExactVector sub(const ExactVector& a, const ExactVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("sub: size mismatch");
  ExactVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

ExactVector scale(const ExactScalar& c, const ExactVector& v) {
  ExactVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

ExactScalar sup_norm(const ExactVector& v) {
  ExactScalar m;
  for (const auto& s : v) {
    ExactScalar a = abs(s);
    if (a > m) m = a;
  }
  return m;
}

ExactScalar sup_distance(const ExactVector& x, const ExactVector& y) {
  if (x.size() != y.size()) throw DimensionMismatch("sup_distance: size mismatch");
  return sup_norm(sub(x, y));
}

std::vector<std::pair<long, RationalVector>> split_components(const ExactVector& x) {
  std::map<long, RationalVector> comps;
  comps[1] = RationalVector(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    comps[1][i] = x[i].rational_part();
    for (const auto& t : x[i].radical_terms()) {
      auto& v = comps[t.d];
      if (v.empty()) v.assign(x.size(), 0);
      v[i] = t.coeff;
    }
  }
  return {comps.begin(), comps.end()};
}

FieldPtr common_field(const ExactVector& x) {
  FieldPtr f;
  for (const auto& s : x) {
    if (!s.field()) continue;
    if (!f) f = s.field();
    else if (!(*f == *s.field())) throw ContextMismatch("vector mixes radicand contexts");
  }
  return f;
}

}  // namespace polycone
