#include "polycone/rational.hpp"

#include "polycone/errors.hpp"

#include <cctype>

namespace polycone {

Rational parse_rational(std::string_view s) {
  std::string t(s);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  std::size_t i = 0;
  while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
  t = t.substr(i);
  if (t.empty()) throw InvalidInput("empty rational");
  // plain decimals are accepted as exact values: "0.25" -> 1/4
  auto dot_pos = t.find('.');
  if (dot_pos != std::string::npos) {
    if (t.find('/') != std::string::npos) throw InvalidInput("bad rational: " + t);
    std::string digits = t.substr(0, dot_pos) + t.substr(dot_pos + 1);
    std::size_t frac = t.size() - dot_pos - 1;
    Rational q;
    if (q.get_num().set_str(digits, 10) != 0) throw InvalidInput("bad rational: " + t);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    q.get_den() = den;
    q.canonicalize();
    return q;
  }
  for (char c : t)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw InvalidInput("bad rational: " + t);
  if (t[0] == '+') t = t.substr(1);
  Rational q;
  if (q.set_str(t, 10) != 0) throw InvalidInput("bad rational: " + t);
  if (sgn(q.get_den()) == 0) throw InvalidInput("zero denominator: " + t);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw Error("integer overflow: " + z.get_str());
  return z.get_si();
}

Integer lcm_of_denominators(const RationalVector& v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

RationalVector to_rational(const IntVector& v) {
  RationalVector r;
  r.reserve(v.size());
  for (auto x : v) r.emplace_back(static_cast<long>(x));
  return r;
}

RationalMatrix to_rational(const std::vector<IntVector>& rows) {
  RationalMatrix m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.push_back(to_rational(r));
  return m;
}

IntVector primitive(const RationalVector& v) {
  Integer l = lcm_of_denominators(v);
  std::vector<Integer> z;
  Integer g = 0;
  for (const auto& q : v) {
    Integer t = q.get_num() * (l / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_mpz_t());
    z.push_back(t);
  }
  IntVector out(v.size(), 0);
  if (g == 0) return out;
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = to_int64(z[i] / g);
  return out;
}

IntVector primitive(const IntVector& v) { return primitive(to_rational(v)); }

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const IntVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += Rational(static_cast<long>(a[i])) * b[i];
  return s;
}

std::int64_t dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

RationalVector add(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("add: size mismatch");
  RationalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RationalVector sub(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("sub: size mismatch");
  RationalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RationalVector scale(const Rational& c, const RationalVector& v) {
  RationalVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

IntVector add(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("add: size mismatch");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

IntVector sub(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("sub: size mismatch");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], -b[i]);
  return r;
}

IntVector scale(std::int64_t c, const IntVector& v) {
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = checked_mul(c, v[i]);
  return r;
}

bool is_zero_vector(const RationalVector& v) {
  for (const auto& q : v)
    if (sgn(q) != 0) return false;
  return true;
}

bool is_zero_vector(const IntVector& v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

Rational sup_norm(const RationalVector& v) {
  Rational m = 0;
  for (const auto& q : v) m = std::max(m, Rational(abs(q)));
  return m;
}

Rational l1_norm(const RationalVector& v) {
  Rational s = 0;
  for (const auto& q : v) s += abs(q);
  return s;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("int64 overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("int64 overflow in multiplication");
  return r;
}

}  // namespace polycone
