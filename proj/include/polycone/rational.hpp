#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace polycone {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;
using IntVector = std::vector<std::int64_t>;

Rational parse_rational(std::string_view s);
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

std::int64_t to_int64(const Integer& z);
Integer lcm_of_denominators(const RationalVector& v);

RationalVector to_rational(const IntVector& v);
RationalMatrix to_rational(const std::vector<IntVector>& rows);

// positive multiple of v with coprime integer entries; zero stays zero
IntVector primitive(const RationalVector& v);
IntVector primitive(const IntVector& v);

Rational dot(const RationalVector& a, const RationalVector& b);
Rational dot(const IntVector& a, const RationalVector& b);
std::int64_t dot(const IntVector& a, const IntVector& b);

RationalVector add(const RationalVector& a, const RationalVector& b);
RationalVector sub(const RationalVector& a, const RationalVector& b);
RationalVector scale(const Rational& c, const RationalVector& v);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(std::int64_t c, const IntVector& v);

bool is_zero_vector(const RationalVector& v);
bool is_zero_vector(const IntVector& v);
Rational sup_norm(const RationalVector& v);
Rational l1_norm(const RationalVector& v);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace polycone
