#pragma once

#include "polycone/affine.hpp"
#include "polycone/dioph.hpp"
#include "polycone/errors.hpp"
#include "polycone/monoid.hpp"
#include "polycone/plfun.hpp"
#include "polycone/toric.hpp"

#include "json.hpp"

#include <string>

namespace polycone {

// input that does not match the expected JSON shape
struct SchemaError : Error {
  using Error::Error;
};

namespace json_io {

using nlohmann::json;

// rationals travel as "p/q" strings; integers are also accepted on input
Rational to_rational(const json& j);
json from_rational(const Rational& q);
RationalVector to_rational_vector(const json& j);
RationalMatrix to_rational_matrix(const json& j);
IntVector to_int_vector(const json& j);
std::vector<IntVector> to_int_matrix(const json& j);
json from_vector(const RationalVector& v);
json from_matrix(const RationalMatrix& m);
json from_vector(const IntVector& v);
json from_matrix(const std::vector<IntVector>& m);

// {"rat":"p/q","rad":[{"d":2,"c":"p/q"}]}; plain rationals are accepted on input.
// Every radicand of the vector goes into one shared field.
ExactVector to_exact_vector(const json& j);
json from_scalar(const ExactScalar& x);
json from_vector(const ExactVector& v);

// {"rays":[[...]]} or {"ineqs":[[...]], "eqs":[[...]]}
RationalCone to_cone(const json& j);
json from_cone(const RationalCone& c);

// {"gens":[[...]], "lattice":"N"|"Z"}
AffineMonoid to_monoid(const json& j);
json from_monoid(const AffineMonoid& s);

// {"fan":[cone...], "pieces":[[rational...]...]}; a piece may also be a matrix
PLFunction to_plfunction(const json& j);
json from_plfunction(const PLFunction& f);

json from_tuple(const ApproximationTuple& t);
json from_subspace(const AffineSubspace& w);

// {"rays":[[...]], "max_cones":[[...]]}
ToricModel to_model(const json& j);
// [rational...] or {"coefficients":[...]}
TorusDivisor to_divisor(const json& j);
// {"grading_gens": l, "matrix": [[rational...] per ray]}
DivisorFamily to_family(const json& j);

json parse(const std::string& text);
json read_file(const std::string& path);

// 64-bit FNV-1a of the text, as 16 hex digits
std::string fnv1a(const std::string& text);

}  // namespace json_io
}  // namespace polycone
