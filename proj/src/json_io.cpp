#include "polycone/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace polycone::json_io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

void need_array(const json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + ": expected an array");
}

}  // namespace

Rational to_rational(const json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InvalidInput& e) {
      throw SchemaError(e.what());
    }
  }
  throw SchemaError("rational: expected \"p/q\" or an integer");
}

json from_rational(const Rational& q) { return to_string(q); }

RationalVector to_rational_vector(const json& j) {
  need_array(j, "vector");
  RationalVector v;
  for (const auto& e : j) v.push_back(to_rational(e));
  return v;
}

RationalMatrix to_rational_matrix(const json& j) {
  need_array(j, "matrix");
  RationalMatrix m;
  for (const auto& r : j) m.push_back(to_rational_vector(r));
  return m;
}

IntVector to_int_vector(const json& j) {
  need_array(j, "integer vector");
  IntVector v;
  for (const auto& e : j) {
    Rational q = to_rational(e);
    if (q.get_den() != 1) throw SchemaError("integer vector: non-integral entry " + to_string(q));
    if (!q.get_num().fits_slong_p()) throw SchemaError("integer vector: entry too large");
    v.push_back(q.get_num().get_si());
  }
  return v;
}

std::vector<IntVector> to_int_matrix(const json& j) {
  need_array(j, "integer matrix");
  std::vector<IntVector> m;
  for (const auto& r : j) m.push_back(to_int_vector(r));
  return m;
}

json from_vector(const RationalVector& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(from_rational(q));
  return a;
}

json from_matrix(const RationalMatrix& m) {
  json a = json::array();
  for (const auto& r : m) a.push_back(from_vector(r));
  return a;
}

json from_vector(const IntVector& v) {
  json a = json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

json from_matrix(const std::vector<IntVector>& m) {
  json a = json::array();
  for (const auto& r : m) a.push_back(from_vector(r));
  return a;
}

ExactVector to_exact_vector(const json& j) {
  need_array(j, "exact vector");
  struct Raw {
    Rational rat;
    std::vector<std::pair<long, Rational>> rad;
  };
  std::vector<Raw> raw;
  std::vector<long> radicands;
  for (const auto& e : j) {
    Raw r;
    if (e.is_object()) {
      r.rat = e.contains("rat") ? to_rational(e.at("rat")) : Rational(0);
      if (e.contains("rad")) {
        need_array(e.at("rad"), "rad");
        for (const auto& t : e.at("rad")) {
          const auto& d = field(t, "d");
          if (!d.is_number_integer()) throw SchemaError("rad: d must be an integer");
          long dv = d.get<long>();
          if (dv <= 1 || !is_square_free(dv)) throw SchemaError("rad: d must be square-free and > 1");
          r.rad.push_back({dv, to_rational(field(t, "c"))});
          radicands.push_back(dv);
        }
      }
    } else {
      r.rat = to_rational(e);
    }
    raw.push_back(std::move(r));
  }
  FieldPtr f = radicands.empty() ? nullptr : make_field(radicands);
  ExactVector out;
  for (const auto& r : raw) {
    ExactScalar x(r.rat);
    for (const auto& [d, c] : r.rad) x += ExactScalar(c) * ExactScalar::sqrt_of(d, f);
    out.push_back(x);
  }
  return out;
}

json from_scalar(const ExactScalar& x) {
  json rad = json::array();
  for (const auto& t : x.radical_terms()) rad.push_back({{"d", t.d}, {"c", from_rational(t.coeff)}});
  return {{"rat", from_rational(x.rational_part())}, {"rad", rad}};
}

json from_vector(const ExactVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(from_scalar(x));
  return a;
}

RationalCone to_cone(const json& j) {
  if (j.is_object() && j.contains("rays")) {
    auto rays = to_rational_matrix(j.at("rays"));
    if (rays.empty()) {
      if (!j.contains("dim")) throw SchemaError("cone: empty ray list needs \"dim\"");
      return RationalCone::from_generators(rays, j.at("dim").get<std::size_t>());
    }
    return RationalCone::from_generators(rays, rays[0].size());
  }
  if (j.is_object() && j.contains("ineqs")) {
    auto ineqs = to_rational_matrix(j.at("ineqs"));
    RationalMatrix eqs = j.contains("eqs") ? to_rational_matrix(j.at("eqs")) : RationalMatrix{};
    std::size_t d = !ineqs.empty() ? ineqs[0].size() : !eqs.empty() ? eqs[0].size() : 0;
    if (j.contains("dim")) d = j.at("dim").get<std::size_t>();
    if (d == 0) throw SchemaError("cone: cannot infer the dimension");
    return RationalCone::from_inequalities(ineqs, d, eqs);
  }
  throw SchemaError("cone: expected \"rays\" or \"ineqs\"");
}

json from_cone(const RationalCone& c) {
  json eqs = json::array();
  for (const auto& e : c.equations()) eqs.push_back(from_vector(e));
  return {{"rays", from_matrix(c.extremal_rays())}, {"ineqs", from_matrix(c.facets())}, {"eqs", eqs},
          {"dim", c.ambient_dim()}};
}

AffineMonoid to_monoid(const json& j) {
  auto gens = to_int_matrix(field(j, "gens"));
  if (gens.empty()) throw SchemaError("monoid: empty generator list");
  Lattice l = Lattice::Z;
  if (j.contains("lattice")) {
    auto s = j.at("lattice").get<std::string>();
    if (s == "N") l = Lattice::N;
    else if (s != "Z") throw SchemaError("monoid: lattice must be \"N\" or \"Z\"");
  }
  return AffineMonoid(gens, gens[0].size(), l);
}

json from_monoid(const AffineMonoid& s) {
  return {{"gens", from_matrix(s.generators())}, {"lattice", s.lattice() == Lattice::N ? "N" : "Z"}};
}

PLFunction to_plfunction(const json& j) {
  const auto& fan = field(j, "fan");
  const auto& pieces = field(j, "pieces");
  need_array(fan, "fan");
  need_array(pieces, "pieces");
  if (fan.size() != pieces.size()) throw SchemaError("plfunction: one piece per cone");
  PLFunction f;
  for (const auto& c : fan) f.fan.push_back(to_cone(c));
  for (const auto& p : pieces) {
    if (p.is_array() && !p.empty() && p[0].is_array()) f.pieces.push_back(to_rational_matrix(p));
    else f.pieces.push_back({to_rational_vector(p)});
  }
  if (f.fan.empty()) throw SchemaError("plfunction: empty fan");
  f.value_dim = f.pieces[0].size();
  for (const auto& p : f.pieces)
    if (p.size() != f.value_dim) throw SchemaError("plfunction: pieces of different value dimension");
  return f;
}

json from_plfunction(const PLFunction& f) {
  json fan = json::array(), pieces = json::array();
  for (const auto& c : f.fan) fan.push_back(from_cone(c));
  for (const auto& p : f.pieces) pieces.push_back(f.value_dim == 1 ? from_vector(p[0]) : from_matrix(p));
  return {{"fan", fan}, {"pieces", pieces}};
}

json from_tuple(const ApproximationTuple& t) {
  json pts = json::array(), weights = json::array();
  for (const auto& p : t.points) pts.push_back(from_vector(p));
  for (const auto& w : t.weights) weights.push_back(from_scalar(w));
  return {{"points", pts}, {"k", t.k}, {"denominators", from_vector(IntVector(t.denominators))}, {"weights", weights}};
}

json from_subspace(const AffineSubspace& w) {
  json out = {{"base", from_vector(w.base_point())}, {"directions", from_matrix(w.direction_basis())},
              {"dim", w.dim()}, {"rational", w.is_rational()}};
  if (w.rational_point()) out["rational_point"] = from_vector(*w.rational_point());
  return out;
}

ToricModel to_model(const json& j) {
  auto rays = to_int_matrix(field(j, "rays"));
  const auto& mc = field(j, "max_cones");
  need_array(mc, "max_cones");
  std::vector<std::vector<std::size_t>> cones;
  for (const auto& c : mc) {
    need_array(c, "max cone");
    std::vector<std::size_t> idx;
    for (const auto& i : c) {
      if (!i.is_number_unsigned()) throw SchemaError("max cone: ray indices must be nonnegative integers");
      idx.push_back(i.get<std::size_t>());
    }
    cones.push_back(idx);
  }
  return ToricModel(rays, cones);
}

TorusDivisor to_divisor(const json& j) {
  if (j.is_object()) return to_rational_vector(field(j, "coefficients"));
  return to_rational_vector(j);
}

DivisorFamily to_family(const json& j) {
  const auto& l = field(j, "grading_gens");
  if (!l.is_number_unsigned()) throw SchemaError("family: grading_gens must be a nonnegative integer");
  DivisorFamily f;
  f.grading_rank = l.get<std::size_t>();
  f.matrix = to_rational_matrix(field(j, "matrix"));
  for (const auto& r : f.matrix)
    if (r.size() != f.grading_rank) throw SchemaError("family: each matrix row needs grading_gens entries");
  return f;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace polycone::json_io
