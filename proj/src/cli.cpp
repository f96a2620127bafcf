#include "polycone/cli.hpp"

#include "polycone/json_io.hpp"
#include "polycone/linalg.hpp"
#include "polycone/lp.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>

#ifndef POLYCONE_VERSION
#define POLYCONE_VERSION "0.0.0"
#endif

namespace polycone::cli {

namespace {

using json_io::json;
namespace jio = json_io;

struct Options {
  std::string input, x, model, divisor, family;
  long ray = -1;
  std::int64_t k = 1;
  std::string eps = "1/4", eta = "1/10", delta;
  std::int64_t budget = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 200;
  std::int64_t box = 8;
  bool timing = false;
};

struct Report {
  json outputs = json::object();
  json verification = json::array();
  // canonical text of every input read, hashed into the digest
  std::string digest_text;

  void check(const std::string& name, bool ok, json witness = nullptr) {
    verification.push_back({{"name", name}, {"verdict", ok ? "PASS" : "FAIL"}, {"witness", witness}});
  }
  json load(const std::string& path, const char* flag) {
    if (path.empty()) throw SchemaError(std::string("missing required flag --") + flag);
    json j = jio::read_file(path);
    digest_text += j.dump();
    digest_text += '\n';
    return j;
  }
};

std::int64_t effective_budget(const Options& o) {
  if (o.budget > 0) return o.budget;
  if (const char* env = std::getenv("POLYCONE_BUDGET")) {
    try {
      long long v = std::stoll(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    throw SchemaError("POLYCONE_BUDGET must be a positive integer");
  }
  return 1000000;
}

Rational flag_rational(const std::string& s, const char* name) {
  try {
    return parse_rational(s);
  } catch (const InvalidInput&) {
    throw SchemaError(std::string("--") + name + ": not a rational: " + s);
  }
}

// positive combination of the rays of c, driven by the seeded generator
RationalVector interior_point(const RationalCone& c, std::mt19937_64& rng) {
  RationalVector p(c.ambient_dim(), 0);
  for (const auto& r : c.extremal_rays()) {
    Rational w(static_cast<long>(rng() % 9 + 1), static_cast<long>(rng() % 4 + 1));
    w.canonicalize();
    p = add(p, scale(w, to_rational(r)));
  }
  return p;
}

// ---------------------------------------------------------------- monoids

// lattice points of the cone (or cone ∩ orthant) of grading degree <= bound;
// nullopt if the enclosing box is too large to scan
std::optional<std::vector<IntVector>> cone_points(const RationalCone& c, Lattice l, const IntVector& grading,
                                                  std::int64_t bound) {
  std::size_t n = c.ambient_dim();
  std::vector<Rational> lo(n, 0), hi(n, 0);
  for (const auto& r : c.extremal_rays()) {
    Rational s(static_cast<long>(bound), static_cast<long>(dot(grading, r)));
    s.canonicalize();
    for (std::size_t j = 0; j < n; ++j) {
      lo[j] = std::min(lo[j], Rational(s * static_cast<long>(r[j])));
      hi[j] = std::max(hi[j], Rational(s * static_cast<long>(r[j])));
    }
  }
  IntVector a(n), b(n);
  double volume = 1;
  for (std::size_t j = 0; j < n; ++j) {
    Integer f, g;
    mpz_fdiv_q(f.get_mpz_t(), lo[j].get_num_mpz_t(), lo[j].get_den_mpz_t());
    mpz_cdiv_q(g.get_mpz_t(), hi[j].get_num_mpz_t(), hi[j].get_den_mpz_t());
    a[j] = f.get_si();
    b[j] = g.get_si();
    volume *= static_cast<double>(b[j] - a[j] + 1);
  }
  if (volume > 2e6) return std::nullopt;
  std::vector<IntVector> out;
  IntVector u = a;
  while (true) {
    bool ok = dot(grading, u) <= bound && c.contains(u);
    if (l == Lattice::N) ok = ok && std::all_of(u.begin(), u.end(), [](std::int64_t v) { return v >= 0; });
    if (ok) out.push_back(u);
    std::size_t j = 0;
    for (; j < n; ++j) {
      if (u[j] < b[j]) {
        ++u[j];
        break;
      }
      u[j] = a[j];
    }
    if (j == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool in_monoid(const RationalCone& c, Lattice l, const IntVector& x) {
  if (!c.contains(x)) return false;
  return l == Lattice::Z || std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v >= 0; });
}

void cmd_hilbert(const Options& o, Report& rep) {
  json j = rep.load(o.input, "input");
  Lattice l = Lattice::Z;
  if (j.contains("lattice")) l = jio::to_monoid({{"gens", {{1}}}, {"lattice", j.at("lattice")}}).lattice();
  RationalCone c;
  if (j.contains("gens")) {
    auto g = jio::to_int_matrix(j.at("gens"));
    if (g.empty()) throw SchemaError("hilbert: empty generator list");
    c = RationalCone::from_generators(g, g[0].size());
  } else {
    c = jio::to_cone(j);
  }
  if (l == Lattice::N) c = RationalCone::from_inequalities(
      [&] {
        auto rows = c.dual_description();
        for (std::size_t i = 0; i < c.ambient_dim(); ++i) {
          IntVector e(c.ambient_dim(), 0);
          e[i] = 1;
          rows.push_back(e);
        }
        return rows;
      }(),
      c.ambient_dim());
  auto basis = hilbert_basis(c, l);
  rep.outputs["basis"] = jio::from_matrix(basis);
  rep.outputs["size"] = basis.size();
  rep.outputs["cone"] = jio::from_cone(c);

  json bad = nullptr;
  for (const auto& h : basis)
    if (!in_monoid(c, l, h)) bad = jio::from_vector(h);
  rep.check("basis_in_monoid", bad.is_null(), bad);
  bad = nullptr;
  for (const auto& h : basis)
    for (const auto& g : basis)
      if (g != h && in_monoid(c, l, sub(h, g))) bad = {jio::from_vector(h), jio::from_vector(g)};
  rep.check("irreducible", bad.is_null(), bad);
  if (!basis.empty()) {
    AffineMonoid m(basis, c.ambient_dim(), Lattice::Z, true);
    std::int64_t bound = 0;
    for (const auto& h : basis) bound = std::max(bound, dot(m.grading(), h));
    if (auto pts = cone_points(c, l, m.grading(), bound)) {
      auto gen = elements_up_to_degree(basis, m.grading(), bound);
      rep.check("regenerates_up_to_degree_" + std::to_string(bound), gen == *pts);
    }
  }
}

void cmd_saturate(const Options& o, Report& rep) {
  auto s = jio::to_monoid(rep.load(o.input, "input"));
  auto t = saturate(s);
  rep.outputs["monoid"] = jio::from_monoid(t);
  json bad = nullptr;
  for (const auto& g : s.generators())
    if (!t.contains(g)) bad = jio::from_vector(g);
  rep.check("contains_input", bad.is_null(), bad);
  rep.check("saturated", t.is_saturated());
}

void cmd_truncate(const Options& o, Report& rep) {
  json j = rep.load(o.input, "input");
  auto s = jio::to_monoid(j);
  AffineMonoid t;
  if (j.contains("kappas")) {
    t = truncate(s, jio::to_int_vector(j.at("kappas")));
  } else if (j.contains("kappa")) {
    auto kv = jio::to_int_vector(json::array({j.at("kappa")}));
    t = truncate_uniform(s, kv[0]);
    // presentation independence: the minimal presentation gives the same monoid
    auto again = truncate_uniform(AffineMonoid(s.minimal_generators(), s.ambient_dim(), s.lattice()), kv[0]);
    rep.check("presentation_independent", again.minimal_generators() == t.minimal_generators());
  } else {
    throw SchemaError("truncate: need \"kappa\" or \"kappas\"");
  }
  rep.outputs["monoid"] = jio::from_monoid(t);
  json bad = nullptr;
  for (const auto& g : t.generators())
    if (!s.contains(g)) bad = jio::from_vector(g);
  rep.check("inside_input", bad.is_null(), bad);
}

void cmd_intersect(const Options& o, Report& rep) {
  json j = rep.load(o.input, "input");
  if (!j.contains("monoid") || !j.contains("cone")) throw SchemaError("intersect: need \"monoid\" and \"cone\"");
  auto s = jio::to_monoid(j.at("monoid"));
  auto c = jio::to_cone(j.at("cone"));
  auto r = intersect_with_cone(s, c);
  rep.outputs["monoid"] = jio::from_monoid(r);
  json bad = nullptr;
  for (const auto& g : r.generators())
    if (!c.contains(g) || !s.contains(g)) bad = jio::from_vector(g);
  rep.check("inside_both", bad.is_null(), bad);
  auto rows = c.dual_description();
  std::reverse(rows.begin(), rows.end());
  rep.check("order_invariant", intersect_with_cone(s, rows).generators() == r.generators());
}

void cmd_dual(const Options& o, Report& rep) {
  auto c = jio::to_cone(rep.load(o.input, "input"));
  rep.outputs["facets"] = jio::from_matrix(c.facets());
  rep.outputs["equations"] = jio::from_matrix(c.equations());
  bool ok = true;
  for (const auto& r : c.extremal_rays()) {
    for (const auto& f : c.facets()) ok = ok && dot(f, r) >= 0;
    for (const auto& e : c.equations()) ok = ok && dot(e, r) == 0;
  }
  rep.check("rays_satisfy_description", ok);
  rep.check("round_trip",
            RationalCone::from_inequalities(c.facets(), c.ambient_dim(), c.equations()).extremal_rays() ==
                c.extremal_rays());
}

void cmd_rays(const Options& o, Report& rep) {
  auto c = jio::to_cone(rep.load(o.input, "input"));
  rep.outputs["rays"] = jio::from_matrix(c.extremal_rays());
  auto back = RationalCone::from_generators(c.extremal_rays(), c.ambient_dim());
  rep.check("regenerates_cone", back.facets() == c.facets() && back.equations() == c.equations());
}

void cmd_escape(const Options& o, Report& rep) {
  json j = rep.load(o.input, "input");
  auto c = jio::to_cone(j.at("cone"));
  auto base = jio::to_exact_vector(j.at("base"));
  auto through = jio::to_exact_vector(j.at("through"));
  auto e = ray_escape(c, base, through);
  rep.outputs["t_sup"] = e.t_sup ? jio::from_scalar(*e.t_sup) : json("infinity");
  rep.outputs["t_star"] = e.t_star ? jio::from_scalar(*e.t_star) : json(nullptr);
  rep.outputs["witness"] = e.witness ? jio::from_vector(*e.witness) : json(nullptr);
  rep.outputs["extremal_past_base"] = !e.witness.has_value();
  if (e.witness) {
    rep.check("witness_in_cone", c.membership(*e.witness, Membership::Closure));
    ExactScalar inv = ExactScalar(1) / *e.t_star;
    auto comb = add(scale(ExactScalar(1) - inv, base), scale(inv, *e.witness));
    rep.check("convex_combination", comb == through && inv > ExactScalar(0) && inv < ExactScalar(1));
  } else {
    bool at_one = e.t_sup && *e.t_sup == ExactScalar(1);
    rep.check("boundary_reached", at_one);
  }
}

// ---------------------------------------------------------------- plfun

void cmd_plcheck(const Options& o, Report& rep) {
  auto f = jio::to_plfunction(rep.load(o.input, "input"));
  f.validate();
  rep.check("consistent_on_overlaps", true);
  auto cert = check_concave(f);
  rep.outputs["concave"] = cert.concave;
  if (!cert.concave) {
    rep.outputs["certificate"] = {{"component", cert.component}, {"cone_i", cert.cone_i}, {"cone_j", cert.cone_j},
                                  {"wall", jio::from_vector(cert.wall)}, {"ray", jio::from_vector(cert.ray)}};
    auto r = to_rational(cert.ray);
    bool ok = dot(f.pieces[cert.cone_i][cert.component], r) < dot(f.pieces[cert.cone_j][cert.component], r) &&
              f.fan[cert.cone_j].contains(cert.ray);
    rep.check("certificate_valid", ok);
  } else {
    std::mt19937_64 rng(o.seed);
    json bad = nullptr;
    for (std::size_t i = 0; i < o.samples && bad.is_null(); ++i) {
      auto a = interior_point(f.fan[rng() % f.fan.size()], rng);
      auto b = interior_point(f.fan[rng() % f.fan.size()], rng);
      auto fa = f.evaluate(a), fb = f.evaluate(b), fab = f.evaluate(add(a, b));
      for (std::size_t c = 0; c < fa.size(); ++c)
        if (fa[c] + fb[c] > fab[c]) bad = {jio::from_vector(a), jio::from_vector(b)};
    }
    rep.check("sampled_superadditivity", bad.is_null(), bad);
  }
}

struct MinOf {
  RationalMatrix functionals;
  Rational operator()(const RationalVector& x) const {
    Rational best = dot(functionals[0], x);
    for (const auto& l : functionals) best = std::min(best, dot(l, x));
    return best;
  }
};

void cmd_straighten(const Options& o, Report& rep) {
  json j = rep.load(o.input, "input");
  SuperadditiveOracle f;
  std::function<RationalVector(const RationalVector&)> expected;
  std::size_t l = 0;
  if (j.contains("model")) {
    auto x = jio::to_model(j.at("model"));
    auto fam = jio::to_family(j.at("family"));
    f = mobile_oracle(x, fam);
    expected = [x, fam](const RationalVector& s) { return straightened_mobile(x, fam, s); };
    l = fam.grading_rank;
  } else if (j.contains("min_of")) {
    MinOf m{jio::to_rational_matrix(j.at("min_of"))};
    if (m.functionals.empty()) throw SchemaError("straighten: empty min_of");
    l = m.functionals[0].size();
    Integer den = 1;
    for (const auto& r : m.functionals) den = lcm(den, lcm_of_denominators(r));
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < l; ++i) {
      IntVector e(l, 0);
      e[i] = 1;
      gens.push_back(e);
    }
    f.domain = AffineMonoid(gens, l, Lattice::N, true);
    f.evaluate = [m](const IntVector& s) {
      Rational v = m(to_rational(s));
      Integer fl;
      mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
      return IntVector{fl.get_si()};
    };
    std::int64_t lam = den.get_si();
    f.ray_truncation = [lam](const IntVector&) { return lam; };
    expected = [m](const RationalVector& s) { return RationalVector{m(s)}; };
  } else {
    throw SchemaError("straighten: need \"model\"+\"family\" or \"min_of\"");
  }
  auto res = straighten(f, {}, o.samples, o.seed, o.box);
  rep.outputs["candidate"] = jio::from_plfunction(res.candidate);
  rep.outputs["complete"] = res.complete;
  json cones = json::array();
  bool all_additive = true;
  for (const auto& c : res.cones) {
    cones.push_back({{"cone", jio::from_cone(c.cone)}, {"piece", jio::from_matrix(c.piece)},
                     {"sharp_linear", c.sharp_linear}, {"additive_up_to_truncation", c.additive_up_to_truncation},
                     {"truncation", c.truncation}});
    all_additive = all_additive && c.additive_up_to_truncation;
  }
  rep.outputs["cones"] = cones;
  rep.check("detection_complete", res.complete);
  rep.check("additive_up_to_truncation_on_every_cone", all_additive);
  std::mt19937_64 rng(o.seed);
  json bad = nullptr;
  for (int i = 0; i < 50 && bad.is_null(); ++i) {
    RationalVector s;
    for (std::size_t c = 0; c < l; ++c) {
      s.emplace_back(static_cast<long>(rng() % 21), static_cast<long>(rng() % 7 + 1));
      s.back().canonicalize();
    }
    if (res.candidate.evaluate(s) != expected(s)) bad = jio::from_vector(s);
  }
  rep.check("matches_expected_straightening", bad.is_null(), bad);
}

void cmd_pldetect(const Options& o, Report& rep) {
  json j = rep.load(o.input, "input");
  auto c = jio::to_cone(j.at("cone"));
  MinOf m{jio::to_rational_matrix(j.at("min_of"))};
  if (m.functionals.empty()) throw SchemaError("pldetect: empty min_of");
  auto res = detect_pl_2plane(m, c, o.samples, o.seed);
  rep.outputs["candidate"] = jio::from_plfunction(res.candidate);
  rep.outputs["complete"] = res.complete;
  rep.outputs["samples"] = res.samples;
  rep.outputs["evaluations"] = res.evaluations;
  rep.outputs["note"] = res.note;
  rep.check("detection_complete", res.complete);
  std::mt19937_64 rng(o.seed + 1);
  json bad = nullptr;
  for (std::size_t k = 0; k < res.candidate.fan.size() && bad.is_null(); ++k) {
    std::vector<RationalVector> pts;
    for (const auto& r : res.candidate.fan[k].extremal_rays()) pts.push_back(to_rational(r));
    for (int i = 0; i < 5; ++i) pts.push_back(interior_point(res.candidate.fan[k], rng));
    for (const auto& p : pts)
      if (dot(res.candidate.pieces[k][0], p) != m(p)) bad = jio::from_vector(p);
  }
  rep.check("pieces_agree_with_function", bad.is_null(), bad);
}

void cmd_lipschitz(const Options& o, Report& rep) {
  json j = rep.load(o.input, "input");
  auto f = jio::to_plfunction(j.at("function"));
  auto x = jio::to_rational_vector(j.at("x"));
  std::optional<Rational> delta;
  if (j.contains("delta")) delta = jio::to_rational(j.at("delta"));
  if (!o.delta.empty()) delta = flag_rational(o.delta, "delta");
  auto b = lipschitz_bound(f, x, delta);
  rep.outputs["delta"] = jio::from_rational(b.delta);
  rep.outputs["m"] = jio::from_rational(b.m);
  rep.outputs["coarse_l"] = jio::from_rational(b.coarse_l);
  rep.outputs["exact_l"] = jio::from_rational(b.exact_l);
  rep.outputs["l"] = jio::from_rational(b.l);
  rep.check("coarse_bound_dominates_exact", b.coarse_l >= b.exact_l);
  std::mt19937_64 rng(o.seed);
  auto point = [&] {
    RationalVector u = x;
    for (auto& c : u) {
      Rational t(static_cast<long>(rng() % 2001) - 1000, 1000);
      t.canonicalize();
      c += t * b.delta;
    }
    return u;
  };
  json bad = nullptr;
  for (int i = 0; i < 1000 && bad.is_null(); ++i) {
    auto u = point(), v = point();
    Rational lhs = abs(f.evaluate_scalar(u) - f.evaluate_scalar(v));
    if (lhs > b.l * sup_norm(sub(u, v))) bad = {jio::from_vector(u), jio::from_vector(v)};
  }
  rep.check("sampled_lipschitz_inequality", bad.is_null(), bad);
}

// ---------------------------------------------------------------- dioph

void cmd_affine(const Options& o, Report& rep) {
  json j = rep.load(o.input, "input");
  auto a = jio::to_rational_matrix(j.at("A"));
  auto b = jio::to_exact_vector(j.at("b"));
  auto w = solve_affine(a, b);
  rep.outputs["feasible"] = w.has_value();
  if (!w) {
    // a left-kernel vector y of A with y.b != 0 certifies infeasibility
    json cert = nullptr;
    std::size_t n = a.empty() ? 0 : a[0].size();
    for (const auto& y : nullspace(transpose(a, n), a.size()))
      if (cert.is_null() && !(dot(y, b) == ExactScalar(0))) cert = jio::from_vector(y);
    rep.check("infeasibility_certificate", !cert.is_null(), cert);
    return;
  }
  rep.outputs["solution"] = jio::from_subspace(*w);
  bool ok = true;
  for (std::size_t i = 0; i < a.size(); ++i) ok = ok && dot(a[i], w->base_point()) == b[i];
  rep.check("base_solves", ok);
  ok = true;
  for (const auto& d : w->direction_basis())
    for (const auto& row : a) ok = ok && dot(row, d) == 0;
  rep.check("directions_in_kernel", ok);
}

void check_order(const ExactVector& x, const Rational& eps, const ApproximationTuple& t, Report& rep) {
  json bad = nullptr;
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    ExactScalar slack(2 * eps / static_cast<long>(t.denominators[i]));
    for (std::size_t p = 0; p < x.size(); ++p)
      for (std::size_t q = 0; q < x.size(); ++q) {
        if (x[p] == x[q] && t.points[i][p] != t.points[i][q]) bad = {i, p, q};
        if (x[p] > x[q] && slack < x[p] - x[q] && !(t.points[i][p] > t.points[i][q])) bad = {i, p, q};
      }
  }
  rep.check("order_preserved", bad.is_null(), bad);
}

void cmd_approx(const Options& o, Report& rep) {
  ExactVector x;
  std::int64_t k = o.k;
  Rational eps = flag_rational(o.eps, "eps");
  if (!o.x.empty()) {
    json j = rep.load(o.x, "x");
    x = jio::to_exact_vector(j.is_object() && j.contains("x") ? j.at("x") : j);
  } else {
    json j = rep.load(o.input, "input");
    x = jio::to_exact_vector(j.at("x"));
    if (j.contains("k")) k = j.at("k").get<std::int64_t>();
    if (j.contains("eps")) eps = jio::to_rational(j.at("eps"));
  }
  if (k <= 0 || sgn(eps) <= 0) throw SchemaError("approx: k and eps must be positive");
  auto w = smallest_rational_affine(x);
  rep.outputs["W"] = jio::from_subspace(w);
  auto t = uniform_approximate(x, k, eps, effective_budget(o));
  rep.outputs["tuple"] = jio::from_tuple(t);
  auto verdict = check_tuple(x, eps, t);
  rep.check("tuple_conditions", verdict.empty(), verdict.empty() ? json(nullptr) : json(verdict));
  bool in_w = true;
  for (const auto& p : t.points) in_w = in_w && w.contains(to_exact(p));
  rep.check("points_in_W", in_w);
  check_order(x, eps, t, rep);
}

void cmd_extend(const Options& o, Report& rep) {
  json j = rep.load(o.input, "input");
  auto x = jio::to_exact_vector(j.at("x"));
  std::int64_t k = j.value("k", o.k);
  Rational eps = j.contains("eps") ? jio::to_rational(j.at("eps")) : flag_rational(o.eps, "eps");
  Rational eta = j.contains("eta") ? jio::to_rational(j.at("eta")) : flag_rational(o.eta, "eta");
  auto x1 = jio::to_rational_vector(j.at("x1"));
  std::int64_t k1 = j.at("k1").get<std::int64_t>();
  auto e = extend_approximation(x, k, eps, eta, x1, k1, effective_budget(o));
  rep.outputs["tuple"] = jio::from_tuple(e.tuple);
  rep.outputs["x2"] = jio::from_vector(e.x2);
  rep.outputs["k2"] = e.k2;
  rep.outputs["xi"] = jio::from_vector(e.xi);
  rep.outputs["aux"] = jio::from_vector(e.aux);
  auto verdict = check_tuple(x, eps, e.tuple);
  rep.check("tuple_conditions", verdict.empty(), verdict.empty() ? json(nullptr) : json(verdict));
  std::int64_t n = k1 + e.k2;
  rep.check("xi_bound", sup_norm(e.xi) < ExactScalar(eta / static_cast<long>(n)));
  auto u = scale(ExactScalar(Rational(1, 1) / static_cast<long>(n)),
                 to_exact(add(scale(Rational(static_cast<long>(k1)), x1), scale(Rational(static_cast<long>(e.k2)), e.x2))));
  rep.check("xi_identity", sub(x, u) == e.xi);
  rep.check("aux_in_W", smallest_rational_affine(x).contains(e.aux));
  check_order(x, eps, e.tuple, rep);
}

void cmd_perturb(const Options& o, Report& rep) {
  json j = rep.load(o.input, "input");
  AffineSubspace k(jio::to_exact_vector(j.at("base")), jio::to_rational_matrix(j.at("directions")));
  auto r = jio::to_exact_vector(j.at("r"));
  Rational eps = j.contains("eps") ? jio::to_rational(j.at("eps")) : flag_rational(o.eps, "eps");
  std::vector<RationalVector> keep;
  if (j.contains("keep_positive")) keep = jio::to_rational_matrix(j.at("keep_positive"));
  auto s = nearest_rational_in_subspace(k, r, eps, keep);
  rep.outputs["s"] = jio::from_vector(s);
  rep.check("in_subspace", k.contains(to_exact(s)));
  rep.check("within_eps", sup_distance(to_exact(s), r) < ExactScalar(eps));
  bool ok = true;
  for (const auto& l : keep)
    if (dot(l, r) > ExactScalar(0)) ok = ok && dot(l, s) > 0;
  rep.check("positivity_kept", ok);
}

// ---------------------------------------------------------------- toric

std::size_t need_ray(const Options& o, const ToricModel& x) {
  if (o.ray < 0 || static_cast<std::size_t>(o.ray) >= x.num_rays()) throw SchemaError("--ray: index out of range");
  return static_cast<std::size_t>(o.ray);
}

void cmd_toric_sections(const Options& o, Report& rep) {
  auto x = jio::to_model(rep.load(o.model, "model"));
  auto d = jio::to_divisor(rep.load(o.divisor, "divisor"));
  auto p = section_polytope(x, d);
  auto pts = lattice_points(x, d);
  rep.outputs["vertices"] = jio::from_matrix(p.vertices());
  rep.outputs["lattice_points"] = jio::from_matrix(pts);
  rep.outputs["sections"] = pts.size();
  rep.outputs["smooth"] = x.smooth();
  bool ok = true;
  for (const auto& u : pts)
    for (std::size_t r = 0; r < x.num_rays(); ++r) ok = ok && dot(x.rays()[r], to_rational(u)) >= -d[r];
  rep.check("points_in_polytope", ok);
  ok = true;
  for (const auto& v : p.vertices())
    for (std::size_t r = 0; r < x.num_rays(); ++r) ok = ok && dot(x.rays()[r], v) >= -d[r];
  rep.check("vertices_in_polytope", ok);
}

void cmd_toric_fix(const Options& o, Report& rep) {
  auto x = jio::to_model(rep.load(o.model, "model"));
  auto d = jio::to_divisor(rep.load(o.divisor, "divisor"));
  auto fm = fixed_part(x, d);
  rep.outputs["fix"] = jio::from_vector(fm.fix);
  rep.outputs["mob"] = jio::from_vector(fm.mob);
  rep.check("fix_of_mob_is_zero", fixed_part(x, fm.mob).fix == RationalVector(x.num_rays(), 0));
  rep.check("same_sections", lattice_points(x, fm.mob) == lattice_points(x, d));
}

void cmd_toric_ord(const Options& o, Report& rep) {
  auto x = jio::to_model(rep.load(o.model, "model"));
  auto d = jio::to_divisor(rep.load(o.divisor, "divisor"));
  auto rho = need_ray(o, x);
  Rational ord = asymptotic_ord(x, d, rho);
  rep.outputs["ord"] = jio::from_rational(ord);
  auto p = section_polytope(x, d);
  Rational vmin = dot(x.rays()[rho], p.vertices().at(0));
  for (const auto& v : p.vertices()) vmin = std::min(vmin, Rational(dot(x.rays()[rho], v)));
  vmin += d[rho];
  rep.outputs["vertex_min"] = jio::from_rational(vmin);
  rep.check("lp_equals_vertex_min", ord == vmin);
  // integral minima Fix(kD)/k for the multiples where D is integral
  json fix = json::array();
  Integer den = lcm_of_denominators(d);
  bool above = true;
  for (long k = 1; k <= 20; ++k) {
    if (Integer(k) % den != 0) continue;
    auto kd = scale(Rational(k), d);
    if (lattice_points(x, kd).empty()) continue;
    Rational v = fixed_part(x, kd).fix[rho] / k;
    fix.push_back({{"k", k}, {"fix_over_k", jio::from_rational(v)}});
    above = above && v >= ord;
  }
  rep.outputs["integral_minima"] = fix;
  rep.check("integral_minima_dominate", above);
  std::int64_t m = to_int64(lcm(Integer(vertex_denominator(x, d)), den));
  rep.outputs["attained_at"] = m;
  rep.check("limit_attained", fixed_part(x, scale(Rational(static_cast<long>(m)), d)).fix[rho] / m == ord);
}

void cmd_toric_nsigma(const Options& o, Report& rep) {
  auto x = jio::to_model(rep.load(o.model, "model"));
  auto d = jio::to_divisor(rep.load(o.divisor, "divisor"));
  auto n = nsigma(x, d);
  rep.outputs["nsigma"] = jio::from_vector(n);
  bool nonneg = std::all_of(n.begin(), n.end(), [](const Rational& q) { return sgn(q) >= 0; });
  rep.check("nonnegative", nonneg);
  rep.check("homogeneous", nsigma(x, scale(Rational(3), d)) == scale(Rational(3), n));
}

void cmd_toric_adjoint(const Options& o, Report& rep) {
  auto x = jio::to_model(rep.load(o.model, "model"));
  auto f = jio::to_family(rep.load(o.family, "family"));
  auto a = adjoint_semigroup(x, f);
  rep.outputs["basis"] = jio::from_matrix(a.basis);
  rep.outputs["size"] = a.basis.size();
  rep.outputs["smooth"] = x.smooth();
  json shapes = json::array();
  for (std::size_t i = 0; i < f.grading_rank; ++i) {
    RationalVector e(f.grading_rank, 0);
    e[i] = 1;
    auto k = adjoint_shape(x, f.at(e));
    shapes.push_back(k ? json(*k) : json(nullptr));
  }
  rep.outputs["adjoint_shape"] = shapes;
  rep.check("integral_over_truncation", a.integral_over_truncation);
  // every graded piece of coordinate sum <= box is generated by the basis
  std::size_t l = f.grading_rank;
  IntVector grading(l + x.dim(), 0);
  for (std::size_t i = 0; i < l; ++i) grading[i] = 1;
  auto gen = elements_up_to_degree(a.basis, grading, o.box);
  std::vector<IntVector> pieces;
  IntVector s(l, 0);
  while (true) {
    std::int64_t sum = 0;
    for (auto v : s) sum += v;
    if (sum <= o.box)
      for (const auto& u : graded_piece(x, f, s)) {
        IntVector e = s;
        e.insert(e.end(), u.begin(), u.end());
        pieces.push_back(e);
      }
    std::size_t i = 0;
    for (; i < l; ++i) {
      if (s[i] < o.box) {
        ++s[i];
        break;
      }
      s[i] = 0;
    }
    if (i == l) break;
  }
  std::sort(pieces.begin(), pieces.end());
  rep.check("regenerates_graded_pieces_up_to_" + std::to_string(o.box), gen == pieces);
}

void cmd_toric_ordpl(const Options& o, Report& rep) {
  auto x = jio::to_model(rep.load(o.model, "model"));
  auto f = jio::to_family(rep.load(o.family, "family"));
  auto rho = need_ray(o, x);
  auto d = ord_pl_decomposition(x, f, rho);
  rep.outputs["ord"] = jio::from_plfunction(d.ord);
  rep.outputs["domain"] = jio::from_cone(d.domain);
  rep.outputs["covers_grading_cone"] = d.covers_grading_cone;
  rep.outputs["dual_vertices"] = d.lp_bases;
  std::mt19937_64 rng(o.seed);
  json bad = nullptr;
  for (std::size_t c = 0; c < d.ord.fan.size() && bad.is_null(); ++c) {
    std::vector<RationalVector> pts;
    for (const auto& r : d.ord.fan[c].extremal_rays()) pts.push_back(to_rational(r));
    for (int i = 0; i < 10; ++i) pts.push_back(interior_point(d.ord.fan[c], rng));
    for (const auto& s : pts)
      if (dot(d.ord.pieces[c][0], s) != asymptotic_ord(x, f.at(s), rho)) bad = jio::from_vector(s);
  }
  rep.check("linear_on_pieces_vs_pointwise_lp", bad.is_null(), bad);
  PLFunction mob = d.ord;
  for (auto& p : mob.pieces) p[0] = sub(f.matrix[rho], p[0]);
  rep.check("mobile_part_concave", check_concave(mob).concave);
}

// ---------------------------------------------------------------- selftest

void cmd_selftest(const Options&, Report& rep) {
  auto hb = hilbert_basis(RationalCone::from_generators(std::vector<IntVector>{{1, 0}, {1, 3}}, 2), Lattice::Z);
  rep.check("hilbert_example", hb == std::vector<IntVector>{{1, 0}, {1, 1}, {1, 2}, {1, 3}});
  auto f2 = make_field({2});
  auto s2 = ExactScalar::sqrt_of(2, f2);
  auto t = uniform_approximate({s2}, 1, Rational(1, 4));
  rep.check("approx_sqrt2", t.points == std::vector<RationalVector>{{Rational(3, 2)}, {Rational(7, 5)}} &&
                                check_tuple({s2}, Rational(1, 4), t).empty());
  auto p1 = projective_line();
  DivisorFamily fam{2, {{0, 0}, {2, 3}}};
  rep.check("adjoint_line_basis_7", adjoint_semigroup(p1, fam).basis.size() == 7);
  auto p2 = projective_plane();
  bool counts = true;
  for (long d = 0; d <= 10; ++d)
    counts = counts && lattice_points(p2, {0, 0, Rational(d)}).size() == static_cast<std::size_t>((d + 1) * (d + 2) / 2);
  rep.check("plane_section_counts", counts);
  auto bl = blown_up_plane();
  rep.check("blowup_fix_2E", fixed_part(bl, {0, 0, 0, 2}).fix == RationalVector{0, 0, 0, 2});
  auto esc = ray_escape(RationalCone::from_generators(std::vector<IntVector>{{1, 0}, {0, 1}}, 2), {2, 2}, {1, 2});
  rep.check("escape_example", esc.t_sup && *esc.t_sup == ExactScalar(2));
}

using Handler = void (*)(const Options&, Report&);

const std::map<std::string, std::pair<Handler, const char*>>& commands() {
  static const std::map<std::string, std::pair<Handler, const char*>> table{
      {"hilbert", {cmd_hilbert, "Hilbert basis of a cone or of the saturation of a monoid"}},
      {"saturate", {cmd_saturate, "saturation of a monoid"}},
      {"truncate", {cmd_truncate, "uniform or per-generator truncation"}},
      {"intersect", {cmd_intersect, "monoid intersected with a cone"}},
      {"dual", {cmd_dual, "facets and equations of a cone"}},
      {"rays", {cmd_rays, "extremal rays of a cone"}},
      {"escape", {cmd_escape, "ray escape parameter and non-extremality witness"}},
      {"plcheck", {cmd_plcheck, "concavity check of a PL function"}},
      {"straighten", {cmd_straighten, "straightening of a superadditive map"}},
      {"pldetect", {cmd_pldetect, "linearity domains of a min of functionals"}},
      {"lipschitz", {cmd_lipschitz, "local Lipschitz bound of a concave PL function"}},
      {"affine", {cmd_affine, "solution set of A x = b over the number field"}},
      {"approx", {cmd_approx, "uniform approximation tuple"}},
      {"extend", {cmd_extend, "extension of an approximation by a second point"}},
      {"perturb", {cmd_perturb, "nearby rational point in a rational affine subspace"}},
      {"toric-sections", {cmd_toric_sections, "section polytope and its lattice points"}},
      {"toric-fix", {cmd_toric_fix, "fixed and mobile part"}},
      {"toric-ord", {cmd_toric_ord, "asymptotic order of vanishing along a ray"}},
      {"toric-nsigma", {cmd_toric_nsigma, "formal sum of asymptotic orders"}},
      {"toric-adjoint", {cmd_toric_adjoint, "Hilbert basis of the total section semigroup"}},
      {"toric-ordpl", {cmd_toric_ordpl, "ord along a ray as a PL function of the grading"}},
      {"selftest", {cmd_selftest, "built-in smoke checks"}},
  };
  return table;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = raw_args;
  // "toric sections" is accepted as an alias of "toric-sections"
  if (args.size() >= 2 && args[0] == "toric") {
    std::string sub = args[1];
    if (sub == "adjoint" || sub == "ordpl" || sub == "sections" || sub == "fix" || sub == "ord" || sub == "nsigma") {
      args.erase(args.begin());
      args[0] = "toric-" + sub;
    }
  }

  CLI::App app{"polycone: exact convex geometry, monoids and Diophantine approximation"};
  app.require_subcommand(1);
  Options o;
  std::string chosen;
  for (const auto& [name, entry] : commands()) {
    auto* sc = app.add_subcommand(name, entry.second);
    sc->add_option("--input", o.input, "input JSON file");
    sc->add_option("--x", o.x, "point JSON file (approx)");
    sc->add_option("--model", o.model, "toric model JSON file");
    sc->add_option("--divisor", o.divisor, "torus divisor JSON file");
    sc->add_option("--family", o.family, "divisor family JSON file");
    sc->add_option("--ray", o.ray, "ray index");
    sc->add_option("--k", o.k, "common denominator factor k");
    sc->add_option("--eps", o.eps, "epsilon as p/q");
    sc->add_option("--eta", o.eta, "eta as p/q");
    sc->add_option("--delta", o.delta, "ball radius as p/q");
    sc->add_option("--budget", o.budget, "search budget (overrides POLYCONE_BUDGET)");
    sc->add_option("--seed", o.seed, "seed for all sampling");
    sc->add_option("--samples", o.samples, "sample budget");
    sc->add_option("--box", o.box, "coordinate-sum bound for box checks");
    sc->add_flag("--timing", o.timing, "report wall time (breaks byte-identical output)");
    sc->callback([&chosen, n = name] { chosen = n; });
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
    return Schema;
  }

  Report rep;
  auto start = std::chrono::steady_clock::now();
  int code = Ok;
  try {
    commands().at(chosen).first(o, rep);
  } catch (const BudgetExhausted& e) {
    rep.outputs["partial"] = {{"best_bound", e.best_bound}};
    rep.check("budget", false, e.what());
    code = Budget;
  } catch (const HypothesisViolated& e) {
    rep.check("hypothesis", false, e.what());
    code = VerificationFailed;
  } catch (const json::exception& e) {
    err << json{{"error", e.what()}, {"kind", "schema"}}.dump() << "\n";
    return Schema;
  } catch (const Error& e) {
    // schema violations and rejected preconditions alike produce no report
    err << json{{"error", e.what()}, {"kind", dynamic_cast<const SchemaError*>(&e) ? "schema" : "input"}}.dump() << "\n";
    return Schema;
  }
  if (code == Ok)
    for (const auto& v : rep.verification)
      if (v.at("verdict") == "FAIL") code = VerificationFailed;

  std::string flags = chosen + "|k=" + std::to_string(o.k) + "|eps=" + o.eps + "|eta=" + o.eta + "|delta=" + o.delta +
                      "|ray=" + std::to_string(o.ray) + "|budget=" + std::to_string(effective_budget(o)) +
                      "|samples=" + std::to_string(o.samples) + "|box=" + std::to_string(o.box);
  json report{{"command", chosen},
              {"version", POLYCONE_VERSION},
              {"inputs_digest", jio::fnv1a(flags + "\n" + rep.digest_text)},
              {"seed", o.seed},
              {"elapsed_ms", o.timing ? std::chrono::duration_cast<std::chrono::milliseconds>(
                                            std::chrono::steady_clock::now() - start)
                                            .count()
                                      : 0},
              {"outputs", rep.outputs},
              {"verification", rep.verification}};
  out << report.dump(2) << "\n";
  return code;
}

}  // namespace polycone::cli
