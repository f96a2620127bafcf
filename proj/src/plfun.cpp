#include "polycone/plfun.hpp"

#include "polycone/errors.hpp"
#include "polycone/linalg.hpp"
#include "polycone/lp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace polycone {

namespace {

RationalVector apply_map(const RationalMatrix& m, const RationalVector& x) {
  RationalVector out;
  for (const auto& row : m) out.push_back(dot(row, x));
  return out;
}

RationalCone intersect(const RationalCone& a, const RationalCone& b) {
  auto rows = a.dual_description();
  for (const auto& r : b.dual_description()) rows.push_back(r);
  return RationalCone::from_inequalities(rows, a.ambient_dim());
}

Rational facet_distance(const RationalCone& c, const RationalVector& x) {
  std::optional<Rational> best;
  for (const auto& l : c.facets()) {
    Rational r = dot(l, x) / l1_norm(to_rational(l));
    if (!best || r < *best) best = r;
  }
  return best ? *best : Rational(1);
}

// linear map through the given rays and values, if one exists
std::optional<RationalMatrix> fit_linear(const std::vector<RationalVector>& pts, const RationalMatrix& vals,
                                         std::size_t n) {
  std::size_t comps = vals.empty() ? 0 : vals[0].size();
  RationalMatrix out;
  for (std::size_t c = 0; c < comps; ++c) {
    RationalVector b;
    for (const auto& v : vals) b.push_back(v[c]);
    auto sol = solve_particular(pts, b, n);
    if (!sol) return std::nullopt;
    out.push_back(*sol);
  }
  return out;
}

RationalVector sum_of(const std::vector<RationalVector>& v, std::size_t n) {
  RationalVector s(n, 0);
  for (const auto& x : v) s = add(s, x);
  return s;
}

std::vector<RationalVector> rays_of(const RationalCone& c) {
  std::vector<RationalVector> out;
  for (const auto& r : c.extremal_rays()) out.push_back(to_rational(r));
  return out;
}

// rational point strictly inside a full-dimensional cone, spread by index
RationalVector interior_sample(const RationalCone& c, std::size_t index) {
  const auto& rays = c.extremal_rays();
  auto w = low_discrepancy(index, rays.size());
  RationalVector p(c.ambient_dim(), 0);
  for (std::size_t i = 0; i < rays.size(); ++i) p = add(p, scale(w[i] + Rational(1, 8), to_rational(rays[i])));
  return p;
}

// positive multiple with coprime integer coordinates, kept in Rational
RationalVector integral_ray(const RationalVector& x) {
  Integer den = lcm_of_denominators(x), g = 0;
  for (const auto& v : x) {
    Integer num = v.get_num() * (den / v.get_den());
    g = gcd(g, num);
  }
  if (g == 0) return x;
  Rational k(den, g);
  k.canonicalize();
  return scale(k, x);
}

// next coefficient vector with sum <= bound, false after the last one
bool next_in_box(IntVector& p, std::int64_t bound) {
  std::int64_t total = std::accumulate(p.begin(), p.end(), std::int64_t{0});
  for (std::size_t i = 0; i < p.size(); ++i) {
    ++p[i];
    if (++total <= bound) return true;
    total -= p[i];
    p[i] = 0;
  }
  return false;
}

}  // namespace

PLFunction PLFunction::scalar(std::vector<RationalCone> fan, const std::vector<RationalVector>& pieces) {
  PLFunction f;
  f.fan = std::move(fan);
  for (const auto& l : pieces) f.pieces.push_back({l});
  f.value_dim = 1;
  return f;
}

RationalCone PLFunction::support() const {
  std::vector<IntVector> gens;
  for (const auto& c : fan)
    for (const auto& r : c.extremal_rays()) gens.push_back(r);
  return RationalCone::from_generators(gens, ambient_dim());
}

RationalVector PLFunction::evaluate(const RationalVector& x) const {
  for (std::size_t i = 0; i < fan.size(); ++i)
    if (fan[i].contains(x)) return apply_map(pieces[i], x);
  throw InvalidInput("PL function evaluated outside its support");
}

void PLFunction::validate(std::size_t samples) const {
  if (fan.empty()) throw InvalidInput("PL function with empty fan");
  if (fan.size() != pieces.size()) throw InvalidInput("one piece per cone required");
  std::size_t n = ambient_dim();
  for (std::size_t i = 0; i < fan.size(); ++i) {
    if (fan[i].ambient_dim() != n) throw DimensionMismatch("fan cones of different dimension");
    if (pieces[i].size() != value_dim) throw InvalidInput("piece has wrong value dimension");
    for (const auto& row : pieces[i])
      if (row.size() != n) throw DimensionMismatch("piece has wrong dimension");
  }
  for (std::size_t i = 0; i < fan.size(); ++i)
    for (std::size_t j = i + 1; j < fan.size(); ++j) {
      auto common = intersect(fan[i], fan[j]);
      for (const auto& r : rays_of(common))
        if (apply_map(pieces[i], r) != apply_map(pieces[j], r))
          throw InvalidInput("pieces " + std::to_string(i) + " and " + std::to_string(j) +
                             " disagree on a shared face");
    }
  auto supp = support();
  // facet bookkeeping: every inner facet has a cone on its other side
  for (std::size_t i = 0; i < fan.size(); ++i) {
    if (!fan[i].is_full_dimensional()) continue;
    for (const auto& a : fan[i].facets()) {
      IntVector q(n, 0);
      for (const auto& r : fan[i].extremal_rays())
        if (dot(a, r) == 0) q = add(q, r);
      bool on_boundary = false;
      for (const auto& b : supp.facets())
        if (dot(b, q) == 0) on_boundary = true;
      if (on_boundary) continue;
      bool covered = false;
      for (std::size_t j = 0; j < fan.size() && !covered; ++j) {
        if (j == i || !fan[j].contains(q)) continue;
        for (const auto& r : fan[j].extremal_rays())
          if (dot(a, r) < 0) covered = true;
      }
      if (!covered) throw InvalidInput("fan leaves a gap across a facet of cone " + std::to_string(i));
    }
  }
  if (supp.is_full_dimensional())
    for (std::size_t k = 0; k < samples; ++k) {
      auto p = interior_sample(supp, k + 1);
      bool in = std::any_of(fan.begin(), fan.end(), [&](const RationalCone& c) { return c.contains(p); });
      if (!in) throw InvalidInput("fan does not cover its support");
    }
}

ConcavityCertificate check_concave(const PLFunction& f) {
  f.validate();
  ConcavityCertificate cert;
  for (std::size_t i = 0; i < f.fan.size(); ++i)
    for (std::size_t j = 0; j < f.fan.size(); ++j) {
      if (i == j) continue;
      for (const auto& r : f.fan[j].extremal_rays()) {
        auto rr = to_rational(r);
        for (std::size_t c = 0; c < f.value_dim; ++c) {
          if (dot(f.pieces[i][c], rr) >= dot(f.pieces[j][c], rr)) continue;
          cert.concave = false;
          cert.component = c;
          cert.cone_i = i;
          cert.cone_j = j;
          cert.wall = primitive(sub(f.pieces[i][c], f.pieces[j][c]));
          cert.ray = r;
          return cert;
        }
      }
    }
  return cert;
}

RationalVector low_discrepancy(std::size_t index, std::size_t dim) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  RationalVector out;
  for (std::size_t d = 0; d < dim; ++d) {
    long b = primes[d % 16];
    Rational x = 0, f(1, b);
    for (std::size_t i = index + 1; i > 0; i /= b) {
      x += f * static_cast<long>(i % b);
      f /= b;
    }
    out.push_back(x);
  }
  return out;
}

std::optional<std::pair<IntVector, IntVector>> superadditivity_violation(const SuperadditiveOracle& f,
                                                                         std::int64_t degree_bound) {
  auto elems = elements_up_to_degree(f.domain.generators(), f.domain.grading(), degree_bound);
  std::set<IntVector> have(elems.begin(), elems.end());
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i; j < elems.size(); ++j) {
      auto s = add(elems[i], elems[j]);
      if (!have.count(s)) continue;
      auto fa = f.evaluate(elems[i]), fb = f.evaluate(elems[j]), fs = f.evaluate(s);
      for (std::size_t c = 0; c < fs.size(); ++c)
        if (fa[c] + fb[c] > fs[c]) return std::make_pair(elems[i], elems[j]);
    }
  return std::nullopt;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    default:
      return "HYPOTHESIS-UNMET";
  }
}

AdditivityReport additivity_certificate(const SuperadditiveOracle& f, const IntVector& s0, std::int64_t kappa_budget,
                                        std::int64_t box_sum) {
  const auto& gens = f.domain.generators();
  std::size_t m = gens.size();
  IntVector base = s0;
  for (const auto& g : gens) base = sub(base, g);
  auto rest = decompose(f.domain, base);
  if (!rest) throw InvalidInput("s0 has no presentation with all coefficients positive");
  AdditivityReport rep;
  rep.s0_coefficients = *rest;
  for (auto& c : rep.s0_coefficients) ++c;

  std::vector<IntVector> fe;
  for (const auto& g : gens) fe.push_back(f.evaluate(g));
  auto combo = [&](const IntVector& p) {
    IntVector v(f.value_dim, 0);
    for (std::size_t i = 0; i < m; ++i) v = add(v, scale(p[i], fe[i]));
    return v;
  };
  auto point = [&](const IntVector& p) {
    IntVector v(s0.size(), 0);
    for (std::size_t i = 0; i < m; ++i) v = add(v, scale(p[i], gens[i]));
    return v;
  };

  auto f0 = f.evaluate(s0);
  if (f0 != combo(rep.s0_coefficients)) {
    rep.verdict = Verdict::HypothesisUnmet;
    rep.reason = "f(s0) differs from the sum of s_i f(e_i)";
    return rep;
  }
  for (std::int64_t k = 2; k <= kappa_budget; ++k)
    if (f.evaluate(scale(k, s0)) != scale(k, f0)) {
      rep.verdict = Verdict::HypothesisUnmet;
      rep.reason = "f(k s0) differs from k f(s0) at k = " + std::to_string(k);
      return rep;
    }

  IntVector p(m, 0);
  while (true) {
    ++rep.checked;
    if (f.evaluate(point(p)) != combo(p)) {
      rep.verdict = Verdict::Fail;
      rep.reason = "additivity fails inside the box";
      rep.witness = p;
      return rep;
    }
    if (!next_in_box(p, box_sum)) break;
  }
  rep.reason = "hypotheses hold and the box is additive";
  return rep;
}

RationalVector straightened_value(const SuperadditiveOracle& f, const RationalVector& s) {
  Integer den = lcm_of_denominators(s);
  IntVector t;
  for (const auto& x : s) t.push_back(to_int64(Integer(x * Rational(den))));
  std::int64_t mult = 1;
  while (!f.domain.contains(scale(mult, t))) {
    if (++mult > 64) throw InvalidInput("no multiple of the point lies in the monoid");
  }
  IntVector u = scale(mult, t);
  std::int64_t lam = f.ray_truncation(u);
  if (lam <= 0) throw HypothesisViolated("ray truncation must be positive");
  auto base = f.evaluate(scale(lam, u));
  for (std::int64_t i = 2; i <= 3; ++i)
    if (f.evaluate(scale(i * lam, u)) != scale(i, base))
      throw HypothesisViolated("truncation certificate fails on a sampled ray");
  Rational denom = Rational(den) * static_cast<long>(mult * lam);
  RationalVector out;
  for (auto v : base) out.push_back(Rational(static_cast<long>(v)) / denom);
  return out;
}

DetectionResult detect_pl_2plane(const std::function<Rational(const RationalVector&)>& f, const RationalCone& c,
                                 std::size_t sample_budget, std::uint64_t seed) {
  if (!c.is_full_dimensional()) throw InvalidInput("detection needs a full-dimensional cone");
  std::size_t n = c.ambient_dim();
  DetectionResult res;
  std::map<RationalVector, Rational> cache;
  auto eval = [&](const RationalVector& x) {
    auto it = cache.find(x);
    if (it != cache.end()) return it->second;
    ++res.evaluations;
    return cache[x] = f(x);
  };

  std::vector<RationalVector> found;  // distinct functionals
  std::vector<RationalVector> samples;

  // linear functional on a small simplicial cone around p, certified by f(sum q) = sum f(q)
  auto local_fit = [&](const RationalVector& p) -> std::optional<RationalVector> {
    Rational delta = facet_distance(c, p) / static_cast<long>(2 * n);
    for (int halving = 0; halving < 16; ++halving, delta /= 2) {
      std::vector<RationalVector> q;
      for (std::size_t j = 0; j < n; ++j) {
        RationalVector v = p;
        for (std::size_t k = 0; k < n; ++k) v[k] += delta * (k == j ? static_cast<long>(n - 1) : -1L);
        q.push_back(v);
      }
      if (rank(q, n) < n) return std::nullopt;
      // f is homogeneous: keep evaluation points integral
      Integer den = 1;
      for (const auto& v : q) den = lcm(den, lcm_of_denominators(v));
      for (auto& v : q) v = scale(Rational(den), v);
      Rational total = 0;
      RationalVector vals;
      for (const auto& v : q) {
        vals.push_back(eval(v));
        total += vals.back();
      }
      if (eval(sum_of(q, n)) != total) continue;
      return solve_square(q, vals);
    }
    return std::nullopt;
  };

  auto add_sample = [&](const RationalVector& x) {
    if (samples.size() >= sample_budget) return;
    auto p = integral_ray(x);
    samples.push_back(p);
    if (auto l = local_fit(p))
      if (std::find(found.begin(), found.end(), *l) == found.end()) found.push_back(*l);
  };

  auto superlinearity_check = [&]() {
    for (std::size_t i = 0; i < samples.size(); ++i)
      for (std::size_t j = i + 1; j < samples.size() && j < i + 24; ++j)
        if (eval(samples[i]) + eval(samples[j]) > eval(add(samples[i], samples[j])))
          throw HypothesisViolated("sampled values are not superlinear");
  };

  std::size_t next = seed * 131 + 1;
  for (std::size_t k = 0; k < std::min<std::size_t>(sample_budget, 4 * n); ++k) add_sample(interior_sample(c, next++));

  int round = 0;
  while (true) {
    superlinearity_check();
    std::vector<RationalCone> regions;
    std::vector<RationalVector> pieces;
    std::vector<RationalVector> extra;
    bool ok = !found.empty();
    for (std::size_t i = 0; i < found.size(); ++i) {
      std::vector<RationalVector> rows;
      for (const auto& l : c.dual_description()) rows.push_back(to_rational(l));
      for (std::size_t j = 0; j < found.size(); ++j)
        if (j != i) rows.push_back(sub(found[j], found[i]));
      auto reg = RationalCone::from_inequalities(rows, n);
      if (!reg.is_full_dimensional()) continue;
      auto rays = rays_of(reg);
      auto centre = sum_of(rays, n);
      Rational total = 0;
      bool good = true;
      for (const auto& r : rays) {
        Rational v = eval(r);
        total += v;
        if (v != dot(found[i], r)) {
          good = false;
          extra.push_back(add(centre, scale(Rational(1L << std::min(round + 1, 20)), r)));
        }
      }
      if (good && eval(centre) != total) good = false;
      if (!good) {
        ok = false;
        extra.push_back(centre);
        extra.push_back(interior_sample(reg, next++));
      }
      regions.push_back(reg);
      pieces.push_back(found[i]);
    }
    res.candidate = PLFunction::scalar(regions, pieces);
    if (ok) {
      for (const auto& p : samples)
        if (res.candidate.evaluate_scalar(p) != eval(p)) ok = false;
    }
    if (ok) {
      res.complete = true;
      break;
    }
    if (samples.size() >= sample_budget) {
      res.note = "sample budget exhausted before the cover was certified";
      break;
    }
    if (extra.empty()) extra.push_back(interior_sample(c, next++));
    for (const auto& p : extra) add_sample(p);
    ++round;
  }
  res.samples = samples.size();
  return res;
}

StraightenResult straighten(const SuperadditiveOracle& f, const std::vector<RationalCone>& fan,
                            std::size_t sample_budget, std::uint64_t seed, std::int64_t box_sum) {
  const auto& dom = f.domain.cone();
  std::size_t n = f.domain.ambient_dim();
  std::map<RationalVector, RationalVector> cache;
  auto sharp = [&](const RationalVector& s) {
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
    return cache[s] = straightened_value(f, s);
  };

  StraightenResult res;
  res.complete = true;
  std::vector<RationalCone> cones = fan;
  if (cones.empty()) {
    if (!dom.is_full_dimensional()) throw InvalidInput("straighten needs a fan for a lower-dimensional monoid");
    cones = {dom};
    for (std::size_t comp = 0; comp < f.value_dim; ++comp) {
      auto det = detect_pl_2plane([&](const RationalVector& x) { return sharp(x)[comp]; }, dom, sample_budget,
                                  seed + comp);
      if (!det.complete) res.complete = false;
      std::vector<RationalCone> refined;
      for (const auto& a : cones)
        for (const auto& b : det.candidate.fan) {
          auto cut = intersect(a, b);
          if (cut.is_full_dimensional()) refined.push_back(cut);
        }
      cones = refined;
    }
  }

  for (const auto& cone : cones) {
    ConeReport rep;
    rep.cone = cone;
    auto rays = rays_of(cone);
    RationalMatrix vals;
    for (const auto& r : rays) vals.push_back(sharp(r));
    auto piece = fit_linear(rays, vals, n);
    RationalVector total(f.value_dim, 0);
    for (const auto& v : vals) total = add(total, v);
    rep.sharp_linear = piece.has_value() && sharp(sum_of(rays, n)) == total;
    if (piece) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (apply_map(*piece, rays[i]) != vals[i]) rep.sharp_linear = false;
      rep.piece = *piece;
    } else {
      rep.piece.assign(f.value_dim, RationalVector(n, 0));
    }
    if (!rep.sharp_linear) res.complete = false;

    // direct check on a truncation of the monoid of the cone
    auto sub_monoid = intersect_with_cone(f.domain, cone);
    const auto& gens = sub_monoid.generators();
    IntVector s0(n, 0);
    for (const auto& g : gens) s0 = add(s0, g);
    std::int64_t mu = f.ray_truncation(s0);
    for (const auto& g : gens) mu = std::lcm(mu, f.ray_truncation(g));
    rep.truncation = mu;
    std::vector<IntVector> fe;
    for (const auto& g : gens) fe.push_back(f.evaluate(scale(mu, g)));
    bool additive = true;
    std::size_t m = gens.size();
    std::int64_t bound = m > 6 ? std::min<std::int64_t>(box_sum, 3) : box_sum;
    IntVector p(m, 0);
    while (additive) {
      IntVector x(n, 0), expect(f.value_dim, 0);
      for (std::size_t i = 0; i < m; ++i) {
        x = add(x, scale(p[i] * mu, gens[i]));
        expect = add(expect, scale(p[i], fe[i]));
      }
      if (f.evaluate(x) != expect) additive = false;
      if (!next_in_box(p, bound)) break;
    }
    if (additive) {
      IntVector expect(f.value_dim, 0);
      for (const auto& v : fe) expect = add(expect, v);
      additive = f.evaluate(scale(mu, s0)) == expect;
    }
    rep.additive_up_to_truncation = additive;
    res.candidate.fan.push_back(cone);
    res.candidate.pieces.push_back(rep.piece);
    res.cones.push_back(rep);
  }
  res.candidate.value_dim = f.value_dim;
  return res;
}

LipschitzBound lipschitz_bound(const PLFunction& f, const RationalVector& x, std::optional<Rational> delta) {
  auto supp = f.support();
  if (x.size() != supp.ambient_dim()) throw DimensionMismatch("lipschitz_bound: dimension mismatch");
  if (!supp.membership(to_exact(x), Membership::Interior)) throw InvalidInput("x is not in the interior");
  std::size_t n = x.size();
  Rational rmax = facet_distance(supp, x);
  LipschitzBound out;
  out.delta = delta ? *delta : rmax / 4;
  if (out.delta <= 0 || 2 * out.delta > rmax) throw InvalidInput("B(x, 2 delta) must lie in the cone");

  // concave: the minimum over the cube is at a vertex, and f(x) - f(y) bounds |f(y) - f(x)| by symmetry
  out.m = 0;
  for (std::size_t comp = 0; comp < f.value_dim; ++comp) {
    Rational fx = f.evaluate(x)[comp];
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      RationalVector v = x;
      for (std::size_t i = 0; i < n; ++i) v[i] += (mask >> i & 1 ? 2 : -2) * out.delta;
      out.m = std::max(out.m, Rational(fx - f.evaluate(v)[comp]));
    }
  }
  out.coarse_l = 2 * out.m / out.delta;

  out.exact_l = 0;
  for (std::size_t i = 0; i < f.fan.size(); ++i) {
    const auto& cone = f.fan[i];
    if (!cone.is_full_dimensional()) continue;
    // max t with l(y) >= t on every facet and |y - x| <= delta
    LinearProgram lp;
    lp.num_vars = n + 1;
    lp.free_vars.assign(n + 1, true);
    lp.objective.assign(n + 1, 0);
    lp.objective[n] = 1;
    lp.maximize = true;
    for (const auto& a : cone.facets()) {
      RationalVector row = to_rational(a);
      row.push_back(-1);
      lp.constraints.push_back({row, Relation::GreaterEq, 0});
    }
    for (std::size_t k = 0; k < n; ++k) {
      RationalVector row(n + 1, 0);
      row[k] = 1;
      lp.constraints.push_back({row, Relation::LessEq, x[k] + out.delta});
      lp.constraints.push_back({row, Relation::GreaterEq, x[k] - out.delta});
    }
    RationalVector cap(n + 1, 0);
    cap[n] = 1;
    lp.constraints.push_back({cap, Relation::LessEq, 1});
    auto r = solve_lp(lp);
    if (r.status != LpStatus::Optimal || r.value <= 0) continue;
    for (const auto& row : f.pieces[i]) out.exact_l = std::max(out.exact_l, l1_norm(row));
  }
  out.l = std::min(out.coarse_l, out.exact_l);
  return out;
}

}  // namespace polycone
