#include "polycone/toric.hpp"

#include "polycone/errors.hpp"
#include "polycone/linalg.hpp"
#include "polycone/lp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace polycone {

namespace {

Rational floor_q(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

Rational ceil_q(const Rational& q) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(c);
}

void check_divisor(const ToricModel& x, const TorusDivisor& d) {
  if (d.size() != x.num_rays()) throw DimensionMismatch("divisor: one coefficient per ray required");
}

bool is_integral(const TorusDivisor& d) {
  return std::all_of(d.begin(), d.end(), [](const Rational& q) { return q.get_den() == 1; });
}

// Visits the lattice points of P_D fibre by fibre: for every integral choice of
// the first n-1 coordinates, the callback gets the integral range [lo, hi] of
// the last one.
template <class F>
void scan_fibres(const ToricModel& x, const TorusDivisor& d, F&& visit) {
  auto p = section_polytope(x, d);
  if (p.empty()) return;
  std::size_t n = x.dim(), last = n - 1;
  std::vector<std::int64_t> lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational a = p.vertices()[0][j], b = a;
    for (const auto& v : p.vertices()) {
      a = std::min(a, v[j]);
      b = std::max(b, v[j]);
    }
    lo[j] = to_int64(ceil_q(a).get_num());
    hi[j] = to_int64(floor_q(b).get_num());
    if (lo[j] > hi[j]) return;
  }
  IntVector u(lo.begin(), lo.end());
  while (true) {
    Rational l = lo[last], h = hi[last];
    bool ok = true;
    for (std::size_t r = 0; r < x.num_rays() && ok; ++r) {
      const auto& v = x.rays()[r];
      Rational rest = -d[r];
      for (std::size_t j = 0; j < last; ++j) rest -= static_cast<long>(v[j] * u[j]);
      // v_last * t >= rest
      if (v[last] == 0) {
        if (sgn(rest) > 0) ok = false;
      } else if (v[last] > 0) {
        l = std::max(l, ceil_q(rest / static_cast<long>(v[last])));
      } else {
        h = std::min(h, floor_q(rest / static_cast<long>(v[last])));
      }
    }
    if (ok && l <= h) visit(u, to_int64(l.get_num()), to_int64(h.get_num()));
    std::size_t j = 0;
    for (; j < last; ++j) {
      if (u[j] < hi[j]) {
        ++u[j];
        break;
      }
      u[j] = lo[j];
    }
    if (j == last) break;
  }
}

// vertices of {u : A u >= b}, assumed bounded
std::vector<RationalVector> polytope_vertices(const RationalMatrix& a, const RationalVector& b, std::size_t d) {
  std::vector<RationalVector> ineqs;
  RationalVector t(d + 1, 0);
  t[0] = 1;
  ineqs.push_back(t);
  for (std::size_t i = 0; i < a.size(); ++i) {
    RationalVector row{-b[i]};
    row.insert(row.end(), a[i].begin(), a[i].end());
    ineqs.push_back(row);
  }
  auto hom = RationalCone::from_inequalities(ineqs, d + 1);
  std::vector<RationalVector> out;
  for (const auto& ray : hom.extremal_rays()) {
    if (ray[0] <= 0) throw InvalidInput("polytope: unbounded");
    RationalVector v;
    for (std::size_t j = 1; j <= d; ++j) {
      v.emplace_back(static_cast<long>(ray[j]), static_cast<long>(ray[0]));
      v.back().canonicalize();
    }
    out.push_back(v);
  }
  return out;
}

// min of the integral functional c over the lattice points of the bounded
// polytope {u : A u >= b}. A lattice vertex attaining the real minimum settles
// it; otherwise the levels c.u = t are tried upwards, each slice being tested
// for a lattice point one dimension lower.
std::optional<Integer> lattice_min(const RationalMatrix& a, const RationalVector& b, IntVector c, std::size_t d) {
  auto verts = polytope_vertices(a, b, d);
  if (verts.empty()) return std::nullopt;
  if (is_zero_vector(c)) {
    c.assign(d, 0);
    c[0] = 1;
  }
  if (d == 1) {
    Rational lo = verts[0][0], hi = lo;
    for (const auto& v : verts) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    Rational l = ceil_q(lo), h = floor_q(hi);
    if (l > h) return std::nullopt;
    Rational best = std::min(Rational(l * static_cast<long>(c[0])), Rational(h * static_cast<long>(c[0])));
    return best.get_num();
  }
  std::int64_t g = 0;
  for (auto x : c) g = std::gcd(g, x < 0 ? -x : x);
  IntVector prim = c;
  for (auto& x : prim) x /= g;
  Rational lo = dot(prim, verts[0]), hi = lo;
  bool lattice_vertex = false;
  for (const auto& v : verts) lo = std::min(lo, Rational(dot(prim, v)));
  for (const auto& v : verts) {
    hi = std::max(hi, Rational(dot(prim, v)));
    if (dot(prim, v) == lo && lcm_of_denominators(v) == 1) lattice_vertex = true;
  }
  if (lattice_vertex) return Integer(lo.get_num() * g);
  auto kernel = integer_kernel({prim}, d).basis;
  for (Integer t = ceil_q(lo).get_num(); t <= floor_q(hi).get_num(); ++t) {
    auto u0 = integer_solve({prim}, {to_int64(t)}, d);
    if (!u0) continue;
    // u = u0 + K k
    RationalMatrix ak;
    RationalVector bk;
    for (std::size_t i = 0; i < a.size(); ++i) {
      RationalVector row;
      for (const auto& kv : kernel) row.push_back(dot(kv, a[i]));
      ak.push_back(row);
      bk.push_back(b[i] - dot(*u0, a[i]));
    }
    if (lattice_min(ak, bk, IntVector(d - 1, 0), d - 1)) return Integer(t * g);
  }
  return std::nullopt;
}

}  // namespace

ToricModel::ToricModel(std::vector<IntVector> rays, std::vector<std::vector<std::size_t>> max_cones)
    : rays_(std::move(rays)), cones_(std::move(max_cones)) {
  if (rays_.empty()) throw InvalidInput("toric model: no rays");
  dim_ = rays_[0].size();
  if (dim_ == 0) throw InvalidInput("toric model: zero-dimensional lattice");
  for (const auto& v : rays_) {
    if (v.size() != dim_) throw DimensionMismatch("toric model: ray dimension");
    if (is_zero_vector(v) || primitive(v) != v) throw InvalidInput("toric model: rays must be primitive");
  }
  if (cones_.empty()) throw InvalidInput("toric model: no maximal cones");
  simplicial_ = smooth_ = true;
  // facet (as a ray index set) -> cones having it, with the inner normal
  std::map<std::vector<std::size_t>, std::vector<std::pair<std::size_t, IntVector>>> facets;
  std::vector<RationalCone> cones;
  for (std::size_t c = 0; c < cones_.size(); ++c) {
    auto& idx = cones_[c];
    std::sort(idx.begin(), idx.end());
    std::vector<IntVector> gens;
    for (auto i : idx) {
      if (i >= rays_.size()) throw InvalidInput("toric model: ray index out of range");
      gens.push_back(rays_[i]);
    }
    auto cone = RationalCone::from_generators(gens, dim_);
    if (!cone.is_full_dimensional()) throw InvalidInput("toric model: maximal cone is not full-dimensional");
    if (cone.extremal_rays().size() != idx.size()) throw InvalidInput("toric model: listed ray is not extremal");
    if (idx.size() != dim_) {
      simplicial_ = smooth_ = false;
    } else {
      RationalMatrix m;
      for (const auto& g : gens) m.push_back(to_rational(g));
      Rational det = determinant(m);
      if (det != 1 && det != -1) smooth_ = false;
    }
    for (const auto& nrm : cone.facets()) {
      std::vector<std::size_t> on;
      for (auto i : idx)
        if (dot(nrm, rays_[i]) == 0) on.push_back(i);
      facets[on].push_back({c, nrm});
    }
    cones.push_back(std::move(cone));
  }
  // in a complete fan every facet of a maximal cone is shared by exactly two
  // maximal cones lying on opposite sides
  for (const auto& [on, users] : facets) {
    if (users.size() != 2) throw InvalidInput("toric model: fan is not complete (unpaired facet)");
    IntVector w = cones[users[1].first].interior_ray();
    if (dot(users[0].second, w) >= 0) throw InvalidInput("toric model: overlapping maximal cones");
  }
  for (std::size_t i = 1; i <= 64; ++i) {
    auto p = low_discrepancy(i, dim_);
    for (auto& c : p) c = 2 * c - 1;
    bool hit = std::any_of(cones.begin(), cones.end(), [&](const RationalCone& c) { return c.contains(p); });
    if (!hit) throw InvalidInput("toric model: fan is not complete (uncovered direction)");
  }
}

ToricModel projective_line() { return ToricModel({{1}, {-1}}, {{0}, {1}}); }

ToricModel projective_plane() {
  return ToricModel({{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}});
}

ToricModel blown_up_plane() {
  return ToricModel({{1, 0}, {0, 1}, {-1, -1}, {1, 1}}, {{0, 3}, {3, 1}, {1, 2}, {2, 0}});
}

ToricModel hirzebruch(std::int64_t a) {
  return ToricModel({{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

TorusDivisor DivisorFamily::at(const RationalVector& s) const {
  if (s.size() != grading_rank) throw DimensionMismatch("family: grading rank");
  TorusDivisor d;
  for (const auto& row : matrix) {
    if (row.size() != grading_rank) throw DimensionMismatch("family: matrix width");
    d.push_back(dot(row, s));
  }
  return d;
}

RationalPolytope section_polytope(const ToricModel& x, const TorusDivisor& d) {
  check_divisor(x, d);
  std::size_t n = x.dim();
  // homogenized: t >= 0 and a_rho t + <v_rho, u> >= 0; bounded since the fan is complete
  std::vector<RationalVector> ineqs;
  RationalVector t(n + 1, 0);
  t[0] = 1;
  ineqs.push_back(t);
  for (std::size_t r = 0; r < x.num_rays(); ++r) {
    RationalVector row{d[r]};
    for (auto c : x.rays()[r]) row.emplace_back(static_cast<long>(c));
    ineqs.push_back(row);
  }
  auto hom = RationalCone::from_inequalities(ineqs, n + 1);
  std::vector<RationalVector> verts;
  for (const auto& ray : hom.extremal_rays()) {
    if (ray[0] <= 0) throw InvalidInput("section polytope: unbounded (fan not complete)");
    RationalVector v;
    for (std::size_t j = 1; j <= n; ++j) v.push_back(Rational(static_cast<long>(ray[j]), static_cast<long>(ray[0])));
    for (auto& q : v) q.canonicalize();
    verts.push_back(v);
  }
  if (verts.empty()) return RationalPolytope(n);
  return RationalPolytope::from_points(verts, n);
}

std::vector<IntVector> lattice_points(const ToricModel& x, const TorusDivisor& d) {
  std::vector<IntVector> out;
  scan_fibres(x, d, [&](const IntVector& u, std::int64_t lo, std::int64_t hi) {
    IntVector w = u;
    for (std::int64_t t = lo; t <= hi; ++t) {
      w.back() = t;
      out.push_back(w);
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t vertex_denominator(const ToricModel& x, const TorusDivisor& d) {
  auto p = section_polytope(x, d);
  if (p.empty()) throw InvalidInput("vertex denominator: empty section polytope");
  Integer l = 1;
  for (const auto& v : p.vertices()) l = lcm(l, lcm_of_denominators(v));
  return to_int64(l);
}

FixMob fixed_part(const ToricModel& x, const TorusDivisor& d) {
  check_divisor(x, d);
  if (!is_integral(d)) throw InvalidInput("fixed part: divisor must be integral");
  RationalMatrix a;
  for (const auto& v : x.rays()) a.push_back(to_rational(v));
  RationalVector b;
  for (const auto& q : d) b.push_back(-q);
  FixMob out;
  for (std::size_t r = 0; r < x.num_rays(); ++r) {
    auto m = lattice_min(a, b, x.rays()[r], x.dim());
    if (!m) throw InvalidInput("fixed part: no sections");
    out.fix.push_back(Rational(*m) + d[r]);
    out.mob.push_back(d[r] - out.fix.back());
  }
  return out;
}

Rational asymptotic_ord(const ToricModel& x, const TorusDivisor& d, std::size_t rho) {
  check_divisor(x, d);
  if (rho >= x.num_rays()) throw InvalidInput("ord: ray index out of range");
  LinearProgram lp;
  lp.num_vars = x.dim();
  lp.free_vars.assign(x.dim(), true);
  for (std::size_t r = 0; r < x.num_rays(); ++r)
    lp.constraints.push_back({to_rational(x.rays()[r]), Relation::GreaterEq, -d[r]});
  lp.objective = to_rational(x.rays()[rho]);
  auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) throw InvalidInput("ord: empty section polytope");
  return res.value + d[rho];
}

TorusDivisor nsigma(const ToricModel& x, const TorusDivisor& d) {
  TorusDivisor out;
  for (std::size_t r = 0; r < x.num_rays(); ++r) out.push_back(asymptotic_ord(x, d, r));
  return out;
}

namespace {

// m_sigma with <m, v_rho> = -a_rho on the rays of sigma; nullopt if D is not Cartier there
std::optional<RationalVector> cartier_datum(const ToricModel& x, const TorusDivisor& d,
                                            const std::vector<std::size_t>& sigma) {
  RationalMatrix a;
  RationalVector b;
  for (auto i : sigma) {
    a.push_back(to_rational(x.rays()[i]));
    b.push_back(-d[i]);
  }
  auto m = solve_particular(a, b, x.dim());
  if (!m) return std::nullopt;
  for (std::size_t k = 0; k < sigma.size(); ++k)
    if (dot(a[k], *m) != b[k]) return std::nullopt;
  return m;
}

bool support_convex(const ToricModel& x, const TorusDivisor& d, bool strict) {
  check_divisor(x, d);
  for (const auto& sigma : x.max_cones()) {
    auto m = cartier_datum(x, d, sigma);
    if (!m) return false;
    for (std::size_t r = 0; r < x.num_rays(); ++r) {
      if (std::binary_search(sigma.begin(), sigma.end(), r)) continue;
      Rational v = dot(x.rays()[r], *m) + d[r];
      if (v < 0 || (strict && v == 0)) return false;
    }
  }
  return true;
}

}  // namespace

bool is_nef(const ToricModel& x, const TorusDivisor& d) { return support_convex(x, d, false); }
bool is_ample(const ToricModel& x, const TorusDivisor& d) { return support_convex(x, d, true); }

std::optional<std::int64_t> adjoint_shape(const ToricModel& x, const TorusDivisor& d, std::int64_t k_max) {
  for (std::int64_t k = 1; k <= k_max; ++k) {
    TorusDivisor a;
    for (std::size_t r = 0; r < d.size(); ++r) a.push_back(d[r] / static_cast<long>(k) - x.canonical()[r]);
    if (is_ample(x, a)) return k;
  }
  return std::nullopt;
}

AdjointSemigroup adjoint_semigroup(const ToricModel& x, const DivisorFamily& f, std::int64_t truncation) {
  std::size_t l = f.grading_rank, n = x.dim();
  if (l == 0) throw InvalidInput("adjoint semigroup: empty family");
  if (f.matrix.size() != x.num_rays()) throw DimensionMismatch("adjoint semigroup: one matrix row per ray");
  if (truncation <= 0) throw InvalidInput("adjoint semigroup: truncation must be positive");
  for (std::size_t i = 0; i < l; ++i) {
    RationalVector e(l, 0);
    e[i] = 1;
    if (section_polytope(x, f.at(e)).empty()) throw InvalidInput("adjoint semigroup: generator without sections");
  }
  std::vector<IntVector> ineqs;
  for (std::size_t i = 0; i < l; ++i) {
    IntVector e(l + n, 0);
    e[i] = 1;
    ineqs.push_back(e);
  }
  for (std::size_t r = 0; r < x.num_rays(); ++r) {
    RationalVector row = f.matrix[r];
    for (auto c : x.rays()[r]) row.emplace_back(static_cast<long>(c));
    if (!is_zero_vector(row)) ineqs.push_back(primitive(row));
  }
  auto cone = RationalCone::from_inequalities(ineqs, l + n);
  AdjointSemigroup out;
  out.basis = hilbert_basis(cone, Lattice::Z);
  std::sort(out.basis.begin(), out.basis.end());
  out.total = AffineMonoid(out.basis, l + n, Lattice::Z, true);
  out.truncation = truncation;
  // integral extension over the truncation, checked on low degrees
  auto trunc = truncate_uniform(out.total, truncation);
  IntVector grading(l + n, 0);
  for (std::size_t i = 0; i < l; ++i) grading[i] = 1;
  out.integral_over_truncation = true;
  for (const auto& y : elements_up_to_degree(out.basis, grading, 3))
    if (!trunc.contains(scale(truncation, y))) out.integral_over_truncation = false;
  return out;
}

std::vector<IntVector> graded_piece(const ToricModel& x, const DivisorFamily& f, const IntVector& s) {
  return lattice_points(x, f.at(to_rational(s)));
}

OrdDecomposition ord_pl_decomposition(const ToricModel& x, const DivisorFamily& f, std::size_t rho) {
  std::size_t l = f.grading_rank, n = x.dim(), rays = x.num_rays();
  if (l == 0) throw InvalidInput("ord decomposition: empty family");
  if (f.matrix.size() != rays) throw DimensionMismatch("ord decomposition: one matrix row per ray");
  if (rho >= rays) throw InvalidInput("ord decomposition: ray index out of range");
  OrdDecomposition out;

  // vertices of Q = {y >= 0 : V^T y = v_rho}, one per feasible basis
  std::set<RationalVector> verts;
  std::vector<std::size_t> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  if (n <= rays) {
    while (true) {
      RationalMatrix a(n, RationalVector(n));
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t c = 0; c < n; ++c) a[j][c] = static_cast<long>(x.rays()[pick[c]][j]);
      if (auto yb = solve_square(a, to_rational(x.rays()[rho]))) {
        if (std::all_of(yb->begin(), yb->end(), [](const Rational& q) { return sgn(q) >= 0; })) {
          RationalVector y(rays, 0);
          for (std::size_t c = 0; c < n; ++c) y[pick[c]] = (*yb)[c];
          verts.insert(y);
        }
      }
      std::size_t i = n;
      while (i > 0 && pick[i - 1] == rays - n + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  out.lp_bases = verts.size();

  // recession rays z of Q: P_{mu(s)} is nonempty iff (M s).z >= 0 for all of them
  std::vector<IntVector> orth, eqs;
  for (std::size_t r = 0; r < rays; ++r) {
    IntVector e(rays, 0);
    e[r] = 1;
    orth.push_back(e);
  }
  for (std::size_t j = 0; j < n; ++j) {
    IntVector row;
    for (std::size_t r = 0; r < rays; ++r) row.push_back(x.rays()[r][j]);
    eqs.push_back(row);
  }
  auto rec = RationalCone::from_inequalities(orth, rays, eqs);
  std::vector<RationalVector> dom;
  for (std::size_t i = 0; i < l; ++i) {
    RationalVector e(l, 0);
    e[i] = 1;
    dom.push_back(e);
  }
  for (const auto& z : rec.extremal_rays()) {
    RationalVector row(l, 0);
    for (std::size_t r = 0; r < rays; ++r)
      for (std::size_t i = 0; i < l; ++i) row[i] += static_cast<long>(z[r]) * f.matrix[r][i];
    dom.push_back(row);
  }
  out.domain = RationalCone::from_inequalities(dom, l);
  if (out.domain.is_zero()) throw InvalidInput("ord decomposition: no grading with sections");
  out.covers_grading_cone = true;
  for (std::size_t i = 0; i < l; ++i)
    if (!out.domain.contains(dom[i])) out.covers_grading_cone = false;

  // ord(s) = max over vertices y of (e_rho - y)^T M s on the domain
  std::vector<RationalVector> funcs;
  for (const auto& y : verts) {
    RationalVector g(l, 0);
    for (std::size_t r = 0; r < rays; ++r) {
      Rational w = (r == rho ? Rational(1) : Rational(0)) - y[r];
      if (w == 0) continue;
      for (std::size_t i = 0; i < l; ++i) g[i] += w * f.matrix[r][i];
    }
    if (std::find(funcs.begin(), funcs.end(), g) == funcs.end()) funcs.push_back(g);
  }
  std::vector<IntVector> base_rows = out.domain.dual_description();
  std::vector<RationalCone> fan;
  std::vector<RationalVector> pieces;
  for (const auto& g : funcs) {
    std::vector<RationalVector> rows;
    for (const auto& b : base_rows) rows.push_back(to_rational(b));
    for (const auto& h : funcs)
      if (h != g) rows.push_back(sub(g, h));
    auto c = RationalCone::from_inequalities(rows, l);
    if (c.dim() != out.domain.dim()) continue;
    if (std::find(fan.begin(), fan.end(), c) != fan.end()) continue;
    fan.push_back(c);
    pieces.push_back(g);
  }
  out.ord = PLFunction::scalar(fan, pieces);
  return out;
}

SuperadditiveOracle mobile_oracle(const ToricModel& x, const DivisorFamily& f) {
  std::size_t l = f.grading_rank;
  for (const auto& row : f.matrix)
    if (!is_integral(row)) throw InvalidInput("mobile oracle: family matrix must be integral");
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < l; ++i) {
    IntVector e(l, 0);
    e[i] = 1;
    gens.push_back(e);
    if (lattice_points(x, f.at(to_rational(e))).empty())
      throw InvalidInput("mobile oracle: generator without sections");
  }
  SuperadditiveOracle o;
  o.domain = AffineMonoid(gens, l, Lattice::N, true);
  o.value_dim = x.num_rays();
  o.evaluate = [x, f](const IntVector& s) {
    auto fm = fixed_part(x, f.at(to_rational(s)));
    IntVector v;
    for (const auto& q : fm.mob) v.push_back(to_int64(q.get_num()));
    return v;
  };
  o.ray_truncation = [x, f](const IntVector& s) { return vertex_denominator(x, f.at(to_rational(s))); };
  return o;
}

TorusDivisor straightened_mobile(const ToricModel& x, const DivisorFamily& f, const RationalVector& s) {
  TorusDivisor d = f.at(s);
  return sub(d, nsigma(x, d));
}

std::optional<std::int64_t> mobile_truncation(const ToricModel& x, const DivisorFamily& f, const IntVector& s,
                                              std::int64_t p_max, std::int64_t i_max) {
  for (std::int64_t p = 1; p <= p_max; ++p) {
    auto base = fixed_part(x, f.at(to_rational(scale(p, s)))).mob;
    bool ok = true;
    for (std::int64_t i = 2; i <= i_max && ok; ++i)
      ok = fixed_part(x, f.at(to_rational(scale(i * p, s)))).mob == scale(Rational(static_cast<long>(i)), base);
    if (ok) return p;
  }
  return std::nullopt;
}

}  // namespace polycone
