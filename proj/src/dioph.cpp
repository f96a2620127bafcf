#include "polycone/dioph.hpp"

#include "polycone/errors.hpp"
#include "polycone/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace polycone {

namespace {

std::vector<std::size_t> pivots_of(const RationalMatrix& rref_rows) {
  std::vector<std::size_t> p;
  for (const auto& row : rref_rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      if (sgn(row[c]) != 0) {
        p.push_back(c);
        break;
      }
  return p;
}

// Integer points of s W, where W = a0 + L is rational.
struct ScaledLattice {
  std::size_t n = 0, m = 0;
  std::vector<IntVector> eqs;
  RationalVector h;  // eqs . a0
  std::vector<IntVector> basis;
  std::vector<std::size_t> rows;
  RationalMatrix inv;

  explicit ScaledLattice(const AffineSubspace& w) : n(w.ambient_dim()), m(w.dim()), eqs(w.equations()) {
    const auto& a0 = *w.rational_point();
    for (const auto& e : eqs) h.push_back(dot(e, a0));
    if (eqs.empty()) {
      for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n, 0);
        e[i] = 1;
        basis.push_back(e);
      }
    } else {
      basis = integer_kernel(eqs, n).basis;
    }
    if (m == 0) return;
    RationalMatrix cols;  // n x m
    for (std::size_t i = 0; i < n; ++i) {
      RationalVector r;
      for (const auto& b : basis) r.emplace_back(static_cast<long>(b[i]));
      cols.push_back(r);
    }
    rows = independent_rows(cols, m);
    RationalMatrix sq;
    for (auto i : rows) sq.push_back(cols[i]);
    inv = *inverse(sq);
  }

  // candidates z in Z^n with E z = s h, near the point y of s W; the
  // rounding is done in floating point and callers verify exactly
  std::vector<IntVector> near(const Rational& s, const std::vector<double>& y) const {
    IntVector rhs;
    for (const auto& v : h) {
      Rational t = s * v;
      if (t.get_den() != 1) return {};
      rhs.push_back(to_int64(t.get_num()));
    }
    IntVector z0(n, 0);
    if (!eqs.empty()) {
      auto sol = integer_solve(eqs, rhs, n);
      if (!sol) return {};
      z0 = *sol;
    }
    if (m == 0) return {z0};
    std::vector<std::int64_t> fl;
    for (std::size_t j = 0; j < m; ++j) {
      double c = 0;
      for (std::size_t i = 0; i < m; ++i) c += inv[j][i].get_d() * (y[rows[i]] - static_cast<double>(z0[rows[i]]));
      fl.push_back(static_cast<std::int64_t>(std::floor(c)));
    }
    std::vector<IntVector> out;
    std::vector<int> off(m, -1);
    while (true) {
      IntVector z = z0;
      for (std::size_t j = 0; j < m; ++j) z = add(z, scale(fl[j] + off[j], basis[j]));
      out.push_back(z);
      std::size_t j = 0;
      while (j < m && off[j] == 2) off[j++] = -1;
      if (j == m) break;
      ++off[j];
    }
    return out;
  }
};

// barycentric coordinates of x with respect to points in W (coordinates taken at the pivots)
std::optional<std::vector<ExactScalar>> barycentric(const std::vector<RationalVector>& pts, const ExactVector& x,
                                                    const std::vector<std::size_t>& piv) {
  std::size_t m = piv.size();
  if (pts.size() != m + 1) return std::nullopt;
  RationalMatrix a(m + 1, RationalVector(m + 1));
  for (std::size_t j = 0; j <= m; ++j) {
    for (std::size_t i = 0; i < m; ++i) a[i][j] = pts[j][piv[i]];
    a[m][j] = 1;
  }
  auto inv = inverse(a);
  if (!inv) return std::nullopt;
  std::vector<ExactScalar> r;
  for (std::size_t i = 0; i <= m; ++i) {
    ExactScalar v((*inv)[i][m]);
    for (std::size_t j = 0; j < m; ++j) v += ExactScalar((*inv)[i][j]) * x[piv[j]];
    r.push_back(v);
  }
  return r;
}

std::vector<double> approx(const ExactVector& x) {
  std::vector<double> out;
  for (const auto& v : x) out.push_back(v.to_double());
  return out;
}

// cheap rejection of |n x - k z| >= bound; exact checks follow for survivors
bool maybe_below(const std::vector<double>& xd, double n, std::int64_t k, const IntVector& z, double bound) {
  for (std::size_t i = 0; i < xd.size(); ++i)
    if (std::fabs(n * xd[i] - static_cast<double>(k * z[i])) >= bound + 1e-6) return false;
  return true;
}

bool all_positive(const std::vector<ExactScalar>& v) {
  return std::all_of(v.begin(), v.end(), [](const ExactScalar& s) { return s.sign() > 0; });
}

// x/k reduced: smallest k1 with k1 x / k integral
std::int64_t integral_multiplier(const RationalVector& x, std::int64_t k) {
  Integer l = 1;
  for (const auto& v : x) {
    Rational q = v / Rational(static_cast<long>(k));
    l = lcm(l, Integer(q.get_den()));
  }
  return to_int64(l);
}

}  // namespace

std::string check_tuple(const ExactVector& x, const Rational& eps, const ApproximationTuple& t) {
  std::size_t p = t.points.size();
  if (p == 0 || t.denominators.size() != p || t.weights.size() != p) return "tuple sizes differ";
  ExactScalar total(0);
  ExactVector comb(x.size(), ExactScalar(0));
  for (std::size_t i = 0; i < p; ++i) {
    if (t.denominators[i] <= 0) return "non-positive denominator";
    for (const auto& v : t.points[i]) {
      Rational q = v * Rational(static_cast<long>(t.denominators[i])) / Rational(static_cast<long>(t.k));
      if (q.get_den() != 1) return "k_i x_i / k is not integral";
    }
    ExactScalar err = sup_distance(x, to_exact(t.points[i]));
    if (!(err < ExactScalar(eps / static_cast<long>(t.denominators[i])))) return "|x - x_i| >= eps / k_i";
    if (t.weights[i].sign() <= 0) return "weight not positive";
    total += t.weights[i];
    comb = add(comb, scale(t.weights[i], to_exact(t.points[i])));
  }
  if (!(total == ExactScalar(1))) return "weights do not sum to 1";
  if (!(sub(comb, x) == ExactVector(x.size(), ExactScalar(0)))) return "weighted sum differs from x";
  return "";
}

AffineSubspace smallest_rational_affine(const ExactVector& x) {
  RationalVector a0(x.size(), 0);
  RationalMatrix dirs;
  for (const auto& [d, comp] : split_components(x)) {
    if (d == 1) a0 = comp;
    else dirs.push_back(comp);
  }
  return AffineSubspace(to_exact(a0), dirs);
}

ApproximationTuple uniform_approximate(const ExactVector& x, std::int64_t k, const Rational& eps,
                                       std::int64_t budget) {
  if (k <= 0) throw InvalidInput("k must be positive");
  if (eps <= 0) throw InvalidInput("eps must be positive");
  ApproximationTuple out;
  out.k = k;
  if (is_rational(x)) {
    auto xr = rational_part(x);
    out.points = {xr};
    out.denominators = {integral_multiplier(xr, k)};
    out.weights = {ExactScalar(1)};
    return out;
  }
  auto w = smallest_rational_affine(x);
  ScaledLattice lat(w);
  auto piv = pivots_of(w.direction_basis());
  std::size_t m = w.dim();

  auto xd = approx(x);
  double epsd = eps.get_d();
  std::vector<RationalVector> pts;
  std::vector<std::int64_t> dens;
  std::optional<ExactScalar> best;
  std::set<std::vector<int>> orthants;

  auto orthant_of = [&](const RationalVector& p) {
    std::vector<int> s;
    for (auto c : piv) s.push_back((ExactScalar(p[c]) - x[c]).sign());
    return s;
  };
  // a simplex among the accepted points, using the newest one, with x inside
  auto try_surround = [&]() -> bool {
    std::size_t last = pts.size() - 1;
    if (pts.size() < m + 1) return false;
    std::vector<std::size_t> pick;
    std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
      if (pick.size() == m) {
        std::vector<RationalVector> s;
        for (auto i : pick) s.push_back(pts[i]);
        s.push_back(pts[last]);
        auto r = barycentric(s, x, piv);
        if (!r || !all_positive(*r)) return false;
        out.points = s;
        out.denominators.clear();
        for (auto i : pick) out.denominators.push_back(dens[i]);
        out.denominators.push_back(dens[last]);
        out.weights = *r;
        return true;
      }
      for (std::size_t i = start; i < last; ++i) {
        pick.push_back(i);
        if (rec(i + 1)) return true;
        pick.pop_back();
      }
      return false;
    };
    return rec(0);
  };

  // first pass: record approximations; second pass: anything landing in a new orthant
  for (int pass = 0; pass < 2; ++pass) {
    std::int64_t limit = pass == 0 ? std::max<std::int64_t>(1, budget / 2) : budget;
    for (std::int64_t n = 1; n <= limit; ++n) {
      Rational s(static_cast<long>(n), static_cast<long>(k));
      s.canonicalize();
      std::vector<double> y;
      for (double v : xd) y.push_back(v * s.get_d());
      for (const auto& z : lat.near(s, y)) {
        if (!maybe_below(xd, static_cast<double>(n), k, z, epsd)) continue;
        ExactScalar err = sup_distance(scale(ExactScalar(static_cast<long>(n)), x),
                                       to_exact(scale(k, z)));
        if (!(err < ExactScalar(eps))) continue;
        RationalVector p;
        for (auto v : z) p.push_back(Rational(static_cast<long>(v * k)) / static_cast<long>(n));
        if (std::find(pts.begin(), pts.end(), p) != pts.end()) continue;
        bool take;
        if (pass == 0) {
          take = !best || err < *best;
        } else {
          auto o = orthant_of(p);
          take = !orthants.count(o);
        }
        if (!take) continue;
        if (!best || err < *best) best = err;
        orthants.insert(orthant_of(p));
        pts.push_back(p);
        dens.push_back(n);
        if (try_surround()) return out;
      }
    }
  }
  throw BudgetExhausted("uniform_approximate: no surrounding simplex within the denominator budget",
                        best ? "best |N x - k z| = " + std::to_string(best->to_double()) : "no qualifying point");
}

Extension extend_approximation(const ExactVector& x, std::int64_t k, const Rational& eps, const Rational& eta,
                               const RationalVector& x1, std::int64_t k1, std::int64_t budget) {
  if (k <= 0 || k1 <= 0) throw InvalidInput("k and k1 must be positive");
  if (eps <= 0 || eta <= 0) throw InvalidInput("eps and eta must be positive");
  if (x1.size() != x.size()) throw DimensionMismatch("x1 has wrong dimension");
  ExactVector ex1 = to_exact(x1);
  if (!(sup_distance(x, ex1) < ExactScalar(eps / static_cast<long>(k1))))
    throw InvalidInput("hypothesis |x - x1| < eps/k1 fails");
  if (k1 % integral_multiplier(x1, k) != 0)
    throw InvalidInput("hypothesis k1 x1 / k integral fails");

  auto w = smallest_rational_affine(x);
  ScaledLattice lat(w);
  auto piv = pivots_of(w.direction_basis());
  ExactScalar ek(static_cast<long>(k)), ek1(static_cast<long>(k1));
  ExactVector shift = scale(ek1, sub(x, ex1));
  auto xd = approx(x);
  double etad = eta.get_d();
  std::optional<ExactScalar> best;

  for (std::int64_t k2 = 1; k2 <= budget; ++k2) {
    std::int64_t n = k1 + k2;
    Rational s(static_cast<long>(n), static_cast<long>(k));
    s.canonicalize();
    ExactVector nx = scale(ExactScalar(static_cast<long>(n)), x);
    std::vector<double> y;
    for (double v : xd) y.push_back(v * s.get_d());
    for (const auto& z : lat.near(s, y)) {
      if (!maybe_below(xd, static_cast<double>(n), k, z, etad)) continue;
      ExactVector kw = to_exact(scale(k, z));
      ExactScalar e1 = sup_distance(nx, kw);
      if (!best || e1 < *best) best = e1;
      if (!(e1 < ExactScalar(eta))) continue;
      if (!(sup_norm(sub(sub(nx, kw), shift)) < ExactScalar(eps))) continue;

      Extension ext;
      ext.k2 = k2;
      RationalVector kwr = to_rational(scale(k, z));
      ext.x2 = scale(Rational(1, 1) / static_cast<long>(k2), sub(kwr, scale(Rational(static_cast<long>(k1)), x1)));
      RationalVector u = scale(Rational(1, 1) / static_cast<long>(n), kwr);
      ext.xi = sub(x, to_exact(u));
      ext.aux = scale(ExactScalar(Rational(1, 1) / static_cast<long>(k2)), sub(kw, scale(ek1, x)));
      if (!w.contains(ext.aux)) throw Error("extend_approximation: auxiliary point left W");

      Rational alpha(static_cast<long>(k1), static_cast<long>(n));
      alpha.canonicalize();
      ApproximationTuple& t = ext.tuple;
      t.k = k;
      t.points = {x1, ext.x2};
      t.denominators = {k1, k2};
      bool exact = std::all_of(ext.xi.begin(), ext.xi.end(), [](const ExactScalar& v) { return v.is_zero(); });
      if (exact) {
        t.weights = {ExactScalar(alpha), ExactScalar(1 - alpha)};
        if (x1 == ext.x2) {
          t.points.pop_back();
          t.denominators.pop_back();
          t.weights = {ExactScalar(1)};
        }
        return ext;
      }
      // x lies on the open segment (u, v) with v inside the simplex around x in W
      auto simplex = uniform_approximate(x, k, eps, budget);
      auto bx = simplex.weights;
      auto bu = barycentric(simplex.points, to_exact(u), piv);
      Rational tt = 1;
      std::vector<ExactScalar> bv;
      while (true) {
        bv.clear();
        for (std::size_t i = 0; i < bx.size(); ++i) bv.push_back(bx[i] + ExactScalar(tt) * (bx[i] - (*bu)[i]));
        if (all_positive(bv)) break;
        tt /= 2;
      }
      Rational beta = tt / (1 + tt);
      t.weights = {ExactScalar(alpha * beta), ExactScalar((1 - alpha) * beta)};
      for (std::size_t i = 0; i < simplex.points.size(); ++i) {
        t.points.push_back(simplex.points[i]);
        t.denominators.push_back(simplex.denominators[i]);
        t.weights.push_back(ExactScalar(1 - beta) * bv[i]);
      }
      return ext;
    }
  }
  throw BudgetExhausted("extend_approximation: no k2 within the budget",
                        best ? "best |(k1+k2) x - k w| = " + std::to_string(best->to_double()) : "no lattice point");
}

std::optional<std::int64_t> torus_scan(const ExactVector& x, const ExactVector& target, const Rational& delta,
                                       std::int64_t budget) {
  ExactScalar half(Rational(1, 2)), d(delta);
  for (std::int64_t n = 1; n <= budget; ++n) {
    bool ok = true;
    for (std::size_t i = 0; i < x.size() && ok; ++i) {
      ExactScalar v = ExactScalar(static_cast<long>(n)) * x[i] - target[i];
      ExactScalar f = v - ExactScalar(Rational(v.floor()));
      ExactScalar dist = f < half ? f : ExactScalar(1) - f;
      if (!(dist < d)) ok = false;
    }
    if (ok) return n;
  }
  return std::nullopt;
}

RationalVector nearest_rational_in_subspace(const AffineSubspace& k, const ExactVector& r, const Rational& eps,
                                            const std::vector<RationalVector>& keep_positive) {
  if (eps <= 0) throw InvalidInput("eps must be positive");
  if (!k.is_rational()) throw InvalidInput("subspace has no rational point");
  if (!k.contains(r)) throw InvalidInput("r is not in the subspace");
  const auto& a0 = *k.rational_point();
  if (is_rational(r)) return rational_part(r);
  const auto& dirs = k.direction_basis();
  auto piv = pivots_of(dirs);
  std::size_t n = r.size();
  Rational rownorm = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Rational s = 0;
    for (const auto& d : dirs) s += abs(d[c]);
    rownorm = std::max(rownorm, s);
  }
  std::vector<bool> want;
  for (const auto& l : keep_positive) want.push_back(dot(l, r).sign() > 0);

  Integer ten = 1;
  int p = 0;
  while (Rational(rownorm / Rational(ten)) >= eps / 2) ten *= 10, ++p;
  for (; p < 200; ++p, ten *= 10) {
    RationalVector s = a0;
    for (std::size_t j = 0; j < piv.size(); ++j) {
      Integer f = (r[piv[j]] * ExactScalar(Rational(ten))).floor();
      Rational t = Rational(f) / Rational(ten) - a0[piv[j]];
      s = add(s, scale(t, dirs[j]));
    }
    if (!(sup_distance(to_exact(s), r) < ExactScalar(eps))) continue;
    bool ok = true;
    for (std::size_t i = 0; i < keep_positive.size(); ++i)
      if (want[i] && sgn(dot(keep_positive[i], s)) <= 0) ok = false;
    if (ok) return s;
  }
  throw Error("nearest_rational_in_subspace: precision limit reached");
}

}  // namespace polycone
