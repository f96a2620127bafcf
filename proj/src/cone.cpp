#include "polycone/cone.hpp"

#include "polycone/errors.hpp"
#include "polycone/linalg.hpp"

#include <algorithm>
#include <cstdint>

namespace polycone {

namespace {

struct Bits {
  std::vector<std::uint64_t> w;
  explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
  void set(std::size_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w) c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < w.size(); ++i) r.w[i] &= o.w[i];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] & ~o.w[i]) return false;
    return true;
  }
};

struct DdRay {
  RationalVector v;
  Bits zero;
};

RationalVector as_rational(const IntVector& v) { return to_rational(v); }

void dedupe_sorted(std::vector<IntVector>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<IntVector> extreme_rays_dd(const RationalMatrix& a, std::size_t d) {
  if (d == 0) return {};
  for (const auto& row : a)
    if (row.size() != d) throw DimensionMismatch("double description: row size");
  auto idx = independent_rows(a, d);
  if (idx.size() < d) throw NotPointed("cone contains a line");
  RationalMatrix a0;
  for (auto i : idx) a0.push_back(a[i]);
  auto inv = inverse(a0);
  std::size_t m = a.size();
  std::vector<bool> processed(m, false);
  for (auto i : idx) processed[i] = true;
  std::vector<DdRay> rays;
  for (std::size_t j = 0; j < d; ++j) {
    RationalVector col(d);
    for (std::size_t i = 0; i < d; ++i) col[i] = (*inv)[i][j];
    DdRay r{as_rational(primitive(col)), Bits(m)};
    for (std::size_t i = 0; i < d; ++i)
      if (i != j) r.zero.set(idx[i]);
    rays.push_back(std::move(r));
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (processed[k]) continue;
    processed[k] = true;
    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<DdRay> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a[k], rays[i].v);
      int s = sgn(val[i]);
      if (s > 0) pos.push_back(i);
      else if (s < 0) neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (sgn(val[i]) == 0) rays[i].zero.set(k);
      continue;
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (sgn(val[i]) < 0) continue;
      DdRay r = rays[i];
      if (sgn(val[i]) == 0) r.zero.set(k);
      next.push_back(std::move(r));
    }
    for (auto p : pos)
      for (auto q : neg) {
        Bits common = rays[p].zero & rays[q].zero;
        if (d >= 2 && common.count() + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && common.subset_of(rays[r].zero)) adjacent = false;
        if (!adjacent) continue;
        RationalVector v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = val[p] * rays[q].v[i] - val[q] * rays[p].v[i];
        DdRay nr{as_rational(primitive(v)), common};
        nr.zero.set(k);
        next.push_back(std::move(nr));
      }
    rays = std::move(next);
  }
  std::vector<IntVector> out;
  for (const auto& r : rays) out.push_back(primitive(r.v));
  dedupe_sorted(out);
  return out;
}

RationalCone RationalCone::from_generators(const std::vector<IntVector>& gens, std::size_t dim) {
  std::vector<RationalVector> g;
  for (const auto& v : gens) g.push_back(to_rational(v));
  return from_generators(g, dim);
}

RationalCone RationalCone::from_generators(const std::vector<RationalVector>& gens, std::size_t dim) {
  RationalCone c;
  c.ambient_ = dim;
  for (const auto& g : gens) {
    if (g.size() != dim) throw DimensionMismatch("generator has wrong dimension");
    if (!is_zero_vector(g)) c.gens_.push_back(primitive(g));
  }
  dedupe_sorted(c.gens_);
  RationalMatrix g = to_rational(c.gens_);
  RationalMatrix b = g.empty() ? RationalMatrix{} : row_basis(g, dim);
  std::size_t r = b.size();
  c.equations_ = orthogonal_complement(b, dim);
  if (r == 0) return c;
  // coordinates of each generator in the basis b, via the Gram matrix
  RationalMatrix gram(r, RationalVector(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gram[i][j] = dot(b[i], b[j]);
  auto gram_inv = *inverse(gram);
  RationalMatrix coords;
  for (const auto& x : g) coords.push_back(mat_vec(gram_inv, mat_vec(b, x)));
  auto dual_rays = extreme_rays_dd(coords, r);
  if (rank(to_rational(dual_rays), r) < r) throw NotPointed("cone contains a line");
  for (const auto& y : dual_rays) {
    RationalVector w = mat_vec(gram_inv, to_rational(y));
    RationalVector l(dim, 0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < dim; ++j) l[j] += w[i] * b[i][j];
    c.facets_.push_back(primitive(l));
  }
  dedupe_sorted(c.facets_);
  for (const auto& x : c.gens_) {
    RationalMatrix tight = to_rational(c.equations_);
    for (const auto& l : c.facets_)
      if (dot(l, x) == 0) tight.push_back(to_rational(l));
    if (rank(tight, dim) == dim - 1) c.rays_.push_back(x);
  }
  return c;
}

RationalCone RationalCone::from_inequalities(const std::vector<IntVector>& ineqs, std::size_t dim,
                                             const std::vector<IntVector>& eqs) {
  return from_inequalities(to_rational(ineqs), dim, to_rational(eqs));
}

RationalCone RationalCone::from_inequalities(const std::vector<RationalVector>& ineqs, std::size_t dim,
                                             const std::vector<RationalVector>& eqs) {
  for (const auto& l : ineqs)
    if (l.size() != dim) throw DimensionMismatch("inequality has wrong dimension");
  for (const auto& l : eqs)
    if (l.size() != dim) throw DimensionMismatch("equation has wrong dimension");
  RationalMatrix kernel;
  if (eqs.empty()) {
    for (std::size_t i = 0; i < dim; ++i) {
      RationalVector e(dim, 0);
      e[i] = 1;
      kernel.push_back(e);
    }
  } else {
    kernel = nullspace(eqs, dim);
  }
  std::size_t k = kernel.size();
  RationalMatrix reduced;
  for (const auto& l : ineqs) reduced.push_back(mat_vec(kernel, l));
  std::vector<IntVector> rays;
  for (const auto& y : extreme_rays_dd(reduced, k)) {
    RationalVector x(dim, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < dim; ++j) x[j] += Rational(static_cast<long>(y[i])) * kernel[i][j];
    rays.push_back(primitive(x));
  }
  return from_generators(rays, dim);
}

RationalCone RationalCone::orthant(std::size_t dim) {
  std::vector<IntVector> e;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector v(dim, 0);
    v[i] = 1;
    e.push_back(v);
  }
  return from_generators(e, dim);
}

std::vector<IntVector> RationalCone::dual_description() const {
  std::vector<IntVector> rows = facets_;
  for (const auto& e : equations_) {
    rows.push_back(e);
    rows.push_back(scale(-1, e));
  }
  return rows;
}

bool RationalCone::contains(const RationalVector& x) const {
  if (x.size() != ambient_) throw DimensionMismatch("contains: dimension mismatch");
  for (const auto& e : equations_)
    if (sgn(dot(e, x)) != 0) return false;
  for (const auto& l : facets_)
    if (sgn(dot(l, x)) < 0) return false;
  return true;
}

bool RationalCone::contains(const IntVector& x) const {
  if (x.size() != ambient_) throw DimensionMismatch("contains: dimension mismatch");
  for (const auto& e : equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& l : facets_)
    if (dot(l, x) < 0) return false;
  return true;
}

bool RationalCone::membership(const ExactVector& x, Membership mode) const {
  if (x.size() != ambient_) throw DimensionMismatch("membership: dimension mismatch");
  for (const auto& e : equations_)
    if (!dot(e, x).is_zero()) return false;
  if (mode == Membership::Closure) {
    for (const auto& l : facets_)
      if (dot(l, x).sign() < 0) return false;
    return true;
  }
  if (mode == Membership::RelativeInterior) {
    bool origin = std::all_of(x.begin(), x.end(), [](const ExactScalar& s) { return s.is_zero(); });
    if (origin) return true;
  } else if (!is_full_dimensional()) {
    return false;
  }
  if (rays_.empty()) return false;
  for (const auto& l : facets_)
    if (dot(l, x).sign() <= 0) return false;
  return true;
}

IntVector RationalCone::interior_ray() const {
  IntVector s(ambient_, 0);
  for (const auto& r : rays_) s = add(s, r);
  return s;
}

RayEscape ray_escape(const RationalCone& cone, const ExactVector& base, const ExactVector& through) {
  if (!cone.membership(base, Membership::Closure)) throw InvalidInput("ray_escape: base outside cone");
  if (!cone.membership(through, Membership::Closure)) throw InvalidInput("ray_escape: through outside cone");
  ExactVector d = sub(through, base);
  if (std::all_of(d.begin(), d.end(), [](const ExactScalar& s) { return s.is_zero(); }))
    throw InvalidInput("ray_escape: base equals through");
  RayEscape out;
  for (const auto& l : cone.facets()) {
    ExactScalar ld = dot(l, d);
    if (ld.sign() >= 0) continue;
    ExactScalar t = dot(l, base) / (-ld);
    if (!out.t_sup || t < *out.t_sup) out.t_sup = t;
  }
  ExactScalar one(1);
  if (!out.t_sup) {
    out.t_star = ExactScalar(2);
  } else if (*out.t_sup > one) {
    out.t_star = (one + *out.t_sup) / ExactScalar(2);
  }
  if (out.t_star) out.witness = add(base, scale(*out.t_star, d));
  return out;
}

std::optional<ExactScalar> segment_hyperplane_intersection(const RationalVector& l, const ExactScalar& c,
                                                           const ExactVector& p, const ExactVector& q) {
  ExactScalar lp = dot(l, p), lq = dot(l, q);
  ExactScalar den = lq - lp;
  if (den.is_zero()) return std::nullopt;
  ExactScalar t = (c - lp) / den;
  if (t.sign() < 0 || t > ExactScalar(1)) return std::nullopt;
  return t;
}

}  // namespace polycone
