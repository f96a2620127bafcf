#include "polycone/monoid.hpp"

#include "polycone/errors.hpp"
#include "polycone/linalg.hpp"
#include "polycone/lp.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_set>

namespace polycone {

namespace {

struct Elem {
  IntVector x;
  std::int64_t w;    // weight under the constraint being added
  std::int64_t deg;  // coordinate sum, drives the processing order
};

struct ByDegree {
  bool operator()(const Elem& a, const Elem& b) const {
    if (a.deg != b.deg) return a.deg > b.deg;
    return a.x > b.x;
  }
};

bool dominates(const IntVector& v, const IntVector& w) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] < w[i]) return false;
  return true;
}

std::int64_t coord_sum(const IntVector& v) {
  std::int64_t s = 0;
  for (auto x : v) s = checked_add(s, x);
  return s;
}

// x - y in {z >= 0 : rows(z) >= 0, eqs(z) = 0}
bool difference_in(const IntVector& x, const IntVector& y, const std::vector<IntVector>& rows,
                   const std::vector<IntVector>& eqs) {
  if (!dominates(x, y)) return false;
  IntVector d = sub(x, y);
  for (const auto& r : rows)
    if (dot(r, d) < 0) return false;
  for (const auto& e : eqs)
    if (dot(e, d) != 0) return false;
  return true;
}

std::vector<IntVector> minimize_orthant(std::vector<IntVector> elems, const std::vector<IntVector>& rows,
                                        const std::vector<IntVector>& eqs) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    bool reducible = false;
    for (std::size_t j = 0; j < elems.size() && !reducible; ++j)
      if (i != j && difference_in(elems[i], elems[j], rows, eqs)) reducible = true;
    if (!reducible) out.push_back(elems[i]);
  }
  return out;
}

}  // namespace

std::vector<IntVector> hilbert_basis_orthant(const std::vector<IntVector>& ineqs,
                                             const std::vector<IntVector>& eqs, std::size_t n) {
  std::vector<IntVector> basis;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    basis.push_back(e);
  }
  std::vector<std::pair<IntVector, bool>> constraints;
  for (const auto& a : eqs) constraints.emplace_back(a, true);
  for (const auto& a : ineqs) constraints.emplace_back(a, false);
  std::vector<IntVector> done_ineqs, done_eqs;
  for (const auto& [a, is_eq] : constraints) {
    if (a.size() != n) throw DimensionMismatch("hilbert_basis: constraint size");
    std::vector<Elem> zero, active;
    std::priority_queue<Elem, std::vector<Elem>, ByDegree> queue;
    for (const auto& b : basis) {
      Elem e{b, dot(a, b), coord_sum(b)};
      if (e.w == 0) zero.push_back(e);
      else queue.push(e);
    }
    // v is covered by w when v - w lies in the current monoid and the
    // split v = w + (v - w) keeps every later combination reachable
    auto subsumed = [&](const Elem& v) {
      auto covers = [&](const Elem& w) {
        if (w.x == v.x) return false;
        if (!(v.w >= w.w && (w.w >= 0 || v.w == w.w))) return false;
        if (!dominates(v.x, w.x)) return false;
        IntVector d = sub(v.x, w.x);
        for (const auto& r : done_ineqs)
          if (dot(r, d) < 0) return false;
        return true;
      };
      for (const auto& w : zero)
        if (covers(w)) return true;
      for (const auto& w : active)
        if (covers(w)) return true;
      return false;
    };
    std::set<IntVector> seen;
    while (!queue.empty()) {
      Elem v = queue.top();
      queue.pop();
      if (!seen.insert(v.x).second) continue;
      if (subsumed(v)) continue;
      for (const auto& u : active) {
        if ((u.w > 0) == (v.w > 0)) continue;
        Elem s{add(v.x, u.x), checked_add(v.w, u.w), checked_add(v.deg, u.deg)};
        if (s.w == 0) {
          if (!subsumed(s)) zero.push_back(s);
        } else {
          queue.push(s);
        }
      }
      active.push_back(v);
    }
    std::vector<IntVector> next;
    for (const auto& e : zero) next.push_back(e.x);
    if (!is_eq)
      for (const auto& e : active)
        if (e.w > 0) next.push_back(e.x);
    if (is_eq) done_eqs.push_back(a);
    else done_ineqs.push_back(a);
    basis = minimize_orthant(std::move(next), done_ineqs, done_eqs);
  }
  return minimize_orthant(std::move(basis), done_ineqs, done_eqs);
}

std::vector<IntVector> hilbert_basis(const std::vector<IntVector>& halfspaces, std::size_t n, Lattice mode) {
  for (const auto& l : halfspaces)
    if (l.size() != n) throw DimensionMismatch("hilbert_basis: halfspace size");
  if (mode == Lattice::N) return hilbert_basis_orthant(halfspaces, {}, n);
  if (n > 0 && rank(to_rational(halfspaces), n) < n) throw NotPointed("cone contains a line");
  // one completion per orthant; irreducibles of C ∩ Z^n lie among the
  // irreducibles of the orthant pieces
  std::vector<IntVector> cand;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<IntVector> rows;
    for (const auto& l : halfspaces) {
      IntVector r = l;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) r[i] = -r[i];
      rows.push_back(r);
    }
    for (auto y : hilbert_basis_orthant(rows, {}, n)) {
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) y[i] = -y[i];
      cand.push_back(y);
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::vector<IntVector> out;
  for (const auto& x : cand) {
    bool reducible = false;
    for (const auto& h : cand) {
      if (h == x) continue;
      IntVector d = sub(x, h);
      bool in = true;
      for (const auto& l : halfspaces)
        if (dot(l, d) < 0) {
          in = false;
          break;
        }
      if (in) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(x);
  }
  return out;
}

std::vector<IntVector> hilbert_basis(const RationalCone& cone, Lattice mode) {
  return hilbert_basis(cone.dual_description(), cone.ambient_dim(), mode);
}

AffineMonoid::AffineMonoid(std::vector<IntVector> gens, std::size_t dim, Lattice lattice,
                           std::optional<bool> saturated)
    : dim_(dim), lattice_(lattice), saturated_(saturated) {
  std::set<IntVector> seen;
  for (auto& g : gens) {
    if (g.size() != dim) throw DimensionMismatch("monoid generator has wrong dimension");
    if (lattice == Lattice::N)
      for (auto x : g)
        if (x < 0) throw InvalidInput("generator outside N^n");
    if (is_zero_vector(g)) continue;
    if (seen.insert(g).second) gens_.push_back(std::move(g));
  }
  cone_ = RationalCone::from_generators(gens_, dim);
  grading_.assign(dim, 0);
  for (const auto& l : cone_.facets()) grading_ = add(grading_, l);
  if (cone_.dim() == 1 && !cone_.extremal_rays().empty()) grading_ = cone_.extremal_rays()[0];
}

IntVector AdditiveMap::apply(const IntVector& x) const {
  if (x.size() != source_dim) throw DimensionMismatch("additive map: source dimension");
  IntVector y;
  for (const auto& row : matrix) y.push_back(dot(row, x));
  return y;
}

namespace {

struct VecHash {
  std::size_t operator()(const IntVector& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

struct Decomposer {
  const std::vector<IntVector>& gens;
  const IntVector& grading;
  const RationalCone& cone;
  std::vector<std::unordered_set<IntVector, VecHash>> dead;
  IntVector coeffs;

  bool run(std::size_t i, const IntVector& rem) {
    if (is_zero_vector(rem)) {
      std::fill(coeffs.begin() + static_cast<long>(i), coeffs.end(), 0);
      return true;
    }
    if (i == gens.size()) return false;
    if (dead[i].count(rem)) return false;
    std::int64_t dr = dot(grading, rem), dg = dot(grading, gens[i]);
    if (dr < 0 || !cone.contains(rem)) {
      dead[i].insert(rem);
      return false;
    }
    IntVector cur = rem;
    for (std::int64_t c = 0; c * dg <= dr; ++c) {
      coeffs[i] = c;
      if (run(i + 1, cur)) return true;
      cur = sub(cur, gens[i]);
    }
    dead[i].insert(rem);
    return false;
  }
};

}  // namespace

std::optional<IntVector> decompose(const AffineMonoid& s, const IntVector& x) {
  if (x.size() != s.ambient_dim()) throw DimensionMismatch("decompose: dimension mismatch");
  Decomposer d{s.generators(), s.grading(), s.cone(), {}, {}};
  d.dead.resize(s.generators().size());
  d.coeffs.assign(s.generators().size(), 0);
  if (!d.run(0, x)) return std::nullopt;
  return d.coeffs;
}

bool AffineMonoid::contains(const IntVector& x) const {
  if (x.size() != dim_) throw DimensionMismatch("contains: dimension mismatch");
  if (!cone_.contains(x)) return false;
  // saturated means cone and Z^n
  if (saturated_ && *saturated_) return true;
  return decompose(*this, x).has_value();
}

std::vector<IntVector> AffineMonoid::minimal_generators() const {
  std::vector<IntVector> cur = gens_;
  std::sort(cur.begin(), cur.end(), [&](const IntVector& a, const IntVector& b) {
    auto da = dot(grading_, a), db = dot(grading_, b);
    return da != db ? da > db : a < b;
  });
  // drop generators, largest degree first, that the others already produce
  for (std::size_t i = 0; i < cur.size();) {
    std::vector<IntVector> others;
    for (std::size_t j = 0; j < cur.size(); ++j)
      if (j != i && dot(grading_, cur[j]) <= dot(grading_, cur[i])) others.push_back(cur[j]);
    bool redundant = false;
    if (!others.empty()) {
      AffineMonoid rest(others, dim_, Lattice::Z);
      redundant = rest.cone().contains(cur[i]) && decompose(rest, cur[i]).has_value();
    }
    if (redundant) cur.erase(cur.begin() + static_cast<long>(i));
    else ++i;
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

bool AffineMonoid::is_saturated() const {
  if (saturated_) return *saturated_;
  auto hb = hilbert_basis(cone_, lattice_ == Lattice::N ? Lattice::N : Lattice::Z);
  for (const auto& h : hb)
    if (!contains(h)) return false;
  return true;
}

AffineMonoid intersect_with_cone(const AffineMonoid& s, const std::vector<IntVector>& halfspaces) {
  std::vector<IntVector> base = s.minimal_generators();
  std::size_t n = s.ambient_dim(), m = base.size();
  // S_i = S_{i-1} ∩ {l_i >= 0}, each presented as the image of
  // {lambda in N^m : c_1.lambda >= 0, ..., c_i.lambda >= 0} over the generators of S.
  // Lifting from the fixed presentation keeps every slice in dimension m.
  std::vector<IntVector> rows;
  std::vector<IntVector> gens = base;
  for (const auto& l : halfspaces) {
    if (l.size() != n) throw DimensionMismatch("intersect_with_cone: halfspace size");
    IntVector c;
    for (const auto& g : base) c.push_back(dot(l, g));
    bool all_nonneg = true;
    for (const auto& g : gens)
      if (dot(l, g) < 0) all_nonneg = false;
    if (all_nonneg) continue;
    rows.push_back(c);
    std::vector<IntVector> next;
    for (const auto& lam : hilbert_basis_orthant(rows, {}, m)) {
      IntVector x(n, 0);
      for (std::size_t j = 0; j < m; ++j)
        if (lam[j] != 0) x = add(x, scale(lam[j], base[j]));
      if (!is_zero_vector(x)) next.push_back(x);
    }
    gens = next.empty() ? next : AffineMonoid(next, n, Lattice::Z).minimal_generators();
    if (gens.empty()) break;
  }
  std::sort(gens.begin(), gens.end());
  return AffineMonoid(gens, n, s.lattice());
}

AffineMonoid intersect_with_cone(const AffineMonoid& s, const RationalCone& c) {
  if (c.ambient_dim() != s.ambient_dim()) throw DimensionMismatch("intersect_with_cone: dimension mismatch");
  return intersect_with_cone(s, c.dual_description());
}

AffineMonoid saturate(const AffineMonoid& s) {
  auto hb = hilbert_basis(s.cone(), s.lattice());
  return AffineMonoid(hb, s.ambient_dim(), s.lattice(), true);
}

AffineMonoid truncate(const AffineMonoid& s, const std::vector<std::int64_t>& kappas) {
  if (kappas.size() != s.generators().size()) throw InvalidInput("truncate: one kappa per generator required");
  std::vector<IntVector> g;
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    if (kappas[i] <= 0) throw InvalidInput("truncate: kappa must be positive");
    g.push_back(scale(kappas[i], s.generators()[i]));
  }
  return AffineMonoid(g, s.ambient_dim(), s.lattice());
}

AffineMonoid truncate_uniform(const AffineMonoid& s, std::int64_t kappa) {
  if (kappa <= 0) throw InvalidInput("truncate: kappa must be positive");
  std::vector<IntVector> g;
  for (const auto& h : s.minimal_generators()) g.push_back(scale(kappa, h));
  return AffineMonoid(g, s.ambient_dim(), s.lattice());
}

AffineMonoid preimage(const AdditiveMap& lambda, const AffineMonoid& t, const AffineMonoid& source) {
  std::size_t n = source.ambient_dim();
  if (lambda.source_dim != n) throw DimensionMismatch("preimage: map source dimension");
  if (lambda.target_dim() != t.ambient_dim()) throw DimensionMismatch("preimage: map target dimension");
  if (!source.is_saturated()) throw InvalidInput("preimage: source must be saturated");
  if (!t.is_saturated()) throw InvalidInput("preimage: target monoid must be saturated");
  // T must sit inside the image: image cone membership plus image lattice membership
  std::vector<IntVector> images;
  for (const auto& g : source.generators()) images.push_back(lambda.apply(g));
  for (const auto& g : t.generators()) {
    bool in_lattice = integer_solve(lambda.matrix, g, n).has_value();
    LinearProgram lp;
    lp.num_vars = images.size();
    lp.objective.assign(images.size(), 0);
    for (std::size_t r = 0; r < g.size(); ++r) {
      RationalVector row;
      for (const auto& im : images) row.emplace_back(static_cast<long>(im[r]));
      lp.constraints.push_back({row, Relation::Equal, Rational(static_cast<long>(g[r]))});
    }
    bool in_cone = solve_lp(lp).status == LpStatus::Optimal;
    if (!in_lattice || !in_cone) throw InvalidInput("preimage: target monoid is not inside the image of the map");
  }
  std::vector<IntVector> rows = source.cone().dual_description();
  for (const auto& l : t.cone().dual_description()) {
    IntVector pulled(n, 0);
    for (std::size_t i = 0; i < l.size(); ++i)
      if (l[i] != 0) pulled = add(pulled, scale(l[i], lambda.matrix[i]));
    rows.push_back(pulled);
  }
  auto hb = hilbert_basis(rows, n, source.lattice());
  return AffineMonoid(hb, n, source.lattice(), true);
}

std::vector<IntVector> elements_up_to_degree(const std::vector<IntVector>& gens, const IntVector& grading,
                                             std::int64_t bound) {
  std::unordered_set<IntVector, VecHash> seen;
  std::vector<IntVector> frontier;
  if (gens.empty()) return {};
  IntVector zero(gens[0].size(), 0);
  seen.insert(zero);
  frontier.push_back(zero);
  while (!frontier.empty()) {
    std::vector<IntVector> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        IntVector y = add(x, g);
        if (dot(grading, y) > bound) continue;
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  std::vector<IntVector> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace polycone
