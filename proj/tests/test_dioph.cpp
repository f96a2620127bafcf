#include "doctest.h"
#include "test_util.hpp"

#include "polycone/dioph.hpp"
#include "polycone/errors.hpp"

using namespace polycone;
using testutil::frac;
using testutil::uniform;

namespace {

ExactScalar q(long a, long b = 1) { return ExactScalar(frac(a, b)); }

ExactVector random_point(std::mt19937_64& rng, const FieldPtr& f, std::size_t n) {
  ExactVector x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(testutil::random_scalar(rng, f));
  return x;
}

// order: equal coordinates stay equal, strict order is kept once 2 eps / k_i is below the gap
void check_order(const ExactVector& x, const Rational& eps, const ApproximationTuple& t) {
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    ExactScalar slack(2 * eps / static_cast<long>(t.denominators[i]));
    for (std::size_t p = 0; p < x.size(); ++p)
      for (std::size_t r = 0; r < x.size(); ++r) {
        if (x[p] == x[r]) CHECK(t.points[i][p] == t.points[i][r]);
        else if (x[p] > x[r] && slack < x[p] - x[r]) CHECK(t.points[i][p] > t.points[i][r]);
      }
  }
}

}  // namespace

TEST_CASE("smallest_rational_affine") {
  auto f = make_field({2});
  auto s2 = ExactScalar::sqrt_of(2, f);
  auto w0 = smallest_rational_affine({q(1, 2), q(3)});
  CHECK(w0.dim() == 0);
  CHECK(w0.rational_point() == RationalVector{frac(1, 2), 3});

  ExactVector x{q(1) + s2, q(2) - s2};
  auto w = smallest_rational_affine(x);
  CHECK(w.dim() == 1);
  CHECK(w.rational_point() == RationalVector{1, 2});
  CHECK(w.direction_basis() == RationalMatrix{{1, -1}});
  CHECK(w.contains(x));
  CHECK(w.contains({q(1) - s2, q(2) + s2}));

  auto g = make_field({2, 3});
  auto w2 = smallest_rational_affine({ExactScalar::sqrt_of(2, g), ExactScalar::sqrt_of(3, g)});
  CHECK(w2.dim() == 2);
  CHECK(w2.direction_basis() == RationalMatrix{{1, 0}, {0, 1}});
}

TEST_CASE("smallest_rational_affine contains all conjugates and is minimal") {
  std::mt19937_64 rng(41);
  auto f = make_field({2, 3});
  for (int it = 0; it < 100; ++it) {
    auto x = random_point(rng, f, uniform(rng, 1, 3));
    auto w = smallest_rational_affine(x);
    CHECK(w.contains(x));
    CHECK(w.is_rational());
    // any rational affine space through x contains its Galois conjugates
    for (long p : {2L, 3L}) {
      ExactVector c;
      for (const auto& v : x) c.push_back(v.conjugate(p));
      CHECK(w.contains(c));
    }
    RationalMatrix diffs;
    // sum of all conjugates is rational, so differences to it live in the radical span
    for (const auto& [d, comp] : split_components(x))
      if (d != 1) diffs.push_back(comp);
    CHECK(testutil::bareiss_rank(diffs) == w.dim());
  }
}

TEST_CASE("uniform_approximate sqrt2") {
  auto f = make_field({2});
  auto s2 = ExactScalar::sqrt_of(2, f);
  auto t = uniform_approximate({s2}, 1, frac(1, 4));
  CHECK(t.points == std::vector<RationalVector>{{frac(3, 2)}, {frac(7, 5)}});
  CHECK(t.denominators == std::vector<std::int64_t>{2, 5});
  CHECK(t.weights[0] == ExactScalar(10) * s2 - ExactScalar(14));
  CHECK(t.weights[1] == ExactScalar(15) - ExactScalar(10) * s2);
  CHECK(check_tuple({s2}, frac(1, 4), t) == "");

  auto r = uniform_approximate({q(2, 3), q(1)}, 2, frac(1, 10));
  CHECK(r.points.size() == 1);
  CHECK(r.denominators == std::vector<std::int64_t>{6});
  CHECK(check_tuple({q(2, 3), q(1)}, frac(1, 10), r) == "");

  ExactVector x{q(1) + s2, q(2) - s2};
  auto t2 = uniform_approximate(x, 1, frac(1, 10));
  auto w = smallest_rational_affine(x);
  for (const auto& p : t2.points) CHECK(w.contains(to_exact(p)));
  CHECK(check_tuple(x, frac(1, 10), t2) == "");

  CHECK_THROWS_AS(uniform_approximate({s2}, 1, frac(1, 1000000), 50), BudgetExhausted);
}

TEST_CASE("uniform_approximate random") {
  std::mt19937_64 rng(42);
  std::vector<FieldPtr> fields{make_field({2}), make_field({3}), make_field({2, 3})};
  for (int it = 0; it < 40; ++it) {
    auto f = fields[it % 3];
    auto x = random_point(rng, f, uniform(rng, 1, 3));
    if (it % 5 == 0 && x.size() > 1) x[1] = x[0];
    std::int64_t k = uniform(rng, 1, 3);
    Rational eps = frac(1, uniform(rng, 2, 6));
    auto t = uniform_approximate(x, k, eps, 200000);
    CHECK(check_tuple(x, eps, t) == "");
    auto w = smallest_rational_affine(x);
    for (const auto& p : t.points) CHECK(w.contains(to_exact(p)));
    check_order(x, eps, t);
  }
}

TEST_CASE("extend_approximation") {
  auto f = make_field({2});
  auto s2 = ExactScalar::sqrt_of(2, f);
  auto e = extend_approximation({s2}, 1, frac(1, 4), frac(1, 10), {frac(3, 2)}, 2);
  CHECK(e.k2 == 3);
  CHECK(e.x2 == RationalVector{frac(4, 3)});
  CHECK(sup_norm(e.xi) < ExactScalar(frac(1, 10) / 5));
  CHECK(e.xi == ExactVector{s2 - ExactScalar(frac(7, 5))});
  CHECK(check_tuple({s2}, frac(1, 4), e.tuple) == "");
  CHECK(smallest_rational_affine({s2}).contains(e.aux));

  auto r = extend_approximation({q(1, 2)}, 1, frac(1, 4), frac(1, 10), {frac(1, 2)}, 2);
  CHECK(r.x2 == RationalVector{frac(1, 2)});
  CHECK(r.xi == ExactVector{q(0)});
  CHECK(check_tuple({q(1, 2)}, frac(1, 4), r.tuple) == "");

  CHECK_THROWS_AS(extend_approximation({s2}, 1, frac(1, 4), frac(1, 1000000000), {frac(3, 2)}, 2, 1000),
                  BudgetExhausted);
  CHECK_THROWS_AS(extend_approximation({s2}, 1, frac(1, 4), frac(1, 10), {Rational(2)}, 2), InvalidInput);

  std::mt19937_64 rng(43);
  std::vector<FieldPtr> fields{make_field({2}), make_field({3}), make_field({2, 3})};
  for (int it = 0; it < 15; ++it) {
    auto x = random_point(rng, fields[it % 3], uniform(rng, 1, 2));
    Rational eps = frac(1, 3), eta = frac(1, 4);
    auto base = uniform_approximate(x, 1, eps, 100000);
    auto ext = extend_approximation(x, 1, eps, eta, base.points[0], base.denominators[0], 100000);
    CHECK(check_tuple(x, eps, ext.tuple) == "");
    std::int64_t n = base.denominators[0] + ext.k2;
    CHECK(sup_norm(ext.xi) < ExactScalar(eta / static_cast<long>(n)));
    CHECK(smallest_rational_affine(x).contains(ext.aux));
    auto w = smallest_rational_affine(x);
    for (std::size_t i = 2; i < ext.tuple.points.size(); ++i) CHECK(w.contains(to_exact(ext.tuple.points[i])));
  }
}

TEST_CASE("torus scan symmetry") {
  auto f = make_field({2, 3});
  std::vector<ExactVector> xs{{ExactScalar::sqrt_of(2, f)},
                              {ExactScalar::sqrt_of(3, f) * q(1, 2)},
                              {ExactScalar::sqrt_of(2, f), ExactScalar::sqrt_of(3, f)}};
  for (const auto& x : xs)
    for (long k1 = 1; k1 <= 4; ++k1)
      for (long dd : {5L, 10L, 20L}) {
        Rational delta = frac(1, dd);
        auto neg = torus_scan(x, scale(ExactScalar(-k1), x), delta, 20000);
        if (!neg) continue;
        CHECK(torus_scan(x, scale(ExactScalar(k1), x), delta, 20000).has_value());
      }
}

TEST_CASE("nearest_rational_in_subspace") {
  auto f = make_field({2});
  auto h = ExactScalar::sqrt_of(2, f) * q(1, 2);
  ExactVector r{h, q(1) - h};
  AffineSubspace k(r, {{1, -1}});
  CHECK(nearest_rational_in_subspace(k, r, frac(1, 100)) == RationalVector{frac(707, 1000), frac(293, 1000)});
  AffineSubspace kr(to_exact(RationalVector{1, 0}), {{1, -1}});
  CHECK(nearest_rational_in_subspace(kr, {q(1, 3), q(2, 3)}, frac(1, 100)) == RationalVector{frac(1, 3), frac(2, 3)});
  AffineSubspace pt(to_exact(RationalVector{4, 5}), {});
  CHECK(nearest_rational_in_subspace(pt, {q(4), q(5)}, frac(1, 10)) == RationalVector{4, 5});
  AffineSubspace irr({ExactScalar::sqrt_of(2, f)}, {});
  CHECK_THROWS_AS(nearest_rational_in_subspace(irr, {ExactScalar::sqrt_of(2, f)}, frac(1, 10)), InvalidInput);

  // positivity of designated functionals survives rounding
  ExactVector tiny{h * q(1, 1000), q(1) - h * q(1, 1000)};
  auto s = nearest_rational_in_subspace(k, tiny, frac(1, 10), {{1, 0}});
  CHECK(s[0] > 0);
  CHECK(sup_distance(to_exact(s), tiny) < ExactScalar(frac(1, 10)));

  std::mt19937_64 rng(44);
  auto g = make_field({2, 3});
  for (int it = 0; it < 50; ++it) {
    auto x = random_point(rng, g, 3);
    auto w = smallest_rational_affine(x);
    AffineSubspace big(x, RationalMatrix{w.direction_basis().begin(), w.direction_basis().end()});
    Rational eps = frac(1, uniform(rng, 1, 1000));
    auto s2 = nearest_rational_in_subspace(big, x, eps);
    CHECK(w.contains(to_exact(s2)));
    CHECK(sup_distance(to_exact(s2), x) < ExactScalar(eps));
  }
}
