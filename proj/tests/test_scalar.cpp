#include "doctest.h"
#include "test_util.hpp"

#include "polycone/affine.hpp"
#include "polycone/errors.hpp"
#include "polycone/linalg.hpp"

#include <cmath>

using namespace polycone;
using testutil::random_scalar;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);
}

TEST_CASE("radical products reduce") {
  auto f = make_field({2, 3});
  auto s2 = ExactScalar::sqrt_of(2, f), s3 = ExactScalar::sqrt_of(3, f), s6 = ExactScalar::sqrt_of(6, f);
  CHECK(s2 * s2 == ExactScalar(2));
  CHECK(s2 * s6 == ExactScalar(2) * s3);
  CHECK(s2 * s3 == s6);
  CHECK((ExactScalar(1) + s2).inverse() == s2 - ExactScalar(1));
  CHECK(f->radicands() == std::vector<long>{2, 3, 6});
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(1);
  auto f = make_field({2, 3});
  for (int it = 0; it < 200; ++it) {
    auto a = random_scalar(rng, f), b = random_scalar(rng, f), c = random_scalar(rng, f);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK(a * a.inverse() == ExactScalar(1));
  }
}

TEST_CASE("sign is multiplicative and matches floating estimates") {
  std::mt19937_64 rng(2);
  auto f = make_field({2, 3});
  for (int it = 0; it < 1000; ++it) {
    auto a = random_scalar(rng, f), b = random_scalar(rng, f);
    CHECK(a.sign() * b.sign() == (a * b).sign());
    double d = a.to_double();
    if (std::fabs(d) > 1e-9) CHECK(a.sign() == (d > 0 ? 1 : -1));
  }
  // a value very close to zero: 99 - 70 sqrt2 ~ 0.00505
  auto x = ExactScalar(99) - ExactScalar(70) * ExactScalar::sqrt_of(2, make_field({2}));
  CHECK(x.sign() == 1);
  CHECK((ExactScalar(0) - x).sign() == -1);
}

TEST_CASE("floor of quadratic irrationals") {
  auto f = make_field({2});
  auto s2 = ExactScalar::sqrt_of(2, f);
  CHECK((ExactScalar(10) * s2).floor() == 14);
  CHECK((ExactScalar(-10) * s2).floor() == -15);
  CHECK(ExactScalar(Rational(7, 2)).floor() == 3);
  CHECK((ExactScalar(10) * s2).ceil() == 15);
}

TEST_CASE("mixed contexts are rejected") {
  auto a = ExactScalar::sqrt_of(2, make_field({2}));
  auto b = ExactScalar::sqrt_of(3, make_field({3}));
  CHECK_THROWS_AS(a + b, ContextMismatch);
  // plain rationals mix with anything
  CHECK_NOTHROW(a + ExactScalar(Rational(1, 3)));
  // equal fields built separately are compatible
  auto c = ExactScalar::sqrt_of(2, make_field({2}));
  CHECK(a - c == ExactScalar(0));
}

TEST_CASE("sup_distance examples") {
  auto f = make_field({2});
  auto s2 = ExactScalar::sqrt_of(2, f);
  CHECK(sup_distance(ExactVector{0, 0}, ExactVector{0, 0}) == ExactScalar(0));
  auto d = sup_distance(ExactVector{s2, 0}, ExactVector{ExactScalar(Rational(3, 2)), 0});
  CHECK(d == ExactScalar(Rational(3, 2)) - s2);
  CHECK(d < ExactScalar(Rational(86, 1000)));
  CHECK(d > ExactScalar(Rational(85, 1000)));
  CHECK(sup_distance(ExactVector{1, 5}, ExactVector{2, 3}) == ExactScalar(2));
  CHECK_THROWS_AS(sup_distance(ExactVector{1}, ExactVector{1, 2}), DimensionMismatch);
}

TEST_CASE("solve_affine examples") {
  auto f = make_field({2});
  auto s2 = ExactScalar::sqrt_of(2, f);
  auto w = solve_affine({{1, 1}}, ExactVector{1});
  REQUIRE(w);
  CHECK(w->base_point() == ExactVector{1, 0});
  REQUIRE(w->dim() == 1);
  CHECK(w->contains(ExactVector{ExactScalar(0), ExactScalar(1)}));
  CHECK(w->contains(ExactVector{ExactScalar(3), ExactScalar(-2)}));

  auto p = solve_affine({{1, 0}, {0, 1}}, ExactVector{s2, 1});
  REQUIRE(p);
  CHECK(p->dim() == 0);
  CHECK(p->base_point() == ExactVector{s2, ExactScalar(1)});
  CHECK_FALSE(p->is_rational());

  // x1 - x2 = sqrt2 is solvable: a line through (sqrt2, 0) with direction (1,1)
  auto l = solve_affine({{1, -1}}, ExactVector{s2});
  REQUIRE(l);
  CHECK(l->dim() == 1);
  CHECK_FALSE(l->is_rational());
  // grid substitution: every (t + sqrt2, t) solves, every rational point fails
  for (long t = -3; t <= 3; ++t) {
    CHECK(l->contains(ExactVector{ExactScalar(t) + s2, ExactScalar(t)}));
    for (long u = -3; u <= 3; ++u) CHECK_FALSE(l->contains(ExactVector{ExactScalar(t), ExactScalar(u)}));
  }

  CHECK_FALSE(solve_affine({{1, 1}, {2, 2}}, ExactVector{1, 3}).has_value());
  CHECK_THROWS_AS(solve_affine({{1, 1}}, ExactVector{1, 2}), DimensionMismatch);
}

TEST_CASE("solve_affine agrees with fraction-free elimination") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    std::size_t rows = testutil::uniform(rng, 1, 3), cols = testutil::uniform(rng, 1, 4);
    RationalMatrix a(rows, RationalVector(cols));
    for (auto& r : a)
      for (auto& q : r) q = testutil::uniform(rng, 0, 2) == 0 ? Rational(0) : testutil::small_rational(rng, 3, 2);
    RationalVector b(rows);
    for (auto& q : b) q = testutil::small_rational(rng, 4, 3);
    // sometimes force consistency
    if (it % 2 == 0) {
      RationalVector x(cols);
      for (auto& q : x) q = testutil::small_rational(rng);
      b = mat_vec(a, x);
    }
    RationalMatrix aug = a;
    for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    std::size_t ra = testutil::bareiss_rank(a), rab = testutil::bareiss_rank(aug);
    auto sol = solve_affine(a, to_exact(b));
    CHECK(sol.has_value() == (ra == rab));
    if (!sol) continue;
    CHECK(sol->dim() == cols - ra);
    auto x0 = rational_part(sol->base_point());
    CHECK(mat_vec(a, x0) == b);
    for (const auto& d : sol->direction_basis()) CHECK(is_zero_vector(mat_vec(a, d)));
  }
}

TEST_CASE("integer lattice helpers") {
  auto k = integer_kernel({{2, 4, 6}}, 3);
  CHECK(k.basis.size() == 2);
  for (const auto& v : k.basis) CHECK(dot(IntVector{2, 4, 6}, v) == 0);
  auto s = integer_solve({{2, 4}}, {6}, 2);
  REQUIRE(s);
  CHECK(dot(IntVector{2, 4}, *s) == 6);
  CHECK_FALSE(integer_solve({{2, 4}}, {5}, 2).has_value());
  auto s2 = integer_solve({{1, 1, 0}, {0, 1, 1}}, {3, 5}, 3);
  REQUIRE(s2);
  CHECK((*s2)[0] + (*s2)[1] == 3);
  CHECK((*s2)[1] + (*s2)[2] == 5);
}
