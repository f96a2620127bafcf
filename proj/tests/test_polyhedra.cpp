#include "doctest.h"
#include "test_util.hpp"

#include "polycone/cone.hpp"
#include "polycone/errors.hpp"
#include "polycone/polytope.hpp"

using namespace polycone;
using testutil::uniform;

namespace {

std::optional<RationalCone> try_cone(const std::vector<IntVector>& g, std::size_t n) {
  try {
    return RationalCone::from_generators(g, n);
  } catch (const NotPointed&) {
    return std::nullopt;
  }
}

}  // namespace

TEST_CASE("dual_description examples") {
  auto q = RationalCone::from_generators(std::vector<IntVector>{{1, 0}, {0, 1}}, 2);
  CHECK(q.dual_description() == std::vector<IntVector>{{0, 1}, {1, 0}});
  auto c = RationalCone::from_generators(std::vector<IntVector>{{1, 0}, {1, 3}}, 2);
  CHECK(c.dual_description() == std::vector<IntVector>{{0, 1}, {3, -1}});
  std::vector<IntVector> g{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}};
  auto c3 = RationalCone::from_generators(g, 3);
  CHECK(c3.facets().size() == 4);
  CHECK(c3.facets() == testutil::brute_force_facets(g, 3));
}

TEST_CASE("extremal_rays examples") {
  CHECK(RationalCone::orthant(3).extremal_rays() == std::vector<IntVector>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  auto c = RationalCone::from_generators(std::vector<IntVector>{{1, 0}, {1, 1}, {1, 2}}, 2);
  CHECK(c.extremal_rays() == std::vector<IntVector>{{1, 0}, {1, 2}});
  auto r = RationalCone::from_generators(std::vector<IntVector>{{2, 0}}, 2);
  CHECK(r.extremal_rays() == std::vector<IntVector>{{1, 0}});
  CHECK(r.dim() == 1);
}

TEST_CASE("lines are rejected") {
  CHECK_THROWS_AS(RationalCone::from_generators(std::vector<IntVector>{{1, 0}, {-1, 0}}, 2), NotPointed);
  CHECK_THROWS_AS(RationalCone::from_inequalities(std::vector<IntVector>{{1, 0}}, 2), NotPointed);
  CHECK_THROWS_AS(RationalCone::from_generators(std::vector<IntVector>{{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}}, 3),
                  NotPointed);
}

TEST_CASE("random cones: facets, membership, round trip") {
  std::mt19937_64 rng(11);
  int built = 0;
  for (int it = 0; it < 120; ++it) {
    std::size_t n = uniform(rng, 2, 4);
    auto g = testutil::random_pointed_gens(rng, n, -3, 10, uniform(rng, 1, 6));
    auto c = try_cone(g, n);
    if (!c) continue;
    ++built;
    if (c->is_full_dimensional()) CHECK(c->facets() == testutil::brute_force_facets(g, n));
    // round trip through the inequality description
    auto h = RationalCone::from_inequalities(c->facets(), n, c->equations());
    CHECK(h.facets() == c->facets());
    CHECK(h.extremal_rays() == c->extremal_rays());
    // extremal rays regenerate the cone
    auto e = RationalCone::from_generators(c->extremal_rays(), n);
    CHECK(e.facets() == c->facets());
    for (const auto& r : c->extremal_rays()) {
      std::vector<IntVector> others;
      for (const auto& s : c->extremal_rays())
        if (s != r) others.push_back(s);
      CHECK_FALSE(testutil::lp_in_cone(others, to_rational(r)));
    }
    int trials = it < 20 ? 1000 : 50;
    for (int k = 0; k < trials; ++k) {
      RationalVector x(n);
      for (auto& q : x) q = testutil::small_rational(rng, 12, 3);
      CHECK(c->contains(x) == testutil::lp_in_cone(g, x));
    }
  }
  CHECK(built > 60);
}

TEST_CASE("membership modes") {
  auto q = RationalCone::orthant(2);
  CHECK(q.membership(ExactVector{0, 0}, Membership::RelativeInterior));
  CHECK_FALSE(q.membership(ExactVector{1, 0}, Membership::Interior));
  CHECK(q.membership(ExactVector{1, 0}, Membership::Closure));
  auto c = RationalCone::from_generators(std::vector<IntVector>{{1, 0}, {1, 2}}, 2);
  CHECK(c.membership(ExactVector{1, 1}, Membership::Interior));
  auto ray = RationalCone::from_generators(std::vector<IntVector>{{1, 1}}, 2);
  CHECK(ray.membership(ExactVector{2, 2}, Membership::RelativeInterior));
  CHECK_FALSE(ray.membership(ExactVector{2, 2}, Membership::Interior));
  auto s2 = ExactScalar::sqrt_of(2, make_field({2}));
  CHECK(c.membership(ExactVector{ExactScalar(1), s2}, Membership::Interior));
  CHECK_FALSE(c.membership(ExactVector{ExactScalar(1), s2 + ExactScalar(1)}, Membership::Closure));
}

TEST_CASE("ray_escape examples") {
  auto q = RationalCone::orthant(2);
  auto a = ray_escape(q, ExactVector{1, 1}, ExactVector{2, 1});
  CHECK_FALSE(a.t_sup.has_value());
  REQUIRE(a.witness);
  CHECK(*a.witness == ExactVector{3, 1});
  auto c = RationalCone::from_generators(std::vector<IntVector>{{1, 0}, {1, 1}}, 2);
  auto b = ray_escape(c, ExactVector{2, 1}, ExactVector{1, 1});
  REQUIRE(b.t_sup);
  CHECK(*b.t_sup == ExactScalar(1));
  CHECK_FALSE(b.witness.has_value());
  auto d = ray_escape(q, ExactVector{2, 2}, ExactVector{1, 2});
  CHECK(*d.t_sup == ExactScalar(2));
  CHECK(*d.t_star == ExactScalar(Rational(3, 2)));
  CHECK(*d.witness == ExactVector{ExactScalar(Rational(1, 2)), ExactScalar(2)});
  CHECK_THROWS_AS(ray_escape(q, ExactVector{-1, 0}, ExactVector{1, 1}), InvalidInput);
}

TEST_CASE("segment meets hyperplane") {
  auto t = segment_hyperplane_intersection({1, 1}, ExactScalar(1), ExactVector{0, 0}, ExactVector{2, 2});
  REQUIRE(t);
  CHECK(*t == ExactScalar(Rational(1, 4)));
  CHECK_FALSE(segment_hyperplane_intersection({1, 1}, ExactScalar(9), ExactVector{0, 0}, ExactVector{2, 2}));
}

TEST_CASE("polytopes and minkowski sums") {
  auto p = RationalPolytope::from_points({{0, 0}, {1, 0}}, 2);
  auto q = RationalPolytope::from_points({{0, 0}, {0, 1}}, 2);
  auto s = minkowski_sum(p, q);
  CHECK(s.vertices() == std::vector<RationalVector>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(s.dim() == 2);
  auto pt = RationalPolytope::from_points({{Rational(1, 2), 3}}, 2);
  auto t = minkowski_sum(s, pt);
  CHECK(t.vertices().size() == 4);
  CHECK(t.contains({Rational(3, 2), 4}));
  CHECK(RationalPolytope::from_points({{0, 0}, {1, 1}, {2, 2}}, 2).vertices().size() == 2);

  std::mt19937_64 rng(5);
  for (int it = 0; it < 40; ++it) {
    std::vector<RationalVector> a, b;
    for (int i = 0; i < 3; ++i) {
      a.push_back({uniform(rng, -5, 5), uniform(rng, -5, 5)});
      b.push_back({uniform(rng, -5, 5), uniform(rng, -5, 5)});
    }
    auto m = minkowski_sum(RationalPolytope::from_points(a, 2), RationalPolytope::from_points(b, 2));
    // oracle: a pairwise sum is a vertex iff it is not a convex combination of the other sums
    std::vector<RationalVector> sums;
    for (auto& x : a)
      for (auto& y : b) sums.push_back(add(x, y));
    std::sort(sums.begin(), sums.end());
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    std::vector<RationalVector> verts;
    for (const auto& v : sums) {
      std::vector<IntVector> others;
      for (const auto& w : sums)
        if (w != v) others.push_back(IntVector{1, w[0].get_num().get_si(), w[1].get_num().get_si()});
      if (!testutil::lp_in_cone(others, {1, v[0], v[1]})) verts.push_back(v);
    }
    CHECK(m.vertices() == verts);
  }
}

TEST_CASE("cone_over") {
  auto c = cone_over(RationalPolytope::from_points({{1, 0}, {1, 1}}, 2));
  CHECK(c.extremal_rays() == std::vector<IntVector>{{1, 0}, {1, 1}});
  auto d = cone_over(RationalPolytope::from_points({{1, -1}, {1, 1}}, 2));
  CHECK(d.facets() == std::vector<IntVector>{{1, -1}, {1, 1}});
  CHECK_THROWS_AS(cone_over(RationalPolytope::from_points({{0, 0}, {-1, 0}, {1, 0}}, 2)), NotPointed);
}
