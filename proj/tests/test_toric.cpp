#include "doctest.h"
#include "toric_oracles.hpp"

#include "polycone/errors.hpp"
#include "polycone/toric.hpp"

using namespace polycone;
using testutil::frac;
using testutil::uniform;

namespace {

RationalVector rv(std::initializer_list<long> xs) {
  RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

RationalVector random_divisor(std::mt19937_64& rng, const ToricModel& x, long lo, long hi) {
  RationalVector d;
  for (std::size_t r = 0; r < x.num_rays(); ++r) d.emplace_back(uniform(rng, lo, hi));
  return d;
}

}  // namespace

TEST_CASE("toric model checks") {
  CHECK(projective_plane().smooth());
  CHECK(blown_up_plane().smooth());
  CHECK(hirzebruch(3).smooth());
  CHECK(projective_line().dim() == 1);
  auto w = ToricModel({{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(w.simplicial());
  CHECK_FALSE(w.smooth());
  // missing cone, non-primitive ray, overlapping cones
  CHECK_THROWS_AS(ToricModel({{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}}), InvalidInput);
  CHECK_THROWS_AS(ToricModel({{2, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}), InvalidInput);
  CHECK_THROWS_AS(ToricModel({{1}, {-1}}, {{0}}), InvalidInput);
  CHECK_THROWS_AS(ToricModel({{1, 0}, {0, 1}, {-1, -1}, {1, 1}}, {{0, 1}, {1, 2}, {2, 0}, {0, 3}}),
                  InvalidInput);
  CHECK(projective_plane().canonical() == rv({-1, -1, -1}));
}

TEST_CASE("section_polytope") {
  auto p2 = projective_plane();
  for (long d = 0; d <= 10; ++d) {
    auto pts = lattice_points(p2, rv({0, 0, d}));
    CHECK(pts.size() == static_cast<std::size_t>((d + 1) * (d + 2) / 2));
  }
  CHECK(section_polytope(p2, rv({0, 0, 2})).vertices().size() == 3);
  auto zero = section_polytope(p2, rv({0, 0, 0}));
  CHECK(zero.vertices() == std::vector<RationalVector>{rv({0, 0})});
  auto p1 = projective_line();
  CHECK(section_polytope(p1, rv({3, 0})).vertices() == std::vector<RationalVector>{rv({-3}), rv({0})});
  CHECK(lattice_points(p1, rv({3, 0})).size() == 4);
  CHECK(section_polytope(p2, rv({-1, 0, 0})).empty());

  std::mt19937_64 rng(71);
  for (const auto& x : testutil::small_models())
    for (int it = 0; it < 15; ++it) {
      auto d = random_divisor(rng, x, -3, 5);
      CHECK(lattice_points(x, d) == testutil::brute_lattice_points(x, d));
      auto verts = section_polytope(x, d).vertices();
      CHECK(verts == testutil::brute_vertices(x, d));
    }
}

TEST_CASE("fixed_part") {
  auto bl = blown_up_plane();
  auto fm = fixed_part(bl, rv({0, 0, 0, 2}));
  CHECK(fm.fix == rv({0, 0, 0, 2}));
  CHECK(fm.mob == rv({0, 0, 0, 0}));
  auto bpf = fixed_part(projective_plane(), rv({1, 0, 2}));
  CHECK(bpf.fix == rv({0, 0, 0}));
  CHECK(bpf.mob == rv({1, 0, 2}));
  CHECK_THROWS_AS(fixed_part(projective_plane(), rv({-1, 0, 0})), InvalidInput);
  CHECK_THROWS_AS(fixed_part(projective_plane(), {frac(1, 2), 0, 0}), InvalidInput);

  std::mt19937_64 rng(72);
  int done = 0;
  for (int it = 0; done < 100; ++it) {
    const auto models = testutil::small_models();
    const auto& x = models[it % models.size()];
    auto d = random_divisor(rng, x, -2, 4);
    auto pts = testutil::brute_lattice_points(x, d);
    if (pts.empty()) {
      CHECK_THROWS_AS(fixed_part(x, d), InvalidInput);
      continue;
    }
    ++done;
    auto f = fixed_part(x, d);
    for (std::size_t r = 0; r < x.num_rays(); ++r) {
      long best = dot(x.rays()[r], pts[0]);
      for (const auto& u : pts) best = std::min<long>(best, dot(x.rays()[r], u));
      CHECK(f.fix[r] == d[r] + best);
    }
    CHECK(fixed_part(x, f.mob).fix == RationalVector(x.num_rays(), 0));
    CHECK(lattice_points(x, f.mob) == pts);
  }
}

TEST_CASE("asymptotic_ord and nsigma") {
  auto bl = blown_up_plane();
  CHECK(asymptotic_ord(bl, rv({0, 0, 0, 2}), 3) == 2);
  CHECK(nsigma(bl, rv({0, 0, 0, 2})) == rv({0, 0, 0, 2}));
  CHECK(nsigma(projective_plane(), rv({1, 1, 1})) == rv({0, 0, 0}));
  CHECK_THROWS_AS(asymptotic_ord(projective_plane(), rv({-1, 0, 0}), 0), InvalidInput);

  std::mt19937_64 rng(73);
  const auto models = testutil::small_models();
  for (int it = 0; it < 60; ++it) {
    const auto& x = models[it % models.size()];
    auto d = random_divisor(rng, x, -2, 4);
    auto d2 = random_divisor(rng, x, -2, 4);
    if (section_polytope(x, d).empty() || section_polytope(x, d2).empty()) continue;
    auto ns = nsigma(x, d);
    for (std::size_t r = 0; r < x.num_rays(); ++r) {
      CHECK(ns[r] == testutil::brute_ord(x, d, r));
      CHECK(ns[r] >= 0);
      // subadditive: sections of D1 and D2 multiply into D1 + D2
      CHECK(asymptotic_ord(x, add(d, d2), r) <= ns[r] + asymptotic_ord(x, d2, r));
    }
    for (long k = 1; k <= 10; ++k) CHECK(nsigma(x, scale(Rational(k), d)) == scale(Rational(k), ns));
    // Fix(kD)/k >= ord with equality when P_{kD} has lattice vertices
    std::int64_t den = vertex_denominator(x, d);
    for (long k = 1; k <= 20; ++k) {
      auto kd = scale(Rational(k), d);
      if (lattice_points(x, kd).empty()) continue;
      auto fix = fixed_part(x, kd).fix;
      for (std::size_t r = 0; r < x.num_rays(); ++r) {
        CHECK(fix[r] / k >= ns[r]);
        if (k % den == 0) CHECK(fix[r] / k == ns[r]);
      }
    }
  }
}

TEST_CASE("nef, ample, adjoint shape") {
  auto p2 = projective_plane();
  CHECK(is_ample(p2, rv({0, 0, 1})));
  CHECK(is_nef(p2, rv({0, 0, 0})));
  CHECK_FALSE(is_ample(p2, rv({0, 0, 0})));
  auto bl = blown_up_plane();
  CHECK(is_nef(bl, rv({0, 0, 1, 0})));
  CHECK_FALSE(is_ample(bl, rv({0, 0, 1, 0})));
  CHECK_FALSE(is_nef(bl, rv({0, 0, 0, 1})));
  // -K of the plane is ample; 0 = 1 (K + (-K))
  CHECK(adjoint_shape(p2, rv({0, 0, 0})) == 1);
  // on the line d/k - K is ample iff deg(d)/k + 2 > 0
  CHECK(adjoint_shape(projective_line(), rv({-5, 0})) == 3);
  CHECK(adjoint_shape(projective_line(), rv({-4, 0})) == 3);
  CHECK_FALSE(adjoint_shape(projective_line(), rv({-30, 0})).has_value());
  // ample divisors have no asymptotic base locus
  std::mt19937_64 rng(74);
  for (const auto& x : testutil::small_models())
    for (int it = 0; it < 10; ++it) {
      auto d = random_divisor(rng, x, 0, 4);
      if (is_ample(x, d)) CHECK(nsigma(x, d) == RationalVector(x.num_rays(), 0));
      if (is_nef(x, d)) CHECK(fixed_part(x, d).fix == RationalVector(x.num_rays(), 0));
    }
}

TEST_CASE("Ehrhart and Mob superadditivity") {
  std::mt19937_64 rng(75);
  const auto models = testutil::small_models();
  for (int it = 0; it < 12; ++it) {
    const auto& x = models[it % models.size()];
    auto d = random_divisor(rng, x, 0, 3);
    std::int64_t den = vertex_denominator(x, d);
    // count along multiples of the period is a polynomial of degree <= n
    std::vector<long> counts;
    for (long k = 0; k <= 12; ++k) counts.push_back(static_cast<long>(lattice_points(x, scale(Rational(k * den), d)).size()));
    for (std::size_t order = 0; order <= x.dim(); ++order)
      for (std::size_t i = 0; i + 1 < counts.size() - order; ++i) counts[i] = counts[i + 1] - counts[i];
    for (std::size_t i = 0; i + x.dim() + 1 < 13; ++i) CHECK(counts[i] == 0);

    auto d2 = random_divisor(rng, x, 0, 3);
    auto m1 = fixed_part(x, d).mob, m2 = fixed_part(x, d2).mob, m12 = fixed_part(x, add(d, d2)).mob;
    for (std::size_t r = 0; r < x.num_rays(); ++r) CHECK(m1[r] + m2[r] <= m12[r]);
  }
}

TEST_CASE("adjoint_semigroup") {
  auto p1 = projective_line();
  DivisorFamily f{2, {rv({0, 0}), rv({2, 3})}};
  auto a = adjoint_semigroup(p1, f);
  std::vector<IntVector> expect{{0, 1, 0}, {0, 1, 1}, {0, 1, 2}, {0, 1, 3}, {1, 0, 0}, {1, 0, 1}, {1, 0, 2}};
  CHECK(a.basis == expect);
  CHECK(a.integral_over_truncation);

  auto p2 = projective_plane();
  for (long d = 1; d <= 10; ++d) {
    auto b = adjoint_semigroup(p2, {1, {rv({0}), rv({0}), rv({d})}});
    CHECK(b.basis.size() == static_cast<std::size_t>((d + 1) * (d + 2) / 2));
    for (const auto& h : b.basis) CHECK(h[0] == 1);
  }
  auto z = adjoint_semigroup(p2, {2, {rv({0, 0}), rv({0, 0}), rv({0, 0})}});
  CHECK(z.basis == std::vector<IntVector>{{0, 1, 0, 0}, {1, 0, 0, 0}});
  CHECK_THROWS_AS(adjoint_semigroup(p2, {0, {{}, {}, {}}}), InvalidInput);

  // basis regenerates every graded piece (oracle: enumeration of each piece)
  std::mt19937_64 rng(76);
  const auto models = testutil::small_models();
  for (int it = 0; it < 4; ++it) {
    const auto& x = models[it % models.size()];
    auto fam = testutil::random_family(rng, x, 2, 2);
    auto sg = adjoint_semigroup(x, fam);
    const long bound = 6;
    IntVector grading(2 + x.dim(), 0);
    grading[0] = grading[1] = 1;
    auto gen = elements_up_to_degree(sg.basis, grading, bound);
    std::vector<IntVector> oracle;
    for (long s1 = 0; s1 <= bound; ++s1)
      for (long s2 = 0; s1 + s2 <= bound; ++s2)
        for (const auto& u : testutil::brute_lattice_points(x, fam.at(rv({s1, s2})))) {
          IntVector e{s1, s2};
          e.insert(e.end(), u.begin(), u.end());
          oracle.push_back(e);
        }
    std::sort(oracle.begin(), oracle.end());
    CHECK(gen == oracle);
  }
}

TEST_CASE("ord_pl_decomposition") {
  auto bl = blown_up_plane();
  // mu(s) = s1 D_(1,0) + s2 E: ord_E = max(0, s2 - s1)
  DivisorFamily f{2, {rv({1, 0}), rv({0, 0}), rv({0, 0}), rv({0, 1})}};
  auto od = ord_pl_decomposition(bl, f, 3);
  CHECK(od.covers_grading_cone);
  CHECK(od.ord.fan.size() == 2);
  std::mt19937_64 rng(77);
  for (int i = 0; i < 100; ++i) {
    RationalVector s{testutil::small_rational(rng, 9, 7), testutil::small_rational(rng, 9, 7)};
    for (auto& c : s) c = abs(c);
    Rational expect = std::max(Rational(0), Rational(s[1] - s[0]));
    CHECK(od.ord.evaluate_scalar(s) == expect);
    CHECK(asymptotic_ord(bl, f.at(s), 3) == expect);
  }

  // ample family: identically zero, one piece
  auto amp = ord_pl_decomposition(projective_plane(), {2, {rv({1, 0}), rv({0, 1}), rv({1, 1})}}, 0);
  CHECK(amp.ord.fan.size() == 1);
  CHECK(amp.ord.pieces[0] == RationalMatrix{rv({0, 0})});

  // curve: on the line ord vanishes wherever the degree is >= 0
  auto line = ord_pl_decomposition(projective_line(), {2, {rv({2, -1}), rv({0, 0})}}, 0);
  CHECK_FALSE(line.covers_grading_cone);
  for (int i = 0; i < 20; ++i) {
    RationalVector s{Rational(uniform(rng, 0, 9)), Rational(uniform(rng, 0, 9))};
    if (2 * s[0] - s[1] >= 0) CHECK(line.ord.evaluate_scalar(s) == 0);
    CHECK(line.domain.contains(s) == (2 * s[0] - s[1] >= 0));
  }

  // random families: parametric vs pointwise, convexity, Mob truncation
  const auto models = testutil::small_models();
  for (int it = 0; it < 10; ++it) {
    const auto& x = models[it % models.size()];
    auto fam = testutil::random_family(rng, x, 2);
    for (std::size_t rho = 0; rho < x.num_rays(); ++rho) {
      auto d = ord_pl_decomposition(x, fam, rho);
      d.ord.validate();
      for (std::size_t c = 0; c < d.ord.fan.size(); ++c) {
        for (const auto& ray : d.ord.fan[c].extremal_rays()) {
          auto s = to_rational(ray);
          CHECK(d.ord.evaluate_scalar(s) == testutil::brute_ord(x, fam.at(s), rho));
        }
      }
      for (int i = 0; i < 10; ++i) {
        RationalVector s{Rational(uniform(rng, 0, 12), uniform(rng, 1, 5)), Rational(uniform(rng, 0, 12), uniform(rng, 1, 5))};
        for (auto& q : s) q.canonicalize();
        CHECK(d.ord.evaluate_scalar(s) == testutil::brute_ord(x, fam.at(s), rho));
      }
      // the mobile coefficient mu_rho - ord_rho is concave
      PLFunction mob = d.ord;
      for (std::size_t c = 0; c < mob.pieces.size(); ++c)
        mob.pieces[c][0] = sub(fam.matrix[rho], mob.pieces[c][0]);
      CHECK(check_concave(mob).concave);
    }
    for (int i = 0; i < 5; ++i) {
      IntVector s{uniform(rng, 0, 4), uniform(rng, 0, 4)};
      auto p = mobile_truncation(x, fam, s);
      REQUIRE(p.has_value());
      CHECK(*p <= 24);
    }
  }
}

TEST_CASE("straighten reproduces mu - N_sigma") {
  std::mt19937_64 rng(78);
  auto x = blown_up_plane();
  DivisorFamily f{2, {rv({1, 0}), rv({0, 0}), rv({0, 1}), rv({0, 2})}};
  auto o = mobile_oracle(x, f);
  auto res = straighten(o, {}, 200, 0, 6);
  CHECK(res.complete);
  for (int i = 0; i < 30; ++i) {
    RationalVector s{Rational(uniform(rng, 0, 20), uniform(rng, 1, 7)), Rational(uniform(rng, 0, 20), uniform(rng, 1, 7))};
    for (auto& q : s) q.canonicalize();
    CHECK(res.candidate.evaluate(s) == straightened_mobile(x, f, s));
    CHECK(straightened_value(o, s) == straightened_mobile(x, f, s));
  }
  CHECK_THROWS_AS(mobile_oracle(x, {1, {{frac(1, 2)}, {0}, {0}, {0}}}), InvalidInput);
}
