#pragma once

// Test-side toric oracles: box enumeration and vertex enumeration by ray subsets.

#include "test_util.hpp"

#include "polycone/linalg.hpp"
#include "polycone/toric.hpp"

#include <algorithm>
#include <set>

namespace testutil {

using polycone::IntVector;
using polycone::RationalVector;

inline bool in_section_polytope(const polycone::ToricModel& x, const RationalVector& d, const IntVector& u) {
  for (std::size_t r = 0; r < x.num_rays(); ++r)
    if (polycone::Rational(static_cast<long>(polycone::dot(x.rays()[r], u))) < -d[r]) return false;
  return true;
}

// vertices of P_D from every n-subset of tight rays
inline std::vector<RationalVector> brute_vertices(const polycone::ToricModel& x, const RationalVector& d) {
  std::size_t n = x.dim(), m = x.num_rays();
  std::set<RationalVector> out;
  std::vector<bool> mask(m, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(n), true);
  do {
    polycone::RationalMatrix a;
    RationalVector b;
    for (std::size_t r = 0; r < m; ++r)
      if (mask[r]) {
        a.push_back(polycone::to_rational(x.rays()[r]));
        b.push_back(-d[r]);
      }
    auto u = polycone::solve_square(a, b);
    if (!u) continue;
    bool ok = true;
    for (std::size_t r = 0; r < m && ok; ++r) ok = polycone::dot(x.rays()[r], *u) >= -d[r];
    if (ok) out.insert(*u);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return {out.begin(), out.end()};
}

// box enumeration; the box comes from the vertex oracle
inline std::vector<IntVector> brute_lattice_points(const polycone::ToricModel& x, const RationalVector& d) {
  std::size_t n = x.dim();
  std::vector<IntVector> out;
  auto vs = brute_vertices(x, d);
  if (vs.empty()) return out;
  long box = 1;
  for (const auto& v : vs)
    for (const auto& c : v) box = std::max(box, static_cast<long>(polycone::Rational(abs(c)).get_d()) + 1);
  IntVector u(n, -box);
  while (true) {
    if (in_section_polytope(x, d, u)) out.push_back(u);
    std::size_t j = 0;
    for (; j < n; ++j) {
      if (u[j] < box) {
        ++u[j];
        break;
      }
      u[j] = -box;
    }
    if (j == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline polycone::Rational brute_ord(const polycone::ToricModel& x, const RationalVector& d, std::size_t rho) {
  auto vs = brute_vertices(x, d);
  polycone::Rational best = polycone::dot(x.rays()[rho], vs.at(0));
  for (const auto& v : vs) best = std::min(best, polycone::Rational(polycone::dot(x.rays()[rho], v)));
  return best + d[rho];
}

inline std::vector<polycone::ToricModel> small_models() {
  using namespace polycone;
  return {projective_plane(), blown_up_plane(), hirzebruch(1), hirzebruch(2),
          // weighted projective plane P(1,1,2): singular, simplicial
          ToricModel({{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {2, 0}}),
          // plane blown up twice: six rays
          ToricModel({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}},
                     {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}})};
}

// effective integral family on a model, l generators
inline polycone::DivisorFamily random_family(std::mt19937_64& rng, const polycone::ToricModel& x, std::size_t l,
                                             long hi = 3) {
  polycone::DivisorFamily f;
  f.grading_rank = l;
  for (std::size_t r = 0; r < x.num_rays(); ++r) {
    RationalVector row;
    for (std::size_t i = 0; i < l; ++i) row.emplace_back(uniform(rng, 0, hi));
    f.matrix.push_back(row);
  }
  return f;
}

}  // namespace testutil
