#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "jetbound/error.hpp"
#include "jetbound/lattice_geometry.hpp"
#include "oracles.hpp"

using namespace jetbound;
using test::poly;
using test::q;
using test::rv;

TEST_CASE("hull drops interior and repeated points") {
  auto p = poly({{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}, {1, 0}, {2, 2}});
  CHECK(p.vertices().size() == 4);
  CHECK(p.dim() == 2);
  CHECK(p.facet_count() == 4);
  CHECK(p.contains(Point{1, 1}));
  CHECK_FALSE(p.contains(Point{3, 1}));
}

TEST_CASE("lower-dimensional hulls carry their affine span") {
  auto seg = poly({{0, 0}, {1, 1}, {2, 2}});
  CHECK(seg.dim() == 1);
  CHECK_FALSE(seg.is_full_dimensional());
  CHECK(seg.vertices().size() == 2);
  CHECK(seg.contains(Point{1, 1}));
  CHECK_FALSE(seg.contains(Point{1, 0}));
  CHECK(volume(seg) == 0);
  CHECK(lattice_points(seg).size() == 3);

  auto pt = poly({{3, -1}});
  CHECK(pt.dim() == 0);
  CHECK(lattice_points(pt).points() == std::vector<Point>{{3, -1}});
}

TEST_CASE("halfspaces round-trip to the same vertices") {
  for (const auto& p : {test::fan_triangle(), test::tetrahedron(), unit_cube(3), standard_simplex(4)}) {
    const auto back = vertices_of_halfspaces(p.halfspaces(), p.ambient_dim());
    CHECK(RationalPolytope::from_vertices(back) == p);
  }
}

TEST_CASE("lattice points match a brute-force count") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::int64_t k = 1; k <= 5; ++k) {
      const auto got = lattice_points(dilate(standard_simplex(n), q(k))).points();
      CHECK(got == oracle::simplex_points(n, k));
    }
  }
  // Ehrhart polynomial of the tetrahedron: (k^3 + 3k^2 + 5k + 3) / 3.
  for (std::int64_t k = 1; k <= 5; ++k) {
    const std::int64_t expected = (k * k * k + 3 * k * k + 5 * k + 3) / 3;
    CHECK(static_cast<std::int64_t>(lattice_points(dilate(test::tetrahedron(), q(k))).size()) == expected);
  }
  // Rational vertices.
  auto r = RationalPolytope::from_vertices({{q(-1, 2), q(0)}, {q(5, 2), q(0)}, {q(0), q(7, 3)}});
  // Inequalities of r written out by hand: y >= 0, the left and right edges.
  std::vector<std::vector<Rational>> a = {{q(0), q(-1)}, {q(-14), q(3)}, {q(14), q(15)}};
  std::vector<Rational> b = {q(0), q(7), q(35)};
  CHECK(lattice_points(r).points() == oracle::box_points(a, b, -3, 3, 2));
}

TEST_CASE("volumes") {
  CHECK(volume(test::fan_triangle()) == q(3, 2));
  CHECK(volume(test::tetrahedron()) == q(1, 3));
  CHECK(volume(unit_cube(3)) == 1);
  CHECK(volume(standard_simplex(4)) == q(1, 24));
  CHECK(volume(dilate(unit_cube(2), q(3))) == 9);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> c(-6, 6);
  for (int t = 0; t < 30; ++t) {
    std::vector<Point> pts;
    for (int i = 0; i < 7; ++i) pts.push_back({c(rng), c(rng)});
    const auto p = poly(pts);
    if (!p.is_full_dimensional()) continue;
    // Order hull vertices by angle around the centroid for the shoelace.
    RationalVector mid(2, Rational(0));
    for (const auto& v : p.vertices()) {
      mid[0] += v[0];
      mid[1] += v[1];
    }
    mid[0] /= p.vertices().size();
    mid[1] /= p.vertices().size();
    auto vs = p.vertices();
    std::sort(vs.begin(), vs.end(), [&](const auto& u, const auto& w) {
      return std::atan2(to_double(u[1] - mid[1]), to_double(u[0] - mid[0])) <
             std::atan2(to_double(w[1] - mid[1]), to_double(w[0] - mid[0]));
    });
    CHECK(volume(p) == oracle::shoelace(vs));
  }
}

TEST_CASE("dilation, translation and normalization") {
  CHECK_THROWS_AS(dilate(unit_cube(2), q(0)), InputError);
  CHECK_THROWS_AS(dilate(unit_cube(2), q(-1)), InputError);
  const auto p = dilate(test::fan_triangle(), q(3, 2));
  CHECK(p.vertices().back() == RationalVector{q(3), q(3, 2)});

  const auto t = translate(test::fan_triangle(), rv({-5, 2}));
  CHECK(lattice_points(t).size() == lattice_points(test::fan_triangle()).size());
  const auto norm = normalize_to_nonneg(t);
  CHECK(norm.shift == Point{5, 0});
  CHECK(norm.polytope.vertices() == translate(test::fan_triangle(), rv({0, 2})).vertices());

  const auto half = RationalPolytope::from_vertices({{q(-1, 2)}, {q(3)}});
  CHECK(normalize_to_nonneg(half).shift == Point{1});
}

TEST_CASE("lattice point sets") {
  LatticePointSet s({{2, 1}, {0, 3}, {2, 1}, {-1, 5}}, 2);
  CHECK(s.size() == 3);
  CHECK(s.min_corner() == Point{-1, 1});
  CHECK_FALSE(s.all_nonnegative());
  const auto n = s.normalized();
  CHECK(n.min_corner() == Point{0, 0});
  CHECK(n.contains(Point{3, 0}));
  CHECK(s.translated({1, -1}).normalized() == n);
}

TEST_CASE("Minkowski sums") {
  const auto a = test::fan_triangle();
  const auto b = unit_cube(2);
  const auto s = minkowski_sum(a, b);
  CHECK(minkowski_sum(a, a) == dilate(a, q(2)));
  CHECK(volume(s) > volume(a) + volume(b));
  for (const auto& u : lattice_points(a).points()) {
    for (const auto& w : lattice_points(b).points()) CHECK(s.contains(Point{u[0] + w[0], u[1] + w[1]}));
  }
}

TEST_CASE("lattice maps") {
  const LatticeMap m({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
  CHECK(m.degree() == 2);
  CHECK(m.apply(rv({1, 0, 0})) == rv({1, 1, 0}));
  CHECK_THROWS_AS(LatticeMap({{1, 2}, {2, 4}}), InputError);
  CHECK_THROWS_AS(LatticeMap({{1, 2, 3}, {2, 4, 1}}), InputError);
  CHECK(preimage_under_lattice_map(test::tetrahedron(), m) == standard_simplex(3));
  CHECK(preimage_under_lattice_map(dilate(unit_cube(2), q(2)), LatticeMap({{2, 0}, {0, 2}})) == unit_cube(2));
  CHECK(preimage_under_lattice_map(test::fan_triangle(), LatticeMap::identity(2)) == test::fan_triangle());
}

TEST_CASE("intersections") {
  const auto sq = unit_cube(2);
  const auto shifted = translate(sq, rv({1, 0}));
  auto edge = intersect(sq, shifted);
  REQUIRE(edge);
  CHECK(edge->dim() == 1);
  CHECK(edge->vertices() == std::vector<RationalVector>{rv({1, 0}), rv({1, 1})});
  CHECK_FALSE(intersect(sq, translate(sq, rv({3, 0}))));
  auto corner = intersect(sq, translate(sq, rv({1, 1})));
  REQUIRE(corner);
  CHECK(corner->dim() == 0);
  auto overlap = intersect(dilate(sq, q(2)), translate(dilate(sq, q(2)), rv({1, 1})));
  REQUIRE(overlap);
  CHECK(*overlap == translate(sq, rv({1, 1})));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(RationalPolytope::from_vertices({}), InputError);
  CHECK_THROWS_AS(RationalPolytope::from_vertices({rv({0, 0}), rv({1})}), InputError);
  CHECK_THROWS_AS(RationalPolytope::from_vertices({RationalVector(7, Rational(0))}), InputError);
}
