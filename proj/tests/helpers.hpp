#pragma once

#include <initializer_list>
#include <vector>

#include "jetbound/lattice_geometry.hpp"

namespace test {

inline jetbound::RationalVector rv(std::initializer_list<long> xs) {
  jetbound::RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline jetbound::Rational q(long p, long d = 1) { return jetbound::Rational(p, d); }

inline jetbound::RationalPolytope poly(const std::vector<jetbound::Point>& pts) {
  return jetbound::RationalPolytope::from_points(pts);
}

// The 13 points of the plane configuration used for the (3,1) collision.
inline std::vector<jetbound::Point> collision_points() {
  return {{0, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {0, 2}, {1, 2},
          {2, 2}, {3, 2}, {4, 2}, {5, 2}, {0, 3}, {1, 3}};
}

inline jetbound::RationalPolytope tetrahedron() {
  return poly({{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
}

inline jetbound::RationalPolytope fan_triangle() { return poly({{0, 0}, {2, 1}, {1, 2}}); }

}  // namespace test
