#include <doctest.h>

#include <random>

#include "jetbound/lp.hpp"

using namespace jetbound;
using namespace jetbound::lp;

namespace {

Constraint row(std::vector<long> c, Relation rel, long rhs) {
  RationalVector v;
  for (long x : c) v.emplace_back(x);
  return {v, rel, Rational(rhs), ""};
}

}  // namespace

TEST_CASE("feasible systems return a satisfying point") {
  const std::vector<Constraint> sys = {
      row({1, 1}, Relation::eq, 3),
      row({1, -1}, Relation::ge, 1),
      row({0, 1}, Relation::ge, -5),
  };
  const auto r = solve_feasibility(sys, 2);
  REQUIRE(r.feasible);
  CHECK(satisfies(sys, r.solution));
}

TEST_CASE("infeasible systems return a Farkas certificate") {
  const std::vector<Constraint> sys = {
      row({1, 0}, Relation::ge, 2),
      row({-1, 0}, Relation::ge, -1),
      row({0, 1}, Relation::eq, 4),
  };
  const auto r = solve_feasibility(sys, 2);
  REQUIRE_FALSE(r.feasible);
  CHECK(is_farkas_certificate(sys, 2, r.farkas));
  // x >= 2 and x <= 1 combine to 0 >= 1.
  CHECK(r.farkas[0] > 0);
  CHECK(r.farkas[0] == r.farkas[1]);
}

TEST_CASE("inconsistent equalities") {
  const std::vector<Constraint> sys = {row({1, 1}, Relation::eq, 1), row({2, 2}, Relation::eq, 3)};
  const auto r = solve_feasibility(sys, 2);
  REQUIRE_FALSE(r.feasible);
  CHECK(is_farkas_certificate(sys, 2, r.farkas));
}

TEST_CASE("certificate checker rejects bad multipliers") {
  const std::vector<Constraint> sys = {row({1}, Relation::ge, 2), row({-1}, Relation::ge, -1)};
  CHECK(is_farkas_certificate(sys, 1, {Rational(1), Rational(1)}));
  CHECK_FALSE(is_farkas_certificate(sys, 1, {Rational(1), Rational(2)}));
  CHECK_FALSE(is_farkas_certificate(sys, 1, {Rational(-1), Rational(-1)}));
  CHECK_FALSE(is_farkas_certificate(sys, 1, {Rational(1)}));
}

TEST_CASE("empty systems are feasible") {
  const auto r = solve_feasibility({}, 3);
  CHECK(r.feasible);
  CHECK(r.solution.size() == 3);
}

TEST_CASE("random systems: every answer is checkable") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> c(-4, 4);
  int feasible = 0, infeasible = 0;
  for (int t = 0; t < 150; ++t) {
    const std::size_t vars = 1 + t % 4;
    std::vector<Constraint> sys;
    const int rows = 1 + t % 7;
    for (int i = 0; i < rows; ++i) {
      std::vector<long> a(vars);
      for (auto& x : a) x = c(rng);
      sys.push_back(row(a, (i % 3 == 0) ? Relation::eq : Relation::ge, c(rng)));
    }
    const auto r = solve_feasibility(sys, vars);
    if (r.feasible) {
      ++feasible;
      CHECK(satisfies(sys, r.solution));
    } else {
      ++infeasible;
      CHECK(is_farkas_certificate(sys, vars, r.farkas));
    }
  }
  CHECK(feasible > 0);
  CHECK(infeasible > 0);
}
