// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "helpers.hpp"
#include "jetbound/error.hpp"
#include "jetbound/estimation_methods.hpp"
#include "oracles.hpp"

using namespace jetbound;
using test::poly;
using test::q;
using test::rv;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

EngineOptions budget(std::int64_t k) {
  EngineOptions o;
  o.k_budget = k;
  o.certify = true;
  return o;
}

RankPolicy certified_policy() { return RankPolicy{true, 0, nullptr}; }

// Heights at every lattice point of the parent must be integral and agree
// between cells, and each affine piece must lie strictly below the heights
// off its own cell.
bool independently_regular(const Decomposition& d, const LiftingWitness& w) {
  const auto pts = lattice_points(d.parent);
  for (const auto& p : pts.points()) {
    RationalVector x(p.begin(), p.end());
    std::optional<Rational> h;
    for (std::size_t c = 0; c < d.cells.size(); ++c) {
      if (!d.cells[c].contains(x)) continue;
      const Rational v = w.value(c, x);
      if (h && *h != v) return false;
      h = v;
    }
    if (!h || denominator(*h) != 1) return false;
    for (std::size_t c = 0; c < d.cells.size(); ++c) {
      if (!d.cells[c].contains(x) && !(w.value(c, x) < *h)) return false;
    }
  }
  return true;
}

Decomposition fan() {
  const std::vector<RationalVector> pool = {rv({0, 0}), rv({2, 1}), rv({1, 2}), rv({1, 1})};
  return Decomposition::from_pool(test::fan_triangle(), pool, {{3, 1, 2}, {3, 2, 0}, {3, 0, 1}});
}

Decomposition pinwheel() {
  const std::vector<RationalVector> pool = {rv({0, 0}), rv({4, 0}), rv({0, 4}),
                                            rv({1, 1}), rv({2, 1}), rv({1, 2})};
  return Decomposition::from_pool(poly({{0, 0}, {4, 0}, {0, 4}}), pool,
                                  {{3, 4, 5}, {0, 1, 4}, {0, 4, 3}, {1, 2, 5}, {1, 5, 4}, {2, 0, 3}, {2, 3, 5}});
}

// Criterion 1: the (3,1) collision staircase and its 13-point set.
Outcome collision() {
  Outcome o;
  const auto ideal = staircase_from_generators({{6, 0}, {4, 1}, {2, 2}, {1, 3}, {0, 4}});
  o.expect(ideal.colength() == 13, "staircase colength is not 13");
  o.expect(ideal == collinear_collision_ideal({3, 1}), "staircase differs from the collision ideal");
  const LatticePointSet s(test::collision_points(), 2);
  o.expect(s.size() == 13, "point set does not have 13 points");
  const auto a = build_jet_matrix(s, ideal, JetForm::binomial);
  o.expect(rank_exact(a) == 13, "exact rank is not 13");
  o.expect(oracle::rank(oracle::derivative_matrix(ideal.phi().points(), s.points())) == 13,
           "derivative oracle rank is not 13");
  const auto rep = degeneration_check(s, ideal, {3, 1}, certified_policy());
  o.expect(rep.full && rep.certified && rep.rank == 13, "degeneration check did not certify full rank");
  return o;
}

// Criterion 2: tetrahedron through a degree-2 lattice map.
Outcome lattice_change() {
  Outcome o;
  const LatticeMap map({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
  o.expect(map.degree() == 2, "map degree is not 2");
  const auto tet = test::tetrahedron();
  o.expect(volume(tet) == q(1, 3), "tetrahedron volume is not 1/3");
  const auto up = volume_upper_bound(tet, Weights({q(1), q(1)}));
  o.expect(up.exact_value() == q(1), "volume bound is not exactly 1");
  const auto r = lattice_change_bound(tet, map, Weights({q(1)}), budget(3));
  o.expect(r.bound.lower >= 1, "lower bound below 1");
  o.expect(r.bound.upper.exact_value() == q(1), "reported upper bound is not 1");
  o.expect(r.bound.exact(), "value not reported as exact");
  o.expect(r.bound.certified, "rank verdicts not certified");
  return o;
}

// Criterion 3: three-triangle fan around (1,1).
Outcome fan_decomposition() {
  Outcome o;
  const auto d = fan();
  const auto report = validate_decomposition(d);
  o.expect(report.valid, "fan does not validate: " + report.violation);
  const auto lift = lifting_function_exists(d);
  o.expect(lift.regular(), "lifting LP infeasible");
  if (!o.ok) return o;
  o.expect(verify_lifting_witness(d, *lift.witness).ok, "witness fails the library checker");
  o.expect(independently_regular(d, *lift.witness), "witness fails the independent checker");
  const Weights one({q(1)});
  const auto r = decomposition_bound(test::fan_triangle(), d, *lift.witness, {{0, one}, {1, one}, {2, one}}, budget(3));
  for (const auto& c : r.cell_bounds) o.expect(c.lower >= 1, "a cell bound is below 1");
  o.expect(r.bound.lower >= 1, "combined bound below 1");
  o.expect(r.bound.upper.exact_value() == q(1), "volume bound is not 1");
  o.expect(r.bound.exact(), "value not reported as exact");
  return o;
}

// Criterion 4: standard simplices and the unit square.
Outcome toric() {
  Outcome o;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::int64_t k = 1; k <= 5; ++k) {
      const auto s = lattice_points(dilate(standard_simplex(n), q(k)));
      const auto r = max_jet_order(s, certified_policy());
      o.expect(r.order == k && r.certified,
               "simplex n=" + std::to_string(n) + " k=" + std::to_string(k) + " order " + std::to_string(r.order));
    }
    const auto b = seshadri_lower_bound(standard_simplex(n), budget(5));
    o.expect(b.lower == 1 && b.exact(), "simplex n=" + std::to_string(n) + " is not exactly 1");
  }
  for (std::int64_t k = 1; k <= 5; ++k) {
    const auto r = seshadri_lower_bound(unit_cube(2), budget(k));
    o.expect(r.lower == 1, "square lower bound is not 1 at budget " + std::to_string(k));
    o.expect(r.upper.bounds(r.lower), "square lower exceeds upper");
  }
  return o;
}

Point random_point(std::mt19937_64& rng, std::size_t n, int hi) {
  std::uniform_int_distribution<int> c(0, hi);
  Point p(n);
  for (auto& x : p) x = c(rng);
  return p;
}

LatticePointSet random_set(std::mt19937_64& rng, std::size_t n, int count, int hi) {
  std::vector<Point> pts;
  for (int i = 0; i < count; ++i) pts.push_back(random_point(rng, n, hi));
  return LatticePointSet(pts, n);
}

// Down-closure of a few random corners.
StaircaseIdeal random_lower_set(std::mt19937_64& rng, std::size_t n) {
  std::set<Point> phi;
  std::uniform_int_distribution<int> corners(1, 3);
  const int count = corners(rng);
  for (int c = 0; c < count; ++c) {
    const Point top = random_point(rng, n, n == 1 ? 6 : (n == 2 ? 3 : 2));
    Point cur(n, 0);
    while (true) {
      phi.insert(cur);
      std::size_t i = 0;
      while (i < n && cur[i] == top[i]) cur[i++] = 0;
      if (i == n) break;
      ++cur[i];
    }
  }
  return StaircaseIdeal::from_lower_set(LatticePointSet({phi.begin(), phi.end()}, n));
}

// Criterion 5: property suite.
Outcome properties() {
  Outcome o;
  std::mt19937_64 rng(20240611);

  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 3;
    const auto ideal = random_lower_set(rng, n);
    const auto s = random_set(rng, n, 2 + t % 15, 8);
    const auto bin = build_jet_matrix(s, ideal, JetForm::binomial);
    const auto pow = build_jet_matrix(s, ideal, JetForm::power);
    const std::size_t rb = rank_exact(bin);
    o.expect(rb == rank_exact(pow), "binomial and power ranks differ");
    o.expect(rb == oracle::rank(oracle::derivative_matrix(ideal.phi().points(), s.points())),
             "binomial rank differs from the derivative oracle");

    std::mt19937_64 prng(t);
    bool agreed = false;
    for (int k = 0; k < 3; ++k) {
      const std::size_t rm = rank_modular(bin, random_prime(prng));
      o.expect(rm <= rb, "modular rank exceeds exact rank");
      agreed = agreed || rm == rb;
    }
    o.expect(agreed, "no prime agreed with the exact rank");

    Point shift = random_point(rng, n, 5);
    std::vector<Point> moved;
    for (auto p : s.points()) {
      for (std::size_t i = 0; i < n; ++i) p[i] += shift[i];
      moved.push_back(p);
    }
    o.expect(rank_exact(build_jet_matrix(LatticePointSet(moved, n), ideal, JetForm::power)) == rb,
             "rank not translation invariant");

    const auto rep = is_full_jet_rank(s, ideal);
    o.expect(rep.full == (rb == ideal.colength()), "full-rank verdict disagrees with the exact rank");
    if (!rep.full) {
      o.expect(rep.certificate.has_value(), "deficient rank without certificate");
      if (rep.certificate) {
        for (const auto& u : s.points()) o.expect(rep.certificate->evaluate(u) == 0, "certificate does not vanish on S");
      }
    }
  }

  // Full rank at m implies full rank below m.
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 3;
    const auto s = random_set(rng, n, 4 + t % 20, 6);
    bool previous = true;
    for (std::int64_t m = 0; m <= 4; ++m) {
      const bool full = is_full_jet_rank(s, phi_of_power(m, n), {}, false).full;
      o.expect(previous || !full, "full rank is not monotone in m");
      previous = full;
    }
  }

  // max_jet_order(S + T) >= max_jet_order(S) + max_jet_order(T).
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 2;
    const auto s = random_set(rng, n, 3 + t % 5, 4);
    const auto u = random_set(rng, n, 3 + (t / 2) % 5, 4);
    std::set<Point> sum;
    for (const auto& a : s.points()) {
      for (const auto& b : u.points()) {
        Point c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = a[i] + b[i];
        sum.insert(c);
      }
    }
    const auto ms = max_jet_order(s).order;
    const auto mu = max_jet_order(u).order;
    const auto msum = max_jet_order(LatticePointSet({sum.begin(), sum.end()}, n)).order;
    o.expect(msum >= ms + mu, "Minkowski superadditivity fails");
  }

  // Multipoint matrix at the all-ones point is the binomial jet matrix.
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 3;
    const std::int64_t m = t % 4;
    const auto s = random_set(rng, n, 1 + t % 9, 8);
    const auto mp = build_multipoint_matrix(s, {RationalVector(n, Rational(1))}, {m});
    const auto a = build_jet_matrix(s, phi_of_power(m, n), JetForm::binomial);
    o.expect(mp.rows.size() == a.rows.size() && mp.cols == a.cols, "multipoint shape differs");
    if (!o.ok) break;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      o.expect(mp.rows[i].second == a.rows[i], "multipoint row order differs");
      for (std::size_t j = 0; j < a.cols.size(); ++j) {
        o.expect(mp.entries[i][j] == Rational(a.entries[i][j]), "multipoint entry differs");
      }
    }
  }
  return o;
}

// Criterion 6: lifting LP on trivial, regular and non-regular decompositions.
Outcome regularity() {
  Outcome o;
  std::vector<Decomposition> regular = {fan()};
  const std::vector<RationalPolytope> polys = {test::fan_triangle(), unit_cube(2), test::tetrahedron(), unit_cube(3),
                                               poly({{0, 0}, {4, 1}, {1, 3}}), poly({{0, 0}, {3, 0}, {3, 2}, {1, 3}})};
  for (const auto& p : polys) {
    const auto lift = lifting_function_exists(Decomposition{p, {p}});
    o.expect(lift.regular(), "a trivial decomposition is infeasible");
  }
  regular.push_back(Decomposition::from_pool(unit_cube(2), {rv({0, 0}), rv({1, 0}), rv({1, 1}), rv({0, 1})},
                                             {{0, 1, 2}, {0, 2, 3}}));
  regular.push_back(Decomposition::from_pool(poly({{0, 0}, {2, 0}, {2, 2}, {0, 2}}),
                                             {rv({0, 0}), rv({2, 0}), rv({2, 2}), rv({0, 2}), rv({1, 1})},
                                             {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}}));
  for (const auto& p : polys) regular.push_back(Decomposition{p, {p}});

  for (const auto& d : regular) {
    const auto lift = lifting_function_exists(d);
    o.expect(lift.regular(), "a regular decomposition is reported infeasible");
    if (!lift.regular()) continue;
    for (const Integer c : {Integer(1), Integer(7)}) {
      const auto w = lift.witness->scaled(c);
      o.expect(verify_lifting_witness(d, w).ok, "witness fails the library checker");
      o.expect(independently_regular(d, w), "witness fails the independent checker");
    }
  }

  const auto pw = pinwheel();
  o.expect(validate_decomposition(pw).valid, "pinwheel does not validate");
  const auto lift = lifting_function_exists(pw);
  o.expect(!lift.regular(), "pinwheel reported regular");
  o.expect(lp::is_farkas_certificate(lift.constraints, lift.unknowns, lift.farkas), "pinwheel Farkas certificate invalid");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "collision staircase, 13-point set has full rank", 1.0, collision},
      {2, "tetrahedron lattice change gives exactly 1", 5.0, lattice_change},
      {3, "three-triangle fan gives exactly 1", 5.0, fan_decomposition},
      {4, "simplices and unit square", 60.0, toric},
      {5, "property suite", 60.0, properties},
      {6, "lifting LP regularity", 60.0, regularity},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.limit_s) {
      o.ok = false;
      o.detail = "over the time limit";
    }
    failures += o.ok ? 0 : 1;
    std::printf("%s criterion %d: %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.ok ? "" : ": ", o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
