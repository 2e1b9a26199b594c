#pragma once

// Exact feasibility of small linear systems over Q.
//
// Variables are free. Infeasible systems come with a Farkas certificate y:
// y^T A = 0, y_i >= 0 on inequality rows, y^T b > 0. Both the solution and
// the certificate can be re-checked without the solver.

#include <cstddef>
#include <string>
#include <vector>

#include "jetbound/rational.hpp"

namespace jetbound::lp {

enum class Relation { eq, ge };

/// coeffs . x (= or >=) rhs
struct Constraint {
  RationalVector coeffs;
  Relation relation = Relation::eq;
  Rational rhs;
  std::string label;
};

struct FeasibilityResult {
  bool feasible = false;
  RationalVector solution;  // when feasible
  RationalVector farkas;    // when infeasible, one entry per constraint
  std::size_t pivots = 0;
};

/// Phase-I simplex over Q with Bland's rule. Throws std::logic_error if the
/// certificate it produces fails its own check.
FeasibilityResult solve_feasibility(const std::vector<Constraint>& constraints, std::size_t vars);

bool satisfies(const std::vector<Constraint>& constraints, const RationalVector& x);
bool is_farkas_certificate(const std::vector<Constraint>& constraints, std::size_t vars,
                           const RationalVector& y);

}  // namespace jetbound::lp
