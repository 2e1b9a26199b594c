#include "jetbound/lp.hpp"

#include <stdexcept>

#include "jetbound/error.hpp"

namespace jetbound::lp {

// Standard form: z = (x+, x-, slacks) >= 0 with one equality row per
// constraint, rows negated where needed so the right-hand side is >= 0, and
// one artificial column per row. Phase I minimizes the artificial sum.
FeasibilityResult solve_feasibility(const std::vector<Constraint>& constraints, std::size_t vars) {
  const std::size_t m = constraints.size();
  std::size_t slacks = 0;
  for (const auto& c : constraints) {
    if (c.coeffs.size() != vars) throw InputError("constraint '" + c.label + "' has the wrong width");
    if (c.relation == Relation::ge) ++slacks;
  }
  const std::size_t nz = 2 * vars + slacks;
  const std::size_t cols = nz + m;  // then the artificials
  FeasibilityResult result;
  if (m == 0) {
    result.feasible = true;
    result.solution.assign(vars, Rational(0));
    return result;
  }

  Matrix<Rational> t(m, RationalVector(cols + 1, Rational(0)));
  std::vector<int> sign(m, 1);
  std::size_t slack = 2 * vars;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = constraints[i];
    sign[i] = c.rhs < 0 ? -1 : 1;
    for (std::size_t j = 0; j < vars; ++j) {
      t[i][j] = c.coeffs[j] * sign[i];
      t[i][vars + j] = -t[i][j];
    }
    if (c.relation == Relation::ge) t[i][slack++] = -sign[i];
    t[i][nz + i] = 1;
    t[i][cols] = c.rhs * sign[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = nz + i;

  // Reduced costs: artificial cost 1, everything else 0.
  RationalVector rc(cols + 1, Rational(0));
  for (std::size_t j = 0; j <= cols; ++j) {
    if (j >= nz && j < cols) continue;
    for (std::size_t i = 0; i < m; ++i) rc[j] -= t[i][j];
  }

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (rc[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) throw std::logic_error("phase I objective is bounded below; unbounded ray is impossible");
    const Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
      }
    }
    const Rational f = rc[enter];
    for (std::size_t j = 0; j <= cols; ++j) {
      if (t[leave][j] != 0) rc[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
    ++result.pivots;
  }

  // rc[cols] is minus the phase I optimum.
  if (rc[cols] == 0) {
    RationalVector z(cols, Rational(0));
    for (std::size_t i = 0; i < m; ++i) z[basis[i]] = t[i][cols];
    result.feasible = true;
    result.solution.resize(vars);
    for (std::size_t j = 0; j < vars; ++j) result.solution[j] = z[j] - z[vars + j];
    if (!satisfies(constraints, result.solution)) {
      throw std::logic_error("simplex returned a point that violates the system");
    }
    return result;
  }

  // Dual of phase I: w_i = 1 - reduced cost of artificial i.
  result.farkas.resize(m);
  for (std::size_t i = 0; i < m; ++i) result.farkas[i] = (1 - rc[nz + i]) * sign[i];
  if (!is_farkas_certificate(constraints, vars, result.farkas)) {
    throw std::logic_error("simplex produced an invalid infeasibility certificate");
  }
  return result;
}

bool satisfies(const std::vector<Constraint>& constraints, const RationalVector& x) {
  for (const auto& c : constraints) {
    if (c.coeffs.size() != x.size()) return false;
    Rational lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coeffs[j] * x[j];
    if (c.relation == Relation::eq ? lhs != c.rhs : lhs < c.rhs) return false;
  }
  return true;
}

bool is_farkas_certificate(const std::vector<Constraint>& constraints, std::size_t vars,
                           const RationalVector& y) {
  if (y.size() != constraints.size()) return false;
  RationalVector combo(vars, Rational(0));
  Rational rhs = 0;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    if (c.coeffs.size() != vars) return false;
    if (c.relation == Relation::ge && y[i] < 0) return false;
    for (std::size_t j = 0; j < vars; ++j) combo[j] += y[i] * c.coeffs[j];
    rhs += y[i] * c.rhs;
  }
  for (const auto& v : combo) {
    if (v != 0) return false;
  }
  return rhs > 0;
}

}  // namespace jetbound::lp
