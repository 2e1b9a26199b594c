#include "jetbound/estimation_methods.hpp"

#include <algorithm>
#include <set>

#include "jetbound/error.hpp"
#include "jetbound/linear_algebra.hpp"

namespace jetbound {

namespace {

std::string pair_text(std::size_t i, std::size_t j) {
  return "cells " + std::to_string(i) + " and " + std::to_string(j);
}

bool on_hyperplane(const Halfspace& h, const RationalVector& x) {
  Rational lhs = 0;
  for (std::size_t k = 0; k < x.size(); ++k) lhs += Rational(h.normal[k]) * x[k];
  return lhs == Rational(h.offset);
}

// Vertices of the smallest face of `cell` that contains every point of `pts`.
std::vector<RationalVector> minimal_face(const RationalPolytope& cell,
                                         const std::vector<RationalVector>& pts) {
  std::vector<const Halfspace*> tight;
  for (std::size_t f = 0; f < cell.facet_count(); ++f) {
    const Halfspace& h = cell.halfspaces()[f];
    if (std::all_of(pts.begin(), pts.end(), [&](const auto& p) { return on_hyperplane(h, p); })) {
      tight.push_back(&h);
    }
  }
  std::vector<RationalVector> face;
  for (const auto& v : cell.vertices()) {
    if (std::all_of(tight.begin(), tight.end(), [&](const Halfspace* h) { return on_hyperplane(*h, v); })) {
      face.push_back(v);
    }
  }
  return face;
}

bool is_vertex_of(const RationalPolytope& p, const RationalVector& v) {
  return std::binary_search(p.vertices().begin(), p.vertices().end(), v);
}

Rational affine_value(const RationalVector& a, const Rational& b, const RationalVector& x) {
  Rational out = b;
  for (std::size_t k = 0; k < x.size(); ++k) out += a[k] * x[k];
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Degeneration

Integer fat_point_colength(const std::vector<std::int64_t>& mbar, std::size_t n) {
  Integer total = 0;
  for (auto m : mbar) {
    if (m < 0) throw InputError("jet orders must be non-negative");
    total += binomial(m + static_cast<std::int64_t>(n), static_cast<std::int64_t>(n));
  }
  return total;
}

JetRankReport degeneration_check(const LatticePointSet& s, const StaircaseIdeal& ideal,
                                 const std::vector<std::int64_t>& mbar, const RankPolicy& policy) {
  if (mbar.empty()) throw InputError("degeneration check needs at least one jet order");
  if (s.empty()) throw InputError("degeneration check needs a nonempty point set");
  if (s.ambient_dim() != ideal.dim()) throw InputError("point set and ideal dimensions differ");
  const Integer expected = fat_point_colength(mbar, ideal.dim());
  if (Integer(ideal.colength()) != expected) {
    throw InputError("ideal has colength " + std::to_string(ideal.colength()) +
                     " but the fat points have colength " + to_string(expected) +
                     "; it cannot be their flat limit");
  }
  return is_full_jet_rank(s.normalized(), ideal, policy);
}

StaircaseIdeal collinear_collision_ideal(const std::vector<std::int64_t>& mbar) {
  if (mbar.empty()) throw InputError("collision ideal needs at least one jet order");
  std::int64_t top = 0;
  for (auto m : mbar) {
    if (m < 0) throw InputError("jet orders must be non-negative");
    top = std::max(top, m + 1);
  }
  std::vector<Point> phi;
  for (std::int64_t j = 0; j < top; ++j) {
    std::int64_t width = 0;
    for (auto m : mbar) width += std::max<std::int64_t>(0, m + 1 - j);
    for (std::int64_t i = 0; i < width; ++i) phi.push_back({i, j});
  }
  return StaircaseIdeal::from_lower_set(LatticePointSet(std::move(phi), 2));
}

// ---------------------------------------------------------------------------
// Lattice change

LatticeChangeResult lattice_change_bound(const RationalPolytope& delta, const LatticeMap& map,
                                         const Weights& w, const EngineOptions& options) {
  if (map.dim() != delta.ambient_dim()) throw InputError("lattice map and polytope dimensions differ");
  LatticeChangeResult out;
  out.degree = map.degree();
  out.pullback = preimage_under_lattice_map(delta, map);
  out.bound = multipoint_seshadri_lower(out.pullback, w, options);
  if (out.bound.method != BoundMethod::degenerate) out.bound.method = BoundMethod::lattice_change;
  out.bound.upper = volume_upper_bound(delta, w.repeated(static_cast<std::size_t>(out.degree)));
  return out;
}

// ---------------------------------------------------------------------------
// Decompositions

Decomposition Decomposition::from_pool(const RationalPolytope& parent,
                                       const std::vector<RationalVector>& pool,
                                       const std::vector<std::vector<std::size_t>>& cells) {
  Decomposition d;
  d.parent = parent;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<RationalVector> pts;
    for (auto idx : cells[c]) {
      if (idx >= pool.size()) {
        throw InputError("cell " + std::to_string(c) + " refers to vertex " + std::to_string(idx) +
                         " but the pool has " + std::to_string(pool.size()));
      }
      pts.push_back(pool[idx]);
    }
    d.cells.push_back(RationalPolytope::from_vertices(std::move(pts)));
  }
  return d;
}

DecompositionReport validate_decomposition(const Decomposition& d) {
  DecompositionReport r;
  auto fail = [&r](std::string why) {
    r.valid = false;
    r.violation = std::move(why);
    return r;
  };
  const std::size_t n = d.parent.ambient_dim();
  if (d.cells.empty()) return fail("decomposition has no cells");
  if (!d.parent.is_full_dimensional()) return fail("parent polytope is not full-dimensional");
  for (const auto& v : d.parent.vertices()) {
    for (const auto& c : v) {
      if (denominator(c) != 1) return fail("parent polytope is not integral");
    }
  }
  Rational total = 0;
  for (std::size_t i = 0; i < d.cells.size(); ++i) {
    const auto& cell = d.cells[i];
    r.cell = i;
    if (cell.ambient_dim() != n) return fail("cell " + std::to_string(i) + " has the wrong ambient dimension");
    if (!cell.is_full_dimensional()) return fail("cell " + std::to_string(i) + " is not full-dimensional");
    for (const auto& v : cell.vertices()) {
      for (const auto& c : v) {
        if (denominator(c) != 1) return fail("cell " + std::to_string(i) + " has a non-integral vertex");
      }
      if (!d.parent.contains(v)) return fail("cell " + std::to_string(i) + " is not contained in the parent");
    }
    total += volume(cell);
  }
  r.cell.reset();
  for (std::size_t i = 0; i < d.cells.size(); ++i) {
    for (std::size_t j = i + 1; j < d.cells.size(); ++j) {
      const auto q = intersect(d.cells[i], d.cells[j]);
      if (!q) continue;
      r.pair = std::make_pair(i, j);
      if (q->dim() == n) return fail(pair_text(i, j) + " overlap in their interiors");
      for (const auto* cell : {&d.cells[i], &d.cells[j]}) {
        for (const auto& v : q->vertices()) {
          if (!is_vertex_of(*cell, v)) return fail("the intersection of " + pair_text(i, j) + " is not a common face");
        }
        if (minimal_face(*cell, q->vertices()) != q->vertices()) {
          return fail("the intersection of " + pair_text(i, j) + " is not a common face");
        }
      }
      r.pair.reset();
    }
  }
  if (total != volume(d.parent)) {
    return fail("cell volumes sum to " + to_string(total) + " but the parent has volume " +
                to_string(volume(d.parent)));
  }
  return r;
}

std::vector<CellContact> cell_contacts(const Decomposition& d) {
  std::vector<CellContact> out;
  const std::size_t n = d.parent.ambient_dim();
  for (std::size_t i = 0; i < d.cells.size(); ++i) {
    for (std::size_t j = i + 1; j < d.cells.size(); ++j) {
      const auto q = intersect(d.cells[i], d.cells[j]);
      if (!q) continue;
      out.push_back({i, j, q->vertices(), q->dim() + 1 == n});
    }
  }
  return out;
}

Rational LiftingWitness::value(std::size_t cell, const RationalVector& x) const {
  return affine_value(slopes.at(cell), offsets.at(cell), x);
}

LiftingWitness LiftingWitness::scaled(const Integer& c) const {
  if (c <= 0) throw InputError("witness scale factor must be positive");
  LiftingWitness out = *this;
  for (auto& a : out.slopes) {
    for (auto& x : a) x *= Rational(c);
  }
  for (auto& b : out.offsets) b *= Rational(c);
  out.scale *= c;
  return out;
}

LiftingOutcome lifting_function_exists(const Decomposition& d) {
  const DecompositionReport report = validate_decomposition(d);
  if (!report.valid) throw InputError("invalid decomposition: " + report.violation);
  const std::size_t n = d.parent.ambient_dim();
  const std::size_t width = n + 1;
  const std::size_t vars = width * d.cells.size();

  std::vector<lp::Constraint> cons;
  // Row for piece(i) - piece(j) evaluated at v.
  auto difference = [&](std::size_t i, std::size_t j, const RationalVector& v) {
    RationalVector row(vars, Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
      row[i * width + k] += v[k];
      row[j * width + k] -= v[k];
    }
    row[i * width + n] += 1;
    row[j * width + n] -= 1;
    return row;
  };
  for (std::size_t k = 0; k <= n; ++k) {
    RationalVector row(vars, Rational(0));
    row[k] = 1;
    cons.push_back({row, lp::Relation::eq, Rational(0), "gauge"});
  }
  for (const auto& c : cell_contacts(d)) {
    for (const auto& v : c.face) {
      cons.push_back({difference(c.i, c.j, v), lp::Relation::eq, Rational(0),
                      "agree " + pair_text(c.i, c.j)});
    }
    if (!c.facet) continue;
    for (const auto& [own, other] : {std::pair{c.i, c.j}, std::pair{c.j, c.i}}) {
      for (const auto& v : d.cells[own].vertices()) {
        if (d.cells[other].contains(v)) continue;
        cons.push_back({difference(own, other, v), lp::Relation::ge, Rational(1),
                        "convex across " + pair_text(c.i, c.j)});
      }
    }
  }

  LiftingOutcome out;
  out.unknowns = vars;
  const lp::FeasibilityResult res = lp::solve_feasibility(cons, vars);
  if (!res.feasible) {
    out.constraints = std::move(cons);
    out.farkas = res.farkas;
    return out;
  }
  LiftingWitness w;
  for (std::size_t c = 0; c < d.cells.size(); ++c) {
    w.slopes.emplace_back(res.solution.begin() + static_cast<std::ptrdiff_t>(c * width),
                          res.solution.begin() + static_cast<std::ptrdiff_t>(c * width + n));
    w.offsets.push_back(res.solution[c * width + n]);
  }
  Integer scale = 1;
  for (const auto& u : lattice_points(d.parent).points()) {
    const RationalVector x = to_rational(u);
    for (std::size_t c = 0; c < d.cells.size(); ++c) {
      if (!d.cells[c].contains(x)) continue;
      scale = lcm(scale, denominator(w.value(c, x)));
      break;
    }
  }
  out.witness = w.scaled(scale);
  return out;
}

WitnessCheck verify_lifting_witness(const Decomposition& d, const LiftingWitness& w) {
  WitnessCheck r;
  auto fail = [&r](std::string why) {
    r.ok = false;
    r.violation = std::move(why);
    return r;
  };
  const std::size_t n = d.parent.ambient_dim();
  if (w.slopes.size() != d.cells.size() || w.offsets.size() != d.cells.size()) {
    return fail("witness has " + std::to_string(w.slopes.size()) + " pieces for " +
                std::to_string(d.cells.size()) + " cells");
  }
  for (const auto& a : w.slopes) {
    if (a.size() != n) return fail("witness slope has the wrong dimension");
  }
  if (w.scale <= 0) return fail("witness scale must be positive");

  for (std::size_t i = 0; i < d.cells.size(); ++i) {
    for (std::size_t j = i + 1; j < d.cells.size(); ++j) {
      const auto q = intersect(d.cells[i], d.cells[j]);
      if (!q) continue;
      for (const auto& u : lattice_points(*q).points()) {
        const RationalVector x = to_rational(u);
        if (w.value(i, x) != w.value(j, x)) return fail("pieces disagree on the common face of " + pair_text(i, j));
      }
      if (q->dim() + 1 != n) continue;
      for (const auto& [own, other] : {std::pair{i, j}, std::pair{j, i}}) {
        for (const auto& v : d.cells[own].vertices()) {
          if (d.cells[other].contains(v)) continue;
          if (!(w.value(own, v) > w.value(other, v))) {
            return fail("not strictly convex across the shared facet of " + pair_text(i, j));
          }
        }
      }
    }
  }
  for (const auto& u : lattice_points(d.parent).points()) {
    const RationalVector x = to_rational(u);
    for (std::size_t c = 0; c < d.cells.size(); ++c) {
      if (!d.cells[c].contains(x)) continue;
      if (denominator(w.value(c, x)) != 1) return fail("value at a lattice point is not an integer");
      break;
    }
  }
  return r;
}

DecompositionBound decomposition_bound(const RationalPolytope& delta, const Decomposition& d,
                                       const LiftingWitness& witness,
                                       const std::vector<std::pair<std::size_t, Weights>>& selected,
                                       const EngineOptions& options) {
  const DecompositionReport report = validate_decomposition(d);
  if (!report.valid) throw InputError("invalid decomposition: " + report.violation);
  const WitnessCheck check = verify_lifting_witness(d, witness);
  if (!check.ok) throw InputError("lifting witness rejected: " + check.violation);
  if (delta.ambient_dim() != d.parent.ambient_dim()) {
    throw InputError("polytope and decomposition dimensions differ");
  }
  if (selected.empty()) throw InputError("select at least one cell");

  DecompositionBound out;
  std::set<std::size_t> seen;
  std::optional<Weights> all;
  bool first = true;
  for (const auto& [cell, w] : selected) {
    if (cell >= d.cells.size()) throw InputError("selected cell " + std::to_string(cell) + " does not exist");
    if (!seen.insert(cell).second) throw InputError("cell " + std::to_string(cell) + " selected twice");
    const auto piece = intersect(d.cells[cell], delta);
    if (!piece || volume(*piece) == 0) {
      throw InputError("cell " + std::to_string(cell) + " meets the polytope without interior");
    }
    BoundResult b = multipoint_seshadri_lower(*piece, w, options);
    all = all ? all->concat(w) : w;
    if (first || b.lower < out.bound.lower) {
      out.bound.lower = b.lower;
      out.bound.k_used = b.k_used;
      out.bound.m_achieved = b.m_achieved;
      out.bound.jets = b.jets;
    }
    out.bound.certified = first ? b.certified : out.bound.certified && b.certified;
    out.bound.one_sided = out.bound.one_sided || b.one_sided;
    first = false;
    out.pieces.push_back(*piece);
    out.cell_bounds.push_back(std::move(b));
  }
  out.bound.method = BoundMethod::decomposition;
  out.bound.upper = volume_upper_bound(delta, *all);
  return out;
}

}  // namespace jetbound
