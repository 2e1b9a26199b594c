#pragma once

// Lower bounds for several weighted points:
//
//  * degeneration: a flat limit of the fat-point scheme whose staircase
//    ideal is still separated by S;
//  * lattice change: pull Delta back along an index-d sublattice and bound
//    d copies of each weight by the pullback;
//  * decomposition: a regular integral subdivision of P, certified by a
//    strictly convex lifting function, with one bound per selected cell.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetbound/bound_engine.hpp"
#include "jetbound/jet_matrix.hpp"
#include "jetbound/lattice_geometry.hpp"
#include "jetbound/lp.hpp"

namespace jetbound {

// ---------------------------------------------------------------------------
// Degeneration

/// Sum over i of C(m_i + n, n): the colength of prod m_{p_i}^(m_i + 1).
Integer fat_point_colength(const std::vector<std::int64_t>& mbar, std::size_t n);

/// Rank test of S against the special fibre `ideal`. Throws InputError when
/// #Phi differs from the fat-point colength, since then `ideal` cannot be a
/// flat limit of the fat points. Flatness itself is not checked: a positive
/// answer holds conditionally on the caller's family being flat.
JetRankReport degeneration_check(const LatticePointSet& s, const StaircaseIdeal& ideal,
                                 const std::vector<std::int64_t>& mbar,
                                 const RankPolicy& policy = {});

/// Flat limit in the plane of fat points m^(m_i + 1) colliding along the
/// first axis: row j of the staircase has sum_i (m_i + 1 - j)_+ monomials.
StaircaseIdeal collinear_collision_ideal(const std::vector<std::int64_t>& mbar);

// ---------------------------------------------------------------------------
// Lattice change

struct LatticeChangeResult {
  BoundResult bound;  // for s(Delta; w repeated degree times)
  RationalPolytope pullback;
  Integer degree;
};

LatticeChangeResult lattice_change_bound(const RationalPolytope& delta, const LatticeMap& map,
                                         const Weights& w, const EngineOptions& options = {});

// ---------------------------------------------------------------------------
// Decompositions

struct Decomposition {
  RationalPolytope parent;
  std::vector<RationalPolytope> cells;

  /// Cells given as index lists into a shared vertex pool.
  static Decomposition from_pool(const RationalPolytope& parent,
                                 const std::vector<RationalVector>& pool,
                                 const std::vector<std::vector<std::size_t>>& cells);
};

struct DecompositionReport {
  bool valid = true;
  std::string violation;
  std::optional<std::size_t> cell;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
};

/// Checks integrality, full dimension, containment, the volume sum, and
/// that every pairwise intersection is empty or a common face. Reports the
/// first violation found.
DecompositionReport validate_decomposition(const Decomposition& d);

/// Pairs of cells with a nonempty intersection and the vertices of that
/// common face.
struct CellContact {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<RationalVector> face;
  bool facet = false;  // the common face has dimension n - 1
};

std::vector<CellContact> cell_contacts(const Decomposition& d);

/// A piecewise-affine function given by one affine piece a . x + b per cell.
/// The pieces already carry the integrality multiplier `scale`.
struct LiftingWitness {
  std::vector<RationalVector> slopes;
  std::vector<Rational> offsets;
  Integer scale = 1;

  Rational value(std::size_t cell, const RationalVector& x) const;
  LiftingWitness scaled(const Integer& c) const;
};

struct LiftingOutcome {
  std::optional<LiftingWitness> witness;
  /// When infeasible: the constraint system and its Farkas certificate.
  std::vector<lp::Constraint> constraints;
  RationalVector farkas;
  std::size_t unknowns = 0;

  bool regular() const { return witness.has_value(); }
};

/// Exact LP for a convex lifting: pieces agree on common faces and, across
/// every shared facet, the piece of cell j exceeds the piece of cell i by at
/// least 1 at each vertex of j outside i. Throws InputError on an invalid
/// decomposition.
LiftingOutcome lifting_function_exists(const Decomposition& d);

struct WitnessCheck {
  bool ok = true;
  std::string violation;
};

/// Independent re-check of a witness: agreement at every lattice point of
/// every common face, strict convexity across every shared facet, and
/// integral values at every lattice point of the parent.
WitnessCheck verify_lifting_witness(const Decomposition& d, const LiftingWitness& w);

struct DecompositionBound {
  BoundResult bound;
  std::vector<BoundResult> cell_bounds;
  std::vector<RationalPolytope> pieces;  // selected cell intersected with delta
};

/// min over selected cells of the multipoint bound for (cell ∩ delta, w_i),
/// bounding s(delta; w_1, ..., w_r concatenated). The witness is re-verified.
/// Throws InputError on an invalid decomposition, a bad witness, a repeated
/// or out-of-range cell, or a piece without interior.
DecompositionBound decomposition_bound(const RationalPolytope& delta, const Decomposition& d,
                                       const LiftingWitness& witness,
                                       const std::vector<std::pair<std::size_t, Weights>>& selected,
                                       const EngineOptions& options = {});

}  // namespace jetbound
