#pragma once

// Exact rational convex geometry: polytopes in V- and H-representation,
// dilations, translations, Minkowski sums, volumes, lattice-point
// enumeration, and preimages under lattice maps.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetbound/rational.hpp"

namespace jetbound {

/// Largest ambient dimension accepted by the hull routines.
inline constexpr std::size_t kMaxDimension = 6;

/// normal . x <= offset, with normal and offset coprime integers.
struct Halfspace {
  IntegerVector normal;
  Integer offset;

  bool operator==(const Halfspace&) const = default;
  bool operator<(const Halfspace& other) const {
    if (normal != other.normal) return normal < other.normal;
    return offset < other.offset;
  }
};

/// A bounded rational polytope carrying both representations.
///
/// The vertex list is irredundant and sorted. The halfspace list holds the
/// facet inequalities followed, for lower-dimensional polytopes, by pairs of
/// opposite inequalities cutting out the affine span.
class RationalPolytope {
 public:
  RationalPolytope() = default;

  /// Convex hull of `points`. Throws InputError on an empty list, mixed
  /// dimensions, or an ambient dimension above kMaxDimension.
  static RationalPolytope from_vertices(std::vector<RationalVector> points);
  static RationalPolytope from_points(const std::vector<Point>& points);

  const std::vector<RationalVector>& vertices() const& { return vertices_; }
  std::vector<RationalVector> vertices() && { return std::move(vertices_); }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  /// Dimension of the affine span.
  std::size_t dim() const { return affine_dim_; }
  bool is_full_dimensional() const { return affine_dim_ == ambient_dim_; }
  /// Number of leading entries of halfspaces() that are facets.
  std::size_t facet_count() const { return facet_count_; }

  bool contains(const RationalVector& x) const;
  bool contains(const Point& x) const;

  /// Indices of the vertices on facet `facet` (facet < facet_count()).
  std::vector<std::size_t> facet_vertices(std::size_t facet) const;

  /// Canonical text form used for hashing and caching.
  std::string canonical() const;

  bool operator==(const RationalPolytope& other) const {
    return ambient_dim_ == other.ambient_dim_ && vertices_ == other.vertices_;
  }

 private:
  friend RationalPolytope dilate(const RationalPolytope&, const Rational&);
  friend RationalPolytope translate(const RationalPolytope&, const RationalVector&);

  std::vector<RationalVector> vertices_;
  std::vector<Halfspace> halfspaces_;
  std::size_t ambient_dim_ = 0;
  std::size_t affine_dim_ = 0;
  std::size_t facet_count_ = 0;
};

/// A finite set of lattice points, sorted lexicographically and free of
/// duplicates.
class LatticePointSet {
 public:
  LatticePointSet() = default;
  LatticePointSet(std::vector<Point> points, std::size_t ambient_dim);

  const std::vector<Point>& points() const& { return points_; }
  std::vector<Point> points() && { return std::move(points_); }
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool contains(const Point& p) const;
  bool all_nonnegative() const;

  /// Componentwise minimum over all points (empty set: zeros).
  Point min_corner() const;

  LatticePointSet translated(const Point& shift) const;
  /// Shift so every coordinate is >= 0 with some point on each coordinate
  /// hyperplane.
  LatticePointSet normalized() const;

  std::string canonical() const;

  bool operator==(const LatticePointSet&) const = default;

 private:
  std::vector<Point> points_;
  std::size_t ambient_dim_ = 0;
};

/// An injective endomorphism of Z^n given by an integer matrix acting on
/// column vectors. degree() = |det|.
class LatticeMap {
 public:
  LatticeMap() = default;
  /// Throws InputError if the matrix is not square or is singular.
  explicit LatticeMap(Matrix<std::int64_t> matrix);

  static LatticeMap identity(std::size_t n);

  const Matrix<std::int64_t>& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.size(); }
  const Integer& degree() const { return degree_; }

  RationalVector apply(const RationalVector& x) const;

  bool operator==(const LatticeMap& other) const { return matrix_ == other.matrix_; }

 private:
  Matrix<std::int64_t> matrix_;
  Integer degree_ = 1;
};

RationalPolytope hull_to_halfspaces(const std::vector<RationalVector>& vertices);

/// Vertices of the bounded polyhedron {x : h.normal . x <= h.offset}.
/// Returns an empty list when the polyhedron is empty.
std::vector<RationalVector> vertices_of_halfspaces(const std::vector<Halfspace>& halfspaces,
                                                   std::size_t ambient_dim);

LatticePointSet lattice_points(const RationalPolytope& p);

/// t * p. Throws InputError unless t > 0.
RationalPolytope dilate(const RationalPolytope& p, const Rational& t);

RationalPolytope translate(const RationalPolytope& p, const RationalVector& u);

struct NormalizedPolytope {
  RationalPolytope polytope;
  Point shift;
};

/// Translates by the smallest non-negative integer vector that moves `p`
/// into the non-negative orthant.
NormalizedPolytope normalize_to_nonneg(const RationalPolytope& p);

RationalPolytope minkowski_sum(const RationalPolytope& p, const RationalPolytope& q);

/// Euclidean volume in the ambient space; zero for lower-dimensional input.
Rational volume(const RationalPolytope& p);

/// Splits a full-dimensional polytope into simplices (each a list of n+1
/// vertices) by recursively coning from the first vertex.
std::vector<std::vector<RationalVector>> triangulate(const RationalPolytope& p);

RationalPolytope preimage_under_lattice_map(const RationalPolytope& p, const LatticeMap& m);

/// p intersected with q (same ambient space); nullopt when they are disjoint.
std::optional<RationalPolytope> intersect(const RationalPolytope& p, const RationalPolytope& q);

/// Standard n-simplex conv{0, e_1, ..., e_n}.
RationalPolytope standard_simplex(std::size_t n);
/// [0,1]^n.
RationalPolytope unit_cube(std::size_t n);

}  // namespace jetbound
