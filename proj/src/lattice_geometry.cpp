#include "jetbound/lattice_geometry.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "jetbound/error.hpp"
#include "jetbound/linear_algebra.hpp"

namespace jetbound {

namespace {

// Calls fn(indices) for every k-subset of {0, ..., n-1} in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

RationalVector sub(const RationalVector& a, const RationalVector& b) {
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Rational eval(const IntegerVector& normal, const RationalVector& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < normal.size(); ++i) s += Rational(normal[i]) * x[i];
  return s;
}

// Integer-normalized halfspace normal . x <= offset from rational data.
Halfspace make_halfspace(const RationalVector& normal, const Rational& offset) {
  RationalVector joint = normal;
  joint.push_back(offset);
  IntegerVector ints = primitive_integer_vector(joint);
  Halfspace h;
  h.offset = ints.back();
  ints.pop_back();
  h.normal = std::move(ints);
  return h;
}

RationalVector to_rational(const IntegerVector& v) {
  RationalVector out;
  out.reserve(v.size());
  for (const auto& c : v) out.emplace_back(c);
  return out;
}

void check_dimension(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw InputError(std::string(what) + ": dimension mismatch (" + std::to_string(expected) +
                     " vs " + std::to_string(got) + ")");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// RationalPolytope

RationalPolytope RationalPolytope::from_vertices(std::vector<RationalVector> points) {
  if (points.empty()) throw InputError("polytope needs at least one vertex");
  const std::size_t n = points.front().size();
  if (n == 0) throw InputError("polytope vertices must have dimension >= 1");
  if (n > kMaxDimension) {
    throw InputError("ambient dimension " + std::to_string(n) + " exceeds the supported maximum " +
                     std::to_string(kMaxDimension));
  }
  for (const auto& p : points) check_dimension(n, p.size(), "polytope vertices");

  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  RationalPolytope poly;
  poly.ambient_dim_ = n;

  // Affine span: directions from the first point, equalities from their
  // orthogonal complement.
  Matrix<Rational> directions;
  for (std::size_t i = 1; i < points.size(); ++i) directions.push_back(sub(points[i], points[0]));
  const std::size_t d = directions.empty() ? 0 : linalg::rank(directions);
  poly.affine_dim_ = d;
  std::vector<Halfspace> equalities;
  Matrix<Rational> equality_normals;
  for (const auto& a : linalg::nullspace(directions, n)) {
    const Rational b = linalg::dot(a, points[0]);
    Halfspace h = make_halfspace(a, b);
    equality_normals.push_back(to_rational(h.normal));
    Halfspace opposite{h.normal, -h.offset};
    for (auto& c : opposite.normal) c = -c;
    equalities.push_back(std::move(h));
    equalities.push_back(std::move(opposite));
  }

  // Facets: hyperplanes (inside the affine span) through d affinely
  // independent points that leave every point on one side.
  std::set<Halfspace> facets;
  if (d >= 1) {
    for_each_subset(points.size(), d, [&](const std::vector<std::size_t>& subset) {
      Matrix<Rational> system = equality_normals;
      for (std::size_t j = 1; j < subset.size(); ++j) {
        system.push_back(sub(points[subset[j]], points[subset[0]]));
      }
      const auto null = linalg::nullspace(system, n);
      if (null.size() != 1) return;
      const RationalVector& a = null.front();
      const Rational b = linalg::dot(a, points[subset[0]]);
      bool below = false, above = false;
      for (const auto& p : points) {
        const Rational s = linalg::dot(a, p) - b;
        if (s < 0) below = true;
        if (s > 0) above = true;
        if (below && above) return;
      }
      if (above) {
        RationalVector neg = a;
        for (auto& c : neg) c = -c;
        facets.insert(make_halfspace(neg, -b));
      } else {
        facets.insert(make_halfspace(a, b));
      }
    });
  }
  poly.halfspaces_.assign(facets.begin(), facets.end());
  poly.facet_count_ = poly.halfspaces_.size();
  for (auto& e : equalities) poly.halfspaces_.push_back(std::move(e));

  // A point is a vertex iff the constraints tight at it have rank n.
  for (const auto& p : points) {
    Matrix<Rational> tight = equality_normals;
    for (std::size_t f = 0; f < poly.facet_count_; ++f) {
      const auto& h = poly.halfspaces_[f];
      if (eval(h.normal, p) == Rational(h.offset)) tight.push_back(to_rational(h.normal));
    }
    if (d == 0 || linalg::rank(tight) == n) poly.vertices_.push_back(p);
  }
  return poly;
}

RationalPolytope RationalPolytope::from_points(const std::vector<Point>& points) {
  std::vector<RationalVector> rv;
  rv.reserve(points.size());
  for (const auto& p : points) rv.push_back(jetbound::to_rational(p));
  return from_vertices(std::move(rv));
}

bool RationalPolytope::contains(const RationalVector& x) const {
  check_dimension(ambient_dim_, x.size(), "contains");
  for (const auto& h : halfspaces_) {
    if (eval(h.normal, x) > Rational(h.offset)) return false;
  }
  return true;
}

bool RationalPolytope::contains(const Point& x) const { return contains(jetbound::to_rational(x)); }

std::vector<std::size_t> RationalPolytope::facet_vertices(std::size_t facet) const {
  std::vector<std::size_t> out;
  const auto& h = halfspaces_.at(facet);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (eval(h.normal, vertices_[i]) == Rational(h.offset)) out.push_back(i);
  }
  return out;
}

std::string RationalPolytope::canonical() const {
  std::ostringstream os;
  os << "polytope n=" << ambient_dim_ << ";";
  for (const auto& v : vertices_) {
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
    os << "]";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// LatticePointSet

LatticePointSet::LatticePointSet(std::vector<Point> points, std::size_t ambient_dim)
    : points_(std::move(points)), ambient_dim_(ambient_dim) {
  for (const auto& p : points_) check_dimension(ambient_dim_, p.size(), "lattice point set");
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool LatticePointSet::contains(const Point& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

bool LatticePointSet::all_nonnegative() const {
  for (const auto& p : points_) {
    for (auto c : p) {
      if (c < 0) return false;
    }
  }
  return true;
}

Point LatticePointSet::min_corner() const {
  Point lo(ambient_dim_, 0);
  if (points_.empty()) return lo;
  lo = points_.front();
  for (const auto& p : points_) {
    for (std::size_t i = 0; i < ambient_dim_; ++i) lo[i] = std::min(lo[i], p[i]);
  }
  return lo;
}

LatticePointSet LatticePointSet::translated(const Point& shift) const {
  check_dimension(ambient_dim_, shift.size(), "translate lattice set");
  std::vector<Point> out = points_;
  for (auto& p : out) {
    for (std::size_t i = 0; i < ambient_dim_; ++i) p[i] += shift[i];
  }
  return LatticePointSet(std::move(out), ambient_dim_);
}

LatticePointSet LatticePointSet::normalized() const {
  Point shift = min_corner();
  for (auto& c : shift) c = -c;
  return translated(shift);
}

std::string LatticePointSet::canonical() const {
  std::ostringstream os;
  os << "points n=" << ambient_dim_ << ";";
  for (const auto& p : points_) {
    os << "[";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << "]";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// LatticeMap

LatticeMap::LatticeMap(Matrix<std::int64_t> matrix) : matrix_(std::move(matrix)) {
  const std::size_t n = matrix_.size();
  if (n == 0) throw InputError("lattice map matrix is empty");
  Matrix<Rational> q(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix_[i].size() != n) throw InputError("lattice map matrix must be square");
    for (std::size_t j = 0; j < n; ++j) q[i][j] = matrix_[i][j];
  }
  const Rational det = linalg::determinant(q);
  if (det == 0) throw InputError("lattice map matrix is singular");
  degree_ = numerator(abs(det));
}

LatticeMap LatticeMap::identity(std::size_t n) {
  Matrix<std::int64_t> m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return LatticeMap(std::move(m));
}

RationalVector LatticeMap::apply(const RationalVector& x) const {
  check_dimension(dim(), x.size(), "lattice map");
  RationalVector out(dim(), Rational(0));
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) out[i] += Rational(matrix_[i][j]) * x[j];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operations

RationalPolytope hull_to_halfspaces(const std::vector<RationalVector>& vertices) {
  return RationalPolytope::from_vertices(vertices);
}

std::vector<RationalVector> vertices_of_halfspaces(const std::vector<Halfspace>& halfspaces,
                                                   std::size_t ambient_dim) {
  std::set<RationalVector> found;
  for_each_subset(halfspaces.size(), ambient_dim, [&](const std::vector<std::size_t>& subset) {
    Matrix<Rational> a;
    RationalVector b;
    for (auto i : subset) {
      a.push_back(to_rational(halfspaces[i].normal));
      b.emplace_back(halfspaces[i].offset);
    }
    auto x = linalg::solve(a, b);
    if (!x) return;
    for (const auto& h : halfspaces) {
      if (eval(h.normal, *x) > Rational(h.offset)) return;
    }
    found.insert(std::move(*x));
  });
  return {found.begin(), found.end()};
}

LatticePointSet lattice_points(const RationalPolytope& p) {
  const std::size_t n = p.ambient_dim();
  if (p.vertices().empty()) return LatticePointSet({}, n);
  Point lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational mn = p.vertices().front()[i], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = ceil(mn).convert_to<std::int64_t>();
    hi[i] = floor(mx).convert_to<std::int64_t>();
    if (lo[i] > hi[i]) return LatticePointSet({}, n);
  }

  // Machine-integer fast path when every halfspace fits comfortably.
  bool small = true;
  const Integer limit = Integer(1) << 40;
  for (const auto& h : p.halfspaces()) {
    if (abs(h.offset) > limit) small = false;
    for (const auto& c : h.normal) {
      if (abs(c) > limit) small = false;
    }
  }
  std::vector<std::vector<std::int64_t>> normals;
  std::vector<std::int64_t> offsets;
  if (small) {
    for (const auto& h : p.halfspaces()) {
      std::vector<std::int64_t> row;
      for (const auto& c : h.normal) row.push_back(c.convert_to<std::int64_t>());
      normals.push_back(std::move(row));
      offsets.push_back(h.offset.convert_to<std::int64_t>());
    }
  }

  std::vector<Point> out;
  Point x = lo;
  while (true) {
    bool inside = true;
    if (small) {
      for (std::size_t k = 0; k < normals.size() && inside; ++k) {
        __int128 s = 0;
        for (std::size_t i = 0; i < n; ++i) s += static_cast<__int128>(normals[k][i]) * x[i];
        if (s > offsets[k]) inside = false;
      }
    } else {
      inside = p.contains(x);
    }
    if (inside) out.push_back(x);
    std::size_t i = 0;
    while (i < n && x[i] == hi[i]) {
      x[i] = lo[i];
      ++i;
    }
    if (i == n) break;
    ++x[i];
  }
  return LatticePointSet(std::move(out), n);
}

RationalPolytope dilate(const RationalPolytope& p, const Rational& t) {
  if (t <= 0) throw InputError("dilation factor must be positive, got " + to_string(t));
  RationalPolytope out = p;
  for (auto& v : out.vertices_) {
    for (auto& c : v) c *= t;
  }
  for (auto& h : out.halfspaces_) {
    h = make_halfspace(to_rational(h.normal), Rational(h.offset) * t);
  }
  return out;
}

RationalPolytope translate(const RationalPolytope& p, const RationalVector& u) {
  check_dimension(p.ambient_dim(), u.size(), "translate");
  RationalPolytope out = p;
  for (auto& v : out.vertices_) {
    for (std::size_t i = 0; i < u.size(); ++i) v[i] += u[i];
  }
  for (auto& h : out.halfspaces_) {
    h = make_halfspace(to_rational(h.normal), Rational(h.offset) + eval(h.normal, u));
  }
  return out;
}

NormalizedPolytope normalize_to_nonneg(const RationalPolytope& p) {
  const std::size_t n = p.ambient_dim();
  Point shift(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Rational mn = p.vertices().front()[i];
    for (const auto& v : p.vertices()) mn = std::min(mn, v[i]);
    const Integer s = ceil(-mn);
    shift[i] = s > 0 ? s.convert_to<std::int64_t>() : 0;
  }
  return {translate(p, jetbound::to_rational(shift)), shift};
}

RationalPolytope minkowski_sum(const RationalPolytope& p, const RationalPolytope& q) {
  check_dimension(p.ambient_dim(), q.ambient_dim(), "minkowski_sum");
  std::vector<RationalVector> sums;
  for (const auto& a : p.vertices()) {
    for (const auto& b : q.vertices()) {
      RationalVector s(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      sums.push_back(std::move(s));
    }
  }
  return RationalPolytope::from_vertices(std::move(sums));
}

namespace {

void cone_triangulation(const std::vector<RationalVector>& points,
                        std::vector<std::vector<RationalVector>>& out) {
  const RationalPolytope hull = RationalPolytope::from_vertices(points);
  if (hull.dim() == 0) {
    out.push_back({hull.vertices().front()});
    return;
  }
  const RationalVector& apex = hull.vertices().front();
  for (std::size_t f = 0; f < hull.facet_count(); ++f) {
    const auto idx = hull.facet_vertices(f);
    if (std::find(idx.begin(), idx.end(), 0) != idx.end()) continue;
    std::vector<RationalVector> facet;
    for (auto i : idx) facet.push_back(hull.vertices()[i]);
    std::vector<std::vector<RationalVector>> sub_simplices;
    cone_triangulation(facet, sub_simplices);
    for (auto& s : sub_simplices) {
      s.push_back(apex);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

std::vector<std::vector<RationalVector>> triangulate(const RationalPolytope& p) {
  std::vector<std::vector<RationalVector>> out;
  if (!p.is_full_dimensional()) return out;
  cone_triangulation(p.vertices(), out);
  return out;
}

Rational volume(const RationalPolytope& p) {
  if (!p.is_full_dimensional()) return 0;
  const std::size_t n = p.ambient_dim();
  Integer factorial = 1;
  for (std::size_t i = 2; i <= n; ++i) factorial *= i;
  Rational total = 0;
  for (const auto& simplex : triangulate(p)) {
    Matrix<Rational> edges;
    for (std::size_t i = 1; i < simplex.size(); ++i) edges.push_back(sub(simplex[i], simplex[0]));
    total += abs(linalg::determinant(std::move(edges)));
  }
  return total / Rational(factorial);
}

RationalPolytope preimage_under_lattice_map(const RationalPolytope& p, const LatticeMap& m) {
  check_dimension(p.ambient_dim(), m.dim(), "preimage_under_lattice_map");
  const std::size_t n = m.dim();
  Matrix<Rational> q(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q[i][j] = m.matrix()[i][j];
  }
  const auto inv = linalg::inverse(q);
  if (!inv) throw InputError("lattice map is singular");
  std::vector<RationalVector> pulled;
  for (const auto& v : p.vertices()) {
    RationalVector w(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) w[i] += (*inv)[i][j] * v[j];
    }
    pulled.push_back(std::move(w));
  }
  return RationalPolytope::from_vertices(std::move(pulled));
}

std::optional<RationalPolytope> intersect(const RationalPolytope& p, const RationalPolytope& q) {
  check_dimension(p.ambient_dim(), q.ambient_dim(), "intersect");
  std::vector<Halfspace> all = p.halfspaces();
  all.insert(all.end(), q.halfspaces().begin(), q.halfspaces().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  auto verts = vertices_of_halfspaces(all, p.ambient_dim());
  if (verts.empty()) return std::nullopt;
  return RationalPolytope::from_vertices(std::move(verts));
}

RationalPolytope standard_simplex(std::size_t n) {
  std::vector<RationalVector> v(1, RationalVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector e(n, Rational(0));
    e[i] = 1;
    v.push_back(std::move(e));
  }
  return RationalPolytope::from_vertices(std::move(v));
}

RationalPolytope unit_cube(std::size_t n) {
  std::vector<RationalVector> v;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1u;
    v.push_back(std::move(x));
  }
  return RationalPolytope::from_vertices(std::move(v));
}

}  // namespace jetbound
