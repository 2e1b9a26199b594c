#pragma once

// Jet matrices and their ranks.
//
// For a finite S in N^n and a monomial ideal n in the variables x - 1_n with
// standard-monomial set Phi (a finite lower set), the jet matrix has rows
// indexed by lambda in Phi, columns by u in S, and entries
//
//   binomial form:  prod_k C(u_k, lambda_k)
//   power form:     prod_k u_k^lambda_k
//
// Both forms are row-equivalent when Phi is a lower set, and the matrix has
// full row rank exactly when the monomials {x^u : u in S} surject onto
// O / n. Full row rank against Phi = {|lambda| <= m} is separation of
// m-jets at a very general point of the torus.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "jetbound/cache.hpp"
#include "jetbound/lattice_geometry.hpp"
#include "jetbound/rational.hpp"

namespace jetbound {

/// An m-primary monomial ideal in x - 1_n, stored through its finite set of
/// standard monomials `phi` (a lower set containing 0) and its minimal
/// generators.
class StaircaseIdeal {
 public:
  StaircaseIdeal() = default;

  /// Builds the ideal from an arbitrary (finite) lower set. Throws
  /// InputError if `phi` is empty or not closed under going down.
  static StaircaseIdeal from_lower_set(LatticePointSet phi);

  const LatticePointSet& phi() const& { return phi_; }
  LatticePointSet phi() && { return std::move(phi_); }
  const std::vector<Point>& generators() const { return generators_; }
  std::size_t dim() const { return phi_.ambient_dim(); }
  /// dim O / n = #Phi.
  std::size_t colength() const { return phi_.size(); }

  std::string canonical() const;

  bool operator==(const StaircaseIdeal&) const = default;

 private:
  LatticePointSet phi_;
  std::vector<Point> generators_;
};

/// Phi = {lambda : |lambda| <= m}, the ideal m_{1_n}^{m+1}.
StaircaseIdeal phi_of_power(std::int64_t m, std::size_t n);

/// The ideal generated by (x - 1)^g for g in `generators`. Throws InputError
/// when the ideal is not m-primary (some axis lacks a pure power).
StaircaseIdeal staircase_from_generators(const std::vector<Point>& generators);

enum class JetForm { binomial, power };

const char* to_string(JetForm form);

struct JetMatrix {
  std::vector<Point> rows;  // lambda in Phi
  std::vector<Point> cols;  // u in S
  Matrix<Integer> entries;
  JetForm form = JetForm::power;
};

/// Throws InputError if S has negative coordinates or dimensions disagree.
JetMatrix build_jet_matrix(const LatticePointSet& s, const StaircaseIdeal& ideal, JetForm form);

/// Rows indexed by (point index i, lambda with |lambda| <= m_i); entry at
/// column u is C(u, lambda) p_i^(u - lambda), the coefficient of
/// (x - p_i)^lambda in the Taylor expansion of x^u at p_i.
struct MultiPointJetMatrix {
  std::vector<std::pair<std::size_t, Point>> rows;
  std::vector<Point> cols;
  std::vector<RationalVector> points;
  std::vector<std::int64_t> jet_orders;
  Matrix<Rational> entries;
};

/// Throws InputError on coincident points, a zero coordinate, negative
/// exponents in S, or mismatched dimensions. Negative jet orders contribute
/// no rows.
MultiPointJetMatrix build_multipoint_matrix(const LatticePointSet& s,
                                            const std::vector<RationalVector>& points,
                                            const std::vector<std::int64_t>& jet_orders);

/// A uniformly random prime in [2^61, 2^62).
std::uint64_t random_prime(std::mt19937_64& rng);

/// Rank of the matrix reduced modulo `prime` (a prime above 2^30). This
/// never exceeds the rank over Q. Throws InputError for a bad modulus.
std::size_t rank_modular(const JetMatrix& m, std::uint64_t prime);
std::size_t rank_modular(const MultiPointJetMatrix& m, std::uint64_t prime);

/// Exact rank over Q (fraction-free Bareiss elimination).
std::size_t rank_exact(const JetMatrix& m);
std::size_t rank_exact(const MultiPointJetMatrix& m);

/// How rank questions are answered.
///
/// Default: rank modulo two random primes derived from `seed`. Agreement is
/// reported as probabilistic; disagreement falls back to exact elimination.
/// A modular rank equal to min(rows, cols) is exact and reported certified.
/// With `certify` every rank is computed exactly.
struct RankPolicy {
  bool certify = false;
  std::uint64_t seed = 0;
  RankCache* cache = nullptr;
};

struct RankVerdict {
  std::size_t rank = 0;
  bool certified = false;
};

/// `cache_material` names the query for the cache; leave empty to bypass it.
RankVerdict compute_rank(const JetMatrix& m, const RankPolicy& policy,
                         const std::string& cache_material = {});
RankVerdict compute_rank(const MultiPointJetMatrix& m, const RankPolicy& policy,
                         const std::string& cache_material = {});

/// A polynomial f = sum c_lambda u^lambda over lambda in Phi that vanishes on
/// every point of S: the row dependency of the power-form jet matrix.
struct HypersurfaceCertificate {
  std::vector<std::pair<Point, Integer>> terms;

  Integer evaluate(const Point& u) const;
  /// Highest term first, e.g. "u1 - u2".
  std::string to_string() const;
};

struct JetRankReport {
  bool full = false;
  std::size_t rank = 0;
  std::size_t rows = 0;  // #Phi
  bool certified = false;
  std::optional<HypersurfaceCertificate> certificate;
};

/// Decides rank A_{S,n} == #Phi. When the rank is deficient and
/// `with_certificate` is set, the deficiency is confirmed exactly and a
/// vanishing polynomial is returned.
JetRankReport is_full_jet_rank(const LatticePointSet& s, const StaircaseIdeal& ideal,
                               const RankPolicy& policy = {}, bool with_certificate = true);

}  // namespace jetbound
