#pragma once

// Lower and upper bounds on s(Delta; m) for a rational polytope Delta and
// positive weights m = (m_1, ..., m_r).
//
// Lower bounds come from jet separation by the monomials of the lattice
// points of k * Delta, swept over k = 1..budget. The only upper bound is the
// volume bound (n! vol(Delta) / |m|_n)^(1/n), kept as an exact radical.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jetbound/cache.hpp"
#include "jetbound/jet_matrix.hpp"
#include "jetbound/lattice_geometry.hpp"
#include "jetbound/rational.hpp"

namespace jetbound {

class Weights {
 public:
  Weights() = default;
  /// Throws InputError on an empty list or a non-positive entry.
  explicit Weights(std::vector<Rational> values);

  /// Parses "1,1" or "3/2,1".
  static Weights parse(const std::string& text);

  const std::vector<Rational>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  /// |m|_n = sum m_i^n.
  Rational norm(std::size_t n) const;
  /// Every weight repeated d times.
  Weights repeated(std::size_t d) const;
  Weights scaled(const Rational& t) const;
  Weights concat(const Weights& other) const;
  std::string to_string() const;

  bool operator==(const Weights&) const = default;

 private:
  std::vector<Rational> values_;
};

/// The real number radicand^(1/root), radicand >= 0.
struct UpperBound {
  Rational radicand;
  unsigned root = 1;

  /// The value when it is rational.
  std::optional<Rational> exact_value() const;
  /// x <= value, decided exactly.
  bool bounds(const Rational& x) const;
  /// x == value, decided exactly.
  bool equals(const Rational& x) const;
  double approx() const;
  std::string to_string() const;

  bool operator==(const UpperBound&) const = default;
};

enum class BoundMethod { jet_sweep, multipoint, lattice_change, decomposition, degenerate };

const char* to_string(BoundMethod method);

struct BoundResult {
  Rational lower;
  UpperBound upper;
  BoundMethod method = BoundMethod::jet_sweep;
  std::int64_t k_used = 0;      // dilation that produced `lower` (0: none)
  std::int64_t m_achieved = -1;  // largest jet order at that dilation
  std::vector<std::int64_t> jets;  // per-point jet orders at that dilation
  bool certified = false;        // every rank on the path was exact
  /// The lower bound is a randomized witness; it never yields an upper bound.
  bool one_sided = false;

  /// lower meets upper, so the value is determined.
  bool exact() const { return upper.equals(lower); }
};

struct EngineOptions {
  std::int64_t k_budget = 6;
  std::int64_t trials = 3;
  bool certify = false;
  std::uint64_t seed = 0;
  RankCache* cache = nullptr;
  /// Cap on the jet order searched; none by default.
  std::optional<std::int64_t> m_max;
  /// Dilations evaluated concurrently.
  unsigned threads = 1;

  RankPolicy policy() const { return {certify, seed, cache}; }
};

struct JetOrderResult {
  /// Largest m whose m-jets are separated; -1 if even m = 0 fails.
  std::int64_t order = -1;
  /// Every rank verdict behind `order` was exact.
  bool certified = true;
  /// True when the search stopped because C(m+n, n) exceeded #S (or m_max)
  /// rather than at a rank failure.
  bool counting_cutoff = false;
  /// Rank report at order + 1, when a rank failure ended the search.
  std::optional<JetRankReport> failure;
};

/// Ascends m = 0, 1, ... and stops at the first rank failure or when the
/// row count C(m+n, n) exceeds #S. Throws InputError on an empty set. The
/// set is translated into the non-negative orthant first.
JetOrderResult max_jet_order(const LatticePointSet& s, const RankPolicy& policy = {},
                             std::optional<std::int64_t> m_max = std::nullopt,
                             bool with_certificate = false);

/// (n! vol(delta) / |w|_n)^(1/n).
UpperBound volume_upper_bound(const RationalPolytope& delta, const Weights& w);

/// max over 1 <= k <= budget of max_jet_order(kDelta) / k. A polytope that
/// is not full-dimensional gets lower = upper = 0. Throws InputError for a
/// budget below 1.
BoundResult seshadri_lower_bound(const RationalPolytope& delta, const EngineOptions& options = {});

struct MultiPointResult {
  /// Whether any candidate t succeeded; t = 0 otherwise.
  bool found = false;
  Rational t;
  std::vector<std::int64_t> jets;  // ceil(t * m_i)
  bool certified = true;
};

/// Largest t in the grid {j / m_i} for which ceil(t m)-jets are separated at
/// random integer points in at least one of `options.trials` samples. The
/// search ascends and stops at the first failing t or when the condition
/// count exceeds #S. For a single weight the point is 1_n and the answer is
/// max_jet_order / m_1 exactly.
MultiPointResult multipoint_jet_lower(const LatticePointSet& s, const Weights& w,
                                      const EngineOptions& options = {});

/// max over k <= budget of multipoint_jet_lower(kDelta) / k, with the volume
/// upper bound for w.
BoundResult multipoint_seshadri_lower(const RationalPolytope& delta, const Weights& w,
                                      const EngineOptions& options = {});

}  // namespace jetbound
