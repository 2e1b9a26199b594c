#include "jetbound/bound_engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <sstream>

#include "jetbound/error.hpp"
#include "jetbound/hashing.hpp"

namespace jetbound {

// ---------------------------------------------------------------------------
// Weights

Weights::Weights(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("weights: need at least one weight");
  for (const auto& v : values_) {
    if (v <= 0) throw InputError("weights: every weight must be positive, got " + jetbound::to_string(v));
  }
}

Weights Weights::parse(const std::string& text) {
  std::vector<Rational> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(parse_rational(item));
    } catch (const std::invalid_argument&) {
      throw InputError("weights: cannot parse '" + item + "' as a rational");
    }
  }
  return Weights(std::move(values));
}

Rational Weights::norm(std::size_t n) const {
  Rational total = 0;
  for (const auto& v : values_) total += pow(v, static_cast<unsigned>(n));
  return total;
}

Weights Weights::repeated(std::size_t d) const {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < d; ++i) out.insert(out.end(), values_.begin(), values_.end());
  return Weights(std::move(out));
}

Weights Weights::scaled(const Rational& t) const {
  std::vector<Rational> out = values_;
  for (auto& v : out) v *= t;
  return Weights(std::move(out));
}

Weights Weights::concat(const Weights& other) const {
  std::vector<Rational> out = values_;
  out.insert(out.end(), other.values_.begin(), other.values_.end());
  return Weights(std::move(out));
}

std::string Weights::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ",";
    out += jetbound::to_string(values_[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// UpperBound

std::optional<Rational> UpperBound::exact_value() const {
  if (root == 1) return radicand;
  Integer a, b;
  if (exact_root(numerator(radicand), root, a) && exact_root(denominator(radicand), root, b)) {
    return Rational(a, b);
  }
  return std::nullopt;
}

bool UpperBound::bounds(const Rational& x) const {
  if (x <= 0) return true;
  return pow(x, root) <= radicand;
}

bool UpperBound::equals(const Rational& x) const {
  if (x < 0) return false;
  return pow(x, root) == radicand;
}

double UpperBound::approx() const {
  return std::pow(to_double(radicand), 1.0 / static_cast<double>(root));
}

std::string UpperBound::to_string() const {
  if (auto v = exact_value()) return jetbound::to_string(*v);
  return "(" + jetbound::to_string(radicand) + ")^(1/" + std::to_string(root) + ")";
}

const char* to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::jet_sweep:
      return "jet-sweep";
    case BoundMethod::multipoint:
      return "multipoint";
    case BoundMethod::lattice_change:
      return "lattice-change";
    case BoundMethod::decomposition:
      return "decomposition";
    case BoundMethod::degenerate:
      return "degenerate";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Jet orders

JetOrderResult max_jet_order(const LatticePointSet& s, const RankPolicy& policy,
                             std::optional<std::int64_t> m_max, bool with_certificate) {
  if (s.empty()) throw InputError("max_jet_order: the point set is empty");
  const LatticePointSet t = s.normalized();
  const std::size_t n = t.ambient_dim();
  const Integer available(t.size());
  JetOrderResult out;
  for (std::int64_t m = 0;; ++m) {
    if ((m_max && m > *m_max) || binomial(m + static_cast<std::int64_t>(n), static_cast<std::int64_t>(n)) > available) {
      out.counting_cutoff = true;
      return out;
    }
    JetRankReport report = is_full_jet_rank(t, phi_of_power(m, n), policy, with_certificate);
    if (!report.full) {
      out.certified = out.certified && report.certified;
      out.failure = std::move(report);
      return out;
    }
    out.order = m;
  }
}

UpperBound volume_upper_bound(const RationalPolytope& delta, const Weights& w) {
  const std::size_t n = delta.ambient_dim();
  Rational fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<long>(i);
  return {fact * volume(delta) / w.norm(n), static_cast<unsigned>(n)};
}

namespace {

struct Cell {
  bool valid = false;
  Rational value;
  std::int64_t m = -1;
  std::vector<std::int64_t> jets;
  bool certified = true;
};

template <class F>
void sweep(const EngineOptions& options, BoundResult& result, F&& cell) {
  if (options.k_budget < 1) throw InputError("k budget must be at least 1");
  const std::int64_t width = std::max<std::int64_t>(1, options.threads);
  bool all_exact = true;
  for (std::int64_t k0 = 1; k0 <= options.k_budget; k0 += width) {
    const std::int64_t k1 = std::min(options.k_budget, k0 + width - 1);
    std::vector<Cell> cells;
    if (k1 == k0) {
      cells.push_back(cell(k0));
    } else {
      std::vector<std::future<Cell>> futures;
      for (std::int64_t k = k0; k <= k1; ++k) {
        futures.push_back(std::async(std::launch::async, [&cell, k] { return cell(k); }));
      }
      for (auto& f : futures) cells.push_back(f.get());
    }
    // Fold in k order so the result does not depend on the thread count.
    for (std::int64_t k = k0; k <= k1; ++k) {
      const Cell& c = cells[static_cast<std::size_t>(k - k0)];
      all_exact = all_exact && c.certified;
      if (c.valid && (result.k_used == 0 || c.value > result.lower)) {
        result.lower = c.value;
        result.k_used = k;
        result.m_achieved = c.m;
        result.jets = c.jets;
      }
      if (result.k_used != 0 && result.exact()) {
        result.certified = options.certify && all_exact;
        return;
      }
    }
  }
  result.certified = options.certify && all_exact;
}

std::string jets_text(const std::vector<std::int64_t>& jets) {
  std::string out;
  for (std::size_t i = 0; i < jets.size(); ++i) out += (i ? "," : "") + std::to_string(jets[i]);
  return out;
}

std::vector<RationalVector> sample_points(std::uint64_t seed, std::size_t r, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(1, std::int64_t{1} << 20);
  std::vector<RationalVector> pts;
  while (pts.size() < r) {
    RationalVector p(n);
    for (auto& c : p) c = coord(rng);
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace

BoundResult seshadri_lower_bound(const RationalPolytope& delta, const EngineOptions& options) {
  if (options.k_budget < 1) throw InputError("k budget must be at least 1");
  BoundResult result;
  result.upper = volume_upper_bound(delta, Weights({Rational(1)}));
  if (!delta.is_full_dimensional()) {
    result.method = BoundMethod::degenerate;
    result.upper = {Rational(0), static_cast<unsigned>(delta.ambient_dim())};
    result.certified = true;
    return result;
  }
  result.method = BoundMethod::jet_sweep;
  const RankPolicy policy = options.policy();
  sweep(options, result, [&](std::int64_t k) {
    Cell c;
    const LatticePointSet s = lattice_points(dilate(delta, Rational(k)));
    if (s.empty()) return c;
    const JetOrderResult j = max_jet_order(s, policy, options.m_max);
    c.certified = j.certified;
    if (j.order < 0) return c;
    c.valid = true;
    c.value = Rational(j.order, k);
    c.m = j.order;
    c.jets = {j.order};
    return c;
  });
  return result;
}

MultiPointResult multipoint_jet_lower(const LatticePointSet& s, const Weights& w,
                                      const EngineOptions& options) {
  MultiPointResult out;
  if (s.empty()) return out;
  const LatticePointSet t = s.normalized();
  const std::size_t n = t.ambient_dim();
  const std::size_t r = w.size();
  const RankPolicy policy = options.policy();

  if (r == 1) {
    const JetOrderResult j = max_jet_order(t, policy, options.m_max);
    out.certified = j.certified;
    if (j.order < 0) return out;
    out.found = true;
    out.t = Rational(j.order) / w.values()[0];
    out.jets = {j.order};
    return out;
  }

  if (options.trials < 1) throw InputError("trials must be at least 1");
  const Integer available(t.size());
  const std::string base = t.canonical();
  std::vector<std::int64_t> next(r, 0);
  while (true) {
    Rational cand = Rational(next[0]) / w.values()[0];
    for (std::size_t i = 1; i < r; ++i) cand = std::min(cand, Rational(next[i]) / w.values()[i]);
    std::vector<std::int64_t> jets(r);
    Integer conditions = 0;
    for (std::size_t i = 0; i < r; ++i) {
      jets[i] = static_cast<std::int64_t>(ceil(cand * w.values()[i]));
      conditions += binomial(jets[i] + static_cast<std::int64_t>(n), static_cast<std::int64_t>(n));
      if (Rational(next[i]) / w.values()[i] == cand) ++next[i];
    }
    if (conditions > available) return out;
    if (options.m_max && *std::max_element(jets.begin(), jets.end()) > *options.m_max) return out;

    bool separated = false;
    for (std::int64_t trial = 0; trial < options.trials && !separated; ++trial) {
      const std::string material = "multi|" + base + "|jets=" + jets_text(jets) + "|trial=" + std::to_string(trial);
      const std::uint64_t seed = mix_seed(options.seed, fnv1a64(material));
      const auto points = sample_points(seed, r, n);
      const MultiPointJetMatrix m = build_multipoint_matrix(t, points, jets);
      const RankVerdict v = compute_rank(m, policy, material);
      separated = v.rank == m.rows.size();
    }
    if (!separated) return out;
    out.found = true;
    out.t = cand;
    out.jets = jets;
  }
}

BoundResult multipoint_seshadri_lower(const RationalPolytope& delta, const Weights& w,
                                      const EngineOptions& options) {
  if (options.k_budget < 1) throw InputError("k budget must be at least 1");
  BoundResult result;
  result.upper = volume_upper_bound(delta, w);
  if (!delta.is_full_dimensional()) {
    result.method = BoundMethod::degenerate;
    result.certified = true;
    return result;
  }
  result.method = BoundMethod::multipoint;
  result.one_sided = w.size() > 1;
  sweep(options, result, [&](std::int64_t k) {
    Cell c;
    const LatticePointSet s = lattice_points(dilate(delta, Rational(k)));
    if (s.empty()) return c;
    const MultiPointResult mp = multipoint_jet_lower(s, w, options);
    c.certified = mp.certified && w.size() == 1;
    if (!mp.found) return c;
    c.valid = true;
    c.value = mp.t / k;
    c.jets = mp.jets;
    c.m = *std::max_element(mp.jets.begin(), mp.jets.end());
    return c;
  });
  return result;
}

}  // namespace jetbound
