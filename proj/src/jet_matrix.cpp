#include "jetbound/jet_matrix.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <gmp.h>

#include "jetbound/error.hpp"
#include "jetbound/hashing.hpp"
#include "jetbound/linear_algebra.hpp"

namespace jetbound {

namespace {

// All lambda in N^n with |lambda| <= m, in lexicographic order.
void enumerate_simplex(std::size_t n, std::int64_t m, Point& cur, std::size_t pos,
                       std::vector<Point>& out) {
  if (pos == n) {
    out.push_back(cur);
    return;
  }
  for (std::int64_t v = 0; v <= m; ++v) {
    cur[pos] = v;
    enumerate_simplex(n, m - v, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

bool dominates(const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t residue(const Integer& z, std::uint64_t p) {
  return mpz_fdiv_ui(z.backend().data(), p);
}

bool is_probable_prime(std::uint64_t x) {
  Integer z(x);
  return mpz_probab_prime_p(z.backend().data(), 30) > 0;
}

void check_modulus(std::uint64_t prime) {
  if (prime <= (std::uint64_t{1} << 30) || prime >= (std::uint64_t{1} << 63) ||
      !is_probable_prime(prime)) {
    throw InputError("rank modulus must be a prime in (2^30, 2^63), got " + std::to_string(prime));
  }
}

std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const std::uint64_t inv = powmod(a[r][c], p - 2, p);
    for (std::size_t j = c; j < cols; ++j) a[r][j] = mulmod(a[r][j], inv, p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::uint64_t f = a[i][c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        const std::uint64_t t = mulmod(f, a[r][j], p);
        a[i][j] = a[i][j] >= t ? a[i][j] - t : a[i][j] + p - t;
      }
    }
    ++r;
  }
  return r;
}

template <class T>
std::vector<std::vector<std::uint64_t>> reduce(const Matrix<T>& m, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].reserve(m[i].size());
    for (const auto& x : m[i]) out[i].push_back(residue(x, p));
  }
  return out;
}

Matrix<Integer> clear_denominators(const Matrix<Rational>& m) {
  Matrix<Integer> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    Integer scale = 1;
    for (const auto& x : m[i]) scale = lcm(scale, denominator(x));
    out[i].reserve(m[i].size());
    for (const auto& x : m[i]) out[i].push_back(numerator(x) * (scale / denominator(x)));
  }
  return out;
}

std::string point_text(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

template <class M>
RankVerdict compute_rank_impl(const M& m, const RankPolicy& policy,
                              const std::string& cache_material) {
  std::string material;
  if (policy.cache && !cache_material.empty()) {
    std::ostringstream os;
    os << cache_material << "|seed=" << policy.seed << "|certify=" << policy.certify;
    material = os.str();
    if (auto hit = policy.cache->get(material)) return {hit->rank, hit->certified};
  }

  const std::size_t rows = m.rows.size();
  const std::size_t cols = m.cols.size();
  const std::size_t cap = std::min(rows, cols);
  RankVerdict verdict;
  if (cap == 0) {
    verdict = {0, true};
  } else if (policy.certify) {
    verdict = {rank_exact(m), true};
  } else {
    std::mt19937_64 rng(mix_seed(policy.seed, fnv1a64(cache_material)));
    const std::uint64_t p1 = random_prime(rng);
    const std::size_t r1 = rank_modular(m, p1);
    if (r1 == cap) {
      verdict = {r1, true};
    } else {
      std::uint64_t p2 = random_prime(rng);
      while (p2 == p1) p2 = random_prime(rng);
      const std::size_t r2 = rank_modular(m, p2);
      if (r2 == cap) {
        verdict = {r2, true};
      } else if (r1 == r2) {
        verdict = {r1, false};
      } else {
        verdict = {rank_exact(m), true};
      }
    }
  }

  if (!material.empty()) {
    CacheRecord rec;
    rec.key = cache_key(material);
    rec.key_material = material;
    rec.rank = verdict.rank;
    rec.certified = verdict.certified;
    policy.cache->put(rec);
  }
  return verdict;
}

}  // namespace

// ---------------------------------------------------------------------------
// StaircaseIdeal

StaircaseIdeal StaircaseIdeal::from_lower_set(LatticePointSet phi) {
  if (phi.empty()) throw InputError("standard-monomial set is empty (unit ideal)");
  const std::size_t n = phi.ambient_dim();
  for (const auto& lambda : phi.points()) {
    for (std::size_t k = 0; k < n; ++k) {
      if (lambda[k] < 0) throw InputError("standard monomial " + point_text(lambda) + " is negative");
      if (lambda[k] == 0) continue;
      Point down = lambda;
      --down[k];
      if (!phi.contains(down)) {
        throw InputError("set is not a lower set: " + point_text(lambda) + " is present but " +
                         point_text(down) + " is not");
      }
    }
  }
  std::set<Point> gens;
  for (const auto& mu : phi.points()) {
    for (std::size_t k = 0; k < n; ++k) {
      Point c = mu;
      ++c[k];
      if (phi.contains(c)) continue;
      bool minimal = true;
      for (std::size_t j = 0; j < n && minimal; ++j) {
        if (c[j] == 0) continue;
        Point d = c;
        --d[j];
        if (!phi.contains(d)) minimal = false;
      }
      if (minimal) gens.insert(std::move(c));
    }
  }
  StaircaseIdeal ideal;
  ideal.phi_ = std::move(phi);
  ideal.generators_.assign(gens.begin(), gens.end());
  return ideal;
}

std::string StaircaseIdeal::canonical() const {
  std::ostringstream os;
  os << "ideal n=" << dim() << ";gens=";
  for (const auto& g : generators_) os << point_text(g);
  return os.str();
}

StaircaseIdeal phi_of_power(std::int64_t m, std::size_t n) {
  if (m < 0) throw InputError("jet order must be non-negative");
  if (n == 0) throw InputError("dimension must be positive");
  std::vector<Point> pts;
  Point cur(n, 0);
  enumerate_simplex(n, m, cur, 0, pts);
  return StaircaseIdeal::from_lower_set(LatticePointSet(std::move(pts), n));
}

StaircaseIdeal staircase_from_generators(const std::vector<Point>& generators) {
  if (generators.empty()) throw InputError("ideal needs at least one generator");
  const std::size_t n = generators.front().size();
  if (n == 0) throw InputError("generators must have dimension >= 1");
  for (const auto& g : generators) {
    if (g.size() != n) throw InputError("generators have mixed dimensions");
    for (auto c : g) {
      if (c < 0) throw InputError("generator " + point_text(g) + " has a negative exponent");
    }
    if (std::all_of(g.begin(), g.end(), [](auto c) { return c == 0; })) {
      throw InputError("generator 1 makes the ideal the whole ring");
    }
  }
  Point box(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::int64_t best = -1;
    for (const auto& g : generators) {
      bool pure = g[k] > 0;
      for (std::size_t j = 0; j < n && pure; ++j) {
        if (j != k && g[j] != 0) pure = false;
      }
      if (pure && (best < 0 || g[k] < best)) best = g[k];
    }
    if (best < 0) {
      throw InputError("ideal is not primary to the maximal ideal: no pure power of (x" +
                       std::to_string(k + 1) + " - 1) among the generators (axis " +
                       std::to_string(k + 1) + ")");
    }
    box[k] = best;
  }
  std::vector<Point> phi;
  Point x(n, 0);
  while (true) {
    bool standard = true;
    for (const auto& g : generators) {
      if (dominates(x, g)) {
        standard = false;
        break;
      }
    }
    if (standard) phi.push_back(x);
    std::size_t i = 0;
    while (i < n && x[i] == box[i] - 1) {
      x[i] = 0;
      ++i;
    }
    if (i == n) break;
    ++x[i];
  }
  return StaircaseIdeal::from_lower_set(LatticePointSet(std::move(phi), n));
}

// ---------------------------------------------------------------------------
// Matrices

const char* to_string(JetForm form) { return form == JetForm::binomial ? "binomial" : "power"; }

JetMatrix build_jet_matrix(const LatticePointSet& s, const StaircaseIdeal& ideal, JetForm form) {
  if (!s.empty() && s.ambient_dim() != ideal.dim()) {
    throw InputError("point set and ideal live in different dimensions");
  }
  if (!s.all_nonnegative()) {
    throw InputError("jet matrix columns need non-negative exponents; normalize the set first");
  }
  JetMatrix m;
  m.form = form;
  m.rows = ideal.phi().points();
  m.cols = s.points();
  m.entries.assign(m.rows.size(), std::vector<Integer>(m.cols.size()));
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    const Point& lambda = m.rows[i];
    for (std::size_t j = 0; j < m.cols.size(); ++j) {
      const Point& u = m.cols[j];
      Integer e = 1;
      for (std::size_t k = 0; k < lambda.size() && e != 0; ++k) {
        if (form == JetForm::binomial) {
          e *= binomial(u[k], lambda[k]);
        } else {
          e *= pow(Integer(u[k]), static_cast<unsigned>(lambda[k]));
        }
      }
      m.entries[i][j] = std::move(e);
    }
  }
  return m;
}

MultiPointJetMatrix build_multipoint_matrix(const LatticePointSet& s,
                                            const std::vector<RationalVector>& points,
                                            const std::vector<std::int64_t>& jet_orders) {
  if (points.size() != jet_orders.size()) {
    throw InputError("need one jet order per point");
  }
  const std::size_t n = s.ambient_dim();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != n) throw InputError("point dimension does not match the set");
    for (const auto& c : points[i]) {
      if (c == 0) throw InputError("points must lie in the torus (no zero coordinate)");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (points[i] == points[j]) throw InputError("points must be distinct");
    }
  }
  if (!s.all_nonnegative()) {
    throw InputError("multipoint matrix columns need non-negative exponents");
  }

  MultiPointJetMatrix m;
  m.cols = s.points();
  m.points = points;
  m.jet_orders = jet_orders;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (jet_orders[i] < 0) continue;
    const StaircaseIdeal ideal = phi_of_power(jet_orders[i], n);
    for (const auto& lambda : ideal.phi().points()) m.rows.emplace_back(i, lambda);
  }
  std::int64_t max_exp = 0;
  for (const auto& u : m.cols) {
    for (auto c : u) max_exp = std::max(max_exp, c);
  }
  // powers[i][k][e] = p_i[k]^e
  std::vector<std::vector<RationalVector>> powers(points.size(), std::vector<RationalVector>(n));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      auto& tab = powers[i][k];
      tab.resize(static_cast<std::size_t>(max_exp) + 1);
      tab[0] = 1;
      for (std::int64_t e = 1; e <= max_exp; ++e) tab[e] = tab[e - 1] * points[i][k];
    }
  }
  m.entries.assign(m.rows.size(), RationalVector(m.cols.size(), Rational(0)));
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    const auto& [pi, lambda] = m.rows[r];
    for (std::size_t c = 0; c < m.cols.size(); ++c) {
      const Point& u = m.cols[c];
      Integer coeff = 1;
      for (std::size_t k = 0; k < n && coeff != 0; ++k) coeff *= binomial(u[k], lambda[k]);
      if (coeff == 0) continue;
      Rational e(coeff);
      for (std::size_t k = 0; k < n; ++k) e *= powers[pi][k][u[k] - lambda[k]];
      m.entries[r][c] = std::move(e);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Ranks

std::uint64_t random_prime(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t{1} << 61,
                                                    (std::uint64_t{1} << 62) - 1);
  while (true) {
    const std::uint64_t x = dist(rng) | 1u;
    if (is_probable_prime(x)) return x;
  }
}

std::size_t rank_modular(const JetMatrix& m, std::uint64_t prime) {
  check_modulus(prime);
  return rank_mod_p(reduce(m.entries, prime), prime);
}

std::size_t rank_modular(const MultiPointJetMatrix& m, std::uint64_t prime) {
  check_modulus(prime);
  return rank_mod_p(reduce(clear_denominators(m.entries), prime), prime);
}

std::size_t rank_exact(const JetMatrix& m) { return linalg::bareiss_rank(m.entries); }

std::size_t rank_exact(const MultiPointJetMatrix& m) {
  return linalg::bareiss_rank(clear_denominators(m.entries));
}

RankVerdict compute_rank(const JetMatrix& m, const RankPolicy& policy,
                         const std::string& cache_material) {
  return compute_rank_impl(m, policy, cache_material);
}

RankVerdict compute_rank(const MultiPointJetMatrix& m, const RankPolicy& policy,
                         const std::string& cache_material) {
  return compute_rank_impl(m, policy, cache_material);
}

// ---------------------------------------------------------------------------
// Full-rank test

Integer HypersurfaceCertificate::evaluate(const Point& u) const {
  Integer total = 0;
  for (const auto& [lambda, c] : terms) {
    Integer mono = c;
    for (std::size_t k = 0; k < lambda.size(); ++k) {
      mono *= pow(Integer(u[k]), static_cast<unsigned>(lambda[k]));
    }
    total += mono;
  }
  return total;
}

std::string HypersurfaceCertificate::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [lambda, c] = *it;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = std::all_of(lambda.begin(), lambda.end(), [](auto e) { return e == 0; });
    if (mag != 1 || constant) os << mag;
    bool need_star = mag != 1;
    for (std::size_t k = 0; k < lambda.size(); ++k) {
      if (lambda[k] == 0) continue;
      os << (need_star ? "*" : "") << "u" << (k + 1);
      if (lambda[k] > 1) os << "^" << lambda[k];
      need_star = true;
    }
  }
  if (first) os << "0";
  return os.str();
}

JetRankReport is_full_jet_rank(const LatticePointSet& s, const StaircaseIdeal& ideal,
                               const RankPolicy& policy, bool with_certificate) {
  const JetMatrix a = build_jet_matrix(s, ideal, JetForm::power);
  JetRankReport report;
  report.rows = a.rows.size();
  const RankVerdict verdict =
      compute_rank(a, policy, "jet|" + s.canonical() + "|" + ideal.canonical() + "|power");
  report.rank = verdict.rank;
  report.certified = verdict.certified;
  if (verdict.rank == report.rows) {
    report.full = true;
    report.certified = true;
    return report;
  }
  if (!with_certificate) return report;

  // Left kernel of A: coefficient vectors c with sum_lambda c_lambda u^lambda = 0 on S.
  Matrix<Rational> at(a.cols.size(), RationalVector(a.rows.size()));
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    for (std::size_t j = 0; j < a.cols.size(); ++j) at[j][i] = Rational(a.entries[i][j]);
  }
  const auto kernel = linalg::nullspace(at, a.rows.size());
  report.certified = true;
  report.rank = report.rows - kernel.size();
  if (kernel.empty()) {
    report.full = true;
    return report;
  }
  IntegerVector coeffs = primitive_integer_vector(kernel.front());
  // Leading (lexicographically largest) term positive.
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    if (*it == 0) continue;
    if (*it < 0) {
      for (auto& c : coeffs) c = -c;
    }
    break;
  }
  HypersurfaceCertificate cert;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) cert.terms.emplace_back(a.rows[i], coeffs[i]);
  }
  report.certificate = std::move(cert);
  return report;
}

}  // namespace jetbound
