#include "jetbound/instance_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace jetbound {

namespace {

// Wraps nlohmann access so schema errors name the offending field.
class Reader {
 public:
  Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    throw ParseError(source_ + ": field " + (path.empty() ? "/" : path) + ": " + what);
  }

  const Json& field(const Json& obj, const std::string& path, const char* key) const {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "/" + key, "missing");
    return *it;
  }

  const Json& array(const Json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
  }

  Rational rational(const Json& j, const std::string& path) const {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) {
      try {
        return parse_rational(j.get<std::string>());
      } catch (const std::invalid_argument&) {
        fail(path, "'" + j.get<std::string>() + "' is not a rational \"p/q\"");
      }
    }
    if (j.is_number()) fail(path, "floating-point numbers are inexact; write rationals as \"p/q\" strings");
    fail(path, "expected a rational");
  }

  std::int64_t integer(const Json& j, const std::string& path) const {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_string()) {
      Rational q = rational(j, path);
      if (denominator(q) == 1 && abs(numerator(q)) < (Integer(1) << 62)) {
        return static_cast<std::int64_t>(numerator(q));
      }
    }
    fail(path, "expected an integer");
  }

  std::size_t index(const Json& j, const std::string& path) const {
    const std::int64_t v = integer(j, path);
    if (v < 0) fail(path, "expected a non-negative index");
    return static_cast<std::size_t>(v);
  }

  std::vector<RationalVector> rational_rows(const Json& j, const std::string& path) const {
    std::vector<RationalVector> rows;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) {
      const std::string p = path + "/" + std::to_string(i);
      RationalVector row;
      for (std::size_t k = 0; k < array(j[i], p).size(); ++k) {
        row.push_back(rational(j[i][k], p + "/" + std::to_string(k)));
      }
      if (!rows.empty() && row.size() != rows.front().size()) fail(p, "dimension differs from entry 0");
      rows.push_back(std::move(row));
    }
    return rows;
  }

  std::vector<Point> integer_rows(const Json& j, const std::string& path) const {
    std::vector<Point> rows;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) {
      const std::string p = path + "/" + std::to_string(i);
      Point row;
      for (std::size_t k = 0; k < array(j[i], p).size(); ++k) {
        row.push_back(integer(j[i][k], p + "/" + std::to_string(k)));
      }
      if (!rows.empty() && row.size() != rows.front().size()) fail(p, "dimension differs from entry 0");
      rows.push_back(std::move(row));
    }
    return rows;
  }

  std::vector<std::size_t> indices(const Json& j, const std::string& path) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) {
      out.push_back(index(j[i], path + "/" + std::to_string(i)));
    }
    return out;
  }

 private:
  std::string source_;
};

InstanceKind kind_from_name(const Reader& rd, const std::string& name) {
  if (name == "polytope") return InstanceKind::polytope;
  if (name == "lattice-set") return InstanceKind::lattice_set;
  if (name == "ideal") return InstanceKind::ideal;
  if (name == "decomposition") return InstanceKind::decomposition;
  if (name == "lattice-map") return InstanceKind::lattice_map;
  rd.fail("/kind", "unknown kind '" + name + "'");
}

InstanceKind infer_kind(const Reader& rd, const Json& j) {
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) rd.fail("/kind", "expected a string");
    return kind_from_name(rd, j["kind"].get<std::string>());
  }
  if (j.contains("cells")) return InstanceKind::decomposition;
  if (j.contains("matrix")) return InstanceKind::lattice_map;
  if (j.contains("generators")) return InstanceKind::ideal;
  if (j.contains("points")) return InstanceKind::lattice_set;
  if (j.contains("vertices")) return InstanceKind::polytope;
  rd.fail("", "cannot tell the instance kind; add a \"kind\" field");
}

// Re-raises a domain error with the field it came from.
template <class F>
auto guarded(const Reader& rd, const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    rd.fail(path, e.what());
  }
}

Json rational_json(const Rational& q) { return to_string(q); }

Json rational_rows_json(const std::vector<RationalVector>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(rational_json(x));
    out.push_back(std::move(row));
  }
  return out;
}

template <class Rows>
Json integer_rows_json(const Rows& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(Json(r));
  return out;
}

}  // namespace

const char* to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::polytope:
      return "polytope";
    case InstanceKind::lattice_set:
      return "lattice-set";
    case InstanceKind::ideal:
      return "ideal";
    case InstanceKind::decomposition:
      return "decomposition";
    case InstanceKind::lattice_map:
      return "lattice-map";
  }
  return "unknown";
}

Decomposition DecompositionSpec::build() const {
  std::vector<RationalVector> parent_pts;
  if (parent.empty()) {
    parent_pts = pool;
  } else {
    for (auto i : parent) {
      if (i >= pool.size()) throw InputError("parent refers to vertex " + std::to_string(i) + " outside the pool");
      parent_pts.push_back(pool[i]);
    }
  }
  return Decomposition::from_pool(RationalPolytope::from_vertices(std::move(parent_pts)), pool, cells);
}

Instance parse_instance(const std::string& text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": invalid JSON: " + e.what());
  }
  const Reader rd(source);
  if (!j.is_object()) rd.fail("", "expected a JSON object");

  Instance inst;
  inst.kind = infer_kind(rd, j);
  if (j.contains("name")) {
    if (!j["name"].is_string()) rd.fail("/name", "expected a string");
    inst.name = j["name"].get<std::string>();
  }
  switch (inst.kind) {
    case InstanceKind::polytope: {
      auto rows = rd.rational_rows(rd.field(j, "", "vertices"), "/vertices");
      if (rows.empty()) rd.fail("/vertices", "a polytope needs at least one vertex");
      inst.payload = guarded(rd, "/vertices", [&] { return RationalPolytope::from_vertices(std::move(rows)); });
      break;
    }
    case InstanceKind::lattice_set: {
      auto rows = rd.integer_rows(rd.field(j, "", "points"), "/points");
      std::size_t dim = rows.empty() ? 0 : rows.front().size();
      if (j.contains("dim")) {
        const std::size_t d = rd.index(j["dim"], "/dim");
        if (!rows.empty() && d != dim) rd.fail("/dim", "disagrees with the point dimension");
        dim = d;
      }
      if (dim == 0) rd.fail("/points", "dimension unknown; give a point or a \"dim\" field");
      inst.payload = LatticePointSet(std::move(rows), dim);
      break;
    }
    case InstanceKind::ideal: {
      auto gens = rd.integer_rows(rd.field(j, "", "generators"), "/generators");
      inst.payload = guarded(rd, "/generators", [&] { return staircase_from_generators(gens); });
      break;
    }
    case InstanceKind::decomposition: {
      DecompositionSpec spec;
      spec.pool = rd.rational_rows(rd.field(j, "", "vertices"), "/vertices");
      if (spec.pool.empty()) rd.fail("/vertices", "the vertex pool is empty");
      if (j.contains("parent")) spec.parent = rd.indices(j["parent"], "/parent");
      const Json& cells = rd.array(rd.field(j, "", "cells"), "/cells");
      for (std::size_t c = 0; c < cells.size(); ++c) {
        spec.cells.push_back(rd.indices(cells[c], "/cells/" + std::to_string(c)));
      }
      for (std::size_t c = 0; c < spec.cells.size(); ++c) {
        for (std::size_t k = 0; k < spec.cells[c].size(); ++k) {
          if (spec.cells[c][k] >= spec.pool.size()) {
            rd.fail("/cells/" + std::to_string(c) + "/" + std::to_string(k), "index outside the vertex pool");
          }
        }
      }
      for (std::size_t k = 0; k < spec.parent.size(); ++k) {
        if (spec.parent[k] >= spec.pool.size()) rd.fail("/parent/" + std::to_string(k), "index outside the vertex pool");
      }
      guarded(rd, "/cells", [&] { return spec.build(); });
      inst.payload = std::move(spec);
      break;
    }
    case InstanceKind::lattice_map: {
      auto rows = rd.integer_rows(rd.field(j, "", "matrix"), "/matrix");
      inst.payload = guarded(rd, "/matrix", [&] { return LatticeMap(std::move(rows)); });
      break;
    }
  }
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path.string());
}

Json to_json(const Instance& inst) {
  Json j;
  j["kind"] = to_string(inst.kind);
  if (!inst.name.empty()) j["name"] = inst.name;
  switch (inst.kind) {
    case InstanceKind::polytope:
      j["vertices"] = rational_rows_json(std::get<RationalPolytope>(inst.payload).vertices());
      break;
    case InstanceKind::lattice_set: {
      const auto& s = std::get<LatticePointSet>(inst.payload);
      j["dim"] = s.ambient_dim();
      j["points"] = integer_rows_json(s.points());
      break;
    }
    case InstanceKind::ideal:
      j["generators"] = integer_rows_json(std::get<StaircaseIdeal>(inst.payload).generators());
      break;
    case InstanceKind::decomposition: {
      const auto& d = std::get<DecompositionSpec>(inst.payload);
      j["vertices"] = rational_rows_json(d.pool);
      if (!d.parent.empty()) j["parent"] = d.parent;
      j["cells"] = integer_rows_json(d.cells);
      break;
    }
    case InstanceKind::lattice_map:
      j["matrix"] = integer_rows_json(std::get<LatticeMap>(inst.payload).matrix());
      break;
  }
  return j;
}

std::string emit_instance(const Instance& instance) { return to_json(instance).dump(2) + "\n"; }

RationalPolytope as_polytope(const Instance& inst) {
  if (inst.kind == InstanceKind::polytope) return std::get<RationalPolytope>(inst.payload);
  if (inst.kind == InstanceKind::lattice_set) {
    const auto& s = std::get<LatticePointSet>(inst.payload);
    if (s.empty()) throw InputError("the lattice set is empty");
    return RationalPolytope::from_points(s.points());
  }
  throw InputError(std::string("expected a polytope, got a ") + to_string(inst.kind));
}

LatticePointSet as_point_set(const Instance& inst) {
  if (inst.kind == InstanceKind::lattice_set) return std::get<LatticePointSet>(inst.payload);
  if (inst.kind == InstanceKind::polytope) return lattice_points(std::get<RationalPolytope>(inst.payload));
  throw InputError(std::string("expected a polytope or lattice set, got a ") + to_string(inst.kind));
}

Json to_json(const UpperBound& upper) {
  Json j;
  j["radicand"] = rational_json(upper.radicand);
  j["root"] = upper.root;
  if (auto v = upper.exact_value()) {
    j["value"] = rational_json(*v);
  } else {
    j["value"] = nullptr;
  }
  j["approx"] = upper.approx();
  return j;
}

Json to_json(const BoundResult& r) {
  Json j;
  j["method"] = to_string(r.method);
  j["lower"] = rational_json(r.lower);
  j["upper"] = to_json(r.upper);
  j["exact"] = r.exact();
  j["k_used"] = r.k_used;
  j["m_achieved"] = r.m_achieved;
  j["jets"] = r.jets;
  j["certified"] = r.certified;
  j["one_sided"] = r.one_sided;
  return j;
}

Json to_json(const LiftingWitness& w, const Decomposition& d) {
  Json j;
  j["scale"] = to_string(w.scale);
  Json pieces = Json::array();
  for (std::size_t c = 0; c < w.slopes.size(); ++c) {
    Json p;
    p["cell"] = c;
    p["slope"] = rational_rows_json({w.slopes[c]})[0];
    p["offset"] = rational_json(w.offsets[c]);
    pieces.push_back(std::move(p));
  }
  j["pieces"] = std::move(pieces);
  Json values = Json::array();
  for (const auto& u : lattice_points(d.parent).points()) {
    const RationalVector x = to_rational(u);
    for (std::size_t c = 0; c < d.cells.size(); ++c) {
      if (!d.cells[c].contains(x)) continue;
      values.push_back(Json{{"point", u}, {"value", rational_json(w.value(c, x))}});
      break;
    }
  }
  j["values"] = std::move(values);
  return j;
}

Json to_json(const HypersurfaceCertificate& cert) {
  Json j;
  j["polynomial"] = cert.to_string();
  Json terms = Json::array();
  for (const auto& [lambda, c] : cert.terms) terms.push_back(Json{{"exponent", lambda}, {"coefficient", to_string(c)}});
  j["terms"] = std::move(terms);
  return j;
}

std::string format_bound(const BoundResult& r) {
  std::ostringstream os;
  auto row = [&os](const std::string& key, const std::string& value) {
    os << "  " << std::left << std::setw(12) << key << value << "\n";
  };
  std::ostringstream approx;
  approx << std::setprecision(6) << r.upper.approx();
  row("method", to_string(r.method));
  row("lower", to_string(r.lower) + (r.certified ? "  (certified)" : "") +
                   (r.one_sided ? "  (randomized witness)" : ""));
  row("upper", r.upper.to_string() + "  ~ " + approx.str());
  row("exact", r.exact() ? "yes, value " + to_string(r.lower) : "no");
  if (r.k_used > 0) {
    std::string jets;
    for (std::size_t i = 0; i < r.jets.size(); ++i) jets += (i ? "," : "") + std::to_string(r.jets[i]);
    row("attained", "k = " + std::to_string(r.k_used) + ", jets (" + jets + ")");
  }
  return os.str();
}

}  // namespace jetbound
