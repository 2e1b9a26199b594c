// Python bindings. Instances cross the boundary as JSON text in the CLI file
// format; results come back as JSON text with rationals as "p/q" strings.

#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jetbound/bound_engine.hpp"
#include "jetbound/cache.hpp"
#include "jetbound/estimation_methods.hpp"
#include "jetbound/hashing.hpp"
#include "jetbound/instance_io.hpp"

namespace py = pybind11;
using namespace jetbound;

namespace {

EngineOptions options(const Instance& inst, std::int64_t k_budget, std::int64_t trials,
                      std::optional<std::uint64_t> seed, bool certify) {
  if (k_budget <= 0) throw InputError("k_budget must be positive");
  if (trials <= 0) throw InputError("trials must be positive");
  EngineOptions o;
  o.k_budget = k_budget;
  o.trials = trials;
  o.certify = certify;
  o.seed = seed ? *seed : fnv1a64(to_json(inst).dump());
  return o;
}

std::string canonical(const std::string& text) { return emit_instance(parse_instance(text)); }

std::string seshadri(const std::string& polytope, std::int64_t k_budget, std::optional<std::uint64_t> seed,
                     bool certify) {
  const Instance inst = parse_instance(polytope, "polytope");
  return to_json(seshadri_lower_bound(as_polytope(inst), options(inst, k_budget, 1, seed, certify))).dump();
}

std::string multi(const std::string& polytope, const std::string& weights, std::int64_t k_budget,
                  std::int64_t trials, std::optional<std::uint64_t> seed, bool certify) {
  const Instance inst = parse_instance(polytope, "polytope");
  const auto r = multipoint_seshadri_lower(as_polytope(inst), Weights::parse(weights),
                                           options(inst, k_budget, trials, seed, certify));
  return to_json(r).dump();
}

std::string lattice_change(const std::string& polytope, const std::string& map, const std::string& weights,
                           std::int64_t k_budget, std::optional<std::uint64_t> seed, bool certify) {
  const Instance inst = parse_instance(polytope, "polytope");
  const Instance m = parse_instance(map, "map");
  if (m.kind != InstanceKind::lattice_map) throw InputError("map: expected a lattice map");
  const auto lc = lattice_change_bound(as_polytope(inst), std::get<LatticeMap>(m.payload), Weights::parse(weights),
                                       options(inst, k_budget, 1, seed, certify));
  Json j;
  j["degree"] = to_string(lc.degree);
  j["pullback"] = to_json(Instance{InstanceKind::polytope, "", lc.pullback})["vertices"];
  j["result"] = to_json(lc.bound);
  return j.dump();
}

std::string jets(const std::string& points, const std::optional<std::string>& ideal,
                 const std::optional<std::vector<std::int64_t>>& mbar, std::optional<std::int64_t> m_max,
                 bool certify) {
  const Instance inst = parse_instance(points, "points");
  const LatticePointSet s = as_point_set(inst);
  if (s.empty()) throw InputError("points: no lattice points");
  const RankPolicy policy{certify, fnv1a64(to_json(inst).dump()), nullptr};
  Json j;
  j["points"] = s.size();
  if (ideal) {
    const Instance id = parse_instance(*ideal, "ideal");
    if (id.kind != InstanceKind::ideal) throw InputError("ideal: expected generators");
    const auto& staircase = std::get<StaircaseIdeal>(id.payload);
    const auto rep = mbar ? degeneration_check(s, staircase, *mbar, policy)
                          : is_full_jet_rank(s.normalized(), staircase, policy);
    j["colength"] = staircase.colength();
    j["rank"] = rep.rank;
    j["full"] = rep.full;
    j["certified"] = rep.certified;
    j["certificate"] = rep.certificate ? to_json(*rep.certificate) : Json();
  } else {
    const auto r = max_jet_order(s, policy, m_max, true);
    j["max_jet_order"] = r.order;
    j["counting_cutoff"] = r.counting_cutoff;
    j["certified"] = r.certified;
    j["certificate"] = (r.failure && r.failure->certificate) ? to_json(*r.failure->certificate) : Json();
  }
  return j.dump();
}

std::string decompose(const std::string& decomposition, const std::optional<std::string>& polytope,
                      const std::optional<std::vector<std::string>>& weights, std::int64_t k_budget,
                      std::int64_t trials, std::optional<std::uint64_t> seed, bool certify) {
  const Instance inst = parse_instance(decomposition, "decomposition");
  if (inst.kind != InstanceKind::decomposition) throw InputError("decomposition: expected cells");
  const Decomposition d = std::get<DecompositionSpec>(inst.payload).build();
  Json j;
  const auto report = validate_decomposition(d);
  j["valid"] = report.valid;
  j["violation"] = report.valid ? Json() : Json(report.violation);
  if (!report.valid) return j.dump();
  const auto lift = lifting_function_exists(d);
  j["regular"] = lift.regular();
  if (!lift.regular()) {
    Json y = Json::array();
    for (const auto& v : lift.farkas) y.push_back(to_string(v));
    j["farkas"] = y;
    return j.dump();
  }
  j["witness"] = to_json(*lift.witness, d);
  const RationalPolytope delta = polytope ? as_polytope(parse_instance(*polytope, "polytope")) : d.parent;
  if (weights && weights->size() != d.cells.size()) throw InputError("weights: one entry per cell expected");
  std::vector<std::pair<std::size_t, Weights>> selected;
  for (std::size_t i = 0; i < d.cells.size(); ++i) {
    selected.emplace_back(i, weights ? Weights::parse(weights->at(i)) : Weights({Rational(1)}));
  }
  const auto db = decomposition_bound(delta, d, *lift.witness, selected, options(inst, k_budget, trials, seed, certify));
  Json cells = Json::array();
  for (const auto& c : db.cell_bounds) cells.push_back(to_json(c));
  j["cells"] = cells;
  j["result"] = to_json(db.bound);
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact jet-separation bounds for Seshadri constants of lattice polytopes.";
  m.attr("engine_version") = kEngineVersion;
  m.def("canonical", &canonical, py::arg("instance"));
  m.def("seshadri", &seshadri, py::arg("polytope"), py::arg("k_budget") = 6, py::arg("seed") = py::none(),
        py::arg("certify") = false);
  m.def("multi", &multi, py::arg("polytope"), py::arg("weights"), py::arg("k_budget") = 6, py::arg("trials") = 3,
        py::arg("seed") = py::none(), py::arg("certify") = false);
  m.def("lattice_change", &lattice_change, py::arg("polytope"), py::arg("map"), py::arg("weights") = "1",
        py::arg("k_budget") = 6, py::arg("seed") = py::none(), py::arg("certify") = false);
  m.def("jets", &jets, py::arg("points"), py::arg("ideal") = py::none(), py::arg("mbar") = py::none(),
        py::arg("m_max") = py::none(), py::arg("certify") = false);
  m.def("decompose", &decompose, py::arg("decomposition"), py::arg("polytope") = py::none(),
        py::arg("weights") = py::none(), py::arg("k_budget") = 6, py::arg("trials") = 3,
        py::arg("seed") = py::none(), py::arg("certify") = false);
}
