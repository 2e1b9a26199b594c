// jetbound: jet-separation bounds for Seshadri-type invariants of polytopes.
//
// Exit codes: 0 success, 1 input error, 2 internal error.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jetbound/bound_engine.hpp"
#include "jetbound/cache.hpp"
#include "jetbound/estimation_methods.hpp"
#include "jetbound/hashing.hpp"
#include "jetbound/instance_io.hpp"

using namespace jetbound;

namespace {

constexpr int kInputError = 1;
constexpr int kInternalError = 2;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string cache_dir;
  bool no_cache = false;
  unsigned threads = 1;
  bool json = false;
  bool certify = false;
};

struct Session {
  Globals g;
  std::unique_ptr<FileRankCache> cache;

  EngineOptions options(const std::string& instance_text) {
    EngineOptions o;
    o.certify = g.certify;
    o.threads = g.threads;
    o.seed = resolve_seed(instance_text);
    std::string dir = g.cache_dir;
    if (dir.empty()) {
      if (const char* env = std::getenv("JETBOUND_CACHE_DIR")) dir = env;
    }
    if (!g.no_cache && !dir.empty()) {
      if (!cache) cache = std::make_unique<FileRankCache>(dir);
      o.cache = cache.get();
    }
    return o;
  }

  std::uint64_t resolve_seed(const std::string& instance_text) const {
    if (g.seed) return *g.seed;
    if (const char* env = std::getenv("JETBOUND_SEED")) {
      try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(env, &used, 0);
        if (used == std::string(env).size()) return v;
      } catch (const std::exception&) {
      }
      throw InputError(std::string("JETBOUND_SEED is not an unsigned integer: '") + env + "'");
    }
    return fnv1a64(instance_text);
  }
};

std::string canonical_text(const Instance& inst) { return to_json(inst).dump(); }

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Weights parse_weights(const std::string& text) { return Weights::parse(text); }

std::vector<std::int64_t> parse_orders(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("jet orders: '" + item + "' is not a non-negative integer");
    }
  }
  if (out.empty()) throw InputError("jet orders: empty list");
  return out;
}

void require_budget(std::int64_t budget, std::int64_t trials) {
  if (budget <= 0) throw InputError("--k-budget must be positive");
  if (trials <= 0) throw InputError("--trials must be positive");
}

// ---------------------------------------------------------------------------

int cmd_jets(Session& s, const std::string& file, std::optional<std::int64_t> m_max,
             const std::string& ideal_file, const std::string& mbar_text) {
  const Instance inst = load_instance(file);
  const LatticePointSet pts = as_point_set(inst);
  if (pts.empty()) throw InputError("no lattice points in " + file);
  EngineOptions o = s.options(canonical_text(inst));
  Json j;
  j["command"] = "jets";
  j["points"] = pts.size();

  if (!ideal_file.empty()) {
    const Instance id = load_instance(ideal_file);
    if (id.kind != InstanceKind::ideal) throw InputError(ideal_file + ": expected an ideal");
    const auto& ideal = std::get<StaircaseIdeal>(id.payload);
    const JetRankReport rep = mbar_text.empty()
                                  ? is_full_jet_rank(pts.normalized(), ideal, o.policy())
                                  : degeneration_check(pts, ideal, parse_orders(mbar_text), o.policy());
    j["colength"] = ideal.colength();
    j["rank"] = rep.rank;
    j["full"] = rep.full;
    j["exact"] = rep.certified;
    if (!mbar_text.empty()) j["conditional_on_flat_family"] = true;
    if (rep.certificate) j["certificate"] = to_json(*rep.certificate);
    if (s.g.json) {
      emit(j);
    } else {
      std::cout << "points     " << pts.size() << "\n"
                << "colength   " << ideal.colength() << "\n"
                << "rank       " << rep.rank << (rep.full ? "  (full)" : "  (deficient)") << "\n";
      if (!mbar_text.empty() && rep.full) {
        std::cout << "separates the jets of the fat points, conditional on the supplied family being flat\n";
      }
      if (rep.certificate) std::cout << "vanishing  " << rep.certificate->to_string() << "\n";
    }
    return 0;
  }

  const JetOrderResult r = max_jet_order(pts, o.policy(), m_max, true);
  j["max_jet_order"] = r.order;
  j["stopped_by"] = r.counting_cutoff ? "counting" : "rank";
  if (r.failure && r.failure->certificate) j["certificate"] = to_json(*r.failure->certificate);
  if (s.g.json) {
    emit(j);
  } else {
    std::cout << "points         " << pts.size() << "\n"
              << "max jet order  " << r.order << "\n"
              << "stopped by     " << (r.counting_cutoff ? "counting bound" : "rank failure") << "\n";
    if (r.failure && r.failure->certificate) {
      std::cout << "vanishing      " << r.failure->certificate->to_string() << "  (order "
                << r.order + 1 << " jets)\n";
    }
  }
  return 0;
}

Json bound_record(const char* command, const Instance& inst, const Weights& w, const EngineOptions& o,
                  const BoundResult& r) {
  Json j;
  j["command"] = command;
  if (!inst.name.empty()) j["instance"] = inst.name;
  j["weights"] = w.to_string();
  j["k_budget"] = o.k_budget;
  j["trials"] = o.trials;
  j["seed"] = o.seed;
  j["result"] = to_json(r);
  return j;
}

void print_bound(const Session& s, const Json& record, const BoundResult& r, const std::string& title) {
  if (s.g.json) {
    emit(record);
  } else {
    std::cout << title << "\n" << format_bound(r);
  }
}

int cmd_seshadri(Session& s, const std::string& file, std::int64_t budget, const std::string& weights,
                 std::int64_t trials, const std::string& map_file) {
  require_budget(budget, trials);
  const Instance inst = load_instance(file);
  const RationalPolytope delta = as_polytope(inst);
  const Weights w = parse_weights(weights);
  EngineOptions o = s.options(canonical_text(inst));
  o.k_budget = budget;
  o.trials = trials;

  BoundResult r;
  if (!map_file.empty()) {
    const Instance mi = load_instance(map_file);
    if (mi.kind != InstanceKind::lattice_map) throw InputError(map_file + ": expected a lattice map");
    const auto& map = std::get<LatticeMap>(mi.payload);
    const std::size_t d = static_cast<std::size_t>(map.degree());
    if (w.size() % d != 0) {
      throw InputError("with a degree-" + std::to_string(d) + " lattice map the weights must be " +
                       std::to_string(d) + " copies of one block");
    }
    const Weights block(std::vector<Rational>(w.values().begin(), w.values().begin() + static_cast<std::ptrdiff_t>(w.size() / d)));
    if (!(block.repeated(d) == w)) {
      throw InputError("with a degree-" + std::to_string(d) + " lattice map the weights must be " +
                       std::to_string(d) + " copies of one block");
    }
    r = lattice_change_bound(delta, map, block, o).bound;
  } else if (w.size() == 1 && w.values()[0] == 1) {
    r = seshadri_lower_bound(delta, o);
  } else {
    r = multipoint_seshadri_lower(delta, w, o);
  }
  print_bound(s, bound_record("seshadri", inst, w, o, r), r, "s(Delta; " + w.to_string() + ")");
  return 0;
}

int cmd_multi(Session& s, const std::string& file, std::int64_t budget, const std::string& weights,
              std::int64_t trials) {
  require_budget(budget, trials);
  const Instance inst = load_instance(file);
  const RationalPolytope delta = as_polytope(inst);
  const Weights w = parse_weights(weights);
  EngineOptions o = s.options(canonical_text(inst));
  o.k_budget = budget;
  o.trials = trials;
  const BoundResult r = multipoint_seshadri_lower(delta, w, o);
  print_bound(s, bound_record("multi", inst, w, o, r), r, "s(Delta; " + w.to_string() + ")");
  return 0;
}

int cmd_lattice_change(Session& s, const std::string& file, const std::string& map_file,
                       std::int64_t budget, const std::string& weights, std::int64_t trials) {
  require_budget(budget, trials);
  const Instance inst = load_instance(file);
  const RationalPolytope delta = as_polytope(inst);
  const Instance mi = load_instance(map_file);
  if (mi.kind != InstanceKind::lattice_map) throw InputError(map_file + ": expected a lattice map");
  const Weights w = parse_weights(weights);
  EngineOptions o = s.options(canonical_text(inst) + canonical_text(mi));
  o.k_budget = budget;
  o.trials = trials;
  const LatticeChangeResult lc = lattice_change_bound(delta, std::get<LatticeMap>(mi.payload), w, o);
  const Weights target = w.repeated(static_cast<std::size_t>(lc.degree));
  Json j = bound_record("lattice-change", inst, target, o, lc.bound);
  j["degree"] = to_string(lc.degree);
  j["pullback"] = to_json(Instance{InstanceKind::polytope, "", lc.pullback})["vertices"];
  if (s.g.json) {
    emit(j);
  } else {
    std::cout << "degree      " << lc.degree << "\npullback    ";
    for (const auto& v : lc.pullback.vertices()) {
      std::cout << "(";
      for (std::size_t k = 0; k < v.size(); ++k) std::cout << (k ? "," : "") << to_string(v[k]);
      std::cout << ")";
    }
    std::cout << "\ns(Delta; " << target.to_string() << ")\n" << format_bound(lc.bound);
  }
  return 0;
}

int cmd_decompose(Session& s, const std::vector<std::string>& files, const std::string& per_cell,
                  const std::string& select, std::int64_t budget, std::int64_t trials) {
  require_budget(budget, trials);
  if (files.empty() || files.size() > 2) throw InputError("decompose takes [POLYTOPE] DECOMPOSITION");
  const Instance di = load_instance(files.back());
  if (di.kind != InstanceKind::decomposition) throw InputError(files.back() + ": expected a decomposition");
  const Decomposition d = std::get<DecompositionSpec>(di.payload).build();
  std::optional<Instance> pi;
  if (files.size() == 2) pi = load_instance(files.front());
  const RationalPolytope delta = pi ? as_polytope(*pi) : d.parent;

  EngineOptions o = s.options(canonical_text(di) + (pi ? canonical_text(*pi) : ""));
  o.k_budget = budget;
  o.trials = trials;

  Json j;
  j["command"] = "decompose";
  if (!di.name.empty()) j["instance"] = di.name;
  const DecompositionReport rep = validate_decomposition(d);
  if (!rep.valid) {
    std::string where;
    if (rep.pair) where = " (cells " + std::to_string(rep.pair->first) + ", " + std::to_string(rep.pair->second) + ")";
    throw InputError("invalid decomposition: " + rep.violation + where);
  }
  const LiftingOutcome lift = lifting_function_exists(d);
  if (!lift.regular()) {
    std::size_t support = 0;
    Rational rhs = 0;
    for (std::size_t i = 0; i < lift.farkas.size(); ++i) {
      if (lift.farkas[i] == 0) continue;
      ++support;
      rhs += lift.farkas[i] * lift.constraints[i].rhs;
    }
    throw InputError("non-regular decomposition: no strictly convex lifting exists (Farkas certificate combines " +
                     std::to_string(support) + " of " + std::to_string(lift.constraints.size()) +
                     " constraints into 0 >= " + to_string(rhs) + ")");
  }

  std::vector<std::size_t> cells;
  if (select.empty()) {
    for (std::size_t c = 0; c < d.cells.size(); ++c) cells.push_back(c);
  } else {
    for (auto c : parse_orders(select)) cells.push_back(static_cast<std::size_t>(c));
  }
  std::vector<Weights> weights;
  if (per_cell.empty()) {
    weights.assign(cells.size(), Weights({Rational(1)}));
  } else {
    std::stringstream ss(per_cell);
    std::string item;
    while (std::getline(ss, item, ';')) weights.push_back(parse_weights(item));
  }
  if (weights.size() != cells.size()) {
    throw InputError("--weights-per-cell lists " + std::to_string(weights.size()) + " blocks for " +
                     std::to_string(cells.size()) + " selected cells");
  }
  std::vector<std::pair<std::size_t, Weights>> selected;
  for (std::size_t i = 0; i < cells.size(); ++i) selected.emplace_back(cells[i], weights[i]);

  const DecompositionBound db = decomposition_bound(delta, d, *lift.witness, selected, o);
  Weights all = weights.front();
  for (std::size_t i = 1; i < weights.size(); ++i) all = all.concat(weights[i]);

  j["weights"] = all.to_string();
  j["k_budget"] = o.k_budget;
  j["seed"] = o.seed;
  j["witness"] = to_json(*lift.witness, d);
  Json per = Json::array();
  for (std::size_t i = 0; i < db.cell_bounds.size(); ++i) {
    per.push_back(Json{{"cell", cells[i]}, {"weights", weights[i].to_string()}, {"result", to_json(db.cell_bounds[i])}});
  }
  j["cells"] = std::move(per);
  j["result"] = to_json(db.bound);
  if (s.g.json) {
    emit(j);
    return 0;
  }
  std::cout << "decomposition  " << d.cells.size() << " cells, valid, regular\n"
            << "lifting        scale " << lift.witness->scale << ", values";
  for (const auto& v : j["witness"]["values"]) {
    std::cout << " " << v["point"].dump() << "=" << v["value"].get<std::string>();
  }
  std::cout << "\n";
  for (std::size_t i = 0; i < db.cell_bounds.size(); ++i) {
    std::cout << "cell " << cells[i] << "  s >= " << to_string(db.cell_bounds[i].lower) << "  (weights "
              << weights[i].to_string() << ")\n";
  }
  std::cout << "s(Delta; " << all.to_string() << ")\n" << format_bound(db.bound);
  return 0;
}

int cmd_cache(Session& s, const std::string& action) {
  std::string dir = s.g.cache_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("JETBOUND_CACHE_DIR")) dir = env;
  }
  if (dir.empty()) throw InputError("no cache directory: set JETBOUND_CACHE_DIR or pass --cache-dir");
  FileRankCache cache(dir);
  Json j;
  j["command"] = "cache";
  j["path"] = cache.root().string();
  j["engine_version"] = kEngineVersion;
  if (action == "stats") {
    j["entries"] = cache.entry_count();
  } else if (action == "clear") {
    j["removed"] = cache.clear();
  } else {
    throw InputError("cache action must be 'stats' or 'clear'");
  }
  if (s.g.json) {
    emit(j);
  } else if (action == "stats") {
    std::cout << "cache    " << cache.root().string() << "\nentries  " << j["entries"] << "\nversion  "
              << kEngineVersion << "\n";
  } else {
    std::cout << "removed " << j["removed"] << " entries from " << cache.root().string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jetbound: jet-separation bounds on Seshadri constants of lattice polytopes"};
  app.require_subcommand(1);
  Session session;
  Globals& g = session.g;
  app.add_option("--seed", g.seed, "RNG seed (default: $JETBOUND_SEED, else a hash of the instance)");
  app.add_option("--cache-dir", g.cache_dir, "rank cache directory (default: $JETBOUND_CACHE_DIR)");
  app.add_flag("--no-cache", g.no_cache, "ignore the rank cache");
  app.add_option("--threads", g.threads, "dilations evaluated concurrently")->check(CLI::Range(1u, 256u));
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_flag("--certify", g.certify, "compute every rank exactly");

  std::int64_t budget = 6, trials = 3;
  std::string weights = "1";
  std::optional<std::int64_t> m_max;
  std::string file, map_file, ideal_file, mbar, per_cell, select, action;
  std::vector<std::string> files;

  auto* jets = app.add_subcommand("jets", "largest jet order separated by a point set");
  jets->add_option("file", file, "polytope or lattice-set JSON")->required();
  jets->add_option("--m-max", m_max, "stop the search at this order");
  jets->add_option("--ideal", ideal_file, "rank test against a staircase ideal instead");
  jets->add_option("--mbar", mbar, "fat-point jet orders for the colength check, e.g. 3,1");

  auto* sesh = app.add_subcommand("seshadri", "bounds on s(Delta; m)");
  sesh->add_option("file", file, "polytope JSON")->required();
  sesh->add_option("--k-budget", budget, "largest dilation");
  sesh->add_option("--weights", weights, "comma-separated positive rationals");
  sesh->add_option("--trials", trials, "random point samples per jet tuple");
  sesh->add_option("--lattice-map", map_file, "bound through a lattice change");

  auto* multi = app.add_subcommand("multi", "multipoint bound via random points");
  multi->add_option("file", file, "polytope JSON")->required();
  multi->add_option("--k-budget", budget, "largest dilation");
  multi->add_option("--weights", weights, "comma-separated positive rationals")->required();
  multi->add_option("--trials", trials, "random point samples per jet tuple");

  auto* lc = app.add_subcommand("lattice-change", "bound d copies of the weights through a lattice map");
  lc->add_option("file", file, "polytope JSON")->required();
  lc->add_option("--map", map_file, "lattice-map JSON")->required();
  lc->add_option("--k-budget", budget, "largest dilation");
  lc->add_option("--weights", weights, "weights for the pullback");
  lc->add_option("--trials", trials, "random point samples per jet tuple");

  auto* dec = app.add_subcommand("decompose", "bound through a regular decomposition");
  dec->add_option("files", files, "[POLYTOPE] DECOMPOSITION")->required()->expected(1, 2);
  dec->add_option("--weights-per-cell", per_cell, "weight blocks per selected cell, e.g. '1;1;1'");
  dec->add_option("--cells", select, "selected cell indices, e.g. 0,2 (default: all)");
  dec->add_option("--k-budget", budget, "largest dilation per cell");
  dec->add_option("--trials", trials, "random point samples per jet tuple");

  auto* cache = app.add_subcommand("cache", "inspect or clear the rank cache");
  cache->add_option("action", action, "stats | clear")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*jets) return cmd_jets(session, file, m_max, ideal_file, mbar);
    if (*sesh) return cmd_seshadri(session, file, budget, weights, trials, map_file);
    if (*multi) return cmd_multi(session, file, budget, weights, trials);
    if (*lc) return cmd_lattice_change(session, file, map_file, budget, weights, trials);
    if (*dec) return cmd_decompose(session, files, per_cell, select, budget, trials);
    if (*cache) return cmd_cache(session, action);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}
