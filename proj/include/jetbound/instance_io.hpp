#pragma once

// JSON instance files and JSON reports.
//
//   polytope       {"vertices": [["0","0"], ["2","1"], ["1","2"]]}
//   lattice-set    {"points": [[0,0], [1,0]], "dim": 2}
//   ideal          {"generators": [[6,0], [4,1], [2,2], [1,3], [0,4]]}
//   decomposition  {"vertices": [...pool...], "parent": [pool indices],
//                   "cells": [[pool indices], ...]}
//   lattice-map    {"matrix": [[1,1,0], [1,0,1], [0,1,1]]}
//
// Rationals are strings "p/q" (plain integers are accepted as numbers).
// An optional "kind" names the schema, otherwise it is inferred from the
// keys; an optional "name" is carried along.

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "jetbound/bound_engine.hpp"
#include "jetbound/error.hpp"
#include "jetbound/estimation_methods.hpp"
#include "jetbound/lattice_geometry.hpp"

namespace jetbound {

using Json = nlohmann::ordered_json;

enum class InstanceKind { polytope, lattice_set, ideal, decomposition, lattice_map };

const char* to_string(InstanceKind kind);

/// Decomposition as written in a file: cells index a shared vertex pool.
/// When `parent` is empty the parent is the hull of the pool.
struct DecompositionSpec {
  std::vector<RationalVector> pool;
  std::vector<std::size_t> parent;
  std::vector<std::vector<std::size_t>> cells;

  Decomposition build() const;
  bool operator==(const DecompositionSpec&) const = default;
};

struct Instance {
  InstanceKind kind = InstanceKind::polytope;
  std::string name;
  std::variant<RationalPolytope, LatticePointSet, StaircaseIdeal, DecompositionSpec, LatticeMap> payload;

  bool operator==(const Instance&) const = default;
};

/// Thrown for malformed instance files. The message carries the source
/// (file name), a line and column for syntax errors, and a JSON pointer for
/// schema errors.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

Instance parse_instance(const std::string& text, const std::string& source = "<input>");
Instance load_instance(const std::filesystem::path& path);

Json to_json(const Instance& instance);
std::string emit_instance(const Instance& instance);

/// The payload as a polytope; a lattice set becomes its convex hull. Throws
/// InputError for other kinds.
RationalPolytope as_polytope(const Instance& instance);
/// The payload as a point set; a polytope yields its lattice points.
LatticePointSet as_point_set(const Instance& instance);

Json to_json(const UpperBound& upper);
Json to_json(const BoundResult& result);
Json to_json(const LiftingWitness& witness, const Decomposition& d);
Json to_json(const HypersurfaceCertificate& certificate);

/// Two-column human-readable table.
std::string format_bound(const BoundResult& result);

}  // namespace jetbound
