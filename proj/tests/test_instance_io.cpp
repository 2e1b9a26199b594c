#include <doctest.h>

#include "helpers.hpp"
#include "jetbound/instance_io.hpp"

using namespace jetbound;
using test::q;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_instance(text, "in.json");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("kinds are inferred from keys") {
  CHECK(parse_instance(R"({"vertices": [["0","0"],["2","1"],["1","2"]]})").kind == InstanceKind::polytope);
  CHECK(parse_instance(R"({"points": [[0,0],[1,0]]})").kind == InstanceKind::lattice_set);
  CHECK(parse_instance(R"({"generators": [[2,0],[0,2]]})").kind == InstanceKind::ideal);
  CHECK(parse_instance(R"({"matrix": [[1,1],[0,1]]})").kind == InstanceKind::lattice_map);
  CHECK(parse_instance(R"({"vertices": [[0,0],[1,0],[0,1]], "cells": [[0,1,2]]})").kind ==
        InstanceKind::decomposition);
  CHECK(parse_instance(R"({"kind": "lattice-set", "points": [], "dim": 3})").kind == InstanceKind::lattice_set);
}

TEST_CASE("payloads") {
  const auto p = parse_instance(R"({"name": "fan", "vertices": [["0","0"],["2","1"],["1","2"],["1","1"]]})");
  CHECK(p.name == "fan");
  CHECK(std::get<RationalPolytope>(p.payload) == test::fan_triangle());
  const auto r = parse_instance(R"({"vertices": [["1/2"], [3]]})");
  CHECK(std::get<RationalPolytope>(r.payload).vertices().front()[0] == q(1, 2));
  const auto id = parse_instance(R"({"generators": [[6,0],[4,1],[2,2],[1,3],[0,4]]})");
  CHECK(std::get<StaircaseIdeal>(id.payload).colength() == 13);
  const auto m = parse_instance(R"({"matrix": [[1,1,0],[1,0,1],[0,1,1]]})");
  CHECK(std::get<LatticeMap>(m.payload).degree() == 2);
  CHECK(as_point_set(p).size() == 4);
  CHECK(as_polytope(parse_instance(R"({"points": [[0,0],[2,1],[1,2],[1,1]]})")) == test::fan_triangle());
  CHECK_THROWS_AS(as_polytope(id), InputError);
}

TEST_CASE("round trips") {
  const std::vector<std::string> docs = {
      R"({"name": "t", "vertices": [["0","0"],["5/2","0"],["0","7/3"]]})",
      R"({"points": [[0,0],[3,1],[-1,2]]})",
      R"({"kind": "lattice-set", "points": [], "dim": 2})",
      R"({"generators": [[6,0],[4,1],[2,2],[1,3],[0,4]]})",
      R"({"vertices": [["0","0"],["2","1"],["1","2"],["1","1"]], "parent": [0,1,2], "cells": [[3,1,2],[3,2,0],[3,0,1]]})",
      R"({"matrix": [[2,0],[1,3]]})",
  };
  for (const auto& d : docs) {
    const Instance a = parse_instance(d);
    const Instance b = parse_instance(emit_instance(a));
    CHECK(a == b);
    CHECK(emit_instance(a) == emit_instance(b));
  }
}

TEST_CASE("diagnostics") {
  const std::string syntax = error_of("{\n  \"vertices\": [\n    [0, 0],\n    [1 0]\n  ]\n}");
  CHECK(syntax.find("in.json:4:") != std::string::npos);

  CHECK(error_of(R"({"vertices": [[0,0],[1,"x"]]})").find("/vertices/1/1") != std::string::npos);
  CHECK(error_of(R"({"vertices": [[0,0],[0.5,1]]})").find("inexact") != std::string::npos);
  CHECK(error_of(R"({"vertices": [[0,0],[1,2,3]]})").find("/vertices/1") != std::string::npos);
  CHECK(error_of(R"({"vertices": []})").find("/vertices") != std::string::npos);
  CHECK(error_of(R"({"generators": [[2,0],[1,1]]})").find("/generators") != std::string::npos);
  CHECK(error_of(R"({"matrix": [[1,2],[2,4]]})").find("singular") != std::string::npos);
  CHECK(error_of(R"({"vertices": [[0,0],[1,0],[0,1]], "cells": [[0,1,7]]})").find("/cells/0/2") != std::string::npos);
  CHECK(error_of(R"({"kind": "banana"})").find("/kind") != std::string::npos);
  CHECK(error_of(R"({"foo": 1})").find("kind") != std::string::npos);
  CHECK(error_of(R"([1,2])").find("object") != std::string::npos);
  CHECK(error_of(R"({"points": []})").find("dim") != std::string::npos);
  CHECK(error_of(R"({"points": [[0,"1/2"]]})").find("/points/0/1") != std::string::npos);
  CHECK_THROWS_AS(load_instance("/nonexistent/file.json"), InputError);
}

TEST_CASE("report json is stable") {
  BoundResult r;
  r.lower = q(2, 3);
  r.upper = {q(2), 2};
  r.k_used = 3;
  r.m_achieved = 2;
  r.jets = {2, 2};
  r.method = BoundMethod::multipoint;
  const Json j = to_json(r);
  CHECK(j["lower"] == "2/3");
  CHECK(j["upper"]["radicand"] == "2");
  CHECK(j["upper"]["root"] == 2);
  CHECK(j["upper"]["value"].is_null());
  CHECK(j["exact"] == false);
  CHECK(j.dump() == to_json(r).dump());
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys.front() == "method");
  CHECK(keys[1] == "lower");
  CHECK(format_bound(r).find("2/3") != std::string::npos);
}
