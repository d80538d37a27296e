#include "hopfq/fixtures.hpp"

#include "hopfq/cyclo.hpp"

#include <algorithm>

namespace hopfq {
namespace fixtures {

namespace {

using FileSet = std::map<std::string, std::string>;

// The Z_2-minimal quivers with concrete scales, the worked gluing examples,
// the T(4)-on-K_2 example, and the small Z_3 catalogs.
const std::map<std::string, FileSet>& all() {
  static const std::map<std::string, FileSet> data = {
      {"sweedler-I",
       {{"quiver.json", R"json({
  "vertices": ["1", "2"],
  "arrows": [
    {"id": "a12", "src": "1", "tgt": "2"},
    {"id": "a21", "src": "2", "tgt": "1"}
  ]
})json"},
        {"action.json", R"json({
  "n": 2,
  "vertex_perm": {"1": "2", "2": "1"},
  "arrows": {
    "a12": {"image": "a21", "scale": "2"},
    "a21": {"image": "a12", "scale": "1/2"}
  }
})json"},
        {"params.json", R"json({
  "gamma": {"orbit-of:1": "1"},
  "lambda": {"a12": "1", "a21": "-1/2"}
})json"}}},
      {"sweedler-II",
       {{"quiver.json", R"json({
  "vertices": ["p1", "m1"],
  "arrows": [{"id": "b11", "src": "p1", "tgt": "m1"}]
})json"},
        {"action.json", R"json({
  "n": 2,
  "vertex_perm": {"p1": "p1", "m1": "m1"},
  "arrows": {"b11": {"image": "b11", "scale": "-1"}}
})json"},
        {"params.json", R"json({"gamma": {}, "lambda": {}})json"}}},
      {"sweedler-III",
       {{"quiver.json", R"json({
  "vertices": ["p1", "m1", "m2"],
  "arrows": [
    {"id": "b11", "src": "p1", "tgt": "m1"},
    {"id": "b12", "src": "p1", "tgt": "m2"}
  ]
})json"},
        {"action.json", R"json({
  "n": 2,
  "vertex_perm": {"p1": "p1", "m1": "m2", "m2": "m1"},
  "arrows": {
    "b11": {"image": "b12", "scale": "2"},
    "b12": {"image": "b11", "scale": "1/2"}
  }
})json"},
        {"params.json", R"json({
  "gamma": {"orbit-of:m1": "1"},
  "lambda": {"b11": "2", "b12": "-1/2"}
})json"}}},
      {"sweedler-IV",
       {{"quiver.json", R"json({
  "vertices": ["p1", "p2", "m1"],
  "arrows": [
    {"id": "b11", "src": "p1", "tgt": "m1"},
    {"id": "b21", "src": "p2", "tgt": "m1"}
  ]
})json"},
        {"action.json", R"json({
  "n": 2,
  "vertex_perm": {"p1": "p2", "p2": "p1", "m1": "m1"},
  "arrows": {
    "b11": {"image": "b21", "scale": "2"},
    "b21": {"image": "b11", "scale": "1/2"}
  }
})json"},
        {"params.json", R"json({
  "gamma": {"orbit-of:p1": "1"},
  "lambda": {"b11": "1", "b21": "-1"}
})json"}}},
      {"sweedler-V",
       {{"quiver.json", R"json({
  "vertices": ["p1", "p2", "m1", "m2"],
  "arrows": [
    {"id": "b11", "src": "p1", "tgt": "m1"},
    {"id": "b22", "src": "p2", "tgt": "m2"}
  ]
})json"},
        {"action.json", R"json({
  "n": 2,
  "vertex_perm": {"p1": "p2", "p2": "p1", "m1": "m2", "m2": "m1"},
  "arrows": {
    "b11": {"image": "b22", "scale": "2"},
    "b22": {"image": "b11", "scale": "1/2"}
  }
})json"},
        {"params.json", R"json({
  "gamma": {"orbit-of:p1": "1", "orbit-of:m1": "1"},
  "lambda": {}
})json"}}},
      {"sweedler-VI",
       {{"quiver.json", R"json({
  "vertices": ["p1", "p2", "m1", "m2"],
  "arrows": [
    {"id": "b11", "src": "p1", "tgt": "m1"},
    {"id": "b22", "src": "p2", "tgt": "m2"},
    {"id": "b12", "src": "p1", "tgt": "m2"},
    {"id": "b21", "src": "p2", "tgt": "m1"}
  ]
})json"},
        {"action.json", R"json({
  "n": 2,
  "vertex_perm": {"p1": "p2", "p2": "p1", "m1": "m2", "m2": "m1"},
  "arrows": {
    "b11": {"image": "b22", "scale": "2"},
    "b22": {"image": "b11", "scale": "1/2"},
    "b12": {"image": "b21", "scale": "3"},
    "b21": {"image": "b12", "scale": "1/3"}
  }
})json"},
        {"params.json", R"json({
  "gamma": {"orbit-of:p1": "2", "orbit-of:m1": "1"},
  "lambda": {"b11": "2", "b22": "-3", "b12": "3/2", "b21": "-1"}
})json"}}},
      {"z4-K2",
       {{"quiver.json", R"json({
  "vertices": ["1", "2"],
  "arrows": [
    {"id": "a12", "src": "1", "tgt": "2"},
    {"id": "a21", "src": "2", "tgt": "1"}
  ]
})json"},
        {"action.json", R"json({
  "n": 4,
  "vertex_perm": {"1": "2", "2": "1"},
  "arrows": {
    "a12": {"image": "a21", "scale": "z^2"},
    "a21": {"image": "a12", "scale": "z^2"}
  }
})json"},
        {"params.json", R"json({
  "gamma": {},
  "lambda": {"a12": "1", "a21": "1"}
})json"}}},
      {"ex-3.7",
       {{"quiver.json", R"json({
  "vertices": ["u", "v"],
  "arrows": [{"id": "f", "src": "u", "tgt": "v"}]
})json"},
        {"action.json", R"json({
  "n": 2,
  "vertex_perm": {"u": "u", "v": "v"},
  "arrows": {"f": {"image": "f", "scale": "-1"}}
})json"},
        {"params.json", R"json({"gamma": {}, "lambda": {}})json"}}},
      {"ex-4.4",
       {{"quiver.json", R"json({
  "vertices": ["t1", "t2", "b1", "b2", "b3", "b4"],
  "arrows": [
    {"id": "a11", "src": "t1", "tgt": "b1"},
    {"id": "a12", "src": "t1", "tgt": "b2"},
    {"id": "a13", "src": "t1", "tgt": "b3"},
    {"id": "a14", "src": "t1", "tgt": "b4"},
    {"id": "a21", "src": "t2", "tgt": "b1"},
    {"id": "a22", "src": "t2", "tgt": "b2"},
    {"id": "a23", "src": "t2", "tgt": "b3"},
    {"id": "a24", "src": "t2", "tgt": "b4"}
  ]
})json"},
        {"action.json", R"json({
  "n": 4,
  "vertex_perm": {"t1": "t2", "t2": "t1", "b1": "b2", "b2": "b3", "b3": "b4", "b4": "b1"},
  "arrows": {
    "a11": {"image": "a22", "scale": "1"},
    "a22": {"image": "a13", "scale": "1"},
    "a13": {"image": "a24", "scale": "1"},
    "a24": {"image": "a11", "scale": "1"},
    "a21": {"image": "a12", "scale": "1"},
    "a12": {"image": "a23", "scale": "1"},
    "a23": {"image": "a14", "scale": "1"},
    "a14": {"image": "a21", "scale": "1"}
  }
})json"}}},
      {"ex-4.4-z2",
       {{"quiver.json", R"json({
  "vertices": ["t1", "t2", "b1", "b2", "b3", "b4"],
  "arrows": [
    {"id": "a11", "src": "t1", "tgt": "b1"},
    {"id": "a12", "src": "t1", "tgt": "b2"},
    {"id": "a13", "src": "t1", "tgt": "b3"},
    {"id": "a14", "src": "t1", "tgt": "b4"},
    {"id": "a21", "src": "t2", "tgt": "b1"},
    {"id": "a22", "src": "t2", "tgt": "b2"},
    {"id": "a23", "src": "t2", "tgt": "b3"},
    {"id": "a24", "src": "t2", "tgt": "b4"}
  ]
})json"},
        {"action.json", R"json({
  "n": 2,
  "vertex_perm": {"t1": "t2", "t2": "t1", "b1": "b2", "b2": "b1", "b3": "b4", "b4": "b3"},
  "arrows": {
    "a11": {"image": "a22", "scale": "1"},
    "a22": {"image": "a11", "scale": "1"},
    "a12": {"image": "a21", "scale": "1"},
    "a21": {"image": "a12", "scale": "1"},
    "a13": {"image": "a24", "scale": "1"},
    "a24": {"image": "a13", "scale": "1"},
    "a14": {"image": "a23", "scale": "1"},
    "a23": {"image": "a14", "scale": "1"}
  }
})json"}}},
      {"ex-7.7",
       {{"quiver.json", R"json({
  "vertices": ["v1", "v2", "v3", "v4", "v5", "v6"],
  "arrows": [
    {"id": "f1", "src": "v1", "tgt": "v2"},
    {"id": "f2", "src": "v2", "tgt": "v1"},
    {"id": "f3", "src": "v1", "tgt": "v3"},
    {"id": "f4", "src": "v2", "tgt": "v4"},
    {"id": "f5", "src": "v5", "tgt": "v3"},
    {"id": "f6", "src": "v6", "tgt": "v4"},
    {"id": "f7", "src": "v1", "tgt": "v5"},
    {"id": "f8", "src": "v2", "tgt": "v6"},
    {"id": "f9", "src": "v1", "tgt": "v6"},
    {"id": "f10", "src": "v2", "tgt": "v5"}
  ]
})json"},
        {"action.json", R"json({
  "n": 2,
  "vertex_perm": {"v1": "v2", "v2": "v1", "v3": "v4", "v4": "v3", "v5": "v6", "v6": "v5"},
  "arrows": {
    "f1": {"image": "f2", "scale": "1"},
    "f2": {"image": "f1", "scale": "1"},
    "f3": {"image": "f4", "scale": "1"},
    "f4": {"image": "f3", "scale": "1"},
    "f5": {"image": "f6", "scale": "1"},
    "f6": {"image": "f5", "scale": "1"},
    "f7": {"image": "f8", "scale": "1"},
    "f8": {"image": "f7", "scale": "1"},
    "f9": {"image": "f10", "scale": "1"},
    "f10": {"image": "f9", "scale": "1"}
  }
})json"},
        {"params.json", R"json({
  "gamma": {"orbit-of:v1": "1", "orbit-of:v3": "1", "orbit-of:v5": "1"},
  "lambda": {"f1": "1/2", "f2": "-1/2", "f7": "2", "f8": "-2"}
})json"}}},
      {"ex-7.8",
       {{"quiver.json", R"json({
  "vertices": ["v0", "v1", "v2", "v3", "v4"],
  "arrows": [
    {"id": "f1", "src": "v0", "tgt": "v1"},
    {"id": "f2", "src": "v0", "tgt": "v2"},
    {"id": "f3", "src": "v0", "tgt": "v3"},
    {"id": "f4", "src": "v1", "tgt": "v4"},
    {"id": "f5", "src": "v2", "tgt": "v4"},
    {"id": "f6", "src": "v3", "tgt": "v4"},
    {"id": "f7", "src": "v1", "tgt": "v2"},
    {"id": "f8", "src": "v2", "tgt": "v3"},
    {"id": "f9", "src": "v3", "tgt": "v1"},
    {"id": "f10", "src": "v1", "tgt": "v3"},
    {"id": "f11", "src": "v3", "tgt": "v2"},
    {"id": "f12", "src": "v2", "tgt": "v1"}
  ]
})json"},
        {"action.json", R"json({
  "n": 3,
  "vertex_perm": {"v0": "v0", "v1": "v2", "v2": "v3", "v3": "v1", "v4": "v4"},
  "arrows": {
    "f1": {"image": "f2", "scale": "1"},
    "f2": {"image": "f3", "scale": "1"},
    "f3": {"image": "f1", "scale": "1"},
    "f4": {"image": "f5", "scale": "1"},
    "f5": {"image": "f6", "scale": "1"},
    "f6": {"image": "f4", "scale": "1"},
    "f7": {"image": "f8", "scale": "1"},
    "f8": {"image": "f9", "scale": "1"},
    "f9": {"image": "f7", "scale": "1"},
    "f10": {"image": "f12", "scale": "1"},
    "f12": {"image": "f11", "scale": "1"},
    "f11": {"image": "f10", "scale": "1"}
  }
})json"},
        {"params.json", R"json({
  "gamma": {"orbit-of:v1": "1"},
  "lambda": {
    "f1": "-1", "f2": "1 - z", "f3": "z",
    "f4": "1", "f5": "z - 1", "f6": "-z",
    "f7": "2", "f8": "2*z - 2", "f9": "-2*z",
    "f10": "1/2", "f12": "1/2*z - 1/2", "f11": "-1/2*z"
  }
})json"}}},
      {"z3-A1",
       {{"quiver.json", R"json({
  "vertices": ["v1", "v2", "v3"],
  "arrows": [
    {"id": "a13", "src": "v1", "tgt": "v3"},
    {"id": "a32", "src": "v3", "tgt": "v2"},
    {"id": "a21", "src": "v2", "tgt": "v1"}
  ]
})json"},
        {"action.json", R"json({
  "n": 3,
  "vertex_perm": {"v1": "v3", "v3": "v2", "v2": "v1"},
  "arrows": {
    "a13": {"image": "a32", "scale": "1"},
    "a32": {"image": "a21", "scale": "1"},
    "a21": {"image": "a13", "scale": "1"}
  }
})json"}}},
      {"z3-A2",
       {{"quiver.json", R"json({
  "vertices": ["v1", "v2", "v3"],
  "arrows": [
    {"id": "a12", "src": "v1", "tgt": "v2"},
    {"id": "a23", "src": "v2", "tgt": "v3"},
    {"id": "a31", "src": "v3", "tgt": "v1"}
  ]
})json"},
        {"action.json", R"json({
  "n": 3,
  "vertex_perm": {"v1": "v3", "v3": "v2", "v2": "v1"},
  "arrows": {
    "a12": {"image": "a31", "scale": "1"},
    "a31": {"image": "a23", "scale": "1"},
    "a23": {"image": "a12", "scale": "1"}
  }
})json"}}},
      {"z3-A3",
       {{"quiver.json", R"json({
  "vertices": ["v1", "v2", "v3"],
  "arrows": [
    {"id": "a12", "src": "v1", "tgt": "v2"},
    {"id": "a23", "src": "v2", "tgt": "v3"},
    {"id": "a31", "src": "v3", "tgt": "v1"},
    {"id": "a13", "src": "v1", "tgt": "v3"},
    {"id": "a32", "src": "v3", "tgt": "v2"},
    {"id": "a21", "src": "v2", "tgt": "v1"}
  ]
})json"},
        {"action.json", R"json({
  "n": 3,
  "vertex_perm": {"v1": "v3", "v3": "v2", "v2": "v1"},
  "arrows": {
    "a12": {"image": "a31", "scale": "1"},
    "a31": {"image": "a23", "scale": "1"},
    "a23": {"image": "a12", "scale": "1"},
    "a13": {"image": "a32", "scale": "1"},
    "a32": {"image": "a21", "scale": "1"},
    "a21": {"image": "a13", "scale": "1"}
  }
})json"}}},
      {"z3-B1",
       {{"quiver.json", R"json({
  "vertices": ["p1", "m1"],
  "arrows": [{"id": "b11", "src": "p1", "tgt": "m1"}]
})json"},
        {"action.json", R"json({
  "n": 3,
  "vertex_perm": {"p1": "p1", "m1": "m1"},
  "arrows": {"b11": {"image": "b11", "scale": "1"}}
})json"}}},
      {"z3-B2",
       {{"quiver.json", R"json({
  "vertices": ["p1", "m1", "m2", "m3"],
  "arrows": [
    {"id": "b11", "src": "p1", "tgt": "m1"},
    {"id": "b12", "src": "p1", "tgt": "m2"},
    {"id": "b13", "src": "p1", "tgt": "m3"}
  ]
})json"},
        {"action.json", R"json({
  "n": 3,
  "vertex_perm": {"p1": "p1", "m1": "m2", "m2": "m3", "m3": "m1"},
  "arrows": {
    "b11": {"image": "b12", "scale": "1"},
    "b12": {"image": "b13", "scale": "1"},
    "b13": {"image": "b11", "scale": "1"}
  }
})json"}}},
      {"z3-B3",
       {{"quiver.json", R"json({
  "vertices": ["p1", "p2", "p3", "m1"],
  "arrows": [
    {"id": "b11", "src": "p1", "tgt": "m1"},
    {"id": "b21", "src": "p2", "tgt": "m1"},
    {"id": "b31", "src": "p3", "tgt": "m1"}
  ]
})json"},
        {"action.json", R"json({
  "n": 3,
  "vertex_perm": {"p1": "p2", "p2": "p3", "p3": "p1", "m1": "m1"},
  "arrows": {
    "b11": {"image": "b21", "scale": "1"},
    "b21": {"image": "b31", "scale": "1"},
    "b31": {"image": "b11", "scale": "1"}
  }
})json"}}},
      {"z3-B4",
       {{"quiver.json", R"json({
  "vertices": ["p1", "p2", "p3", "m1", "m2", "m3"],
  "arrows": [
    {"id": "b11", "src": "p1", "tgt": "m1"},
    {"id": "b22", "src": "p2", "tgt": "m2"},
    {"id": "b33", "src": "p3", "tgt": "m3"}
  ]
})json"},
        {"action.json", R"json({
  "n": 3,
  "vertex_perm": {"p1": "p2", "p2": "p3", "p3": "p1", "m1": "m2", "m2": "m3", "m3": "m1"},
  "arrows": {
    "b11": {"image": "b22", "scale": "1"},
    "b22": {"image": "b33", "scale": "1"},
    "b33": {"image": "b11", "scale": "1"}
  }
})json"}}},
      {"z3-B5",
       {{"quiver.json", R"json({
  "vertices": ["p1", "p2", "p3", "m1", "m2", "m3"],
  "arrows": [
    {"id": "b11", "src": "p1", "tgt": "m1"},
    {"id": "b22", "src": "p2", "tgt": "m2"},
    {"id": "b33", "src": "p3", "tgt": "m3"},
    {"id": "b12", "src": "p1", "tgt": "m2"},
    {"id": "b23", "src": "p2", "tgt": "m3"},
    {"id": "b31", "src": "p3", "tgt": "m1"}
  ]
})json"},
        {"action.json", R"json({
  "n": 3,
  "vertex_perm": {"p1": "p2", "p2": "p3", "p3": "p1", "m1": "m2", "m2": "m3", "m3": "m1"},
  "arrows": {
    "b11": {"image": "b22", "scale": "1"},
    "b22": {"image": "b33", "scale": "1"},
    "b33": {"image": "b11", "scale": "1"},
    "b12": {"image": "b23", "scale": "1"},
    "b23": {"image": "b31", "scale": "1"},
    "b31": {"image": "b12", "scale": "1"}
  }
})json"}}},
      {"z3-B6",
       {{"quiver.json", R"json({
  "vertices": ["p1", "p2", "p3", "m1", "m2", "m3"],
  "arrows": [
    {"id": "b11", "src": "p1", "tgt": "m1"},
    {"id": "b12", "src": "p1", "tgt": "m2"},
    {"id": "b13", "src": "p1", "tgt": "m3"},
    {"id": "b21", "src": "p2", "tgt": "m1"},
    {"id": "b22", "src": "p2", "tgt": "m2"},
    {"id": "b23", "src": "p2", "tgt": "m3"},
    {"id": "b31", "src": "p3", "tgt": "m1"},
    {"id": "b32", "src": "p3", "tgt": "m2"},
    {"id": "b33", "src": "p3", "tgt": "m3"}
  ]
})json"},
        {"action.json", R"json({
  "n": 3,
  "vertex_perm": {"p1": "p2", "p2": "p3", "p3": "p1", "m1": "m2", "m2": "m3", "m3": "m1"},
  "arrows": {
    "b11": {"image": "b22", "scale": "1"},
    "b22": {"image": "b33", "scale": "1"},
    "b33": {"image": "b11", "scale": "1"},
    "b12": {"image": "b23", "scale": "1"},
    "b23": {"image": "b31", "scale": "1"},
    "b31": {"image": "b12", "scale": "1"},
    "b13": {"image": "b21", "scale": "1"},
    "b21": {"image": "b32", "scale": "1"},
    "b32": {"image": "b13", "scale": "1"}
  }
})json"}}},
      {"uq-K3",
       {{"quiver.json", R"json({
  "vertices": ["v1", "v2", "v3"],
  "arrows": [
    {"id": "a12", "src": "v1", "tgt": "v2"},
    {"id": "a13", "src": "v1", "tgt": "v3"},
    {"id": "a21", "src": "v2", "tgt": "v1"},
    {"id": "a23", "src": "v2", "tgt": "v3"},
    {"id": "a31", "src": "v3", "tgt": "v1"},
    {"id": "a32", "src": "v3", "tgt": "v2"}
  ]
})json"},
        {"action.json", R"json({
  "n": 3,
  "vertex_perm": {"v1": "v2", "v2": "v3", "v3": "v1"},
  "arrows": {
    "a12": {"image": "a23", "scale": "1"},
    "a23": {"image": "a31", "scale": "1"},
    "a31": {"image": "a12", "scale": "1"},
    "a13": {"image": "a21", "scale": "1"},
    "a21": {"image": "a32", "scale": "1"},
    "a32": {"image": "a13", "scale": "1"}
  }
})json"},
        {"uq-params.json", R"json({
  "gammaE": {"orbit-of:v1": "1"},
  "gammaF": {"orbit-of:v1": "-z^5/(z^10 - 1)^2"},
  "lambdaE": {
    "a12": "1", "a13": "1",
    "a23": "z^2", "a21": "z^2",
    "a31": "z^4", "a32": "z^4"
  },
  "lambdaF": {}
})json"}}},
      {"double-K3",
       {{"quiver.json", R"json({
  "vertices": ["v1", "v2", "v3"],
  "arrows": [
    {"id": "a12", "src": "v1", "tgt": "v2"},
    {"id": "a13", "src": "v1", "tgt": "v3"},
    {"id": "a21", "src": "v2", "tgt": "v1"},
    {"id": "a23", "src": "v2", "tgt": "v3"},
    {"id": "a31", "src": "v3", "tgt": "v1"},
    {"id": "a32", "src": "v3", "tgt": "v2"}
  ]
})json"},
        {"action.json", R"json({
  "n": 3,
  "vertex_perm": {"v1": "v2", "v2": "v3", "v3": "v1"},
  "arrows": {
    "a12": {"image": "a23", "scale": "1"},
    "a23": {"image": "a31", "scale": "1"},
    "a31": {"image": "a12", "scale": "1"},
    "a13": {"image": "a21", "scale": "1"},
    "a21": {"image": "a32", "scale": "1"},
    "a32": {"image": "a13", "scale": "1"}
  }
})json"},
        {"action2.json", R"json({
  "n": 3,
  "vertex_perm": {"v1": "v2", "v2": "v3", "v3": "v1"},
  "arrows": {
    "a12": {"image": "a23", "scale": "1"},
    "a23": {"image": "a31", "scale": "1"},
    "a31": {"image": "a12", "scale": "1"},
    "a13": {"image": "a21", "scale": "1"},
    "a21": {"image": "a32", "scale": "1"},
    "a32": {"image": "a13", "scale": "1"}
  }
})json"},
        {"double-params.json", R"json({
  "gammax": {"orbit-of:v1": "1"},
  "gammaX": {"orbit-of:v1": "1/(1 - z^4)"},
  "lambdax": {
    "a12": "1", "a13": "1",
    "a23": "z^2", "a21": "z^2",
    "a31": "z^4", "a32": "z^4"
  },
  "lambdaX": {
    "a12": "z^2", "a13": "1",
    "a23": "1", "a21": "z^4",
    "a31": "z^4", "a32": "z^2"
  }
})json"}}},
  };
  return data;
}

}  // namespace

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : all()) out.push_back(name);
  std::sort(out.begin(), out.end());
  return out;
}

bool exists(const std::string& name) { return all().count(name) > 0; }

std::map<std::string, std::string> files(const std::string& name) {
  auto it = all().find(name);
  if (it == all().end()) throw CycError("unknown fixture '" + name + "'");
  return it->second;
}

}  // namespace fixtures
}  // namespace hopfq
