#include "hhokit/cli.hpp"
#include "hhokit/errors.hpp"

namespace hhokit::cli {

namespace {

const char* kKdv = R"json({
  "schema": 1,
  "name": "kdv",
  "description": "KdV u_t = u_xxx + u u_x with its two local Hamiltonian operators and a non-bivector",
  "n": 1,
  "system": {"kind": "general", "f": ["u1_x3 + u1*u1_x"]},
  "operators": [
    {"name": "A1", "kind": "bivector", "components": ["p1_x"]},
    {"name": "A2", "kind": "bivector", "components": ["p1_x3 + 2/3*u1*p1_x + 1/3*u1_x*p1"]},
    {"name": "bad", "kind": "bivector", "components": ["p1_x3 + u1*p1_x"]}
  ],
  "tasks": [
    {"command": "covering", "expect": {"pt_rules": ["p1_x3 + u1*p1_x"]}},
    {"command": "check-compat", "operator": "A1", "expect": {"pass": true}},
    {"command": "check-compat", "operator": "A2", "expect": {"pass": true}},
    {"command": "check-compat", "operator": "bad", "expect": {"pass": false}},
    {"command": "check-op", "operator": "A2", "expect": {"error": true}},
    {"command": "find-bivectors", "order": 3, "degree": 1,
     "expect": {"dimension": 2, "basis": [["p1_x"], ["p1_x3 + 2/3*u1*p1_x + 1/3*u1_x*p1"]]}}
  ]
})json";

const char* kFirstOrderPass = R"json({
  "schema": 1,
  "name": "first-order-pass",
  "description": "Flat first-order operators compatible with u_t = V u_x, V = [[u1, u2], [u2, u1]]",
  "n": 2,
  "system": {"kind": "hydrodynamic", "V": [["u1", "u2"], ["u2", "u1"]]},
  "operators": [
    {"name": "euclid", "kind": "first-order", "g": [["1", "0"], ["0", "1"]]},
    {"name": "polar", "kind": "first-order", "variance": "lower", "g": [["1", "0"], ["0", "u1^2"]]}
  ],
  "tasks": [
    {"command": "check-op", "operator": "euclid", "expect": {"pass": true}},
    {"command": "check-op", "operator": "polar", "expect": {"pass": true}},
    {"command": "check-compat", "operator": "euclid", "expect": {"pass": true, "oracles_agree": true}}
  ]
})json";

const char* kFirstOrderFail = R"json({
  "schema": 1,
  "name": "first-order-fail",
  "description": "Failing first-order instances: a non-potential velocity matrix and a non-compatible connection",
  "n": 2,
  "system": {"kind": "hydrodynamic", "V": [["u2", "0"], ["0", "u1"]]},
  "operators": [
    {"name": "euclid", "kind": "first-order", "g": [["1", "0"], ["0", "1"]]},
    {"name": "bad-connection", "kind": "first-order", "g": [["1", "0"], ["0", "1"]],
     "Gamma": [{"indices": [1, 1, 1], "value": "1"}]}
  ],
  "tasks": [
    {"command": "check-compat", "operator": "euclid",
     "expect": {"pass": false, "oracles_agree": true, "families_fail": ["covariant-curl", "expanded-uxx-p"]}},
    {"command": "check-op", "operator": "bad-connection",
     "expect": {"pass": false, "families_fail": ["metric-compatibility"]}}
  ]
})json";

const char* kN4 = R"json({
  "schema": 1,
  "name": "n4-second-order",
  "description": "n = 4 second-order operator g_ij = T_ijk u^k + g0_ij with T_123 = 1, g0_34 = 1 and its ten-parameter flux family over u3 (potential coordinates u = b_x)",
  "n": 4,
  "system": {"kind": "conservative", "flux": [
    "(c4*u1^2 + (c1*u2 + c3*u3 + c8)*u1 + c10*u3 - c1*u4 - c2)/u3",
    "(c1*u2^2 + (c3*u3 + c4*u1 + c8)*u2 + c9*u3 + c4*u4 + c6)/u3",
    "c1*u2 + c3*u3 + c4*u1 + c7",
    "((c1*u2 + c3*u3 + c4*u1)*u4 + c2*u2 + c5*u3 + c6*u1)/u3"
  ]},
  "operators": [
    {"name": "g", "kind": "second-order",
     "T": {"alternating": [{"indices": [1, 2, 3], "value": "1"}]},
     "g0": {"skew": [{"indices": [3, 4], "value": "1"}]}}
  ],
  "tasks": [
    {"command": "check-op", "operator": "g", "expect": {"pass": true}},
    {"command": "check-compat", "operator": "g", "expect": {"pass": true, "oracles_agree": true}},
    {"command": "classify",
     "expect": {"linear_degeneracy": true, "haantjes_zero": true, "char_poly_square": true}},
    {"command": "find-fluxes", "operator": "g", "degree": 2, "denominator": "u3",
     "expect": {"dimension_at_least": 10, "classification.linear_degeneracy": true,
                "classification.haantjes_zero": true}}
  ]
})json";

const char* kN4Printed = R"json({
  "schema": 1,
  "name": "n4-printed",
  "description": "Informational: the n = 4 flux family transcribed literally as printed (b^1_t carries c2*u3*u1 and -c1*u1); it is not compatible",
  "n": 4,
  "system": {"kind": "conservative", "flux": [
    "(c4*u1^2 + (c1*u2 + c2*u3 + c8)*u1 + c10*u3 - c1*u1 - c2)/u3",
    "(c1*u2^2 + (c3*u3 + c4*u1 + c8)*u2 + c9*u3 + c4*u4 + c6)/u3",
    "c1*u2 + c3*u3 + c4*u1 + c7",
    "((c1*u2 + c3*u3 + c4*u1)*u4 + c2*u2 + c5*u3 + c6*u1)/u3"
  ]},
  "operators": [
    {"name": "g", "kind": "second-order",
     "T": {"alternating": [{"indices": [1, 2, 3], "value": "1"}]},
     "g0": {"skew": [{"indices": [3, 4], "value": "1"}]}}
  ],
  "tasks": [
    {"command": "check-compat", "operator": "g", "label": "printed transcription fails",
     "expect": {"pass": false, "oracles_agree": true}}
  ]
})json";

const char* kOrientedAssoc = R"json({
  "schema": 1,
  "name": "oriented-assoc",
  "description": "Oriented associativity system in six components, written as conservation laws",
  "n": 6,
  "variables": {"q1": "u1", "q2": "u2", "q3": "u3", "q4": "u4", "q5": "u5", "q6": "u6"},
  "system": {"kind": "conservative", "flux": [
    "q2",
    "(q2*q6 + q1*q4 - q2*q3)/q5",
    "q4",
    "(q2 + q4*q6)/q5",
    "q6",
    "(q6^2 - q3*q6 + q4*q5 - q1)/q5"
  ]},
  "tasks": [
    {"command": "classify", "expect": {"linear_degeneracy": true, "haantjes_zero": false}}
  ]
})json";

const char* kN2 = R"json({
  "schema": 1,
  "name": "n2-second-order",
  "description": "n = 2 constant skew second-order operator: the compatible polynomial fluxes are affine",
  "n": 2,
  "system": {"kind": "conservative", "flux": ["2*u1 + 1", "2*u2 - 5"]},
  "operators": [
    {"name": "g0", "kind": "second-order", "g0": [["0", "3"], ["-3", "0"]]}
  ],
  "tasks": [
    {"command": "check-compat", "operator": "g0", "expect": {"pass": true, "oracles_agree": true}},
    {"command": "find-fluxes", "operator": "g0", "degree": 2, "expect": {"dimension": 3, "affine": true}},
    {"command": "reduce", "operator": "g0",
     "expect": {"potential_system": ["2*u1 + 1", "2*u2 - 5"], "reduced_operator": ["1/3*p2", "-1/3*p1"]}}
  ]
})json";

const char* kNonlocalN1 = R"json({
  "schema": 1,
  "name": "nonlocal-n1",
  "description": "n = 1 weakly nonlocal first-order operator g p_x + Γ u_x p + w u_x r with r_x = w u_x p",
  "n": 1,
  "system": {"kind": "hydrodynamic", "V": [["u1^2/(u1 + 3)"]]},
  "symmetries": [["1/u1*u1_x"]],
  "operators": [
    {"name": "B", "kind": "first-order", "g": [["u1^2 + 1"]], "Gamma": [[["u1"]]], "W": [["1/u1"]]},
    {"name": "B-raw", "kind": "bivector", "components": ["(u1^2 + 1)*p1_x + u1*u1_x*p1 + 1/u1*u1_x*r1"]}
  ],
  "tasks": [
    {"command": "check-op", "operator": "B", "expect": {"pass": true}},
    {"command": "check-compat", "operator": "B", "expect": {"pass": true, "oracles_agree": true}},
    {"command": "check-compat", "operator": "B-raw", "expect": {"pass": true}}
  ]
})json";

const char* kThirdOrderConstant = R"json({
  "schema": 1,
  "name": "third-order-constant",
  "description": "Constant third-order operator g = [[2, 1], [1, -1]] (c = 0) with an affine compatible flux",
  "n": 2,
  "system": {"kind": "conservative", "flux": ["3*u1 + 1", "3*u2"]},
  "operators": [
    {"name": "D", "kind": "third-order", "g": [["2", "1"], ["1", "-1"]]}
  ],
  "tasks": [
    {"command": "check-op", "operator": "D", "expect": {"pass": true}},
    {"command": "check-compat", "operator": "D", "expect": {"pass": true, "oracles_agree": true}},
    {"command": "find-fluxes", "operator": "D", "degree": 2, "expect": {"affine": true}}
  ]
})json";

}  // namespace

const std::vector<CatalogEntry>& examples_catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"kdv", "KdV: covering, the two local bivectors, bivector search", kKdv},
      {"first-order-pass", "first-order operators compatible with a Hessian velocity matrix", kFirstOrderPass},
      {"first-order-fail", "first-order failures: Tsarev and metric compatibility", kFirstOrderFail},
      {"n4-second-order", "n = 4 second-order operator and its ten-parameter flux family", kN4},
      {"n4-printed", "the n = 4 family as printed (informational failure)", kN4Printed},
      {"oriented-assoc", "oriented associativity system: linearly degenerate, non-diagonalizable", kOrientedAssoc},
      {"n2-second-order", "n = 2 second-order operator: affine fluxes only", kN2},
      {"nonlocal-n1", "n = 1 weakly nonlocal first-order operator", kNonlocalN1},
      {"third-order-constant", "constant third-order operator with an affine flux", kThirdOrderConstant},
  };
  return entries;
}

Problem load_example(const std::string& name) {
  for (const auto& e : examples_catalog()) {
    if (e.name == name) return load_problem_text(e.document);
  }
  throw InputError("unknown example '" + name + "' (see `hhokit examples list`)");
}

}  // namespace hhokit::cli
