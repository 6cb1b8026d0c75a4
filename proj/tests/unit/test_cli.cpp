#include <sstream>

#include "doctest.h"
#include "hhokit/cli.hpp"
#include "hhokit/errors.hpp"

using namespace hhokit;
using namespace hhokit::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run hh(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

void collect_strings(const Json& j, std::vector<std::string>& out) {
  if (j.is_string()) {
    out.push_back(j.get<std::string>());
  } else if (j.is_array() || j.is_object()) {
    for (const auto& v : j) collect_strings(v, out);
  }
}

}  // namespace

TEST_CASE("spec command examples") {
  const auto a2 = hh({"check-compat", "--example", "kdv", "--operator", "A2"});
  CHECK(a2.code == 0);
  CHECK(contains(a2.out, "RESULT: PASS"));

  const auto bad = hh({"check-compat", "--example", "kdv", "--operator", "bad"});
  CHECK(bad.code == 1);

  const auto fb = hh({"find-bivectors", "--example", "kdv", "--order", "3", "--degree", "1"});
  CHECK(fb.code == 0);
  CHECK(contains(fb.out, "solution family dimension: 2"));
  CHECK(contains(fb.out, "A2[1] = p1_x3 + 1/3*u1_x*p1 + 2/3*u1*p1_x"));

  const auto cl = hh({"classify", "--example", "oriented-assoc"});
  CHECK(cl.code == 0);
  CHECK(contains(cl.out, "linear-degeneracy: pass"));
  CHECK(contains(cl.out, "haantjes-zero: fail"));
}

TEST_CASE("catalog") {
  CHECK(examples_catalog().size() >= 5);
  const auto list = hh({"examples", "list"});
  CHECK(list.code == 0);
  CHECK(std::count(list.out.begin(), list.out.end(), '\n') >= 5);

  const auto all = hh({"examples", "run", "--all"});
  CHECK(all.code == 0);
  CHECK(contains(all.out, "RESULT: PASS"));
  CHECK_FALSE(contains(all.out, "FAIL "));

  const auto show = hh({"examples", "show", "n4-second-order"});
  CHECK(show.code == 0);
  CHECK(contains(show.out, "T_123 = 1"));
  CHECK(contains(show.out, "g0_34 = 1"));
  CHECK(contains(show.out, "0 u3 -u2 0"));

  for (const auto& e : examples_catalog()) {
    const Problem p = load_example(e.name);
    CHECK(p.name == e.name);
    CHECK_FALSE(p.tasks.empty());
    for (const auto& g : run_golden(p)) {
      INFO(e.name << ": " << g.label);
      CHECK(g.ok);
    }
  }
}

TEST_CASE("exit codes on input errors") {
  CHECK(hh({}).code == 2);
  CHECK(hh({"frobnicate"}).code == 2);
  CHECK(hh({"check-op"}).code == 2);
  CHECK(hh({"check-op", "--example", "missing"}).code == 2);
  CHECK(hh({"check-op", "--example", "kdv", "--operator", "A2"}).code == 2);  // raw forms
  CHECK(hh({"check-op", "--example", "kdv", "--operator", "nope"}).code == 2);
  CHECK(hh({"check-op", "/nonexistent/problem.json"}).code == 2);
  CHECK(hh({"examples", "run"}).code == 2);
  CHECK(hh({"--version"}).code == 0);
}

TEST_CASE("problem loading errors") {
  try {
    load_problem_text("{\n  \"n\": 2,\n  \"system\": {\"kind\": \"general\" \"f\": []}\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_WITH_AS(load_problem_text(R"({"n": 2, "system": {"kind": "general", "f": ["u1_x"]}})"),
                       doctest::Contains("dimension mismatch"), InputError);
  CHECK_THROWS_WITH_AS(load_problem_text(R"({"n": 1, "system": {"kind": "general", "f": ["u1_x +* u1"]}})"),
                       doctest::Contains("system.f[0]: parse error at 1:7"), InputError);
  CHECK_THROWS_AS(load_problem_text(R"({"n": 1, "system": {"kind": "general", "f": ["u3_x"]}})"), InputError);
  CHECK_THROWS_AS(load_problem_text(R"({"n": 9})"), InputError);
  CHECK_THROWS_AS(load_problem_text(R"({"n": 1, "operators": [{"name": "a", "kind": "fourth-order"}]})"), InputError);

  // Degenerate metrics are rejected verbatim with exit code 2.
  const Problem deg = load_problem_text(
      R"({"n": 2, "operators": [{"name": "z", "kind": "second-order", "g0": [["0", "0"], ["0", "0"]]}]})");
  CHECK_THROWS_WITH_AS(run_task(deg, "check-op", {}), doctest::Contains("degenerate metric"), Error);
}

TEST_CASE("problem file features") {
  const Problem p = load_problem_text(R"({
    "n": 2,
    "variables": {"a": "u1", "b": "u2"},
    "system": {"kind": "hydrodynamic", "V": [["a", "b"], ["b", "a"]]},
    "operators": [
      {"name": "polar", "kind": "first-order", "variance": "lower", "g": [["1", "0"], ["0", "a^2"]]},
      {"name": "flat", "kind": "first-order", "g": [[1, 0], [0, 1]]}
    ]
  })");
  CHECK(p.system->V[0][1] == RatFunc::field(1));
  // Levi-Civita of the polar metric: Γ^{22}_1 = -1/u1^3 and the checks pass.
  const auto& polar = p.op("polar");
  CHECK(polar.gamma.gamma[1][1][0] == parse_ratfunc("-1/u1^3"));
  CHECK(run_task(p, "check-op", {"polar"}).status == Status::Pass);
  CHECK(run_task(p, "check-compat", {"flat"}).status == Status::Pass);
  CHECK(run_task(p, "check-compat", {"flat"}).result["oracles_agree"] == true);
}

TEST_CASE("report determinism and provenance") {
  const std::vector<std::string> args = {"find-fluxes", "--example", "n4-second-order", "--degree", "2",
                                         "--denominator", "u3", "--json", "-"};
  const auto a = hh(args);
  const auto b = hh(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Json j = Json::parse(a.out);
  CHECK(j["schema"] == 1);
  CHECK(j["engine"]["version"] == kVersion);
  CHECK(j["input"]["hash"].get<std::string>().rfind("fnv1a64:", 0) == 0);
  CHECK(j["result"]["dimension"] == 10);
  CHECK(input_hash(load_example("kdv").document) != input_hash(load_example("n4-second-order").document));
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("emitted expressions round-trip through the parser") {
  std::vector<std::string> exprs;
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"find-bivectors", "--example", "kdv", "--json", "-"},
           {"find-fluxes", "--example", "n4-second-order", "--denominator", "u3", "--json", "-"},
           {"check-compat", "--example", "n4-printed", "--full", "--json", "-"},
           {"classify", "--example", "oriented-assoc", "--json", "-"},
           {"reduce", "--example", "n2-second-order", "--json", "-"},
           {"covering", "--example", "kdv", "--json", "-"}}) {
    const auto r = hh(args);
    const Json j = Json::parse(r.out);
    for (const char* key : {"basis", "generic_member", "components", "char_poly", "square_root", "pt_rules",
                            "potential_system", "reduced_operator"}) {
      std::vector<Json> stack{j["result"]};
      while (!stack.empty()) {
        const Json node = stack.back();
        stack.pop_back();
        if (!node.is_object() && !node.is_array()) continue;
        if (node.is_object() && node.contains(key)) collect_strings(node[key], exprs);
        for (const auto& v : node) stack.push_back(v);
      }
    }
    for (const auto& v : j["result"].value("verdicts", Json::array())) {
      for (const auto& res : v["residuals"]) exprs.push_back(res["value"].get<std::string>());
    }
  }
  CHECK(exprs.size() > 50);
  for (const auto& e : exprs) {
    INFO(e);
    CHECK(to_string(parse_diffpoly(e)) == e);
  }
}

TEST_CASE("residual truncation") {
  const auto t = hh({"check-compat", "--example", "n4-printed", "--json", "-"});
  CHECK(t.code == 1);
  const Json j = Json::parse(t.out);
  const Json& compat = j["result"]["verdicts"][1];
  CHECK(compat["residuals_total"] == 24);
  CHECK(compat["residuals"].size() == kTruncate);
  CHECK(compat["truncated"] == true);
  const Json full = Json::parse(hh({"check-compat", "--example", "n4-printed", "--full", "--json", "-"}).out);
  CHECK(full["result"]["verdicts"][1]["residuals"].size() == 24);
}

TEST_CASE("golden comparison") {
  const Json result = {{"pass", true}, {"dimension", 3}, {"basis", {{"2*p1_x"}}}, {"classification", {{"x", false}}}};
  CHECK(check_expectations(result, {{"pass", true}, {"dimension_at_least", 2}}).empty());
  CHECK(check_expectations(result, {{"basis", {{"p1_x*2"}}}}).empty());
  CHECK(check_expectations(result, {{"classification.x", false}}).empty());
  CHECK(check_expectations(result, {{"pass", false}}).size() == 1);
  CHECK(check_expectations(result, {{"dimension_at_least", 4}}).size() == 1);
  CHECK(check_expectations(result, {{"missing", 1}}).size() == 1);
}
