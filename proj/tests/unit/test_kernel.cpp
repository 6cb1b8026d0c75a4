#include <algorithm>
#include <random>

#include "doctest.h"
#include "hhokit/errors.hpp"
#include "hhokit/linsolve.hpp"
#include "hhokit/parse.hpp"
#include "random_diffpoly.hpp"

using namespace hhokit;

namespace {

DiffPoly P(const char* s) { return parse_diffpoly(s); }
RatFunc R(const char* s) { return parse_ratfunc(s); }

}  // namespace

TEST_CASE("dp_mul") {
  CHECK(P("u1_x") * P("p1") == P("u1_x*p1"));
  CHECK(to_string(P("(u1 + u1_x)*u1_x")) == "u1_x^2 + u1*u1_x");
  CHECK_THROWS_AS(P("p1") * P("p2"), OddDegreeOverflow);
  CHECK_THROWS_AS(P("p1*p2"), ParseError);
}

TEST_CASE("total_x") {
  CHECK(total_x(P("u1")) == P("u1_x"));
  CHECK(total_x(P("u1*u1_x")) == P("u1_x^2 + u1*u1_xx"));
  CHECK(total_x(P("u1^2*p1")) == P("2*u1*u1_x*p1 + u1^2*p1_x"));
  CHECK(total_x(P("1/u2")) == P("-u2_x/u2^2"));
  CHECK_THROWS(total_x(P("r1")));
  CHECK(total_x(P("u1*r1"), [](int) { return P("u1_x*p1"); }) == P("u1_x*r1 + u1*u1_x*p1"));
}

TEST_CASE("jet cap") {
  const int saved = jet_cap();
  set_jet_cap(3);
  CHECK_THROWS_AS(total_x(P("u1_x3")), JetOrderExceeded);
  set_jet_cap(saved);
  CHECK(total_x(P("u1_x3")) == P("u1_x4"));
}

TEST_CASE("collect") {
  const auto c = collect(P("u1_x*p1 + u1*p1_x"));
  REQUIRE(c.size() == 2);
  CHECK(c.at(DiffMonomial(JetVar::u(0, 1)) * DiffMonomial(JetVar::p(0))) == RatFunc(1));
  CHECK(c.at(DiffMonomial(JetVar::p(0, 1))) == R("u1"));
  CHECK(collect(DiffPoly()).empty());
}

TEST_CASE("parser") {
  CHECK(P("u1_x3") == DiffPoly::u(0, 3));
  CHECK(P("u_x") == DiffPoly::u(0, 1));
  CHECK(P("3/4*c2") == DiffPoly(RatFunc(Poly::param(2) * Poly(Rat(3, 4)))));
  CHECK(P("(u1 + u2)^2") == P("u1^2 + 2*u1*u2 + u2^2"));
  CHECK(P("-u1^2") == -P("u1*u1"));
  CHECK(R("(u1^2 - u2^2)/(u1 - u2)") == R("u1 + u2"));
  ParseOptions o;
  o.n = 2;
  CHECK_THROWS_AS(parse_diffpoly("u3", o), ParseError);
  o.aliases["v"] = "u2";
  CHECK(parse_diffpoly("v*u1", o) == P("u1*u2"));
  try {
    parse_diffpoly("u1 +\n  * u2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(P("u1/u1_x"), ParseError);
  CHECK_THROWS_AS(P("u1/c1"), ParseError);
  CHECK_THROWS_AS(P("u1/0"), ParseError);
  CHECK_THROWS_AS(P("q1"), ParseError);
  CHECK_THROWS_AS(P("(u1"), ParseError);
}

TEST_CASE("printing round-trips through the parser") {
  std::mt19937 rng(3);
  for (int k = 0; k < 200; ++k) {
    const DiffPoly a = testing::random_diffpoly(rng, 3, 3, 4, k % 2 == 0);
    CHECK(P(to_string(a).c_str()) == a);
  }
  const DiffPoly kdv = P("p1_x3 + 2/3*u1*p1_x + 1/3*u1_x*p1");
  CHECK(to_string(kdv) == "p1_x3 + 1/3*u1_x*p1 + 2/3*u1*p1_x");
}

TEST_CASE("linear_solve") {
  SUBCASE("unique zero solution") {
    auto s = linear_solve({R("c1 + c2"), R("c1 - c2")}, {1, 2});
    CHECK_FALSE(s.inconsistent);
    CHECK(s.free.empty());
    CHECK(s.pivots.at(1).coeffs.empty());
    CHECK(s.pivots.at(2).constant == 0);
  }
  SUBCASE("monomial expansion") {
    auto s = linear_solve({R("c1*u1 + c2*u1")}, {1, 2});
    CHECK(s.free == std::vector<int>{2});
    CHECK(s.pivots.at(1).coeffs.at(2) == -1);
  }
  SUBCASE("inconsistent") {
    auto s = linear_solve({R("c1*u1 - 1")}, {1});
    CHECK(s.inconsistent);
  }
  SUBCASE("nonlinear") {
    CHECK_THROWS_AS(linear_solve({R("c1*c2")}, {1, 2}), NonlinearAnsatz);
  }
  SUBCASE("denominators are cleared") {
    auto s = linear_solve({R("(c1*u1 + c2)/(u1 + 1) + c3")}, {1, 2, 3, 4});
    CHECK(s.free == std::vector<int>{3, 4});
    CHECK(s.pivots.at(1).coeffs.at(3) == -1);
    CHECK(s.pivots.at(2).coeffs.at(3) == -1);
  }
}

TEST_CASE("linear_solve soundness on random systems") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<RatFunc> eqs;
    const int neq = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < neq; ++e) {
      Poly num;
      for (int id = 1; id <= 5; ++id) {
        num += Poly::param(id) * testing::random_field_poly(rng, 2, 1, 2);
      }
      if (trial % 3 == 0) num += Poly(coef(rng));
      Poly den = testing::random_field_poly(rng, 2, 1, 2);
      if (den.is_zero()) den = Poly(1);
      eqs.emplace_back(num, den);
    }
    auto s = linear_solve(eqs, {1, 2, 3, 4, 5});
    if (s.inconsistent) continue;
    const auto sub = s.substitution();
    for (const auto& e : eqs) CHECK(e.substitute_params(sub).is_zero());
  }
}

TEST_CASE("total_x is a derivation") {
  std::mt19937 rng(17);
  for (int k = 0; k < 100; ++k) {
    const DiffPoly a = testing::random_diffpoly(rng, 2, 3, 3, false);
    const DiffPoly b = testing::random_diffpoly(rng, 2, 3, 3, k % 2 == 0);
    CHECK(total_x(a * b) == total_x(a) * b + a * total_x(b));
  }
}

TEST_CASE("collect is a partition") {
  std::mt19937 rng(19);
  for (int k = 0; k < 100; ++k) {
    const DiffPoly a = testing::random_diffpoly(rng, 3, 3, 5, k % 2 == 0);
    DiffPoly sum;
    for (const auto& [m, c] : collect(a)) sum += DiffPoly::term(m, c);
    CHECK(sum == a);
  }
}

TEST_CASE("normal forms are independent of term order") {
  std::mt19937 rng(23);
  for (int k = 0; k < 100; ++k) {
    std::vector<DiffPoly> parts;
    for (int j = 0; j < 5; ++j) parts.push_back(testing::random_diffpoly(rng, 2, 2, 1, j % 2 == 0));
    DiffPoly forward;
    for (const auto& p : parts) forward += p;
    std::shuffle(parts.begin(), parts.end(), rng);
    DiffPoly shuffled;
    for (const auto& p : parts) shuffled += p;
    CHECK(to_string(forward) == to_string(shuffled));
  }
}
