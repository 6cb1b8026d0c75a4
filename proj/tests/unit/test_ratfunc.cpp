#include <random>

#include "doctest.h"
#include "hhokit/errors.hpp"
#include "hhokit/ratfunc.hpp"

using namespace hhokit;

namespace {

const Poly u1 = Poly::field(0);
const Poly u2 = Poly::field(1);
const Poly u3 = Poly::field(2);
const Poly c1 = Poly::param(1);
const Poly c2 = Poly::param(2);

Poly random_poly(std::mt19937& rng, int nvars, int max_deg, int nterms) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> var(0, nvars - 1);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<Poly::Term> ts;
  for (int t = 0; t < nterms; ++t) {
    Monomial m;
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) m = m * Monomial::field(var(rng));
    ts.emplace_back(m, Rat(coef(rng)));
  }
  return Poly::from_terms(std::move(ts));
}

}  // namespace

TEST_CASE("poly arithmetic and printing") {
  CHECK(to_string(u1 * u1 * u2 - u2 + Rat(2, 3)) == "u1^2*u2 - u2 + 2/3");
  CHECK(to_string(c1 * u1 + c2) == "u1*c1 + c2");
  CHECK((u1 + u2) * (u1 - u2) == u1 * u1 - u2 * u2);
  CHECK((u1 * u1 * u2).partial(0) == 2 * u1 * u2);
  CHECK(to_string(Poly()) == "0");
}

TEST_CASE("exact division") {
  auto q = divide_exact(u1 * u1 - u2 * u2, u1 - u2);
  REQUIRE(q);
  CHECK(*q == u1 + u2);
  CHECK_FALSE(divide_exact(u1 * u1 + u2, u1 - u2));
  auto qp = divide_exact(c1 * (u1 * u1 - 1) + c2 * (u1 + 1), u1 + 1);
  REQUIRE(qp);
  CHECK(*qp == c1 * (u1 - 1) + c2);
}

TEST_CASE("gcd") {
  CHECK(gcd(u1 * u1 - u2 * u2, u1 * u1 - 2 * u1 * u2 + u2 * u2) == u1 - u2);
  CHECK(gcd(u1 * u2 * u3, u2 * u2) == u2);
  CHECK(gcd(u1 + 1, u2 + 1) == Poly(1));
  const Poly a = (u1 * u2 + u3) * (u1 - u3 * u3);
  const Poly b = (u1 * u2 + u3) * (u2 + 2 * u1 + 1);
  CHECK(gcd(a, b) == u1 * u2 + u3);
}

TEST_CASE("gcd against products of random factors") {
  std::mt19937 rng(7);
  for (int k = 0; k < 60; ++k) {
    const Poly f = random_poly(rng, 3, 2, 3);
    const Poly g = random_poly(rng, 3, 2, 3);
    const Poly h = random_poly(rng, 3, 2, 3);
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    const Poly d = gcd(f * h, g * h);
    CHECK(divide_exact(f * h, d).has_value());
    CHECK(divide_exact(g * h, d).has_value());
    CHECK(divide_exact(d, h.monic()).has_value());
  }
}

TEST_CASE("rf_arith") {
  const RatFunc a(u1, u2);
  CHECK(a * RatFunc(u2) == RatFunc(u1));
  CHECK(RatFunc(u1) + RatFunc(-u1) == RatFunc());
  CHECK((RatFunc(u1 * u1 - u2 * u2) / RatFunc(u1 - u2)) == RatFunc(u1 + u2));
  CHECK((RatFunc(u1 + u2) * RatFunc(u1 - u2)) == RatFunc(u1 * u1 - u2 * u2));
  CHECK_THROWS_AS(RatFunc(u1) / RatFunc(), DivisionByZero);
  CHECK_THROWS_AS(RatFunc(u1) / RatFunc(c1), ParameterInDenominator);
  const RatFunc s = RatFunc(1, u1) + RatFunc(1, u2);
  CHECK(s == RatFunc(u1 + u2, u1 * u2));
  CHECK(RatFunc(2 * u1, 4 * u1 * u1 + 2) == RatFunc(Rat(1, 2) * u1, u1 * u1 + Rat(1, 2)));
}

TEST_CASE("rf_partial") {
  CHECK(RatFunc(u1 * u1 * u2).partial(0) == RatFunc(2 * u1 * u2));
  CHECK(RatFunc(1, u2).partial(1) == RatFunc(-1, u2 * u2));
  CHECK(RatFunc(c1 * u1 + c2).partial(0) == RatFunc(c1));
}

TEST_CASE("rf normal form properties") {
  std::mt19937 rng(11);
  for (int k = 0; k < 100; ++k) {
    const Poly n1 = random_poly(rng, 3, 2, 3);
    const Poly d1 = random_poly(rng, 3, 2, 2);
    const Poly n2 = random_poly(rng, 3, 2, 3);
    const Poly d2 = random_poly(rng, 3, 2, 2);
    if (d1.is_zero() || d2.is_zero() || n2.is_zero()) continue;
    const RatFunc a(n1, d1);
    const RatFunc b(n2, d2);
    CHECK((a - a).is_zero());
    CHECK((a / b) * b == a);
    CHECK((a + b) - b == a);
    CHECK((a * b).partial(0) == a.partial(0) * b + a * b.partial(0));
  }
}

TEST_CASE("rf printing") {
  CHECK(to_string(RatFunc(u1, u2)) == "u1/u2");
  CHECK(to_string(RatFunc(u1 + 1, u2 * u3)) == "(u1 + 1)/(u2*u3)");
  CHECK(to_string(RatFunc(-1, u2 * u2)) == "-1/u2^2");
}
