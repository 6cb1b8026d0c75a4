#include <chrono>
#include <random>

#include "doctest.h"
#include "hhokit/errors.hpp"
#include "hhokit/parse.hpp"
#include "hhokit/solver.hpp"
#include "instances.hpp"

using namespace hhokit;
using namespace hhokit::testing;

namespace {

DiffPoly P(const char* s) { return parse_diffpoly(s); }
RatFunc R(const char* s) { return parse_ratfunc(s); }

SecondOrderData n2_constant_skew() {
  SecondOrderData d;
  d.n = 2;
  d.T.assign(2, std::vector<std::vector<Rat>>(2, std::vector<Rat>(2)));
  d.g0 = {{0, 3}, {-3, 0}};
  return d;
}

SecondOrderData n4_example() {
  SecondOrderData d;
  d.n = 4;
  d.T.assign(4, std::vector<std::vector<Rat>>(4, std::vector<Rat>(4)));
  const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  for (int s = 0; s < 6; ++s) d.T[perm[s][0]][perm[s][1]][perm[s][2]] = s < 3 ? 1 : -1;
  d.g0.assign(4, std::vector<Rat>(4));
  d.g0[2][3] = 1;
  d.g0[3][2] = -1;
  return d;
}

bool is_affine(const Vec& v) {
  for (const auto& c : v) {
    if (!c.is_polynomial() || c.num().degree() > 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("make_operator_ansatz") {
  CHECK(make_operator_ansatz(1, 1, 1).params.size() == 4);
  CHECK(make_operator_ansatz(2, 1, 0).params.size() == 12);
  const auto a = make_operator_ansatz(1, 3, 1);
  CHECK(a.params.size() == 26);
  const std::string s = to_string(a.form.components[0]);
  CHECK(s.find("p1_x3") != std::string::npos);
  CHECK(s.find("u1_x*p1") != std::string::npos);
  // coefficient of p_x is c_a*u1 + c_b
  CHECK(a.form.components[0].coefficient(DiffMonomial(JetVar::p(0, 1))).num().size() == 2);
  CHECK_THROWS_AS(make_operator_ansatz(2, 3, 3, 50), InputError);
  CHECK_THROWS_AS(make_operator_ansatz(1, 0, 1), InputError);
}

TEST_CASE("KdV bivector search") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto F = EvolutionSystem::general({P("u1_x3 + u1*u1_x")});
  const auto fam = find_bivectors(F, make_operator_ansatz(1, 3, 1));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 10);
  REQUIRE(fam.dimension == 2);
  CHECK(fam.forms[0].components[0] == P("p1_x"));
  CHECK(fam.forms[1].components[0] == P("p1_x3 + 2/3*u1*p1_x + 1/3*u1_x*p1"));
  const auto again = find_bivectors(F, make_operator_ansatz(1, 3, 1));
  CHECK(again.forms[1].components[0] == fam.forms[1].components[0]);
}

TEST_CASE("small bivector searches") {
  const auto hyd = EvolutionSystem::hydrodynamic({{R("u1")}});
  const auto fam = find_bivectors(hyd, make_operator_ansatz(1, 1, 2));
  CHECK(fam.dimension > 0);
  // g(u) = u^2: g p_x + g'/2 u_x p
  const auto ctx = build_cotangent(hyd);
  CHECK(residual_vanishes(bivector_residual(ctx, {{P("u1^2*p1_x + u1*u1_x*p1")}})));
  for (const auto& b : fam.forms) CHECK(residual_vanishes(bivector_residual(ctx, b)));

  const auto transport = EvolutionSystem::general({P("u1_x")});
  const auto t = find_bivectors(transport, make_operator_ansatz(1, 1, 0));
  bool has_px = false;
  for (const auto& b : t.forms) has_px = has_px || b.components[0] == P("p1_x");
  CHECK(has_px);
}

TEST_CASE("monotonicity in the degree bound") {
  const auto hyd = EvolutionSystem::hydrodynamic({{R("u1^2")}});
  int last = 0;
  for (int d = 0; d <= 3; ++d) {
    const int dim = find_bivectors(hyd, make_operator_ansatz(1, 1, d)).dimension;
    CHECK(dim >= last);
    last = dim;
  }
}

TEST_CASE("second-order flux search, n = 2") {
  const auto d = n2_constant_skew();
  const auto fam = find_fluxes_second_order(d, make_flux_ansatz(2, 2));
  CHECK(fam.dimension == 3);
  for (const auto& v : fam.fluxes) {
    CHECK(is_affine(v));
    const auto ctx = build_cotangent(EvolutionSystem::potential(v));
    CHECK(residual_vanishes(bivector_residual(ctx, potential_second_order_bivector(d))));
  }
  // λu + b is in the family.
  const Vec lam{R("u1"), R("u2")};
  CHECK(second_order_compat(d, lam).pass);

  const auto zero = find_fluxes_second_order(d, make_flux_ansatz(2, -1));
  CHECK(zero.dimension == 0);
  CHECK_FALSE(zero.inconsistent);
}

TEST_CASE("second-order flux search, n = 4 example metric") {
  const auto d = n4_example();
  REQUIRE(second_order_canonical_check(d).pass);
  const auto fam = find_fluxes_second_order(d, make_flux_ansatz(4, 2, Poly::field(2)));
  CHECK(fam.dimension >= 10);
  for (const auto& v : fam.fluxes) {
    const auto ctx = build_cotangent(EvolutionSystem::potential(v));
    CHECK(residual_vanishes(bivector_residual(ctx, potential_second_order_bivector(d))));
  }
  REQUIRE(fam.classification);
  CHECK(fam.classification->linear_degeneracy.pass);
  CHECK(fam.classification->haantjes_zero);
}

TEST_CASE("third-order flux search") {
  ThirdOrderData c0{{{R("1"), R("2")}, {R("2"), R("-1")}}, zero_t3(2)};
  const auto fam = find_fluxes_third_order(c0, make_flux_ansatz(2, 2));
  CHECK(fam.dimension > 0);
  for (const auto& v : fam.fluxes) CHECK(is_affine(v));

  ThirdOrderData one{{{R("5")}}, zero_t3(1)};
  const auto f1 = find_fluxes_third_order(one, make_flux_ansatz(1, 3));
  CHECK(f1.dimension == 2);
  for (const auto& v : f1.fluxes) CHECK(is_affine(v));

  std::mt19937 rng(3);
  const auto d = ThirdOrderData::from_metric(random_monge_metric(rng));
  const auto fm = find_fluxes_third_order(d, make_flux_ansatz(2, 2));
  CHECK(fm.dimension > 0);
  for (const auto& v : fm.fluxes) {
    CHECK(third_order_compat(d, v).pass);
    const auto ctx = build_cotangent(EvolutionSystem::conservative(v));
    CHECK(residual_vanishes(bivector_residual(ctx, third_order_bivector(d))));
  }
}

TEST_CASE("canonical_basis") {
  const auto rows = canonical_basis({{P("p1_x + u1*p1")}, {P("2*p1_x + 3*u1*p1")}, {P("u1*p1")}});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == P("u1*p1"));
  CHECK(rows[1][0] == P("p1_x"));
}
