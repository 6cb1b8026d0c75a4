#include <random>

#include "doctest.h"
#include "hhokit/covering.hpp"
#include "hhokit/errors.hpp"
#include "hhokit/parse.hpp"
#include "random_diffpoly.hpp"

using namespace hhokit;

namespace {

DiffPoly P(const char* s) { return parse_diffpoly(s); }
RatFunc R(const char* s) { return parse_ratfunc(s); }

EvolutionSystem kdv() { return EvolutionSystem::general({P("u1_x3 + u1*u1_x")}); }

bool all_zero(const std::vector<DiffPoly>& v) {
  for (const auto& d : v) {
    if (!d.is_zero()) return false;
  }
  return true;
}

LocalOperator random_operator(std::mt19937& rng, int n, int order) {
  LocalOperator A(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k <= order; ++k) {
        if (rng() % 2) A.add(i, j, testing::random_diffpoly(rng, n, 2, 2, false), k);
      }
    }
  }
  return A;
}

}  // namespace

TEST_CASE("linearize") {
  CHECK(all_zero(linearize(kdv(), {P("u1_x")})));
  const auto F = EvolutionSystem::hydrodynamic({{R("u1^2 + 3")}});
  CHECK(all_zero(linearize(F, {P("(u1^3 - 2/u1)*u1_x")})));
  const auto res = linearize(kdv(), {P("u1")});
  CHECK(res[0] == P("-u1*u1_x"));
}

TEST_CASE("build_cotangent") {
  CHECK(build_cotangent(kdv()).pt_rules()[0] == P("p1_x3 + u1*p1_x"));
  const auto transport = EvolutionSystem::general({P("u1_x")});
  CHECK(build_cotangent(transport).pt_rules()[0] == P("p1_x"));

  // Hydrodynamic adjoint system: p_{i,t} = (V^k_{i,j} - V^k_{j,i}) u^j_x p_k + V^k_i p_{k,x}.
  const Matrix<RatFunc> V = {{R("u1*u2"), R("u1^2")}, {R("u2 + 1"), R("u2^2/u1")}};
  const auto ctx = build_cotangent(EvolutionSystem::hydrodynamic(V));
  for (int i = 0; i < 2; ++i) {
    DiffPoly expected;
    for (int k = 0; k < 2; ++k) {
      for (int j = 0; j < 2; ++j) {
        expected += DiffPoly(V[k][i].partial(j) - V[k][j].partial(i)) * DiffPoly::u(j, 1) *
                    DiffPoly::p(k);
      }
      expected += DiffPoly(V[k][i]) * DiffPoly::p(k, 1);
    }
    CHECK(ctx.pt_rules()[i] == expected);
  }
}

TEST_CASE("total_t") {
  const auto ctx = build_cotangent(kdv());
  CHECK(total_t(P("u1"), ctx) == P("u1_x3 + u1*u1_x"));
  CHECK(total_t(P("p1"), ctx) == P("p1_x3 + u1*p1_x"));
}

TEST_CASE("register_symmetry") {
  SUBCASE("n = 1 hydrodynamic, any w") {
    auto ctx = build_cotangent(EvolutionSystem::hydrodynamic({{R("u1^2/(u1 + 1)")}}));
    const int a = register_symmetry(ctx, {P("(u1^3 + 1)/u1*u1_x")});
    CHECK(a == 0);
    CHECK(ctx.slots()[0].rx_rule == P("(u1^3 + 1)/u1*u1_x*p1"));
    CHECK(ctx.slots()[0].rt_rule == P("u1^2/(u1 + 1)*(u1^3 + 1)/u1*u1_x*p1"));
  }
  SUBCASE("hydrodynamic with commuting W") {
    auto ctx = build_cotangent(EvolutionSystem::hydrodynamic({{R("u1"), R("u2")}, {R("u2"), R("u1")}}));
    register_symmetry(ctx, {P("u2_x"), P("u1_x")});
    // r_t = V^i_j W^j_k u^k_x p_i
    CHECK(ctx.slots()[0].rt_rule == P("(u1*u2_x + u2*u1_x)*p1 + (u2*u2_x + u1*u1_x)*p2"));
  }
  SUBCASE("KdV rejects u") {
    auto ctx = build_cotangent(kdv());
    try {
      register_symmetry(ctx, {P("u1")});
      FAIL("expected rejection");
    } catch (const NotASymmetry& e) {
      CHECK(e.residual()[0] == P("-u1*u1_x"));
    }
    CHECK(ctx.slots().empty());
  }
}

TEST_CASE("bivector_residual on KdV") {
  const auto ctx = build_cotangent(kdv());
  CHECK(all_zero(bivector_residual(ctx, {{P("p1_x")}})));
  CHECK(all_zero(bivector_residual(ctx, {{P("p1_x3 + 2/3*u1*p1_x + 1/3*u1_x*p1")}})));
  const auto bad = bivector_residual(ctx, {{P("u1*p1_x")}});
  CHECK_FALSE(bad[0].is_zero());
  CHECK_FALSE(extract_conditions(bad).empty());
  CHECK(extract_conditions(bivector_residual(ctx, {{P("p1_x")}})).empty());
}

TEST_CASE("formal_adjoint") {
  LocalOperator d(1);
  d.add(0, 0, 1, 1);
  LocalOperator md(1);
  md.add(0, 0, -1, 1);
  CHECK(formal_adjoint(d) == md);

  LocalOperator a(1);
  a.add(0, 0, P("u1"), 1);
  LocalOperator as(1);
  as.add(0, 0, P("-u1"), 1);
  as.add(0, 0, P("-u1_x"), 0);
  CHECK(formal_adjoint(a) == as);

  LocalOperator A2(1);
  A2.add(0, 0, 1, 3);
  A2.add(0, 0, P("2/3*u1"), 1);
  A2.add(0, 0, P("1/3*u1_x"), 0);
  LocalOperator minus(1);
  minus.add(0, 0, -1, 3);
  minus.add(0, 0, P("-2/3*u1"), 1);
  minus.add(0, 0, P("-1/3*u1_x"), 0);
  CHECK(formal_adjoint(A2) == minus);
}

TEST_CASE("adjoint involution") {
  std::mt19937 rng(29);
  for (int k = 0; k < 100; ++k) {
    const LocalOperator A = random_operator(rng, 1 + k % 2, 4);
    CHECK(formal_adjoint(formal_adjoint(A)) == A);
  }
}

TEST_CASE("D_x and D_t commute on coverings") {
  std::mt19937 rng(31);
  const auto kdv_ctx = build_cotangent(kdv());
  const auto hyd_ctx =
      build_cotangent(EvolutionSystem::hydrodynamic({{R("u1"), R("u2^2")}, {R("1/u1"), R("u1*u2")}}));
  for (int k = 0; k < 100; ++k) {
    const auto& ctx = k % 2 == 0 ? kdv_ctx : hyd_ctx;
    const DiffPoly a = testing::random_diffpoly(rng, ctx.n(), 3, 3, k % 4 < 2);
    CHECK(ctx.dx(ctx.dt(a)) == ctx.dt(ctx.dx(a)));
  }
}

TEST_CASE("operator_to_bivector") {
  auto ctx = build_cotangent(EvolutionSystem::hydrodynamic({{R("u1")}}));
  register_symmetry(ctx, {P("u1^2*u1_x")});
  LocalOperator A(1);
  A.add(0, 0, P("u1"), 1);
  A.add(0, 0, P("1/2*u1_x"), 0);
  const auto b = operator_to_bivector(ctx, A, {{Rat(1), 0}});
  CHECK(b.components[0] == P("u1*p1_x + 1/2*u1_x*p1 + u1^2*u1_x*r1"));
}

TEST_CASE("bivector_residual is linear") {
  const auto ctx = build_cotangent(kdv());
  std::mt19937 rng(37);
  for (int k = 0; k < 20; ++k) {
    const DiffPoly a = testing::random_diffpoly(rng, 1, 2, 2, true);
    const DiffPoly b = testing::random_diffpoly(rng, 1, 2, 2, true);
    const auto ra = bivector_residual(ctx, {{a}});
    const auto rb = bivector_residual(ctx, {{b}});
    CHECK(bivector_residual(ctx, {{a + b}})[0] == ra[0] + rb[0]);
    CHECK(bivector_residual(ctx, {{a * DiffPoly(Rat(3, 7))}})[0] == ra[0] * DiffPoly(Rat(3, 7)));
  }
}
