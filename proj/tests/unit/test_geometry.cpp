#include <random>

#include "doctest.h"
#include "hhokit/errors.hpp"
#include "hhokit/geometry.hpp"
#include "hhokit/parse.hpp"
#include "instances.hpp"

using namespace hhokit;
using namespace hhokit::testing;

namespace {

RatFunc R(const char* s) { return parse_ratfunc(s); }

Mat M(std::initializer_list<std::initializer_list<const char*>> rows) {
  Mat m;
  for (const auto& r : rows) {
    Vec v;
    for (const char* s : r) v.push_back(R(s));
    m.push_back(std::move(v));
  }
  return m;
}

Connection zero_connection(int n) { return {zero_t3(n)}; }

Metric upper(Mat g) { return {std::move(g), Variance::Upper}; }

bool covering_oracle_first_order(const Metric& g, const Connection& G, const Mat& V) {
  const auto ctx = build_cotangent(EvolutionSystem::hydrodynamic(V));
  return residual_vanishes(bivector_residual(ctx, operator_to_bivector(first_order_operator(g, G))));
}

}  // namespace

TEST_CASE("first_order_hamiltonian_check") {
  CHECK(first_order_hamiltonian_check(upper(identity_matrix(2)), zero_connection(2)).pass);
  Connection half = zero_connection(1);
  half.gamma[0][0][0] = Rat(1, 2);
  CHECK(first_order_hamiltonian_check(upper(M({{"u1"}})), half).pass);

  Connection bad = zero_connection(2);
  bad.gamma[0][0][0] = 1;
  const auto rep = first_order_hamiltonian_check(upper(identity_matrix(2)), bad);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.family_passes("metric-compatibility"));

  CHECK_THROWS_AS(first_order_hamiltonian_check(upper(M({{"1", "1"}, {"1", "1"}})), zero_connection(2)),
                  DegenerateMetric);
  const auto asym = first_order_hamiltonian_check(upper(M({{"1", "u1"}, {"0", "1"}})), zero_connection(2));
  CHECK_FALSE(asym.family_passes("metric-symmetry"));
}

TEST_CASE("curvature") {
  // Polar coordinates: g_low = diag(1, u1^2), Levi-Civita lifted to
  // Γ^{ij}_k = -g^{is} Γ^j_{sk}.
  const Mat glow = M({{"1", "0"}, {"0", "u1^2"}});
  const Mat gup = inverse(glow);
  T3 chr = zero_t3(2);  // Γ^i_{jk}
  chr[0][1][1] = R("-u1");
  chr[1][0][1] = R("1/u1");
  chr[1][1][0] = R("1/u1");
  Connection G{zero_t3(2)};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        RatFunc r;
        for (int s = 0; s < 2; ++s) r -= gup[i][s] * chr[j][s][k];
        G.gamma[i][j][k] = r;
      }
    }
  }
  CHECK(first_order_hamiltonian_check(upper(gup), G).pass);
  // The round trip Γ^i_{jk} = -g_{js}Γ^{si}_k recovers the Christoffel symbols.
  CHECK(christoffel(glow, G) == chr);

  // Curved: g_low = diag(1, 1 + u1^2).
  const Mat curved_low = M({{"1", "0"}, {"0", "1 + u1^2"}});
  const Mat cup = inverse(curved_low);
  T3 cchr = zero_t3(2);
  cchr[0][1][1] = R("-u1");
  cchr[1][0][1] = R("u1/(1 + u1^2)");
  cchr[1][1][0] = R("u1/(1 + u1^2)");
  Connection CG{zero_t3(2)};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        RatFunc r;
        for (int s = 0; s < 2; ++s) r -= cup[i][s] * cchr[j][s][k];
        CG.gamma[i][j][k] = r;
      }
    }
  }
  const auto rep = first_order_hamiltonian_check(upper(cup), CG);
  CHECK(rep.family_passes("metric-compatibility"));
  CHECK_FALSE(rep.family_passes("flatness"));

  Connection any{zero_t3(1)};
  any.gamma[0][0][0] = R("u1^3 + 2");
  CHECK(curvature(upper(M({{"u1^2 + 1"}})), any)[0][0][0][0].is_zero());
}

TEST_CASE("tsarev_check and expanded conditions") {
  const Metric id = upper(identity_matrix(2));
  const Connection G = zero_connection(2);
  CHECK(tsarev_check(id, G, VelocityMatrix::from_matrix(identity_matrix(2))).pass);
  const auto pass_V = VelocityMatrix::from_matrix(M({{"u1", "u2"}, {"u2", "u1"}}));
  const auto fail_V = VelocityMatrix::from_matrix(M({{"u2", "0"}, {"0", "u1"}}));
  CHECK(tsarev_check(id, G, pass_V).pass);
  CHECK_FALSE(tsarev_check(id, G, fail_V).pass);
  CHECK(expanded_first_order_conditions(id, G, pass_V).pass);
  const auto rep = expanded_first_order_conditions(id, G, fail_V);
  CHECK_FALSE(rep.family_passes("expanded-uxx-p"));
}

TEST_CASE("nonlocal_first_order_check") {
  const auto V1 = VelocityMatrix::from_matrix(M({{"u1^2/(u1 + 3)"}}));
  Connection G{zero_t3(1)};
  G.gamma[0][0][0] = R("u1");
  const auto rep = nonlocal_first_order_check(upper(M({{"u1^2 + 1"}})), G, M({{"1/u1"}}), V1);
  CHECK(rep.pass);
  CHECK(rep.note == "paper-stated conditions only");

  // With a flat local part the tail-curvature sum does not cancel for these
  // commuting W, and the covering residual agrees that B is not a bivector.
  const Mat Vm = M({{"u1", "u2"}, {"u2", "u1"}});
  const auto V = VelocityMatrix::from_matrix(Vm);
  for (const Mat& W : {M({{"0", "1"}, {"1", "0"}}), identity_matrix(2)}) {
    const auto r = nonlocal_first_order_check(upper(identity_matrix(2)), zero_connection(2), W, V);
    CHECK(r.family_passes("W-commutation"));
    CHECK(r.family_passes("covariant-curl"));
    CHECK_FALSE(r.family_passes("tail-curvature"));
    auto ctx = build_cotangent(EvolutionSystem::hydrodynamic(Vm));
    std::vector<DiffPoly> phi;
    for (int i = 0; i < 2; ++i) phi.push_back(DiffPoly(W[i][0]) * DiffPoly::u(0, 1) + DiffPoly(W[i][1]) * DiffPoly::u(1, 1));
    register_symmetry(ctx, phi);
    const auto B = operator_to_bivector(ctx, first_order_operator(upper(identity_matrix(2)), zero_connection(2)),
                                        {{Rat(1), 0}});
    CHECK_FALSE(residual_vanishes(bivector_residual(ctx, B)));
  }
  const auto noncommuting =
      nonlocal_first_order_check(upper(identity_matrix(2)), zero_connection(2), M({{"1", "0"}, {"0", "2"}}), V);
  CHECK_FALSE(noncommuting.family_passes("W-commutation"));
}

TEST_CASE("first-order oracles agree on random instances") {
  std::mt19937 rng(101);
  int passes = 0;
  int fails = 0;
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 2;
    const auto h = random_flat_first_order(rng, n);
    REQUIRE(first_order_hamiltonian_check(h.g, h.G).pass);
    const Mat V = trial % 3 == 2 ? random_poly_matrix(rng, n, 2) : random_tsarev_member(rng, h, 2);
    const auto vm = VelocityMatrix::from_matrix(V);
    const bool t = tsarev_check(h.g, h.G, vm).pass;
    const auto expanded = expanded_first_order_conditions(h.g, h.G, vm);
    CHECK(t == expanded.pass);
    CHECK(t == covering_oracle_first_order(h.g, h.G, V));
    if (t) {
      ++passes;
      CHECK(expanded.family_passes("expanded-ux-px"));
      CHECK(expanded.family_passes("expanded-ux-ux-p"));
    } else {
      ++fails;
    }
  }
  CHECK(passes > 0);
  CHECK(fails > 0);
}

TEST_CASE("second-order checks") {
  SecondOrderData d;
  d.n = 2;
  d.T.assign(2, std::vector<std::vector<Rat>>(2, std::vector<Rat>(2)));
  d.g0 = {{0, 1}, {-1, 0}};
  CHECK(second_order_canonical_check(d).pass);
  CHECK(second_order_compat(d, {R("3*u1 + 1"), R("3*u2 - 2")}).pass);
  CHECK(second_order_compat(d, {R("0"), R("0")}).pass);
  CHECK_FALSE(second_order_compat(d, {R("u1^2"), R("u2")}).pass);
  CHECK_FALSE(second_order_compat(d, {R("u2"), R("u1")}).pass);

  SecondOrderData bad = d;
  bad.T[0][1][0] = 1;
  bad.T[1][0][0] = 1;
  CHECK_FALSE(second_order_canonical_check(bad).pass);

  SecondOrderData degenerate = d;
  degenerate.g0 = {{0, 0}, {0, 0}};
  CHECK_THROWS_AS(second_order_compat(degenerate, {R("u1"), R("u2")}), DegenerateMetric);
}

TEST_CASE("second-order oracle on the potential system") {
  SecondOrderData d;
  d.n = 2;
  d.T.assign(2, std::vector<std::vector<Rat>>(2, std::vector<Rat>(2)));
  d.g0 = {{0, 2}, {-2, 0}};
  for (const Vec& flux : {Vec{R("u1 + 1"), R("u2")}, Vec{R("u1^2"), R("u1*u2")}, Vec{R("u2"), R("0")}}) {
    const auto ctx = build_cotangent(EvolutionSystem::potential(flux));
    const bool oracle = residual_vanishes(bivector_residual(ctx, potential_second_order_bivector(d)));
    CHECK(oracle == second_order_compat(d, flux).pass);
  }
}

TEST_CASE("third-order checks") {
  ThirdOrderData c0{M({{"2", "1"}, {"1", "-1"}}), zero_t3(2)};
  CHECK(third_order_hamiltonian_check(c0).pass);
  CHECK(third_order_compat(c0, {R("3*u1 + 1"), R("3*u2")}).pass);
  CHECK_FALSE(third_order_compat(c0, {R("u1 + 2*u2"), R("2*u1 - u2")}).pass);
  const auto quad = third_order_compat(c0, {R("u1^2"), R("0")});
  CHECK_FALSE(quad.family_passes("flux-hessian"));

  const auto one = third_order_hamiltonian_check(ThirdOrderData::from_metric(M({{"u1"}})));
  CHECK_FALSE(one.family_passes("cyclic"));

  const auto two = third_order_hamiltonian_check(ThirdOrderData::from_metric(M({{"1", "u1"}, {"u1", "1"}})));
  CHECK_FALSE(two.family_passes("cyclic"));
}

TEST_CASE("third-order Monge metrics are Hamiltonian and agree with the covering") {
  std::mt19937 rng(7);
  int passes = 0;
  int fails = 0;
  for (int trial = 0; trial < 3; ++trial) {
    const ThirdOrderData d = ThirdOrderData::from_metric(random_monge_metric(rng));
    const auto ham = third_order_hamiltonian_check(d);
    REQUIRE(ham.pass);
    for (int k = 0; k < 2; ++k) {
      const Vec flux = k == 0 ? random_third_order_member(rng, d, 2) : random_poly_flux(rng, 2, 2);
      const bool compat = third_order_compat(d, flux).pass;
      const auto ctx = build_cotangent(EvolutionSystem::conservative(flux));
      CHECK(compat == residual_vanishes(bivector_residual(ctx, third_order_bivector(d))));
      (compat ? passes : fails)++;
    }
  }
  CHECK(passes > 0);
  CHECK(fails > 0);
}

TEST_CASE("third-order nonlocal") {
  ThirdOrderData c0{M({{"1", "0"}, {"0", "1"}}), zero_t3(2)};
  NonlocalThirdOrderData none;
  const Vec V{R("u1 + 2*u2"), R("-2*u1 + u2")};
  const auto local = third_order_hamiltonian_check(c0);
  auto reduced = third_order_nonlocal_checks(c0, none, V);
  CHECK(reduced.pass == (local.pass && third_order_compat(c0, V).pass));

  NonlocalThirdOrderData skew{{M({{"0", "1"}, {"-1", "0"}})}, {Rat(1)}};
  // constant g = id, c = 0: tail w skew; its square adds w_{ml}w_{nk} to the flatness sum.
  const auto rep = third_order_nonlocal_checks(c0, skew, V);
  CHECK(rep.family_passes("w-skew"));
  CHECK(rep.family_passes("w-commutation"));
  CHECK(rep.family_passes("w-differential"));
  CHECK(rep.family_passes("symmetry"));

  NonlocalThirdOrderData sym{{identity_matrix(2)}, {Rat(1)}};
  CHECK_FALSE(third_order_nonlocal_checks(c0, sym, V).family_passes("w-skew"));
}

TEST_CASE("potentialize") {
  const auto F = EvolutionSystem::conservative({R("u1^2")});
  const auto P = potentialize(F);
  CHECK(P.kind == SystemKind::Potential);
  CHECK(P.f[0] == DiffPoly(R("u1^2")));
  CHECK_THROWS_AS(potentialize(EvolutionSystem::hydrodynamic({{R("u1")}})), InputError);
}

TEST_CASE("nijenhuis and haantjes") {
  CHECK(is_zero(haantjes(mat_scale(identity_matrix(3), R("u1*u2 + u3")))));
  CHECK(is_zero(haantjes(M({{"u1", "0"}, {"0", "u2"}}))));
  CHECK(is_zero(nijenhuis(M({{"1", "2"}, {"3", "4"}}))));
  CHECK_FALSE(is_zero(nijenhuis(M({{"u2", "u1"}, {"0", "u1"}}))));
  std::mt19937 rng(11);
  for (int k = 0; k < 10; ++k) {
    Mat D = zero_matrix(3);
    for (int i = 0; i < 3; ++i) D[i][i] = random_poly_entry(rng, 3, 2);
    CHECK(is_zero(haantjes(D)));
  }
}

TEST_CASE("characteristic polynomial and linear degeneracy") {
  const Vec f = char_poly(M({{"1", "2"}, {"3", "4"}}));
  CHECK(f[0] == R("-5"));
  CHECK(f[1] == R("-2"));
  CHECK(linear_degeneracy_check(M({{"1", "2"}, {"3", "4"}})).pass);
  const auto one = linear_degeneracy_check(M({{"u1"}}));
  CHECK_FALSE(one.pass);
  REQUIRE_FALSE(one.residuals.empty());
  CHECK(one.residuals[0].value == R("-1"));

  const auto sq = char_poly_square_root(M({{"u1", "1"}, {"0", "u1"}}), 5, 3);
  CHECK(sq.is_square);
  CHECK(sq.q[0] == R("-u1"));
  CHECK(sq.real_samples == sq.samples);
  CHECK_FALSE(char_poly_square_root(M({{"u1", "0"}, {"0", "u2"}}), 5, 3).is_square);
}

TEST_CASE("real root counting") {
  CHECK(count_real_roots({1, 0, -2}) == 2);
  CHECK(count_real_roots({1, 0, 2}) == 0);
  CHECK(count_real_roots({1, -2, 1}) == 1);
  CHECK(count_distinct_roots({1, -2, 1}) == 1);
  CHECK(count_distinct_roots({1, 0, 2}) == 2);
  CHECK(count_real_roots({1, 0, 0, -1}) == 1);
}
