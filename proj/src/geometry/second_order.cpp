#include "hhokit/geometry.hpp"

namespace hhokit {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

void check_data_shape(const SecondOrderData& d) {
  const std::size_t n = sz(d.n);
  bool ok = d.T.size() == n && d.g0.size() == n;
  for (const auto& m : d.T) {
    ok = ok && m.size() == n;
    for (const auto& row : m) ok = ok && row.size() == n;
  }
  for (const auto& row : d.g0) ok = ok && row.size() == n;
  if (!ok) throw InputError("second-order data has inconsistent dimensions");
}

}  // namespace

Mat SecondOrderData::g_low() const {
  check_data_shape(*this);
  Mat g = zero_matrix(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Poly e(g0[sz(i)][sz(j)]);
      for (int k = 0; k < n; ++k) {
        if (T[sz(i)][sz(j)][sz(k)] != 0) e += Poly::field(k) * Poly(T[sz(i)][sz(j)][sz(k)]);
      }
      g[sz(i)][sz(j)] = e;
    }
  }
  return g;
}

ConditionReport second_order_canonical_check(const SecondOrderData& d) {
  check_data_shape(d);
  ConditionReport rep;
  rep.name = "second-order canonical form";
  const int n = d.n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      rep.check("g0-skew", {i, j}, RatFunc(d.g0[sz(i)][sz(j)] + d.g0[sz(j)][sz(i)]));
      for (int k = 0; k < n; ++k) {
        const Rat& t = d.T[sz(i)][sz(j)][sz(k)];
        rep.check("T-skew", {i, j, k}, RatFunc(t + d.T[sz(j)][sz(i)][sz(k)]));
        rep.check("T-skew", {i, j, k}, RatFunc(t + d.T[sz(i)][sz(k)][sz(j)]));
      }
    }
  }
  return rep;
}

ConditionReport second_order_compat(const SecondOrderData& d, const Vec& flux) {
  const int n = d.n;
  if (static_cast<int>(flux.size()) != n) throw InputError("flux has wrong dimension");
  ConditionReport rep;
  rep.name = "second-order compatibility";
  const Mat g = d.g_low();
  if (determinant(g).is_zero()) throw DegenerateMetric("det g_low = 0");
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) rep.check("metric-skew", {i, j}, g[sz(i)][sz(j)] + g[sz(j)][sz(i)]);
  }
  const Mat J = partials(flux);  // J[k][p] = V^k_{,p}
  const T3 H = partials(J);      // H[k][p][l] = V^k_{,pl}
  const T3 dg = partials(g);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      RatFunc r;
      for (int j = 0; j < n; ++j) r += g[sz(q)][sz(j)] * J[sz(j)][sz(p)] + g[sz(p)][sz(j)] * J[sz(j)][sz(q)];
      rep.check("skew-adjoint-jacobian", {p, q}, r);
    }
  }
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      for (int l = 0; l < n; ++l) {
        RatFunc r;
        for (int k = 0; k < n; ++k) {
          r += g[sz(q)][sz(k)] * H[sz(k)][sz(p)][sz(l)];
          r += dg[sz(p)][sz(q)][sz(k)] * J[sz(k)][sz(l)];
          r += dg[sz(q)][sz(k)][sz(l)] * J[sz(k)][sz(p)];
        }
        rep.check("second-derivative", {p, q, l}, r);
      }
    }
  }
  return rep;
}

EvolutionSystem potentialize(const EvolutionSystem& F) {
  if (F.kind != SystemKind::Conservative) throw InputError("potentialize requires a conservative system");
  return EvolutionSystem::potential(F.flux);
}

BivectorForm potential_second_order_bivector(const SecondOrderData& d) {
  const Mat gup = inverse(d.g_low(), "det g_low = 0");
  BivectorForm b;
  for (int i = 0; i < d.n; ++i) {
    DiffPoly c;
    for (int j = 0; j < d.n; ++j) c -= DiffPoly(gup[sz(i)][sz(j)]) * DiffPoly::p(j);
    b.components.push_back(std::move(c));
  }
  return b;
}

}  // namespace hhokit
