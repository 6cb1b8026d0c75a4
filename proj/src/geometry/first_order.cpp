#include "hhokit/geometry.hpp"

namespace hhokit {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

void check_metric_symmetry(ConditionReport& rep, const Mat& g) {
  const int n = static_cast<int>(g.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) rep.check("metric-symmetry", {i, j}, g[sz(i)][sz(j)] - g[sz(j)][sz(i)]);
  }
}

void check_shapes(const Mat& g, const Connection& G) {
  const std::size_t n = g.size();
  for (const auto& row : g) {
    if (row.size() != n) throw InputError("metric must be square");
  }
  if (G.gamma.size() != n) throw InputError("connection has wrong dimension");
  for (const auto& m : G.gamma) {
    if (m.size() != n) throw InputError("connection has wrong dimension");
    for (const auto& row : m) {
      if (row.size() != n) throw InputError("connection has wrong dimension");
    }
  }
}

void check_shape(const Mat& V, std::size_t n, const char* what) {
  if (V.size() != n) throw InputError(std::string(what) + " has wrong dimension");
  for (const auto& row : V) {
    if (row.size() != n) throw InputError(std::string(what) + " has wrong dimension");
  }
}

}  // namespace

T4 curvature(const Metric& metric, const Connection& G) {
  const int n = metric.n();
  check_shapes(metric.g, G);
  const Mat glow = metric.lower();
  const T3 chr = christoffel(glow, G);
  const T4 dG = [&] {
    T4 out(sz(n));
    for (int i = 0; i < n; ++i) out[sz(i)] = partials(G.gamma[sz(i)]);
    return out;
  }();
  T4 R(sz(n), T3(sz(n), zero_matrix(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          // dG[i][j][a][b] = ∂_b Γ^{ij}_a
          RatFunc r = dG[sz(i)][sz(j)][sz(l)][sz(k)] - dG[sz(i)][sz(j)][sz(k)][sz(l)];
          for (int s = 0; s < n; ++s) {
            r += chr[sz(i)][sz(k)][sz(s)] * G.gamma[sz(s)][sz(j)][sz(l)];
            r -= chr[sz(j)][sz(k)][sz(s)] * G.gamma[sz(s)][sz(i)][sz(l)];
          }
          R[sz(i)][sz(j)][sz(k)][sz(l)] = r;
        }
      }
    }
  }
  return R;
}

ConditionReport first_order_hamiltonian_check(const Metric& metric, const Connection& G) {
  ConditionReport rep;
  rep.name = "first-order Hamiltonian";
  check_shapes(metric.g, G);
  const int n = metric.n();
  const Mat g = metric.upper();
  check_metric_symmetry(rep, g);
  const T3 dg = partials(g);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        rep.check("metric-compatibility", {i, j, k},
                  dg[sz(i)][sz(j)][sz(k)] - G.gamma[sz(i)][sz(j)][sz(k)] - G.gamma[sz(j)][sz(i)][sz(k)]);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        RatFunc r;
        for (int k = 0; k < n; ++k) {
          r += g[sz(i)][sz(k)] * G.gamma[sz(j)][sz(l)][sz(k)] - g[sz(j)][sz(k)] * G.gamma[sz(i)][sz(l)][sz(k)];
        }
        rep.check("connection-symmetry", {i, j, l}, r);
      }
    }
  }
  const T4 R = curvature(metric, G);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) rep.check("flatness", {i, j, k, l}, R[sz(i)][sz(j)][sz(k)][sz(l)]);
      }
    }
  }
  return rep;
}

ConditionReport tsarev_check(const Metric& metric, const Connection& G, const VelocityMatrix& vm) {
  ConditionReport rep;
  rep.name = "Tsarev";
  check_shapes(metric.g, G);
  const int n = metric.n();
  check_shape(vm.V, sz(n), "velocity matrix");
  const Mat g = metric.upper();
  const Mat& V = vm.V;
  check_metric_symmetry(rep, g);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      RatFunc r;
      for (int k = 0; k < n; ++k) r += g[sz(i)][sz(k)] * V[sz(j)][sz(k)] - g[sz(j)][sz(k)] * V[sz(i)][sz(k)];
      rep.check("g-symmetry", {i, j}, r);
    }
  }
  const T3 chr = christoffel(metric.lower(), G);
  const T3 dV = partials(V);
  // nabla[j][k][h] = ∇_k V^j_h
  T3 nabla = zero_t3(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int h = 0; h < n; ++h) {
        RatFunc r = dV[sz(j)][sz(h)][sz(k)];
        for (int s = 0; s < n; ++s) {
          r += chr[sz(j)][sz(k)][sz(s)] * V[sz(s)][sz(h)];
          r -= chr[sz(s)][sz(k)][sz(h)] * V[sz(j)][sz(s)];
        }
        nabla[sz(j)][sz(k)][sz(h)] = r;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int h = 0; h < n; ++h) {
        RatFunc r;
        for (int k = 0; k < n; ++k) {
          r += g[sz(i)][sz(k)] * (nabla[sz(j)][sz(k)][sz(h)] - nabla[sz(j)][sz(h)][sz(k)]);
        }
        rep.check("covariant-curl", {i, j, h}, r);
      }
    }
  }
  return rep;
}

ConditionReport expanded_first_order_conditions(const Metric& metric, const Connection& G,
                                                const VelocityMatrix& vm) {
  ConditionReport rep;
  rep.name = "expanded first-order conditions";
  check_shapes(metric.g, G);
  const int n = metric.n();
  check_shape(vm.V, sz(n), "velocity matrix");
  const Mat g = metric.upper();
  const Mat& V = vm.V;
  const T3& Ga = G.gamma;
  const T3 dg = partials(g);
  const T3 dV = partials(V);
  std::vector<T3> ddV(sz(n));  // ddV[i][j][a][b] = V^i_{j,ab}
  for (int i = 0; i < n; ++i) ddV[sz(i)] = partials(dV[sz(i)]);
  std::vector<T3> dGa(sz(n));  // dGa[i][j][k][l] = Γ^{ij}_{k,l}
  for (int i = 0; i < n; ++i) dGa[sz(i)] = partials(Ga[sz(i)]);

  auto v = [&](int i, int j) -> const RatFunc& { return V[sz(i)][sz(j)]; };
  auto v1 = [&](int i, int j, int a) -> const RatFunc& { return dV[sz(i)][sz(j)][sz(a)]; };
  auto v2 = [&](int i, int j, int a, int b) -> const RatFunc& { return ddV[sz(i)][sz(j)][sz(a)][sz(b)]; };
  auto G3 = [&](int i, int j, int k) -> const RatFunc& { return Ga[sz(i)][sz(j)][sz(k)]; };
  auto G4 = [&](int i, int j, int k, int l) -> const RatFunc& { return dGa[sz(i)][sz(j)][sz(k)][sz(l)]; };
  auto gg = [&](int i, int j) -> const RatFunc& { return g[sz(i)][sz(j)]; };
  auto dgg = [&](int i, int j, int k) -> const RatFunc& { return dg[sz(i)][sz(j)][sz(k)]; };

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      RatFunc r;
      for (int k = 0; k < n; ++k) r += v(i, k) * gg(k, j) - v(j, k) * gg(k, i);
      rep.check("expanded-p-xx", {i, j}, r);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int m = 0; m < n; ++m) {
        RatFunc r;
        for (int k = 0; k < n; ++k) {
          r += dgg(i, j, k) * v(k, m);
          r += gg(i, k) * (v1(j, k, m) - v1(j, m, k));
          r += gg(i, k) * v1(j, k, m);
          r += G3(i, k, m) * v(j, k);
          r -= v1(i, m, k) * gg(k, j);
          r -= v(i, k) * dgg(k, j, m);
          r -= v(i, k) * G3(k, j, m);
        }
        rep.check("expanded-ux-px", {i, j, m}, r);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int h = 0; h < n; ++h) {
        RatFunc r;
        for (int k = 0; k < n; ++k) {
          r += gg(i, k) * (v1(j, k, h) - v1(j, h, k));
          r += G3(i, j, k) * v(k, h);
          r -= G3(k, j, h) * v(i, k);
        }
        rep.check("expanded-uxx-p", {i, j, h}, r);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        for (int m = 0; m < n; ++m) {
          RatFunc r;
          for (int k = 0; k < n; ++k) {
            r += gg(i, k) * (v2(j, k, m, l) + v2(j, k, l, m) - v2(j, m, k, l) - v2(j, l, k, m));
            r += G4(i, j, m, k) * v(k, l) + G4(i, j, l, k) * v(k, m);
            r += G3(i, j, k) * v1(k, l, m) + G3(i, j, k) * v1(k, m, l);
            r += G3(i, k, l) * v1(j, k, m) + G3(i, k, m) * v1(j, k, l);
            r -= G3(i, k, l) * v1(j, m, k) + G3(i, k, m) * v1(j, l, k);
            r -= G3(k, j, m) * v1(i, l, k) + G3(k, j, l) * v1(i, m, k);
            r -= G4(k, j, m, l) * v(i, k) + G4(k, j, l, m) * v(i, k);
          }
          rep.check("expanded-ux-ux-p", {i, j, l, m}, r);
        }
      }
    }
  }
  return rep;
}

ConditionReport nonlocal_first_order_check(const Metric& metric, const Connection& G, const Mat& W,
                                           const VelocityMatrix& vm) {
  ConditionReport rep = tsarev_check(metric, G, vm);
  rep.name = "nonlocal first-order";
  rep.note = "paper-stated conditions only";
  const int n = metric.n();
  check_shape(W, sz(n), "tail matrix W");
  const Mat& V = vm.V;
  const Mat WV = mat_mul(W, V);
  const Mat VW = mat_mul(V, W);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rep.check("W-commutation", {i, j}, WV[sz(i)][sz(j)] - VW[sz(i)][sz(j)]);
  }
  const T4 R = curvature(metric, G);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        for (int m = 0; m < n; ++m) {
          RatFunc r;
          for (int k = 0; k < n; ++k) {
            r += R[sz(i)][sz(j)][sz(k)][sz(l)] * V[sz(k)][sz(m)];
            r += R[sz(i)][sz(j)][sz(k)][sz(m)] * V[sz(k)][sz(l)];
          }
          r += W[sz(i)][sz(l)] * VW[sz(j)][sz(m)] + W[sz(i)][sz(m)] * VW[sz(j)][sz(l)];
          r -= VW[sz(i)][sz(l)] * W[sz(j)][sz(m)] + VW[sz(i)][sz(m)] * W[sz(j)][sz(l)];
          rep.check("tail-curvature", {i, j, l, m}, r);
        }
      }
    }
  }
  return rep;
}

LocalOperator first_order_operator(const Metric& metric, const Connection& G) {
  const int n = metric.n();
  const Mat g = metric.upper();
  LocalOperator A(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      A.add(i, j, DiffPoly(g[sz(i)][sz(j)]), 1);
      DiffPoly c;
      for (int k = 0; k < n; ++k) c += DiffPoly(G.gamma[sz(i)][sz(j)][sz(k)]) * DiffPoly::u(k, 1);
      A.add(i, j, c, 0);
    }
  }
  return A;
}

}  // namespace hhokit
