#include "hhokit/geometry.hpp"

namespace hhokit {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

void check_data_shape(const ThirdOrderData& d) {
  const std::size_t n = d.g_low.size();
  bool ok = d.c.size() == n;
  for (const auto& row : d.g_low) ok = ok && row.size() == n;
  for (const auto& m : d.c) {
    ok = ok && m.size() == n;
    for (const auto& row : m) ok = ok && row.size() == n;
  }
  if (!ok) throw InputError("third-order data has inconsistent dimensions");
}

/// c^s_{ml} = g^{sa} c_{aml}.
T3 c_mixed(const Mat& gup, const T3& cl) {
  const int n = static_cast<int>(gup.size());
  T3 out = zero_t3(n);
  for (int s = 0; s < n; ++s) {
    for (int m = 0; m < n; ++m) {
      for (int l = 0; l < n; ++l) {
        RatFunc r;
        for (int a = 0; a < n; ++a) r += gup[sz(s)][sz(a)] * cl[sz(a)][sz(m)][sz(l)];
        out[sz(s)][sz(m)][sz(l)] = r;
      }
    }
  }
  return out;
}

/// w_{αij} = g_{is} w^s_{αj}.
Mat lower_w(const Mat& glow, const Mat& w) { return mat_mul(glow, w); }

void hamiltonian_families(ConditionReport& rep, const ThirdOrderData& d, const NonlocalThirdOrderData* nl) {
  const int n = d.n();
  const Mat& g = d.g_low;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) rep.check("metric-symmetry", {i, j}, g[sz(i)][sz(j)] - g[sz(j)][sz(i)]);
  }
  const Mat gup = d.g_up();
  const T3 dg = partials(g);
  const T3 cl = d.c_low();
  for (int a = 0; a < n; ++a) {
    for (int k = 0; k < n; ++k) {
      for (int m = 0; m < n; ++m) {
        const RatFunc expect = (dg[sz(m)][sz(a)][sz(k)] - dg[sz(k)][sz(a)][sz(m)]) * RatFunc(Rat(1, 3));
        rep.check("c-from-g", {a, k, m}, cl[sz(a)][sz(k)][sz(m)] - expect);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        rep.check("cyclic", {i, j, k},
                  dg[sz(i)][sz(j)][sz(k)] + dg[sz(j)][sz(k)][sz(i)] + dg[sz(k)][sz(i)][sz(j)]);
      }
    }
  }
  const T3 cm = c_mixed(gup, cl);
  std::vector<Mat> wl;
  if (nl != nullptr) {
    for (const auto& w : nl->w) wl.push_back(lower_w(g, w));
  }
  const char* fam = nl == nullptr ? "c-flatness" : "modified-flatness";
  std::vector<T3> dcl(sz(n));
  for (int a = 0; a < n; ++a) dcl[sz(a)] = partials(cl[sz(a)]);
  for (int a = 0; a < n; ++a) {
    for (int m = 0; m < n; ++m) {
      for (int l = 0; l < n; ++l) {
        for (int k = 0; k < n; ++k) {
          RatFunc r = dcl[sz(a)][sz(m)][sz(l)][sz(k)];
          for (int s = 0; s < n; ++s) r += cm[sz(s)][sz(m)][sz(l)] * cl[sz(s)][sz(a)][sz(k)];
          for (std::size_t al = 0; al < wl.size(); ++al) {
            r += RatFunc(nl->weights[al]) * wl[al][sz(m)][sz(l)] * wl[al][sz(a)][sz(k)];
          }
          rep.check(fam, {a, m, l, k}, r);
        }
      }
    }
  }
}

}  // namespace

Mat ThirdOrderData::g_up() const { return inverse(g_low, "det g = 0"); }

T3 ThirdOrderData::c_low() const {
  check_data_shape(*this);
  const int n = this->n();
  T3 out = zero_t3(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        RatFunc r;
        for (int q = 0; q < n; ++q) {
          if (g_low[sz(i)][sz(q)].is_zero()) continue;
          for (int p = 0; p < n; ++p) r += g_low[sz(i)][sz(q)] * g_low[sz(j)][sz(p)] * c[sz(p)][sz(q)][sz(k)];
        }
        out[sz(i)][sz(j)][sz(k)] = r;
      }
    }
  }
  return out;
}

ThirdOrderData ThirdOrderData::from_metric(Mat g_low) {
  const int n = static_cast<int>(g_low.size());
  ThirdOrderData d;
  d.g_low = std::move(g_low);
  const Mat gup = d.g_up();
  const T3 dg = partials(d.g_low);
  T3 cl = zero_t3(n);
  for (int a = 0; a < n; ++a) {
    for (int k = 0; k < n; ++k) {
      for (int m = 0; m < n; ++m) {
        cl[sz(a)][sz(k)][sz(m)] = (dg[sz(m)][sz(a)][sz(k)] - dg[sz(k)][sz(a)][sz(m)]) * RatFunc(Rat(1, 3));
      }
    }
  }
  // c^{pq}_k = g^{qi} g^{pj} c_{ijk}
  d.c = zero_t3(n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      for (int k = 0; k < n; ++k) {
        RatFunc r;
        for (int i = 0; i < n; ++i) {
          if (gup[sz(q)][sz(i)].is_zero()) continue;
          for (int j = 0; j < n; ++j) r += gup[sz(q)][sz(i)] * gup[sz(p)][sz(j)] * cl[sz(i)][sz(j)][sz(k)];
        }
        d.c[sz(p)][sz(q)][sz(k)] = r;
      }
    }
  }
  return d;
}

ConditionReport third_order_hamiltonian_check(const ThirdOrderData& d) {
  check_data_shape(d);
  ConditionReport rep;
  rep.name = "third-order Hamiltonian";
  hamiltonian_families(rep, d, nullptr);
  return rep;
}

ConditionReport third_order_compat(const ThirdOrderData& d, const Vec& flux) {
  check_data_shape(d);
  const int n = d.n();
  if (static_cast<int>(flux.size()) != n) throw InputError("flux has wrong dimension");
  ConditionReport rep;
  rep.name = "third-order compatibility";
  const Mat& g = d.g_low;
  const Mat gup = d.g_up();
  const T3 cl = d.c_low();
  const Mat J = partials(flux);  // J[m][i] = V^m_{,i}
  const T3 H = partials(J);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      RatFunc r;
      for (int m = 0; m < n; ++m) r += g[sz(i)][sz(m)] * J[sz(m)][sz(j)] - g[sz(j)][sz(m)] * J[sz(m)][sz(i)];
      rep.check("g-symmetric-jacobian", {i, j}, r);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        RatFunc r;
        for (int m = 0; m < n; ++m) {
          r += cl[sz(m)][sz(k)][sz(l)] * J[sz(m)][sz(i)];
          r += cl[sz(m)][sz(i)][sz(k)] * J[sz(m)][sz(l)];
          r += cl[sz(m)][sz(l)][sz(i)] * J[sz(m)][sz(k)];
        }
        rep.check("c-cyclic", {i, k, l}, r);
      }
    }
  }
  const T3 cm = c_mixed(gup, cl);  // cm[k][m][j] = g^{ks} c_{smj}
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        RatFunc r = H[sz(k)][sz(i)][sz(j)];
        for (int m = 0; m < n; ++m) {
          r -= cm[sz(k)][sz(m)][sz(j)] * J[sz(m)][sz(i)];
          r -= cm[sz(k)][sz(m)][sz(i)] * J[sz(m)][sz(j)];
        }
        rep.check("flux-hessian", {k, i, j}, r);
      }
    }
  }
  return rep;
}

ConditionReport third_order_nonlocal_checks(const ThirdOrderData& d, const NonlocalThirdOrderData& nl,
                                            const Vec& flux) {
  check_data_shape(d);
  const int n = d.n();
  if (nl.w.size() != nl.weights.size()) throw InputError("every tail needs exactly one weight");
  for (const auto& w : nl.w) {
    bool ok = static_cast<int>(w.size()) == n;
    for (const auto& row : w) ok = ok && static_cast<int>(row.size()) == n;
    if (!ok) throw InputError("tail matrix has wrong dimension");
  }
  ConditionReport rep;
  rep.name = "third-order nonlocal";
  hamiltonian_families(rep, d, &nl);
  ConditionReport compat = third_order_compat(d, flux);
  rep.merge(compat);

  const Mat& g = d.g_low;
  const T3 cm = c_mixed(d.g_up(), d.c_low());
  const Mat J = partials(flux);
  const T3 H = partials(J);  // H[k][m][h] = V^k_{,mh}
  for (std::size_t al = 0; al < nl.w.size(); ++al) {
    const int a = static_cast<int>(al);
    const Mat& w = nl.w[al];
    const Mat wl = lower_w(g, w);
    const T3 dwl = partials(wl);
    const T3 dw = partials(w);  // dw[i][h][k] = w^i_{h,k}
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) rep.check("w-skew", {a, i, j}, wl[sz(i)][sz(j)] + wl[sz(j)][sz(i)]);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
          RatFunc r = dwl[sz(i)][sz(j)][sz(l)];
          for (int s = 0; s < n; ++s) r -= cm[sz(s)][sz(i)][sz(j)] * wl[sz(s)][sz(l)];
          rep.check("w-parallel", {a, i, j, l}, r);
        }
      }
    }
    const Mat wJ = mat_mul(w, J);
    const Mat Jw = mat_mul(J, w);
    for (int i = 0; i < n; ++i) {
      for (int h = 0; h < n; ++h) rep.check("w-commutation", {a, i, h}, Jw[sz(i)][sz(h)] - wJ[sz(i)][sz(h)]);
    }
    for (int i = 0; i < n; ++i) {
      for (int h = 0; h < n; ++h) {
        for (int m = 0; m < n; ++m) {
          RatFunc r;
          for (int k = 0; k < n; ++k) {
            r -= dw[sz(i)][sz(h)][sz(k)] * J[sz(k)][sz(m)];
            r -= dw[sz(i)][sz(m)][sz(k)] * J[sz(k)][sz(h)];
            r -= w[sz(i)][sz(k)] * (H[sz(k)][sz(m)][sz(h)] + H[sz(k)][sz(h)][sz(m)]);
            r += J[sz(i)][sz(k)] * (dw[sz(k)][sz(m)][sz(h)] + dw[sz(k)][sz(h)][sz(m)]);
          }
          rep.check("w-differential", {a, i, h, m}, r);
        }
      }
    }
    // φ^i = w^i_j(b_x) b^j_xx must be a symmetry of b_t = V(b_x).
    std::vector<DiffPoly> phi;
    for (int i = 0; i < n; ++i) {
      DiffPoly c;
      for (int j = 0; j < n; ++j) c += DiffPoly(w[sz(i)][sz(j)]) * DiffPoly::u(j, 1);
      phi.push_back(std::move(c));
    }
    const auto res = linearize(EvolutionSystem::potential(flux), phi);
    for (const auto& e : extract_conditions(res)) rep.check("symmetry", {a, e.component}, e.coefficient);
  }
  return rep;
}

BivectorForm third_order_bivector(const ThirdOrderData& d) {
  const int n = d.n();
  const Mat gup = d.g_up();
  BivectorForm b;
  for (int i = 0; i < n; ++i) {
    DiffPoly inner;
    for (int j = 0; j < n; ++j) {
      inner += DiffPoly(gup[sz(i)][sz(j)]) * DiffPoly::p(j, 2);
      DiffPoly cu;
      for (int k = 0; k < n; ++k) cu += DiffPoly(d.c[sz(i)][sz(j)][sz(k)]) * DiffPoly::u(k, 1);
      inner += cu * DiffPoly::p(j, 1);
    }
    b.components.push_back(total_x(inner));
  }
  return b;
}

BivectorForm potential_third_order_bivector(CoveringContext& ctx, const ThirdOrderData& d,
                                            const NonlocalThirdOrderData& nl) {
  const int n = d.n();
  if (ctx.n() != n) throw InputError("operator size does not match the system");
  if (nl.w.size() != nl.weights.size()) throw InputError("every tail needs exactly one weight");
  const Mat gup = d.g_up();
  std::vector<int> slots;
  for (const auto& w : nl.w) {
    std::vector<DiffPoly> phi;
    for (int i = 0; i < n; ++i) {
      DiffPoly c;
      for (int j = 0; j < n; ++j) c += DiffPoly(w[sz(i)][sz(j)]) * DiffPoly::u(j, 1);
      phi.push_back(std::move(c));
    }
    slots.push_back(ctx.register_symmetry(phi));
  }
  BivectorForm b;
  for (int i = 0; i < n; ++i) {
    DiffPoly e;
    for (int j = 0; j < n; ++j) {
      e -= DiffPoly(gup[sz(i)][sz(j)]) * DiffPoly::p(j, 1);
      DiffPoly cu;
      for (int k = 0; k < n; ++k) cu += DiffPoly(d.c[sz(i)][sz(j)][sz(k)]) * DiffPoly::u(k, 1);
      e -= cu * DiffPoly::p(j);
    }
    for (std::size_t al = 0; al < nl.w.size(); ++al) {
      DiffPoly wu;
      for (int k = 0; k < n; ++k) wu += DiffPoly(nl.w[al][sz(i)][sz(k)]) * DiffPoly::u(k, 1);
      e -= DiffPoly(RatFunc(nl.weights[al])) * wu * DiffPoly::r(slots[al]);
    }
    b.components.push_back(std::move(e));
  }
  return b;
}

}  // namespace hhokit
