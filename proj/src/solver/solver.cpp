#include "hhokit/solver.hpp"

#include <algorithm>
#include <random>
#include <tuple>

#include "hhokit/errors.hpp"

namespace hhokit {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

/// Monomials in u^1..u^n of total degree ≤ d, highest first.
std::vector<Monomial> field_monomials(int n, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  std::vector<int> e(sz(n), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      Monomial m;
      for (int k = 0; k < n; ++k) {
        if (e[sz(k)] > 0) m = m * Monomial::field(k, e[sz(k)]);
      }
      out.push_back(m);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      e[sz(i)] = x;
      rec(i + 1, left - x);
    }
    e[sz(i)] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// Products of u-jets u^i_k (k ≥ 1) of total weight exactly w.
std::vector<DiffMonomial> even_monomials(int n, int w) {
  std::vector<JetVar> vars;
  for (int k = 1; k <= w; ++k) {
    for (int i = 0; i < n; ++i) vars.push_back(JetVar::u(i, k));
  }
  std::vector<DiffMonomial> out;
  std::function<void(std::size_t, int, DiffMonomial)> rec = [&](std::size_t from, int left, DiffMonomial m) {
    if (left == 0) {
      out.push_back(m);
      return;
    }
    for (std::size_t v = from; v < vars.size(); ++v) {
      if (vars[v].xorder > left) continue;
      rec(v, left - vars[v].xorder, m * DiffMonomial(vars[v]));
    }
  };
  rec(0, w, DiffMonomial());
  return out;
}

using ColumnKey = std::tuple<int, DiffMonomial, Monomial>;

struct ColumnOrder {
  bool operator()(const ColumnKey& a, const ColumnKey& b) const {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) > std::get<1>(b);
    return std::get<2>(a) > std::get<2>(b);
  }
};

using SparseRow = std::map<ColumnKey, Rat, ColumnOrder>;

void axpy(SparseRow& y, const Rat& a, const SparseRow& x) {
  for (const auto& [k, v] : x) {
    auto it = y.find(k);
    if (it == y.end()) {
      y.emplace(k, a * v);
    } else {
      it->second += a * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

Vec random_member(const std::vector<Vec>& basis, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-5, 5);
  Vec out;
  if (basis.empty()) return out;
  out.assign(basis[0].size(), RatFunc());
  for (const auto& b : basis) {
    int c = 0;
    while (c == 0) c = dist(rng);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i] * RatFunc(c);
  }
  return out;
}

SolutionFamily solve_fluxes(const std::vector<RatFunc>& eqs, const FluxAnsatz& a, std::uint64_t seed) {
  SolutionFamily fam;
  fam.substitution = linear_solve(eqs, a.params);
  if (fam.substitution.inconsistent) {
    fam.inconsistent = true;
    return fam;
  }
  std::vector<std::vector<DiffPoly>> rows;
  for (int f : fam.substitution.free) {
    const auto sub = fam.substitution.basis_substitution(f);
    std::vector<DiffPoly> row;
    for (const auto& c : a.flux) row.emplace_back(c.substitute_params(sub));
    rows.push_back(std::move(row));
  }
  for (const auto& row : canonical_basis(rows, a.denominator)) {
    Vec v;
    for (const auto& c : row) v.push_back(c.coefficient());
    fam.fluxes.push_back(std::move(v));
  }
  fam.dimension = static_cast<int>(fam.fluxes.size());
  if (fam.dimension > 0) {
    fam.generic_member = random_member(fam.fluxes, seed);
    fam.classification = classify(jacobian(*fam.generic_member, a.n));
  }
  return fam;
}

}  // namespace

std::vector<std::vector<DiffPoly>> canonical_basis(const std::vector<std::vector<DiffPoly>>& rows,
                                                   const Poly& multiplier) {
  std::vector<SparseRow> sparse;
  std::size_t width = 0;
  for (const auto& row : rows) {
    width = std::max(width, row.size());
    SparseRow s;
    for (std::size_t c = 0; c < row.size(); ++c) {
      for (const auto& [m, coef] : row[c].terms()) {
        const RatFunc scaled = coef * RatFunc(multiplier);
        if (!scaled.is_polynomial()) throw Error("canonical_basis: multiplier does not clear denominators");
        const Rat dinv = 1 / scaled.den().constant_value();
        for (const auto& [um, uc] : scaled.num().terms()) {
          if (um.has_params()) throw Error("canonical_basis: parameters left in a basis element");
          s[{static_cast<int>(c), m, um}] += uc * dinv;
        }
      }
    }
    sparse.push_back(std::move(s));
  }
  // Gauss–Jordan, pivot = first column in ColumnOrder.
  std::vector<SparseRow> reduced;
  for (auto& s : sparse) {
    for (const auto& r : reduced) {
      auto it = s.find(r.begin()->first);
      if (it != s.end()) axpy(s, -Rat(it->second), r);
    }
    if (s.empty()) continue;
    const Rat lead = s.begin()->second;
    for (auto& [k, v] : s) v /= lead;
    for (auto& r : reduced) {
      auto it = r.find(s.begin()->first);
      if (it != r.end()) axpy(r, -Rat(it->second), s);
    }
    reduced.push_back(std::move(s));
  }
  std::sort(reduced.begin(), reduced.end(), [](const SparseRow& a, const SparseRow& b) {
    return ColumnOrder()(b.begin()->first, a.begin()->first);
  });
  const RatFunc inv = RatFunc(multiplier).inverse();
  std::vector<std::vector<DiffPoly>> out;
  for (const auto& r : reduced) {
    std::vector<DiffPoly> row(width);
    for (const auto& [k, v] : r) {
      const auto& [c, m, um] = k;
      row[sz(c)].add_term(m, RatFunc(Poly::monomial(um, v)) * inv);
    }
    out.push_back(std::move(row));
  }
  return out;
}

Ansatz make_operator_ansatz(int n, int order, int degree, std::size_t cap) {
  if (n < 1 || n > kMaxFieldVars) throw InputError("n must be between 1 and 8");
  if (order < 1) throw InputError("operator order must be at least 1");
  if (degree < 0) throw InputError("degree bound must be non-negative");
  Ansatz a;
  a.n = n;
  a.order = order;
  a.degree = degree;
  a.form.components.assign(sz(n), DiffPoly());
  const auto coefs = field_monomials(n, degree);
  int next = 1;
  for (int i = 0; i < n; ++i) {
    for (int w = order; w >= 1; --w) {
      for (int sigma = w; sigma >= 0; --sigma) {
        for (const auto& ev : even_monomials(n, w - sigma)) {
          for (int j = 0; j < n; ++j) {
            const DiffMonomial m = ev * DiffMonomial(JetVar::p(j, sigma));
            for (const auto& um : coefs) {
              if (a.params.size() >= cap) {
                throw InputError("ansatz size cap of " + std::to_string(cap) + " parameters exceeded");
              }
              const int id = next++;
              a.params.push_back(id);
              a.form.components[sz(i)].add_term(m, RatFunc(Poly::monomial(um * Monomial::param(id))));
            }
          }
        }
      }
    }
  }
  return a;
}

FluxAnsatz make_flux_ansatz(int n, int degree, const Poly& denominator, int first_param, std::size_t cap) {
  if (n < 1 || n > kMaxFieldVars) throw InputError("n must be between 1 and 8");
  if (denominator.is_zero()) throw DivisionByZero();
  if (denominator.has_params()) throw ParameterInDenominator();
  FluxAnsatz a;
  a.n = n;
  a.degree = degree;
  a.denominator = denominator;
  const auto mons = field_monomials(n, degree);
  int next = first_param;
  const RatFunc inv = RatFunc(denominator).inverse();
  for (int i = 0; i < n; ++i) {
    Poly num;
    for (const auto& m : mons) {
      if (a.params.size() >= cap) throw InputError("ansatz size cap of " + std::to_string(cap) + " parameters exceeded");
      const int id = next++;
      a.params.push_back(id);
      num += Poly::monomial(m * Monomial::param(id));
    }
    a.flux.push_back(RatFunc(num) * inv);
  }
  return a;
}

Mat make_matrix_ansatz(int n, int degree, int first_param, std::vector<int>& params) {
  const auto mons = field_monomials(n, degree);
  Mat V = zero_matrix(n);
  int next = first_param;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Poly e;
      for (const auto& m : mons) {
        const int id = next++;
        params.push_back(id);
        e += Poly::monomial(m * Monomial::param(id));
      }
      V[sz(i)][sz(j)] = e;
    }
  }
  return V;
}

SolutionFamily find_bivectors(const CoveringContext& ctx, const BivectorForm& form, const std::vector<int>& params) {
  SolutionFamily fam;
  const auto res = bivector_residual(ctx, form);
  fam.substitution = linear_solve(condition_equations(res), params);
  if (fam.substitution.inconsistent) {
    fam.inconsistent = true;
    return fam;
  }
  std::vector<std::vector<DiffPoly>> rows;
  for (int f : fam.substitution.free) {
    const auto sub = fam.substitution.basis_substitution(f);
    std::vector<DiffPoly> row;
    for (const auto& c : form.components) row.push_back(c.substitute_params(sub));
    rows.push_back(std::move(row));
  }
  for (auto& row : canonical_basis(rows)) fam.forms.push_back(BivectorForm{std::move(row)});
  fam.dimension = static_cast<int>(fam.forms.size());
  return fam;
}

SolutionFamily find_bivectors(const EvolutionSystem& F, const Ansatz& a) {
  if (a.n != F.n) throw InputError("ansatz size does not match the system");
  return find_bivectors(build_cotangent(F), a.form, a.params);
}

SolutionFamily find_fluxes_second_order(const SecondOrderData& d, const FluxAnsatz& a, std::uint64_t seed) {
  if (a.n != d.n) throw InputError("flux ansatz size does not match the metric");
  if (!second_order_canonical_check(d).pass) throw InputError("second-order data is not in canonical form");
  return solve_fluxes(second_order_compat(d, a.flux).equations(), a, seed);
}

SolutionFamily find_fluxes_third_order(const ThirdOrderData& d, const FluxAnsatz& a, std::uint64_t seed) {
  if (a.n != d.n()) throw InputError("flux ansatz size does not match the metric");
  if (!third_order_hamiltonian_check(d).pass) throw InputError("third-order data is not Hamiltonian");
  return solve_fluxes(third_order_compat(d, a.flux).equations(), a, seed);
}

}  // namespace hhokit
