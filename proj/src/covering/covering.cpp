#include "hhokit/covering.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "hhokit/errors.hpp"

namespace hhokit {

namespace {

Rat binomial(int k, int m) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(m));
  return Rat(r);
}

void check_vector(const std::vector<DiffPoly>& v, int n, const char* what) {
  if (static_cast<int>(v.size()) != n) {
    throw InputError(std::string(what) + " must have " + std::to_string(n) + " components");
  }
}

}  // namespace

// --------------------------------------------------------- EvolutionSystem

Matrix<RatFunc> jacobian(const std::vector<RatFunc>& flux, int n) {
  Matrix<RatFunc> J(flux.size(), std::vector<RatFunc>(static_cast<std::size_t>(n)));
  for (std::size_t i = 0; i < flux.size(); ++i) {
    for (int j = 0; j < n; ++j) J[i][static_cast<std::size_t>(j)] = flux[i].partial(j);
  }
  return J;
}

EvolutionSystem EvolutionSystem::general(std::vector<DiffPoly> f) {
  EvolutionSystem F;
  F.n = static_cast<int>(f.size());
  F.f = std::move(f);
  return F;
}

EvolutionSystem EvolutionSystem::hydrodynamic(Matrix<RatFunc> V) {
  EvolutionSystem F;
  F.n = static_cast<int>(V.size());
  F.kind = SystemKind::Hydrodynamic;
  for (const auto& row : V) {
    if (static_cast<int>(row.size()) != F.n) throw InputError("velocity matrix must be square");
    DiffPoly fi;
    for (int j = 0; j < F.n; ++j) fi += DiffPoly(row[static_cast<std::size_t>(j)]) * DiffPoly::u(j, 1);
    F.f.push_back(std::move(fi));
  }
  F.V = std::move(V);
  return F;
}

EvolutionSystem EvolutionSystem::conservative(std::vector<RatFunc> flux) {
  EvolutionSystem F;
  F.n = static_cast<int>(flux.size());
  F.kind = SystemKind::Conservative;
  for (const auto& v : flux) F.f.push_back(total_x(DiffPoly(v)));
  F.V = jacobian(flux, F.n);
  F.flux = std::move(flux);
  return F;
}

EvolutionSystem EvolutionSystem::potential(std::vector<RatFunc> flux) {
  EvolutionSystem F;
  F.n = static_cast<int>(flux.size());
  F.kind = SystemKind::Potential;
  for (const auto& v : flux) F.f.emplace_back(v);
  F.V = jacobian(flux, F.n);
  F.flux = std::move(flux);
  return F;
}

// ----------------------------------------------------------- LocalOperator

LocalOperator::LocalOperator(int n) : n_(n), entries_(static_cast<std::size_t>(n * n)) {}

void LocalOperator::add(int i, int j, const DiffPoly& coef, int k) {
  if (k < 0) throw InputError("negative derivative order in operator");
  if (coef.is_zero()) return;
  if (!coef.is_odd_free()) throw InputError("operator coefficients must be free of odd variables");
  auto& e = entries_[idx(i, j)];
  auto it = std::find_if(e.begin(), e.end(), [k](const OpTerm& t) { return t.k <= k; });
  if (it != e.end() && it->k == k) {
    it->coef += coef;
    if (it->coef.is_zero()) e.erase(it);
  } else {
    e.insert(it, OpTerm{coef, k});
  }
}

int LocalOperator::order() const {
  int m = 0;
  for (const auto& e : entries_) {
    for (const auto& t : e) m = std::max(m, t.k);
  }
  return m;
}

bool operator==(const LocalOperator& a, const LocalOperator& b) {
  if (a.n_ != b.n_) return false;
  for (std::size_t q = 0; q < a.entries_.size(); ++q) {
    const auto& x = a.entries_[q];
    const auto& y = b.entries_[q];
    if (x.size() != y.size()) return false;
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (x[t].k != y[t].k || !(x[t].coef == y[t].coef)) return false;
    }
  }
  return true;
}

// ------------------------------------------------------------ NotASymmetry

NotASymmetry::NotASymmetry(std::vector<DiffPoly> residual)
    : Error("not a symmetry: linearization does not vanish on the covering"),
      residual_(std::move(residual)) {}

// --------------------------------------------------------- CoveringContext

struct CoveringContext::Cache {
  std::mutex mu;
  std::map<std::pair<int, int>, DiffPoly> ut;
  std::map<std::pair<int, int>, DiffPoly> pt;
};

CoveringContext::CoveringContext(EvolutionSystem system)
    : system_(std::move(system)), cache_(std::make_shared<Cache>()) {
  const int n = system_.n;
  if (n < 1) throw InputError("system needs at least one dependent variable");
  check_vector(system_.f, n, "system");
  int order = 0;
  for (const auto& fi : system_.f) {
    if (!fi.is_odd_free()) throw InputError("system right-hand sides must be free of odd variables");
    if (fi.max_field() >= n) throw InputError("system refers to a variable beyond n");
    if (fi.has_params()) throw InputError("system right-hand sides must not contain parameters");
    order = std::max(order, fi.max_order());
  }
  const int s = system_.shift();
  partials_.assign(static_cast<std::size_t>(n),
                   std::vector<std::vector<DiffPoly>>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto& v = partials_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int k = 0; k <= order; ++k) {
        v.push_back(system_.f[static_cast<std::size_t>(i)].partial(JetVar::u(j, k)));
      }
    }
  }
  // p_{i,t} = -Σ_j Σ_σ (-D_x)^σ (∂f^j/∂u^i_σ p_j)
  for (int i = 0; i < n; ++i) {
    DiffPoly rule;
    for (int j = 0; j < n; ++j) {
      const auto& v = partials_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      for (int k = 0; k < static_cast<int>(v.size()); ++k) {
        if (v[static_cast<std::size_t>(k)].is_zero()) continue;
        const int sigma = k + s;
        DiffPoly t = total_x(v[static_cast<std::size_t>(k)] * DiffPoly::p(j), sigma);
        if (sigma % 2 == 0) rule -= t;
        else rule += t;
      }
    }
    pt_rules_.push_back(std::move(rule));
  }
}

DiffPoly CoveringContext::dx(const DiffPoly& a) const {
  return total_x(a, [this](int alpha) -> DiffPoly {
    if (alpha < 0 || alpha >= static_cast<int>(slots_.size())) {
      throw Error("unregistered nonlocal variable r" + std::to_string(alpha + 1));
    }
    return slots_[static_cast<std::size_t>(alpha)].rx_rule;
  });
}

DiffPoly CoveringContext::dx(const DiffPoly& a, int times) const {
  DiffPoly r = a;
  for (int k = 0; k < times; ++k) r = dx(r);
  return r;
}

DiffPoly CoveringContext::ut(int i, int k) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->ut.find({i, k});
    if (it != cache_->ut.end()) return it->second;
  }
  DiffPoly v = k == 0 ? total_x(system_.f[static_cast<std::size_t>(i)], system_.shift())
                      : total_x(ut(i, k - 1));
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->ut.emplace(std::make_pair(i, k), std::move(v)).first->second;
}

DiffPoly CoveringContext::pt(int i, int k) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->pt.find({i, k});
    if (it != cache_->pt.end()) return it->second;
  }
  DiffPoly v = k == 0 ? pt_rules_[static_cast<std::size_t>(i)] : total_x(pt(i, k - 1));
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->pt.emplace(std::make_pair(i, k), std::move(v)).first->second;
}

DiffPoly CoveringContext::dt(const DiffPoly& a) const {
  Derivation d;
  d.field = [this](int i) {
    if (i >= n()) throw InputError("expression refers to a variable beyond n");
    return ut(i, 0);
  };
  d.jet = [this](const JetVar& v) -> DiffPoly {
    switch (v.kind) {
      case JetKind::Even:
        if (v.index >= n()) throw InputError("expression refers to a variable beyond n");
        return ut(v.index, v.xorder);
      case JetKind::OddP:
        if (v.index >= n()) throw InputError("expression refers to a variable beyond n");
        return pt(v.index, v.xorder);
      case JetKind::OddR:
        if (v.index >= slots_.size()) {
          throw Error("unregistered nonlocal variable r" + std::to_string(v.index + 1));
        }
        return slots_[v.index].rt_rule;
    }
    throw Error("internal: unknown jet kind");
  };
  return apply(d, a);
}

std::vector<DiffPoly> CoveringContext::linearize(const std::vector<DiffPoly>& phi) const {
  const int n = this->n();
  check_vector(phi, n, "vector function");
  const int s = system_.shift();
  // D_x^m φ^j, built on demand.
  std::vector<std::vector<DiffPoly>> dphi(static_cast<std::size_t>(n));
  auto derivative = [&](int j, int m) -> const DiffPoly& {
    auto& v = dphi[static_cast<std::size_t>(j)];
    if (v.empty()) v.push_back(phi[static_cast<std::size_t>(j)]);
    while (static_cast<int>(v.size()) <= m) v.push_back(dx(v.back()));
    return v[static_cast<std::size_t>(m)];
  };
  std::vector<DiffPoly> out;
  for (int i = 0; i < n; ++i) {
    DiffPoly li = dt(phi[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n; ++j) {
      const auto& v = partials_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int k = 0; k < static_cast<int>(v.size()); ++k) {
        if (v[static_cast<std::size_t>(k)].is_zero()) continue;
        li -= v[static_cast<std::size_t>(k)] * derivative(j, k + s);
      }
    }
    out.push_back(std::move(li));
  }
  return out;
}

int CoveringContext::register_symmetry(const std::vector<DiffPoly>& phi) {
  const int n = this->n();
  check_vector(phi, n, "symmetry");
  for (const auto& c : phi) {
    if (!c.is_odd_free()) throw InputError("symmetry components must be free of odd variables");
  }
  auto res = linearize(phi);
  if (std::any_of(res.begin(), res.end(), [](const DiffPoly& r) { return !r.is_zero(); })) {
    throw NotASymmetry(std::move(res));
  }
  const int s = system_.shift();
  NonlocalSlot slot;
  slot.alpha = static_cast<int>(slots_.size());
  slot.phi = phi;
  for (int i = 0; i < n; ++i) slot.rx_rule += phi[static_cast<std::size_t>(i)] * DiffPoly::p(i);
  // r_t = Σ B_σ(φ^j, ∂f^i/∂u^j_σ p_i) with
  // B_σ(φ, q) = Σ_{m<σ} (-1)^m D_x^{σ-1-m}(φ) D_x^m(q).
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& v = partials_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int k = 0; k < static_cast<int>(v.size()); ++k) {
        if (v[static_cast<std::size_t>(k)].is_zero()) continue;
        const int sigma = k + s;
        const DiffPoly q = v[static_cast<std::size_t>(k)] * DiffPoly::p(i);
        for (int m = 0; m < sigma; ++m) {
          DiffPoly t = total_x(phi[static_cast<std::size_t>(j)], sigma - 1 - m) * total_x(q, m);
          if (m % 2 == 0) slot.rt_rule += t;
          else slot.rt_rule -= t;
        }
      }
    }
  }
  slots_.push_back(slot);
  if (!(dt(slot.rx_rule) == total_x(slot.rt_rule))) {
    slots_.pop_back();
    throw Error("internal: conservation law check failed for the new nonlocal variable");
  }
  return slot.alpha;
}

// ------------------------------------------------------------ free functions

std::vector<DiffPoly> linearize(const EvolutionSystem& F, const std::vector<DiffPoly>& phi) {
  for (const auto& c : phi) {
    if (!c.is_odd_free()) throw InputError("linearize expects odd-free vector functions");
  }
  return CoveringContext(F).linearize(phi);
}

CoveringContext build_cotangent(const EvolutionSystem& F) { return CoveringContext(F); }

DiffPoly total_t(const DiffPoly& a, const CoveringContext& ctx) { return ctx.dt(a); }

int register_symmetry(CoveringContext& ctx, const std::vector<DiffPoly>& phi) {
  return ctx.register_symmetry(phi);
}

std::vector<DiffPoly> bivector_residual(const CoveringContext& ctx, const BivectorForm& A) {
  check_vector(A.components, ctx.n(), "bivector");
  for (const auto& c : A.components) {
    if (!c.is_odd_linear()) throw InputError("bivector components must be linear in p and r");
  }
  return ctx.linearize(A.components);
}

std::vector<ExtractedCondition> extract_conditions(const std::vector<DiffPoly>& residual) {
  std::vector<ExtractedCondition> out;
  for (std::size_t i = 0; i < residual.size(); ++i) {
    for (const auto& [m, c] : residual[i].terms()) {
      out.push_back({static_cast<int>(i), m, c});
    }
  }
  return out;
}

std::vector<RatFunc> condition_equations(const std::vector<DiffPoly>& residual) {
  std::vector<RatFunc> out;
  for (const auto& r : residual) {
    for (const auto& [m, c] : r.terms()) out.push_back(c);
  }
  return out;
}

LocalOperator formal_adjoint(const LocalOperator& A) {
  // (a ∂^k)* = (-1)^k Σ_m C(k, m) D_x^{k-m}(a) ∂^m, transposed.
  const int n = A.n();
  LocalOperator out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (const auto& t : A.entry(j, i)) {
        DiffPoly d = t.coef;
        for (int m = t.k; m >= 0; --m) {
          Rat c = binomial(t.k, m);
          if (t.k % 2 != 0) c = -c;
          out.add(i, j, d * DiffPoly(RatFunc(c)), m);
          if (m > 0) d = total_x(d);
        }
      }
    }
  }
  return out;
}

BivectorForm operator_to_bivector(const LocalOperator& A) {
  BivectorForm b;
  for (int i = 0; i < A.n(); ++i) {
    DiffPoly c;
    for (int j = 0; j < A.n(); ++j) {
      for (const auto& t : A.entry(i, j)) c += t.coef * DiffPoly::p(j, t.k);
    }
    b.components.push_back(std::move(c));
  }
  return b;
}

BivectorForm operator_to_bivector(const CoveringContext& ctx, const LocalOperator& A,
                                  const std::vector<TailTerm>& tail) {
  if (A.n() != ctx.n()) throw InputError("operator size does not match the system");
  BivectorForm b = operator_to_bivector(A);
  for (const auto& t : tail) {
    if (t.slot < 0 || t.slot >= static_cast<int>(ctx.slots().size())) {
      throw InputError("tail refers to an unregistered nonlocal slot");
    }
    const auto& slot = ctx.slots()[static_cast<std::size_t>(t.slot)];
    for (int i = 0; i < ctx.n(); ++i) {
      b.components[static_cast<std::size_t>(i)] +=
          slot.phi[static_cast<std::size_t>(i)] * DiffPoly(RatFunc(t.weight)) * DiffPoly::r(t.slot);
    }
  }
  return b;
}

}  // namespace hhokit
