#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hhokit/diffpoly.hpp"
#include "hhokit/errors.hpp"

namespace hhokit {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

enum class SystemKind { General, Hydrodynamic, Conservative, Potential };

/// u^i_t = f^i. For potential systems the stored variables u^i stand for b^i_x
/// and the equations are b^i_t = f^i, so every jet is shifted by one order.
struct EvolutionSystem {
  int n = 0;
  std::vector<DiffPoly> f;
  SystemKind kind = SystemKind::General;
  /// Velocity matrix V^i_j (hydrodynamic) or flux Jacobian (conservative,
  /// potential).
  Matrix<RatFunc> V;
  /// Conservative fluxes V^i(u).
  std::vector<RatFunc> flux;

  /// Order of the dependent variable represented by u^i (0, or 1 when
  /// potential).
  int shift() const { return kind == SystemKind::Potential ? 1 : 0; }

  static EvolutionSystem general(std::vector<DiffPoly> f);
  static EvolutionSystem hydrodynamic(Matrix<RatFunc> V);
  static EvolutionSystem conservative(std::vector<RatFunc> flux);
  /// b^i_t = flux^i(b_x), written in the variables u^i = b^i_x.
  static EvolutionSystem potential(std::vector<RatFunc> flux);
};

Matrix<RatFunc> jacobian(const std::vector<RatFunc>& flux, int n);

struct BivectorForm {
  std::vector<DiffPoly> components;
};

struct OpTerm {
  DiffPoly coef;
  int k = 0;
};

/// n×n matrix of scalar differential operators Σ coef ∂_x^k.
class LocalOperator {
 public:
  explicit LocalOperator(int n = 0);

  int n() const { return n_; }
  const std::vector<OpTerm>& entry(int i, int j) const { return entries_[idx(i, j)]; }
  /// Adds coef ∂_x^k to entry (i, j), merging equal powers.
  void add(int i, int j, const DiffPoly& coef, int k);
  int order() const;

  friend bool operator==(const LocalOperator& a, const LocalOperator& b);

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i * n_ + j); }

  int n_;
  std::vector<std::vector<OpTerm>> entries_;
};

struct NonlocalSlot {
  int alpha = 0;
  std::vector<DiffPoly> phi;
  DiffPoly rx_rule;
  DiffPoly rt_rule;
};

/// weight·φ^i_α·r_α in component i.
struct TailTerm {
  Rat weight;
  int slot = 0;
};

class NotASymmetry : public Error {
 public:
  explicit NotASymmetry(std::vector<DiffPoly> residual);
  const std::vector<DiffPoly>& residual() const { return residual_; }

 private:
  std::vector<DiffPoly> residual_;
};

/// The cotangent covering {F, ℓ*_F(p) = 0} with registered nonlocal r_α.
class CoveringContext {
 public:
  explicit CoveringContext(EvolutionSystem system);

  const EvolutionSystem& system() const { return system_; }
  int n() const { return system_.n; }
  const std::vector<DiffPoly>& pt_rules() const { return pt_rules_; }
  const std::vector<NonlocalSlot>& slots() const { return slots_; }

  DiffPoly dx(const DiffPoly& a) const;
  DiffPoly dx(const DiffPoly& a, int times) const;
  /// D_t with all t-derivatives eliminated.
  DiffPoly dt(const DiffPoly& a) const;
  /// D_t φ - Σ ∂f/∂u_σ D_x^σ φ, componentwise.
  std::vector<DiffPoly> linearize(const std::vector<DiffPoly>& phi) const;

  /// Adds r_α with r_x = φ^i p_i. Throws NotASymmetry.
  int register_symmetry(const std::vector<DiffPoly>& phi);

  /// D_x^σ(f^i) for the stored variable u^i_k (σ = k + shift).
  DiffPoly ut(int i, int k) const;
  /// D_x^k of the p_{i,t} rule.
  DiffPoly pt(int i, int k) const;

 private:
  struct Cache;

  EvolutionSystem system_;
  /// partials_[i][j][k] = ∂f^i/∂u^j_k.
  std::vector<std::vector<std::vector<DiffPoly>>> partials_;
  std::vector<DiffPoly> pt_rules_;
  std::vector<NonlocalSlot> slots_;
  std::shared_ptr<Cache> cache_;
};

std::vector<DiffPoly> linearize(const EvolutionSystem& F, const std::vector<DiffPoly>& phi);
CoveringContext build_cotangent(const EvolutionSystem& F);
DiffPoly total_t(const DiffPoly& a, const CoveringContext& ctx);
int register_symmetry(CoveringContext& ctx, const std::vector<DiffPoly>& phi);

/// ℓ_F(A(p)) on the covering; zero iff A is a variational bivector.
std::vector<DiffPoly> bivector_residual(const CoveringContext& ctx, const BivectorForm& A);

struct ExtractedCondition {
  int component = 0;
  DiffMonomial monomial;
  RatFunc coefficient;
};

/// Coefficients of every monomial of every component.
std::vector<ExtractedCondition> extract_conditions(const std::vector<DiffPoly>& residual);
std::vector<RatFunc> condition_equations(const std::vector<DiffPoly>& residual);

LocalOperator formal_adjoint(const LocalOperator& A);
BivectorForm operator_to_bivector(const CoveringContext& ctx, const LocalOperator& A,
                                  const std::vector<TailTerm>& tail = {});
BivectorForm operator_to_bivector(const LocalOperator& A);

}  // namespace hhokit
