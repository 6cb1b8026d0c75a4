#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hhokit/geometry.hpp"
#include "hhokit/linsolve.hpp"

namespace hhokit {

inline constexpr std::size_t kDefaultAnsatzCap = 10000;

/// Odd-linear operator template with one parameter per monomial.
struct Ansatz {
  int n = 0;
  int order = 0;
  int degree = 0;
  BivectorForm form;
  std::vector<int> params;
};

/// Σ_k c_k m_k(u) / denominator in every component.
struct FluxAnsatz {
  int n = 0;
  int degree = -1;
  Poly denominator{1};
  Vec flux;
  std::vector<int> params;
};

struct SolutionFamily {
  bool inconsistent = false;
  LinearSystemSolution substitution;
  int dimension = 0;
  /// Canonical (reduced row echelon) basis; one of the two is used.
  std::vector<BivectorForm> forms;
  std::vector<Vec> fluxes;
  /// Flux searches: classification of a seeded generic member.
  std::optional<Vec> generic_member;
  std::optional<Classification> classification;
};

/// Every odd-linear monomial u-jets·p_{j,σ} of weight 1..order, times each
/// u-monomial of degree ≤ degree (only undifferentiated u counts).
Ansatz make_operator_ansatz(int n, int order, int degree, std::size_t cap = kDefaultAnsatzCap);
/// Polynomial numerators of degree ≤ degree over a fixed parameter-free denominator.
FluxAnsatz make_flux_ansatz(int n, int degree, const Poly& denominator = Poly(1), int first_param = 1,
                            std::size_t cap = kDefaultAnsatzCap);
/// Polynomial velocity matrix template, entries of degree ≤ degree.
Mat make_matrix_ansatz(int n, int degree, int first_param, std::vector<int>& params);

SolutionFamily find_bivectors(const EvolutionSystem& F, const Ansatz& a);
/// Same search on an existing covering (nonlocal slots allowed in the form).
SolutionFamily find_bivectors(const CoveringContext& ctx, const BivectorForm& form, const std::vector<int>& params);
SolutionFamily find_fluxes_second_order(const SecondOrderData& d, const FluxAnsatz& a, std::uint64_t seed = 1);
SolutionFamily find_fluxes_third_order(const ThirdOrderData& d, const FluxAnsatz& a, std::uint64_t seed = 1);

/// Reduced row echelon form of a list of vectors of DiffPoly, after
/// multiplying every coefficient by `multiplier` (which must clear all
/// denominators). Rows are returned in increasing pivot order.
std::vector<std::vector<DiffPoly>> canonical_basis(const std::vector<std::vector<DiffPoly>>& rows,
                                                   const Poly& multiplier = Poly(1));

}  // namespace hhokit
