#pragma once

#include <map>
#include <vector>

#include "hhokit/ratfunc.hpp"

namespace hhokit {

/// constant + Σ coeffs[k]·c_k.
struct AffineCombo {
  std::map<int, Rat> coeffs;
  Rat constant;

  Poly to_poly() const;
};

struct LinearSystemSolution {
  bool inconsistent = false;
  /// Pivot parameter -> affine combination of free parameters.
  std::map<int, AffineCombo> pivots;
  /// Parameters left free, ascending.
  std::vector<int> free;
  /// Scalar equations after expansion over u-monomials.
  std::size_t scalar_equations = 0;

  /// Substitution map for Poly/RatFunc::substitute_params.
  std::map<int, Poly> substitution() const;
  /// Value of every parameter when free parameter `which` is 1 and the other
  /// free parameters are 0 (homogeneous part only).
  std::map<int, Poly> basis_substitution(int which) const;
  /// Particular solution: all free parameters 0.
  std::map<int, Poly> particular_substitution() const;
};

/// Solves Σ equations = 0, each affine in the parameters. `params` lists the
/// parameters of the ansatz; parameters absent from every equation are free.
/// Throws NonlinearAnsatz on a product of parameters.
LinearSystemSolution linear_solve(const std::vector<RatFunc>& eqs, const std::vector<int>& params);

/// Incremental form used when equations arrive in batches.
class LinearSolver {
 public:
  explicit LinearSolver(std::vector<int> params);

  /// Adds one equation num/den = 0 (expanded over u-monomials).
  void add(const RatFunc& eq);
  bool inconsistent() const { return inconsistent_; }
  LinearSystemSolution solve() const;

 private:
  using Row = std::vector<std::pair<int, Rat>>;  // sorted by parameter id
  struct Pivot {
    Row row;  // pivot coefficient 1, other ids larger
    Rat constant;
  };

  void add_row(Row row, Rat constant);

  std::vector<int> params_;
  std::map<int, Pivot> pivots_;
  bool inconsistent_ = false;
  std::size_t scalar_equations_ = 0;
};

}  // namespace hhokit
