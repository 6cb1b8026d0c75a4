#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hhokit/covering.hpp"

namespace hhokit {

using Vec = std::vector<RatFunc>;
using Mat = Matrix<RatFunc>;
/// Three-index array, [i][j][k].
using T3 = std::vector<Mat>;
using T4 = std::vector<T3>;

Mat zero_matrix(int n);
Mat identity_matrix(int n);
T3 zero_t3(int n);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_scale(const Mat& a, const RatFunc& s);
Mat transpose(const Mat& a);
RatFunc determinant(const Mat& a);
/// Throws DegenerateMetric when singular.
Mat inverse(const Mat& a, const std::string& what = "matrix is singular");
Mat substitute_params(const Mat& a, const std::map<int, Poly>& values);

/// ∂_k of every entry: out[i][j][k].
T3 partials(const Mat& a);
/// out[i][k] = ∂_k v^i.
Mat partials(const Vec& v);

enum class Variance { Upper, Lower };

struct Metric {
  Mat g;
  Variance variance = Variance::Upper;

  int n() const { return static_cast<int>(g.size()); }
  Mat upper() const;
  Mat lower() const;
};

/// Γ^{ij}_k stored as gamma[i][j][k].
struct Connection {
  T3 gamma;
};

/// Γ^i_{jk} = -g_{js}Γ^{si}_k, stored [i][j][k].
T3 christoffel(const Mat& g_lower, const Connection& G);

struct VelocityMatrix {
  Mat V;
  /// Conservative fluxes; when present V is their Jacobian.
  std::optional<Vec> flux;

  static VelocityMatrix from_matrix(Mat V) { return {std::move(V), std::nullopt}; }
  static VelocityMatrix from_flux(Vec flux);
  int n() const { return static_cast<int>(V.size()); }
};

struct ConditionResidual {
  std::string family;
  std::vector<int> indices;  // 1-based in reports
  RatFunc value;
};

struct ConditionReport {
  std::string name;
  std::vector<std::string> families;
  std::vector<ConditionResidual> residuals;
  bool pass = true;
  std::string note;

  void family(const std::string& f);
  /// Records a residual for `f` when v ≠ 0 (indices 0-based on input).
  void check(const std::string& f, std::vector<int> indices, const RatFunc& v);
  void merge(const ConditionReport& other);
  bool family_passes(const std::string& f) const;
  std::vector<RatFunc> equations() const;
};

// ------------------------------------------------------------ first order

ConditionReport first_order_hamiltonian_check(const Metric& g, const Connection& G);
/// R^{ij}_{kl} as out[i][j][k][l].
T4 curvature(const Metric& g, const Connection& G);
ConditionReport tsarev_check(const Metric& g, const Connection& G, const VelocityMatrix& V);
/// The four coefficient families of the covering residual written out.
ConditionReport expanded_first_order_conditions(const Metric& g, const Connection& G,
                                                const VelocityMatrix& V);
/// Paper-stated conditions only: Tsarev, W·V = V·W, and the tail curvature sum.
ConditionReport nonlocal_first_order_check(const Metric& g, const Connection& G, const Mat& W,
                                           const VelocityMatrix& V);

/// A(p)^i = g^{ij}p_{j,x} + Γ^{ij}_k u^k_x p_j.
LocalOperator first_order_operator(const Metric& g, const Connection& G);

// ----------------------------------------------------------- second order

struct SecondOrderData {
  int n = 0;
  /// T_{ijk}, constant.
  std::vector<std::vector<std::vector<Rat>>> T;
  std::vector<std::vector<Rat>> g0;

  /// g_{ij}(u) = T_{ijk}u^k + g0_{ij}.
  Mat g_low() const;
};

ConditionReport second_order_canonical_check(const SecondOrderData& d);
ConditionReport second_order_compat(const SecondOrderData& d, const Vec& flux);

// ------------------------------------------------------------ third order

struct ThirdOrderData {
  /// g_{ij} (lower, symmetric).
  Mat g_low;
  /// c^{ij}_k as c[i][j][k].
  T3 c;

  int n() const { return static_cast<int>(g_low.size()); }
  /// c_{nkm} = (g_{mn,k} - g_{kn,m})/3, raised to c^{pq}_k.
  static ThirdOrderData from_metric(Mat g_low);
  /// c_{ijk} = g_{iq} g_{jp} c^{pq}_k.
  T3 c_low() const;
  Mat g_up() const;
};

struct NonlocalThirdOrderData {
  /// w^i_{αj} as w[α][i][j].
  std::vector<Mat> w;
  std::vector<Rat> weights;
};

ConditionReport third_order_hamiltonian_check(const ThirdOrderData& d);
ConditionReport third_order_compat(const ThirdOrderData& d, const Vec& flux);
ConditionReport third_order_nonlocal_checks(const ThirdOrderData& d, const NonlocalThirdOrderData& nl,
                                            const Vec& flux);

/// D(p)^i = D_x(g^{ij}p_{j,xx} + c^{ij}_k u^k_x p_{j,x}) in u-coordinates.
BivectorForm third_order_bivector(const ThirdOrderData& d);

// ---------------------------------------------------------- potentialization

/// b^i_t = V^i(b_x), in the variables u^i = b^i_x.
EvolutionSystem potentialize(const EvolutionSystem& F);
/// C(p)^i = -g^{ij}(b_x) p_j.
BivectorForm potential_second_order_bivector(const SecondOrderData& d);
/// E(p)^i = -g^{ij}p_{j,x} - c^{ij}_k b^k_xx p_j - Σ_α c^α w^i_{αk} b^k_xx r_α; the
/// nonlocal slots are registered on `ctx` in order.
BivectorForm potential_third_order_bivector(CoveringContext& ctx, const ThirdOrderData& d,
                                            const NonlocalThirdOrderData& nl);

// ----------------------------------------------------------- classification

/// N^i_{jk} as out[i][j][k].
T3 nijenhuis(const Mat& V);
T3 haantjes(const Mat& V);
bool is_zero(const T3& t);

/// f_1..f_n with det(λ - V) = λ^n + f_1 λ^{n-1} + ... + f_n.
Vec char_poly(const Mat& V);
ConditionReport linear_degeneracy_check(const Mat& V);

struct SquareRootResult {
  bool is_square = false;
  /// q = λ^m + q[0] λ^{m-1} + ... + q[m-1].
  Vec q;
  /// Sampled points where q had only real roots, out of those tried.
  int real_samples = 0;
  int samples = 0;
};

/// Checks det(λ - V) = q(λ)^2 and samples real-rootedness of q at rational
/// points (parameters set to the sampled values too).
SquareRootResult char_poly_square_root(const Mat& V, int samples, std::uint64_t seed);

struct Classification {
  ConditionReport linear_degeneracy;
  bool haantjes_zero = false;
  bool nijenhuis_zero = false;
  std::optional<SquareRootResult> square_root;
};

Classification classify(const Mat& V, bool with_square_root = false, std::uint64_t seed = 1);

/// Number of distinct real roots of a univariate polynomial with rational
/// coefficients (highest degree first), by Sturm sequences.
int count_real_roots(const std::vector<Rat>& coeffs);
int count_distinct_roots(const std::vector<Rat>& coeffs);

}  // namespace hhokit
