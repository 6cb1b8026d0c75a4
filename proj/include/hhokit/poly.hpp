#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hhokit {

using Rat = mpq_class;

/// Field variables u^1..u^8 are supported (indices 0..7 internally).
inline constexpr int kMaxFieldVars = 8;
/// Maximal total degree of a monomial in the formal parameters c_k.
inline constexpr int kMaxParamDegree = 6;

/// Monomial in field variables u^i and formal parameters c_k.
///
/// Field exponents are stored densely; parameters as a sorted multiset of
/// 1-based ids (zero-padded).
class Monomial {
 public:
  Monomial() = default;

  static Monomial field(int i, int exponent = 1);
  static Monomial param(int id);

  int exponent(int i) const { return u_[static_cast<std::size_t>(i)]; }
  int u_degree() const;
  int param_degree() const;
  int degree() const { return u_degree() + param_degree(); }
  bool is_one() const { return u_degree() == 0 && !has_params(); }
  bool has_params() const { return c_[0] != 0; }
  /// Highest field index with a nonzero exponent, or -1.
  int max_field() const;

  std::span<const std::uint16_t> params() const {
    return {c_.data(), static_cast<std::size_t>(param_degree())};
  }

  Monomial field_part() const;
  Monomial param_part() const;
  Monomial with_exponent(int i, int e) const;

  /// True when every field exponent of `this` is <= that of `other` and the
  /// parameter parts coincide.
  bool divides(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Exact quotient; requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  /// Componentwise minimum of field exponents (parameters dropped).
  friend Monomial field_gcd(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Graded lexicographic: total degree first, then u^1, u^2, ... exponents,
  /// then the parameter multiset.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

  std::size_t hash() const;

 private:
  std::array<std::uint8_t, kMaxFieldVars> u_{};
  std::array<std::uint16_t, kMaxParamDegree> c_{};
};

/// Sparse multivariate polynomial over Q in field variables and parameters.
/// Terms are kept sorted by decreasing monomial order, no zero coefficients.
class Poly {
 public:
  using Term = std::pair<Monomial, Rat>;

  Poly() = default;
  Poly(const Rat& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rat(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Rat(c)) {}  // NOLINT(google-explicit-constructor)

  static Poly field(int i);
  static Poly param(int id);
  static Poly monomial(const Monomial& m, const Rat& c = 1);
  /// Builds a canonical polynomial from arbitrary (unsorted, repeated) terms.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  bool has_params() const;
  Rat constant_term() const;
  /// Value of a constant polynomial (0 for the zero polynomial).
  Rat constant_value() const;

  const Monomial& leading_monomial() const { return terms_.front().first; }
  const Rat& leading_coefficient() const { return terms_.front().second; }

  int degree() const;
  int degree_in(int i) const;
  int max_param_degree() const;
  /// Highest field index present, or -1.
  int max_field() const;
  /// Bitmask of field variables that occur.
  unsigned field_support() const;

  Poly partial(int i) const;
  Poly pow(unsigned e) const;
  /// Divides every coefficient by the leading coefficient.
  Poly monic() const;

  /// Splits by parameter monomial: key is the parameter part (field exponents
  /// zero), value the field-only coefficient polynomial.
  std::map<Monomial, Poly> split_params() const;

  /// Substitutes rational values for all field variables; parameters remain.
  Poly eval_fields(std::span<const Rat> point) const;
  /// Substitutes polynomials for parameters (missing ids stay symbolic).
  Poly substitute_params(const std::map<int, Poly>& values) const;
  /// Applies an arbitrary field-variable substitution u^i -> values[i].
  Poly substitute_fields(std::span<const Poly> values) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rat& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly mul_monomial(const Monomial& m, const Rat& c) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

  std::size_t hash() const;

 private:
  std::vector<Term> terms_;
};

/// Exact quotient a / b, or an empty optional when b does not divide a.
/// `b` must be free of parameters.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Greatest common divisor of field-only polynomials, normalized monic
/// (leading coefficient 1 in graded lex order). gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// Canonical text in the expression grammar (`u1`, `c2`, `3/4`, `^`).
std::string to_string(const Poly& p);
std::string to_string(const Monomial& m);
std::string to_string(const Rat& r);

}  // namespace hhokit

template <>
struct std::hash<hhokit::Monomial> {
  std::size_t operator()(const hhokit::Monomial& m) const noexcept { return m.hash(); }
};
