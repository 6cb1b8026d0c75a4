#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hhokit/ratfunc.hpp"

namespace hhokit {

/// Jet-order cap; HHOKIT_JET_CAP overrides the default of 12.
int jet_cap();
void set_jet_cap(int cap);

enum class JetKind : std::uint8_t { Even = 0, OddP = 1, OddR = 2 };

/// u^i_σ (σ ≥ 1), p_{i,σ} or r_α. Indices are 0-based.
struct JetVar {
  JetKind kind = JetKind::Even;
  std::uint16_t index = 0;
  std::uint16_t xorder = 0;

  static JetVar u(int i, int k) { return {JetKind::Even, narrow(i), narrow(k)}; }
  static JetVar p(int i, int k = 0) { return {JetKind::OddP, narrow(i), narrow(k)}; }
  static JetVar r(int alpha) { return {JetKind::OddR, narrow(alpha), 0}; }

  bool is_odd() const { return kind != JetKind::Even; }
  JetVar shifted(int k) const { return {kind, index, narrow(xorder + k)}; }

  friend auto operator<=>(const JetVar&, const JetVar&) = default;

 private:
  static std::uint16_t narrow(int v) { return static_cast<std::uint16_t>(v); }
};

/// Product of positive-order even jets and at most one odd factor.
class DiffMonomial {
 public:
  DiffMonomial() = default;
  explicit DiffMonomial(const JetVar& v);

  const std::vector<JetVar>& even() const { return even_; }
  const std::optional<JetVar>& odd() const { return odd_; }
  int odd_degree() const { return odd_ ? 1 : 0; }
  bool is_one() const { return even_.empty() && !odd_; }
  /// Sum of x-orders of all factors (Dubrovin–Novikov weight).
  int weight() const;
  /// Largest x-order among u and p factors.
  int max_order() const;
  /// Multiplicity of an even factor.
  int count(const JetVar& v) const;

  DiffMonomial without_odd() const;
  /// Removes one copy of an even factor (which must be present).
  DiffMonomial without(const JetVar& v) const;

  friend DiffMonomial operator*(const DiffMonomial& a, const DiffMonomial& b);

  friend bool operator==(const DiffMonomial&, const DiffMonomial&) = default;
  /// Weight, then factor count, then factors lexicographically (even-u <
  /// odd-p < odd-r, then index, then x-order).
  friend std::strong_ordering operator<=>(const DiffMonomial& a, const DiffMonomial& b);

 private:
  std::vector<JetVar> even_;
  std::optional<JetVar> odd_;
};

/// Q-linear combination of DiffMonomials with RatFunc coefficients, stored
/// with the largest monomial first.
class DiffPoly {
 public:
  using TermMap = std::map<DiffMonomial, RatFunc, std::greater<>>;

  DiffPoly() = default;
  DiffPoly(const RatFunc& c);  // NOLINT(google-explicit-constructor)
  DiffPoly(const Poly& c) : DiffPoly(RatFunc(c)) {}  // NOLINT(google-explicit-constructor)
  DiffPoly(const Rat& c) : DiffPoly(RatFunc(c)) {}  // NOLINT(google-explicit-constructor)
  DiffPoly(int c) : DiffPoly(RatFunc(c)) {}  // NOLINT(google-explicit-constructor)

  static DiffPoly term(const DiffMonomial& m, const RatFunc& c);
  static DiffPoly jet(const JetVar& v);
  /// u^i_k; k = 0 gives the field variable itself.
  static DiffPoly u(int i, int k = 0);
  static DiffPoly p(int i, int k = 0) { return jet(JetVar::p(i, k)); }
  static DiffPoly r(int alpha) { return jet(JetVar::r(alpha)); }

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// True when the only monomial is 1.
  bool is_coefficient() const;
  /// The coefficient of the monomial 1.
  RatFunc coefficient() const;
  RatFunc coefficient(const DiffMonomial& m) const;

  bool is_odd_free() const;
  bool is_odd_linear() const;
  bool has_params() const;
  bool has_r() const;
  int max_order() const;
  /// Largest field index in coefficients and jets, or -1.
  int max_field() const;

  void add_term(const DiffMonomial& m, const RatFunc& c);

  /// Partial derivative with respect to a jet variable; xorder 0 for an even
  /// variable means the field variable u^i itself.
  DiffPoly partial(const JetVar& v) const;
  DiffPoly substitute_params(const std::map<int, Poly>& values) const;
  /// Applies f to every coefficient.
  DiffPoly map_coefficients(const std::function<RatFunc(const RatFunc&)>& f) const;

  DiffPoly operator-() const;
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  DiffPoly& operator*=(const DiffPoly& o);
  DiffPoly& operator*=(const RatFunc& c);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  DiffPoly mul_term(const DiffMonomial& m, const RatFunc& c) const;
  DiffPoly pow(unsigned e) const;

  friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

/// A derivation of the jet algebra, fixed by its action on the field
/// variables and on every jet variable.
struct Derivation {
  std::function<DiffPoly(int i)> field;
  std::function<DiffPoly(const JetVar&)> jet;
};

DiffPoly apply(const Derivation& d, const DiffPoly& a);

/// Rewrite for D_x r_α; unset means r may not be differentiated.
using RxRule = std::function<DiffPoly(int alpha)>;

/// Total x-derivative. Throws JetOrderExceeded past the jet cap.
DiffPoly total_x(const DiffPoly& a, const RxRule& rx = {});
DiffPoly total_x(const DiffPoly& a, int times, const RxRule& rx = {});

/// Partition by monomial.
DiffPoly::TermMap collect(const DiffPoly& a);

std::string to_string(const JetVar& v);
std::string to_string(const DiffMonomial& m);
std::string to_string(const DiffPoly& a);

}  // namespace hhokit
