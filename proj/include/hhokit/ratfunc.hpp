#pragma once

#include <map>
#include <span>
#include <string>

#include "hhokit/poly.hpp"

namespace hhokit {

/// Rational function num/den over Q in the field variables. Parameters may
/// appear in the numerator only; the denominator is monic and coprime to
/// every parameter block of the numerator.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const Poly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Rat& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : RatFunc(Rat(c)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(int c) : RatFunc(Rat(c)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(Poly num, Poly den);

  static RatFunc field(int i) { return Poly::field(i); }
  static RatFunc param(int id) { return Poly::param(id); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool has_params() const { return num_.has_params(); }
  Rat constant_value() const { return num_.constant_value(); }

  RatFunc partial(int i) const;
  RatFunc inverse() const;
  RatFunc pow(int e) const;

  /// Value at a rational point; parameters stay symbolic.
  Poly eval_fields(std::span<const Rat> point) const;
  RatFunc substitute_params(const std::map<int, Poly>& values) const;
  /// u^i -> values[i].
  RatFunc substitute_fields(std::span<const RatFunc> values) const;
  /// Splits by parameter monomial; values are parameter-free.
  std::map<Monomial, RatFunc> split_params() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const RatFunc& a, const RatFunc& b) {
    if (auto c = a.den_ <=> b.den_; c != 0) return c;
    return a.num_ <=> b.num_;
  }

  std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }

 private:
  void normalize();

  Poly num_;
  Poly den_;
};

/// gcd of a parameter-free polynomial with every parameter block of `num`.
Poly block_gcd(const Poly& num, const Poly& den);

std::string to_string(const RatFunc& r);

}  // namespace hhokit

template <>
struct std::hash<hhokit::RatFunc> {
  std::size_t operator()(const hhokit::RatFunc& r) const noexcept { return r.hash(); }
};
