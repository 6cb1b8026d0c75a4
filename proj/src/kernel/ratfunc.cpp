#include "hhokit/ratfunc.hpp"

#include "hhokit/errors.hpp"

namespace hhokit {

namespace {

Poly exact_div(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error("internal: inexact division in rational function");
  return *std::move(q);
}

// Polynomial composed with rational values, powers cached per variable.
RatFunc compose(const Poly& p, std::span<const RatFunc> values) {
  std::vector<std::vector<RatFunc>> powers(values.size());
  auto power = [&](std::size_t i, int e) -> const RatFunc& {
    auto& v = powers[i];
    if (v.empty()) v.emplace_back(1);
    while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * values[i]);
    return v[static_cast<std::size_t>(e)];
  };
  RatFunc out;
  for (const auto& [m, c] : p.terms()) {
    RatFunc t = Poly::monomial(m.param_part(), c);
    for (int i = 0; i < kMaxFieldVars; ++i) {
      const int e = m.exponent(i);
      if (e == 0) continue;
      if (static_cast<std::size_t>(i) >= values.size()) {
        throw InputError("substitution has too few components");
      }
      t *= power(static_cast<std::size_t>(i), e);
    }
    out += t;
  }
  return out;
}

}  // namespace

Poly block_gcd(const Poly& num, const Poly& den) {
  if (den.is_constant() || num.is_zero()) return Poly(1);
  if (den.is_monomial()) {
    Monomial g = den.leading_monomial();
    for (const auto& [m, c] : num.terms()) {
      g = field_gcd(g, m);
      if (g.is_one()) return Poly(1);
    }
    return Poly::monomial(g);
  }
  if (!num.has_params()) return gcd(num, den);
  Poly g = den;
  for (const auto& [pm, block] : num.split_params()) {
    g = gcd(g, block);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RatFunc::normalize() {
  if (den_.is_zero()) throw DivisionByZero();
  if (den_.has_params()) throw ParameterInDenominator();
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.is_constant()) {
    num_ *= Rat(1 / den_.constant_value());
    den_ = Poly(1);
    return;
  }
  Poly g = block_gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = exact_div(num_, g);
    den_ = exact_div(den_, g);
  }
  if (den_.is_constant()) {
    num_ *= Rat(1 / den_.constant_value());
    den_ = Poly(1);
    return;
  }
  const Rat lc = den_.leading_coefficient();
  if (lc != 1) {
    num_ *= Rat(1 / lc);
    den_ = den_.monic();
  }
}

RatFunc RatFunc::partial(int i) const {
  if (den_.is_constant()) return RatFunc(num_.partial(i));
  const Poly dd = den_.partial(i);
  if (dd.is_zero()) return RatFunc(num_.partial(i), den_);
  return RatFunc(num_.partial(i) * den_ - num_ * dd, den_ * den_);
}

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw DivisionByZero();
  if (num_.has_params()) throw ParameterInDenominator();
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r;
  r.num_ = num_.pow(static_cast<unsigned>(e));
  r.den_ = den_.pow(static_cast<unsigned>(e));
  return r;
}

Poly RatFunc::eval_fields(std::span<const Rat> point) const {
  const Poly d = den_.eval_fields(point);
  if (d.is_zero()) throw DivisionByZero();
  return num_.eval_fields(point) * Rat(1 / d.constant_value());
}

RatFunc RatFunc::substitute_params(const std::map<int, Poly>& values) const {
  if (!has_params()) return *this;
  return RatFunc(num_.substitute_params(values), den_);
}

RatFunc RatFunc::substitute_fields(std::span<const RatFunc> values) const {
  return compose(num_, values) / compose(den_, values);
}

std::map<Monomial, RatFunc> RatFunc::split_params() const {
  std::map<Monomial, RatFunc> out;
  for (auto& [pm, block] : num_.split_params()) out.emplace(pm, RatFunc(block, den_));
  return out;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.num_.is_zero()) return *this;
  if (num_.is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_constant()) normalize();
    else if (num_.is_zero()) den_ = Poly(1);
    return *this;
  }
  if (den_.is_constant() || o.den_.is_constant()) {
    // a + c/d with coprime c, d stays coprime.
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    if (num_.is_zero()) den_ = Poly(1);
    return *this;
  }
  const Poly g = gcd(den_, o.den_);
  if (g.is_constant()) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    if (num_.is_zero()) den_ = Poly(1);
    return *this;
  }
  const Poly b1 = exact_div(den_, g);
  const Poly d1 = exact_div(o.den_, g);
  num_ = num_ * d1 + o.num_ * b1;
  den_ = b1 * o.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (num_.is_zero()) return *this;
  if (o.num_.is_zero()) return *this = RatFunc();
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ *= o.num_;
    return *this;
  }
  const Poly g1 = block_gcd(num_, o.den_);
  const Poly g2 = block_gcd(o.num_, den_);
  Poly a = g1.is_constant() ? num_ : exact_div(num_, g1);
  Poly b = g2.is_constant() ? o.num_ : exact_div(o.num_, g2);
  Poly da = g2.is_constant() ? den_ : exact_div(den_, g2);
  Poly db = g1.is_constant() ? o.den_ : exact_div(o.den_, g1);
  num_ = a * b;
  den_ = da * db;
  // Factors were coprime pairwise; only the leading coefficient needs fixing.
  const Rat lc = den_.leading_coefficient();
  if (lc != 1) {
    num_ *= Rat(1 / lc);
    den_ = den_.monic();
  }
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

std::string to_string(const RatFunc& r) {
  if (r.den().is_constant()) return to_string(r.num());
  std::string n = to_string(r.num());
  if (!r.num().is_monomial()) n = "(" + n + ")";
  std::string d = to_string(r.den());
  const auto& dm = r.den().leading_monomial();
  const bool single_factor = r.den().is_monomial() && dm.u_degree() == dm.exponent(dm.max_field());
  if (!single_factor) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace hhokit
