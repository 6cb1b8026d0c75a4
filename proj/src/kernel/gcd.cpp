// Multivariate GCD over Q by recursive primitive polynomial remainder
// sequences. Inputs are field-only polynomials.

#include <algorithm>
#include <bit>

#include "hhokit/errors.hpp"
#include "hhokit/poly.hpp"

namespace hhokit {

namespace {

/// Coefficients of `p` viewed as a univariate polynomial in u^v.
std::vector<Poly> coefficients_in(const Poly& p, int v) {
  std::vector<std::vector<Poly::Term>> buckets(static_cast<std::size_t>(p.degree_in(v)) + 1);
  for (const auto& [m, c] : p.terms()) {
    buckets[static_cast<std::size_t>(m.exponent(v))].emplace_back(m.with_exponent(v, 0), c);
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Poly::from_terms(std::move(b)));
  return out;
}

Poly leading_coeff_in(const Poly& p, int v, int deg) {
  std::vector<Poly::Term> ts;
  for (const auto& [m, c] : p.terms()) {
    if (m.exponent(v) == deg) ts.emplace_back(m.with_exponent(v, 0), c);
  }
  return Poly::from_terms(std::move(ts));
}

Monomial monomial_content(const Poly& p) {
  Monomial g = p.terms().front().first.field_part();
  for (const auto& [m, c] : p.terms()) g = field_gcd(g, m);
  return g;
}

Poly exact(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error("internal: inexact division in gcd");
  return *std::move(q);
}

Poly gcd_rec(const Poly& a, const Poly& b);

Poly content_in(const Poly& p, int v) {
  Poly g;
  for (const auto& c : coefficients_in(p, v)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd_rec(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

Poly primitive_in(const Poly& p, int v) {
  Poly c = content_in(p, v);
  Poly q = c.is_constant() ? p : exact(p, c);
  return q.monic();
}

/// Pseudo-remainder of a by b with respect to u^v.
Poly pseudo_remainder(Poly a, const Poly& b, int v) {
  const int db = b.degree_in(v);
  const Poly lcb = leading_coeff_in(b, v, db);
  int da = a.degree_in(v);
  while (!a.is_zero() && da >= db) {
    const Poly lca = leading_coeff_in(a, v, da);
    a = a * lcb - (lca * b).mul_monomial(Monomial::field(v, da - db), 1);
    da = a.is_zero() ? -1 : a.degree_in(v);
  }
  return a;
}

Poly gcd_rec(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a == b) return a.monic();

  // Pull out the monomial content first.
  const Monomial ma = monomial_content(a);
  const Monomial mb = monomial_content(b);
  const Monomial mg = field_gcd(ma, mb);
  if (!ma.is_one() || !mb.is_one()) {
    Poly ra = a;
    Poly rb = b;
    if (!ma.is_one()) ra = exact(a, Poly::monomial(ma));
    if (!mb.is_one()) rb = exact(b, Poly::monomial(mb));
    Poly g = gcd_rec(ra, rb);
    return g.mul_monomial(mg, 1).monic();
  }
  if (a.is_monomial() || b.is_monomial()) return Poly(1);

  const unsigned sa = a.field_support();
  const unsigned sb = b.field_support();
  const unsigned common = sa & sb;
  if (common == 0) return Poly(1);
  if (sa & ~sb) {
    const int v = std::countr_zero(sa & ~sb);
    return gcd_rec(content_in(a, v), b);
  }
  if (sb & ~sa) {
    const int v = std::countr_zero(sb & ~sa);
    return gcd_rec(a, content_in(b, v));
  }

  // Main variable: the common one of smallest maximal degree.
  int v = -1;
  int best = 1 << 30;
  for (int i = 0; i < kMaxFieldVars; ++i) {
    if (!(common & (1u << i))) continue;
    const int d = std::max(a.degree_in(i), b.degree_in(i));
    if (d < best) {
      best = d;
      v = i;
    }
  }

  const Poly ca = content_in(a, v);
  const Poly cb = content_in(b, v);
  const Poly c = gcd_rec(ca, cb);
  Poly pa = ca.is_constant() ? a.monic() : exact(a, ca).monic();
  Poly pb = cb.is_constant() ? b.monic() : exact(b, cb).monic();
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (true) {
    Poly r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      pb = Poly(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, v);
  }
  if (!pb.is_constant()) pb = primitive_in(pb, v);
  return (c * pb).monic();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.has_params() || b.has_params()) {
    throw Error("internal: gcd requires parameter-free polynomials");
  }
  return gcd_rec(a, b);
}

}  // namespace hhokit
