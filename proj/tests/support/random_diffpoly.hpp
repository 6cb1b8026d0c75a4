#pragma once

#include <random>

#include "hhokit/diffpoly.hpp"

namespace hhokit::testing {

inline Poly random_field_poly(std::mt19937& rng, int n, int max_deg, int nterms) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> var(0, n - 1);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<Poly::Term> ts;
  for (int t = 0; t < nterms; ++t) {
    Monomial m;
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) m = m * Monomial::field(var(rng));
    ts.emplace_back(m, Rat(coef(rng)));
  }
  return Poly::from_terms(std::move(ts));
}

/// Small rational function with a denominator that is 1 half of the time.
inline RatFunc random_ratfunc(std::mt19937& rng, int n) {
  Poly num = random_field_poly(rng, n, 2, 3);
  if (rng() % 2 == 0) return num;
  Poly den = random_field_poly(rng, n, 1, 2);
  if (den.is_zero()) den = Poly(1);
  return RatFunc(num, den);
}

/// Random DiffPoly with jets of order ≤ max_order; odd factor p with
/// probability 1/2 when `odd` is true.
inline DiffPoly random_diffpoly(std::mt19937& rng, int n, int max_order, int nterms, bool odd) {
  std::uniform_int_distribution<int> var(0, n - 1);
  std::uniform_int_distribution<int> ord(1, max_order);
  std::uniform_int_distribution<int> nfac(0, 2);
  DiffPoly out;
  for (int t = 0; t < nterms; ++t) {
    DiffMonomial m;
    const int k = nfac(rng);
    for (int j = 0; j < k; ++j) m = m * DiffMonomial(JetVar::u(var(rng), ord(rng)));
    if (odd) {
      std::uniform_int_distribution<int> pord(0, max_order);
      m = m * DiffMonomial(JetVar::p(var(rng), pord(rng)));
    }
    out.add_term(m, random_ratfunc(rng, n));
  }
  return out;
}

}  // namespace hhokit::testing
