#include <random>

#include "hhokit/errors.hpp"
#include "hhokit/geometry.hpp"

namespace hhokit {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

using UPoly = std::vector<Rat>;  // highest degree first, no leading zeros

UPoly trim(UPoly a) {
  std::size_t k = 0;
  while (k < a.size() && a[k] == 0) ++k;
  a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k));
  return a;
}

UPoly derivative(const UPoly& a) {
  UPoly d;
  const std::size_t deg = a.empty() ? 0 : a.size() - 1;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) d.push_back(a[i] * Rat(static_cast<long>(deg - i)));
  return trim(d);
}

UPoly remainder(UPoly a, const UPoly& b) {
  a = trim(std::move(a));
  while (!a.empty() && a.size() >= b.size()) {
    const Rat f = a[0] / b[0];
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= f * b[i];
    a = trim(std::move(a));
  }
  return a;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    UPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

int sign_at_infinity(const UPoly& a, bool negative) {
  if (a.empty()) return 0;
  int s = sgn(a[0]);
  if (negative && (a.size() - 1) % 2 == 1) s = -s;
  return s;
}

int sign_changes(const std::vector<UPoly>& seq, bool negative) {
  int changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    const int s = sign_at_infinity(p, negative);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int count_real_roots(const std::vector<Rat>& coeffs) {
  UPoly p = trim(coeffs);
  if (p.size() <= 1) return 0;
  std::vector<UPoly> seq{p, derivative(p)};
  while (!seq.back().empty()) {
    UPoly r = remainder(seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    seq.push_back(std::move(r));
  }
  return sign_changes(seq, true) - sign_changes(seq, false);
}

int count_distinct_roots(const std::vector<Rat>& coeffs) {
  UPoly p = trim(coeffs);
  if (p.size() <= 1) return 0;
  const UPoly g = upoly_gcd(p, derivative(p));
  return static_cast<int>(p.size() - 1) - static_cast<int>(g.size() - 1);
}

T3 nijenhuis(const Mat& V) {
  const int n = static_cast<int>(V.size());
  const T3 dV = partials(V);  // dV[i][k][s] = ∂_s V^i_k
  T3 N = zero_t3(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        RatFunc r;
        for (int s = 0; s < n; ++s) {
          r += V[sz(s)][sz(j)] * dV[sz(i)][sz(k)][sz(s)];
          r -= V[sz(s)][sz(k)] * dV[sz(i)][sz(j)][sz(s)];
          r -= V[sz(i)][sz(s)] * (dV[sz(s)][sz(k)][sz(j)] - dV[sz(s)][sz(j)][sz(k)]);
        }
        N[sz(i)][sz(j)][sz(k)] = r;
      }
    }
  }
  return N;
}

T3 haantjes(const Mat& V) {
  const int n = static_cast<int>(V.size());
  const T3 N = nijenhuis(V);
  const Mat V2 = mat_mul(V, V);
  // A[i][p][k] = N^i_{pq}V^q_k, B[p][j][k] = N^p_{jq}V^q_k, C[p][j][k] = N^p_{qk}V^q_j
  T3 A = zero_t3(n), B = zero_t3(n), C = zero_t3(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int k = 0; k < n; ++k) {
        RatFunc x, y;
        for (int q = 0; q < n; ++q) {
          x += N[sz(a)][sz(b)][sz(q)] * V[sz(q)][sz(k)];
          y += N[sz(a)][sz(q)][sz(k)] * V[sz(q)][sz(b)];
        }
        A[sz(a)][sz(b)][sz(k)] = x;
        B[sz(a)][sz(b)][sz(k)] = x;
        C[sz(a)][sz(b)][sz(k)] = y;
      }
    }
  }
  T3 H = zero_t3(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        RatFunc r;
        for (int p = 0; p < n; ++p) {
          r += A[sz(i)][sz(p)][sz(k)] * V[sz(p)][sz(j)];
          r -= V[sz(i)][sz(p)] * (B[sz(p)][sz(j)][sz(k)] + C[sz(p)][sz(j)][sz(k)]);
          r += V2[sz(i)][sz(p)] * N[sz(p)][sz(j)][sz(k)];
        }
        H[sz(i)][sz(j)][sz(k)] = r;
      }
    }
  }
  return H;
}

bool is_zero(const T3& t) {
  for (const auto& m : t) {
    for (const auto& row : m) {
      for (const auto& x : row) {
        if (!x.is_zero()) return false;
      }
    }
  }
  return true;
}

Vec char_poly(const Mat& V) {
  // Faddeev–LeVerrier: M_1 = I, f_k = -tr(V M_k)/k, M_{k+1} = V M_k + f_k I.
  const int n = static_cast<int>(V.size());
  Vec f;
  Mat M = identity_matrix(n);
  for (int k = 1; k <= n; ++k) {
    const Mat VM = mat_mul(V, M);
    RatFunc tr;
    for (int i = 0; i < n; ++i) tr += VM[sz(i)][sz(i)];
    const RatFunc fk = -tr * RatFunc(Rat(1, k));
    f.push_back(fk);
    if (k < n) {
      M = VM;
      for (int i = 0; i < n; ++i) M[sz(i)][sz(i)] += fk;
    }
  }
  return f;
}

ConditionReport linear_degeneracy_check(const Mat& V) {
  const int n = static_cast<int>(V.size());
  ConditionReport rep;
  rep.name = "linear degeneracy";
  const Vec f = char_poly(V);
  std::vector<Mat> powers{identity_matrix(n)};
  for (int k = 1; k <= n; ++k) powers.push_back(mat_mul(powers.back(), V));
  Mat grad = partials(f);  // grad[k-1][i] = ∂_i f_k
  // Standard contraction Σ_k ∇f_k V^{n-k}, and the printed one Σ_k ∇f_k V^{n+1-k}
  // (the latter is the former times V).
  for (int variant = 0; variant < 2; ++variant) {
    const char* fam = variant == 0 ? "gradient-contraction" : "gradient-contraction-shifted";
    for (int j = 0; j < n; ++j) {
      RatFunc r;
      for (int k = 1; k <= n; ++k) {
        const Mat& P = powers[sz(n - k + variant)];
        for (int i = 0; i < n; ++i) {
          if (!grad[sz(k - 1)][sz(i)].is_zero()) r += grad[sz(k - 1)][sz(i)] * P[sz(i)][sz(j)];
        }
      }
      rep.check(fam, {j}, r);
    }
  }
  return rep;
}

SquareRootResult char_poly_square_root(const Mat& V, int samples, std::uint64_t seed) {
  SquareRootResult out;
  const Vec f = char_poly(V);
  const int N = static_cast<int>(f.size());
  if (N % 2 != 0) return out;
  const int m = N / 2;
  // a[0] = 1; coefficient of λ^{N-t} in q² is Σ_{i+j=t} a_i a_j.
  Vec a(sz(m + 1));
  a[0] = 1;
  for (int t = 1; t <= m; ++t) {
    RatFunc s = f[sz(t - 1)];
    for (int i = 1; i < t; ++i) s -= a[sz(i)] * a[sz(t - i)];
    a[sz(t)] = s * RatFunc(Rat(1, 2));
  }
  for (int t = m + 1; t <= N; ++t) {
    RatFunc s;
    for (int i = t - m; i <= m; ++i) s += a[sz(i)] * a[sz(t - i)];
    if (!(s == f[sz(t - 1)])) return out;
  }
  out.is_square = true;
  out.q.assign(a.begin() + 1, a.end());

  int max_param = 0;
  for (const auto& c : out.q) {
    for (const auto& [mono, coef] : c.num().terms()) {
      for (auto id : mono.params()) max_param = std::max(max_param, static_cast<int>(id));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  const int n = static_cast<int>(V.size());
  int attempts = 0;
  while (out.samples < samples && attempts < 20 * samples + 20) {
    ++attempts;
    auto rnd = [&] {
      Rat x(num(rng), den(rng));
      x.canonicalize();
      return x;
    };
    std::vector<Rat> point;
    for (int i = 0; i < n; ++i) point.push_back(rnd());
    std::map<int, Poly> params;
    for (int id = 1; id <= max_param; ++id) params[id] = Poly(rnd());
    std::vector<Rat> coeffs{Rat(1)};
    try {
      for (const auto& c : out.q) {
        if (c.den().eval_fields(point).is_zero()) throw DivisionByZero();
        coeffs.push_back(c.eval_fields(point).substitute_params(params).constant_value());
      }
    } catch (const DivisionByZero&) {
      continue;
    }
    ++out.samples;
    if (count_real_roots(coeffs) == count_distinct_roots(coeffs)) ++out.real_samples;
  }
  return out;
}

Classification classify(const Mat& V, bool with_square_root, std::uint64_t seed) {
  Classification c;
  c.linear_degeneracy = linear_degeneracy_check(V);
  c.nijenhuis_zero = is_zero(nijenhuis(V));
  c.haantjes_zero = c.nijenhuis_zero || is_zero(haantjes(V));
  if (with_square_root) c.square_root = char_poly_square_root(V, 20, seed);
  return c;
}

}  // namespace hhokit
