#include <algorithm>

#include "hhokit/errors.hpp"
#include "hhokit/geometry.hpp"

namespace hhokit {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

}  // namespace

Mat zero_matrix(int n) { return Mat(sz(n), Vec(sz(n))); }

Mat identity_matrix(int n) {
  Mat m = zero_matrix(n);
  for (int i = 0; i < n; ++i) m[sz(i)][sz(i)] = 1;
  return m;
}

T3 zero_t3(int n) { return T3(sz(n), zero_matrix(n)); }

Mat mat_mul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.empty() ? 0 : b[0].size();
  Mat out(n, Vec(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return out;
}

Mat mat_add(const Mat& a, const Mat& b) {
  Mat out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] += b[i][j];
  }
  return out;
}

Mat mat_scale(const Mat& a, const RatFunc& s) {
  Mat out = a;
  for (auto& row : out) {
    for (auto& x : row) x *= s;
  }
  return out;
}

Mat transpose(const Mat& a) {
  if (a.empty()) return a;
  Mat out(a[0].size(), Vec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
  }
  return out;
}

RatFunc determinant(const Mat& a) {
  Mat m = a;
  const std::size_t n = m.size();
  RatFunc det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return RatFunc();
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    const RatFunc inv = m[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      const RatFunc f = m[r][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

Mat inverse(const Mat& a, const std::string& what) {
  const std::size_t n = a.size();
  Mat m = a;
  Mat inv = identity_matrix(static_cast<int>(n));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) throw DegenerateMetric(what);
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    const RatFunc s = m[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      const RatFunc f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

Mat substitute_params(const Mat& a, const std::map<int, Poly>& values) {
  Mat out = a;
  for (auto& row : out) {
    for (auto& x : row) x = x.substitute_params(values);
  }
  return out;
}

T3 partials(const Mat& a) {
  const int n = static_cast<int>(a.size());
  T3 out(a.size(), Mat(a.size(), Vec(sz(n))));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      for (int k = 0; k < n; ++k) out[i][j][sz(k)] = a[i][j].partial(k);
    }
  }
  return out;
}

Mat partials(const Vec& v) {
  const int n = static_cast<int>(v.size());
  Mat out(v.size(), Vec(sz(n)));
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (int k = 0; k < n; ++k) out[i][sz(k)] = v[i].partial(k);
  }
  return out;
}

Mat Metric::upper() const {
  return variance == Variance::Upper ? g : inverse(g, "det g = 0");
}

Mat Metric::lower() const {
  return variance == Variance::Lower ? g : inverse(g, "det g = 0");
}

T3 christoffel(const Mat& g_lower, const Connection& G) {
  const int n = static_cast<int>(g_lower.size());
  T3 out = zero_t3(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        RatFunc s;
        for (int t = 0; t < n; ++t) s -= g_lower[sz(j)][sz(t)] * G.gamma[sz(t)][sz(i)][sz(k)];
        out[sz(i)][sz(j)][sz(k)] = s;
      }
    }
  }
  return out;
}

VelocityMatrix VelocityMatrix::from_flux(Vec flux) {
  VelocityMatrix v;
  v.V = jacobian(flux, static_cast<int>(flux.size()));
  v.flux = std::move(flux);
  return v;
}

void ConditionReport::family(const std::string& f) {
  if (std::find(families.begin(), families.end(), f) == families.end()) families.push_back(f);
}

void ConditionReport::check(const std::string& f, std::vector<int> indices, const RatFunc& v) {
  family(f);
  if (v.is_zero()) return;
  for (int& i : indices) ++i;
  residuals.push_back({f, std::move(indices), v});
  pass = false;
}

void ConditionReport::merge(const ConditionReport& other) {
  for (const auto& f : other.families) family(f);
  residuals.insert(residuals.end(), other.residuals.begin(), other.residuals.end());
  pass = pass && other.pass;
  if (!other.note.empty()) note += (note.empty() ? "" : "; ") + other.note;
}

bool ConditionReport::family_passes(const std::string& f) const {
  return std::none_of(residuals.begin(), residuals.end(),
                      [&](const ConditionResidual& r) { return r.family == f; });
}

std::vector<RatFunc> ConditionReport::equations() const {
  std::vector<RatFunc> out;
  out.reserve(residuals.size());
  for (const auto& r : residuals) out.push_back(r.value);
  return out;
}

}  // namespace hhokit
