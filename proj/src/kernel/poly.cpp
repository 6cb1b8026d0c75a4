#include "hhokit/poly.hpp"

#include <algorithm>
#include <sstream>

#include "hhokit/errors.hpp"

namespace hhokit {

namespace {

void check_field_index(int i) {
  if (i < 0 || i >= kMaxFieldVars) {
    throw InputError("field variable index out of range: u" + std::to_string(i + 1));
  }
}

}  // namespace

// ---------------------------------------------------------------- Monomial

Monomial Monomial::field(int i, int exponent) {
  check_field_index(i);
  if (exponent < 0 || exponent > 255) throw Error("exponent overflow");
  Monomial m;
  m.u_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(exponent);
  return m;
}

Monomial Monomial::param(int id) {
  if (id <= 0 || id > 65535) throw InputError("parameter id out of range");
  Monomial m;
  m.c_[0] = static_cast<std::uint16_t>(id);
  return m;
}

int Monomial::u_degree() const {
  int d = 0;
  for (auto e : u_) d += e;
  return d;
}

int Monomial::param_degree() const {
  int d = 0;
  while (d < kMaxParamDegree && c_[static_cast<std::size_t>(d)] != 0) ++d;
  return d;
}

int Monomial::max_field() const {
  for (int i = kMaxFieldVars - 1; i >= 0; --i) {
    if (u_[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;
}

Monomial Monomial::field_part() const {
  Monomial m;
  m.u_ = u_;
  return m;
}

Monomial Monomial::param_part() const {
  Monomial m;
  m.c_ = c_;
  return m;
}

Monomial Monomial::with_exponent(int i, int e) const {
  check_field_index(i);
  if (e < 0 || e > 255) throw Error("exponent overflow");
  Monomial m = *this;
  m.u_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e);
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < u_.size(); ++i) {
    if (u_[i] > other.u_[i]) return false;
  }
  return c_ == other.c_ || !has_params();
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < m.u_.size(); ++i) {
    const int e = a.u_[i] + b.u_[i];
    if (e > 255) throw Error("exponent overflow");
    m.u_[i] = static_cast<std::uint8_t>(e);
  }
  const int da = a.param_degree();
  const int db = b.param_degree();
  if (da + db > kMaxParamDegree) throw Error("parameter degree overflow");
  std::merge(a.c_.begin(), a.c_.begin() + da, b.c_.begin(), b.c_.begin() + db,
             m.c_.begin());
  return m;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < m.u_.size(); ++i) {
    m.u_[i] = static_cast<std::uint8_t>(a.u_[i] - b.u_[i]);
  }
  if (b.has_params()) {
    // Only whole-parameter-part division is needed.
    m.c_ = {};
  } else {
    m.c_ = a.c_;
  }
  return m;
}

Monomial field_gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < m.u_.size(); ++i) m.u_[i] = std::min(a.u_[i], b.u_[i]);
  return m;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = 0; i < a.u_.size(); ++i) {
    if (auto c = a.u_[i] <=> b.u_[i]; c != 0) return c;
  }
  // Equal total and field degree imply equal parameter degree; a smaller id
  // at the first difference means a larger exponent for that id.
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] != b.c_[i]) return b.c_[i] <=> a.c_[i];
  }
  return std::strong_ordering::equal;
}

std::size_t Monomial::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto e : u_) h = (h ^ e) * 1099511628211ULL;
  for (auto e : c_) h = (h ^ e) * 1099511628211ULL;
  return static_cast<std::size_t>(h);
}

// -------------------------------------------------------------------- Poly

Poly::Poly(const Rat& c) {
  if (c != 0) terms_.emplace_back(Monomial{}, c);
}

Poly Poly::field(int i) { return monomial(Monomial::field(i)); }

Poly Poly::param(int id) { return monomial(Monomial::param(id)); }

Poly Poly::monomial(const Monomial& m, const Rat& c) {
  Poly p;
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first > b.first; });
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
    } else {
      if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first.is_one());
}

bool Poly::has_params() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.first.has_params(); });
}

Rat Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
  return 0;
}

Rat Poly::constant_value() const { return terms_.empty() ? Rat(0) : terms_.front().second; }

int Poly::degree() const { return terms_.empty() ? -1 : terms_.front().first.degree(); }

int Poly::degree_in(int i) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(i));
  return d;
}

int Poly::max_param_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.param_degree());
  return d;
}

int Poly::max_field() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.max_field());
  return d;
}

unsigned Poly::field_support() const {
  unsigned mask = 0;
  for (const auto& [m, c] : terms_) {
    for (int i = 0; i < kMaxFieldVars; ++i) {
      if (m.exponent(i) != 0) mask |= 1u << i;
    }
  }
  return mask;
}

Poly Poly::partial(int i) const {
  std::vector<Term> out;
  for (const auto& [m, c] : terms_) {
    const int e = m.exponent(i);
    if (e == 0) continue;
    out.emplace_back(m.with_exponent(i, e - 1), c * e);
  }
  // Differentiation in one variable preserves relative order only within
  // equal degree classes, so re-canonicalize.
  return from_terms(std::move(out));
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  Poly p = *this;
  const Rat lc = leading_coefficient();
  if (lc == 1) return p;
  for (auto& t : p.terms_) t.second /= lc;
  return p;
}

std::map<Monomial, Poly> Poly::split_params() const {
  std::map<Monomial, std::vector<Term>> buckets;
  for (const auto& [m, c] : terms_) buckets[m.param_part()].emplace_back(m.field_part(), c);
  std::map<Monomial, Poly> out;
  for (auto& [k, ts] : buckets) {
    // Terms inside one bucket keep their relative order.
    Poly p;
    p.terms_ = std::move(ts);
    out.emplace(k, std::move(p));
  }
  return out;
}

Poly Poly::eval_fields(std::span<const Rat> point) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Rat v = c;
    for (int i = 0; i < kMaxFieldVars; ++i) {
      const int e = m.exponent(i);
      if (e == 0) continue;
      if (static_cast<std::size_t>(i) >= point.size()) {
        throw InputError("evaluation point has too few coordinates");
      }
      Rat pw = 1;
      for (int k = 0; k < e; ++k) pw *= point[static_cast<std::size_t>(i)];
      v *= pw;
    }
    out.emplace_back(m.param_part(), v);
  }
  return from_terms(std::move(out));
}

Poly Poly::substitute_params(const std::map<int, Poly>& values) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    if (!m.has_params()) {
      out += Poly::monomial(m, c);
      continue;
    }
    Monomial rest = m.field_part();
    Poly factor(1);
    for (auto id : m.params()) {
      auto it = values.find(id);
      if (it == values.end()) {
        rest = rest * Monomial::param(id);
      } else {
        factor *= it->second;
      }
    }
    out += factor.mul_monomial(rest, c);
  }
  return out;
}

Poly Poly::substitute_fields(std::span<const Poly> values) const {
  Poly out;
  // Cache powers per variable.
  std::vector<std::vector<Poly>> powers(values.size());
  auto power = [&](std::size_t i, int e) -> const Poly& {
    auto& v = powers[i];
    if (v.empty()) v.emplace_back(1);
    while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * values[i]);
    return v[static_cast<std::size_t>(e)];
  };
  for (const auto& [m, c] : terms_) {
    Poly t = Poly::monomial(m.param_part(), c);
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

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

namespace {

template <typename Combine>
std::vector<Poly::Term> merge_terms(const std::vector<Poly::Term>& a,
                                    const std::vector<Poly::Term>& b, Combine sign) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const auto cmp = a[i].first <=> b[j].first;
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.emplace_back(b[j].first, sign(b[j].second));
      ++j;
    } else {
      Rat s = a[i].second + sign(b[j].second);
      if (s != 0) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.emplace_back(b[j].first, sign(b[j].second));
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge_terms(terms_, o.terms_, [](const Rat& c) { return c; });
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, [](const Rat& c) { return Rat(-c); });
  return *this;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
  } else if (c != 1) {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

Poly Poly::mul_monomial(const Monomial& m, const Rat& c) const {
  Poly p;
  if (c == 0) return p;
  p.terms_.reserve(terms_.size());
  for (const auto& [tm, tc] : terms_) p.terms_.emplace_back(tm * m, tc * c);
  // Multiplication by a monomial is order preserving for field parts; a
  // parameter factor can reorder ties, so sort when parameters are involved.
  if (m.has_params()) return from_terms(std::move(p.terms_));
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.terms_.empty() || b.terms_.empty()) return {};
  if (b.terms_.size() == 1) return a.mul_monomial(b.terms_[0].first, b.terms_[0].second);
  if (a.terms_.size() == 1) return b.mul_monomial(a.terms_[0].first, a.terms_[0].second);
  std::vector<Poly::Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.emplace_back(ma * mb, ca * cb);
  }
  return Poly::from_terms(std::move(out));
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.terms_[i].first <=> b.terms_[i].first; c != 0) return c;
    const int cc = cmp(a.terms_[i].second, b.terms_[i].second);
    if (cc != 0) return cc < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::size_t Poly::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& [m, c] : terms_) {
    h ^= m.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::string>{}(c.get_str()) + (h << 6) + (h >> 2);
  }
  return h;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (b.has_params()) throw ParameterInDenominator();
  if (a.is_zero()) return Poly{};
  if (b.is_constant()) return a * Rat(1 / b.constant_value());
  if (a.has_params()) {
    Poly q;
    for (const auto& [pm, part] : a.split_params()) {
      auto qp = divide_exact(part, b);
      if (!qp) return std::nullopt;
      q += qp->mul_monomial(pm, 1);
    }
    return q;
  }
  if (b.is_monomial()) {
    const auto& [bm, bc] = b.terms().front();
    Poly q;
    std::vector<Poly::Term> out;
    out.reserve(a.size());
    for (const auto& [m, c] : a.terms()) {
      if (!bm.divides(m)) return std::nullopt;
      out.emplace_back(m / bm, c / bc);
    }
    return Poly::from_terms(std::move(out));
  }
  const Monomial& lb = b.leading_monomial();
  const Rat& lcb = b.leading_coefficient();
  if (a.degree() < b.degree()) return std::nullopt;
  Poly r = a;
  std::vector<Poly::Term> quotient;
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    if (!lb.divides(lr)) return std::nullopt;
    const Monomial qm = lr / lb;
    const Rat qc = r.leading_coefficient() / lcb;
    r -= b.mul_monomial(qm, qc);
    quotient.emplace_back(qm, qc);
  }
  return Poly::from_terms(std::move(quotient));
}

// ---------------------------------------------------------------- printing

std::string to_string(const Rat& r) { return r.get_str(); }

std::string to_string(const Monomial& m) {
  std::string s;
  auto append = [&](const std::string& f) {
    if (!s.empty()) s += '*';
    s += f;
  };
  for (int i = 0; i < kMaxFieldVars; ++i) {
    const int e = m.exponent(i);
    if (e == 0) continue;
    std::string f = "u" + std::to_string(i + 1);
    if (e > 1) f += "^" + std::to_string(e);
    append(f);
  }
  auto ps = m.params();
  for (std::size_t k = 0; k < ps.size();) {
    std::size_t j = k;
    while (j < ps.size() && ps[j] == ps[k]) ++j;
    std::string f = "c" + std::to_string(ps[k]);
    if (j - k > 1) f += "^" + std::to_string(j - k);
    append(f);
    k = j;
  }
  return s.empty() ? "1" : s;
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rat a = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      s += a.get_str();
    } else if (a == 1) {
      s += to_string(m);
    } else {
      s += a.get_str() + "*" + to_string(m);
    }
  }
  return s;
}

}  // namespace hhokit
