#include "hhokit/diffpoly.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

#include "hhokit/errors.hpp"

namespace hhokit {

namespace {

int initial_jet_cap() {
  if (const char* s = std::getenv("HHOKIT_JET_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0 && v < 1000) return static_cast<int>(v);
  }
  return 12;
}

std::atomic<int>& cap_storage() {
  static std::atomic<int> cap{initial_jet_cap()};
  return cap;
}

bool is_one(const RatFunc& c) { return c.is_constant() && c.constant_value() == 1; }

}  // namespace

int jet_cap() { return cap_storage().load(std::memory_order_relaxed); }
void set_jet_cap(int cap) { cap_storage().store(cap, std::memory_order_relaxed); }

// ------------------------------------------------------------ DiffMonomial

DiffMonomial::DiffMonomial(const JetVar& v) {
  if (v.is_odd()) {
    odd_ = v;
  } else {
    if (v.xorder == 0) throw Error("internal: order-0 field variable as a jet factor");
    even_.push_back(v);
  }
}

int DiffMonomial::weight() const {
  int w = odd_ ? odd_->xorder : 0;
  for (const auto& v : even_) w += v.xorder;
  return w;
}

int DiffMonomial::max_order() const {
  int m = 0;
  for (const auto& v : even_) m = std::max<int>(m, v.xorder);
  if (odd_ && odd_->kind == JetKind::OddP) m = std::max<int>(m, odd_->xorder);
  return m;
}

int DiffMonomial::count(const JetVar& v) const {
  return static_cast<int>(std::count(even_.begin(), even_.end(), v));
}

DiffMonomial DiffMonomial::without_odd() const {
  DiffMonomial m = *this;
  m.odd_.reset();
  return m;
}

DiffMonomial DiffMonomial::without(const JetVar& v) const {
  DiffMonomial m = *this;
  auto it = std::find(m.even_.begin(), m.even_.end(), v);
  if (it == m.even_.end()) throw Error("internal: factor not present");
  m.even_.erase(it);
  return m;
}

DiffMonomial operator*(const DiffMonomial& a, const DiffMonomial& b) {
  if (a.odd_ && b.odd_) throw OddDegreeOverflow();
  DiffMonomial m;
  m.even_.resize(a.even_.size() + b.even_.size());
  std::merge(a.even_.begin(), a.even_.end(), b.even_.begin(), b.even_.end(), m.even_.begin());
  m.odd_ = a.odd_ ? a.odd_ : b.odd_;
  return m;
}

std::strong_ordering operator<=>(const DiffMonomial& a, const DiffMonomial& b) {
  if (auto c = a.weight() <=> b.weight(); c != 0) return c;
  const std::size_t na = a.even_.size() + (a.odd_ ? 1 : 0);
  const std::size_t nb = b.even_.size() + (b.odd_ ? 1 : 0);
  if (auto c = na <=> nb; c != 0) return c;
  if (auto c = a.even_ <=> b.even_; c != 0) return c;
  return a.odd_ <=> b.odd_;
}

// ---------------------------------------------------------------- DiffPoly

DiffPoly::DiffPoly(const RatFunc& c) {
  if (!c.is_zero()) terms_.emplace(DiffMonomial{}, c);
}

DiffPoly DiffPoly::term(const DiffMonomial& m, const RatFunc& c) {
  DiffPoly d;
  if (!c.is_zero()) d.terms_.emplace(m, c);
  return d;
}

DiffPoly DiffPoly::jet(const JetVar& v) {
  if (!v.is_odd() && v.xorder == 0) return RatFunc::field(v.index);
  return term(DiffMonomial(v), 1);
}

DiffPoly DiffPoly::u(int i, int k) { return jet(JetVar::u(i, k)); }

bool DiffPoly::is_coefficient() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

RatFunc DiffPoly::coefficient() const { return coefficient(DiffMonomial{}); }

RatFunc DiffPoly::coefficient(const DiffMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? RatFunc() : it->second;
}

bool DiffPoly::is_odd_free() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.odd_degree() == 0; });
}

bool DiffPoly::is_odd_linear() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.odd_degree() == 1; });
}

bool DiffPoly::has_params() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.has_params(); });
}

bool DiffPoly::has_r() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return t.first.odd() && t.first.odd()->kind == JetKind::OddR;
  });
}

int DiffPoly::max_order() const {
  int m = 0;
  for (const auto& [mon, c] : terms_) m = std::max(m, mon.max_order());
  return m;
}

int DiffPoly::max_field() const {
  int m = -1;
  for (const auto& [mon, c] : terms_) {
    m = std::max({m, c.num().max_field(), c.den().max_field()});
    for (const auto& v : mon.even()) m = std::max<int>(m, v.index);
    if (mon.odd() && mon.odd()->kind == JetKind::OddP) m = std::max<int>(m, mon.odd()->index);
  }
  return m;
}

void DiffPoly::add_term(const DiffMonomial& m, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffPoly DiffPoly::partial(const JetVar& v) const {
  DiffPoly out;
  if (!v.is_odd() && v.xorder == 0) {
    for (const auto& [m, c] : terms_) out.add_term(m, c.partial(v.index));
    return out;
  }
  for (const auto& [m, c] : terms_) {
    if (v.is_odd()) {
      if (m.odd() == v) out.add_term(m.without_odd(), c);
      continue;
    }
    const int e = m.count(v);
    if (e != 0) out.add_term(m.without(v), c * RatFunc(e));
  }
  return out;
}

DiffPoly DiffPoly::substitute_params(const std::map<int, Poly>& values) const {
  return map_coefficients([&](const RatFunc& c) { return c.substitute_params(values); });
}

DiffPoly DiffPoly::map_coefficients(const std::function<RatFunc(const RatFunc&)>& f) const {
  DiffPoly out;
  for (const auto& [m, c] : terms_) out.add_term(m, f(c));
  return out;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly d = *this;
  for (auto& [m, c] : d.terms_) c = -c;
  return d;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DiffPoly& DiffPoly::operator*=(const DiffPoly& o) { return *this = *this * o; }

DiffPoly& DiffPoly::operator*=(const RatFunc& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (is_one(c)) return *this;
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

DiffPoly DiffPoly::mul_term(const DiffMonomial& m, const RatFunc& c) const {
  DiffPoly out;
  if (c.is_zero()) return out;
  const bool unit = is_one(c);
  for (const auto& [tm, tc] : terms_) out.add_term(tm * m, unit ? tc : tc * c);
  return out;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly out;
  for (const auto& [mb, cb] : b.terms_) {
    for (const auto& [ma, ca] : a.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

DiffPoly DiffPoly::pow(unsigned e) const {
  DiffPoly r(1);
  for (unsigned k = 0; k < e; ++k) r *= *this;
  return r;
}

// ------------------------------------------------------------- derivations

DiffPoly apply(const Derivation& d, const DiffPoly& a) {
  DiffPoly out;
  std::map<int, DiffPoly> field_images;
  std::map<JetVar, DiffPoly> jet_images;
  auto field_image = [&](int i) -> const DiffPoly& {
    auto it = field_images.find(i);
    if (it == field_images.end()) it = field_images.emplace(i, d.field(i)).first;
    return it->second;
  };
  auto jet_image = [&](const JetVar& v) -> const DiffPoly& {
    auto it = jet_images.find(v);
    if (it == jet_images.end()) it = jet_images.emplace(v, d.jet(v)).first;
    return it->second;
  };
  auto add_product = [&](const DiffPoly& img, const DiffMonomial& m, const RatFunc& c) {
    const bool unit = is_one(c);
    for (const auto& [im, ic] : img.terms()) out.add_term(im * m, unit ? ic : ic * c);
  };

  for (const auto& [m, c] : a.terms()) {
    const unsigned support = c.num().field_support() | c.den().field_support();
    for (int i = 0; i < kMaxFieldVars; ++i) {
      if (!(support & (1u << i))) continue;
      const RatFunc dc = c.partial(i);
      if (!dc.is_zero()) add_product(field_image(i), m, dc);
    }
    const auto& ev = m.even();
    for (std::size_t k = 0; k < ev.size();) {
      std::size_t j = k;
      while (j < ev.size() && ev[j] == ev[k]) ++j;
      const int mult = static_cast<int>(j - k);
      add_product(jet_image(ev[k]), m.without(ev[k]), mult == 1 ? c : c * RatFunc(mult));
      k = j;
    }
    if (m.odd()) add_product(jet_image(*m.odd()), m.without_odd(), c);
  }
  return out;
}

DiffPoly total_x(const DiffPoly& a, const RxRule& rx) {
  const int cap = jet_cap();
  Derivation d;
  d.field = [](int i) { return DiffPoly::u(i, 1); };
  d.jet = [&](const JetVar& v) -> DiffPoly {
    if (v.kind == JetKind::OddR) {
      if (!rx) throw Error("unregistered nonlocal variable r" + std::to_string(v.index + 1));
      return rx(v.index);
    }
    if (v.xorder + 1 > cap) throw JetOrderExceeded(cap);
    return DiffPoly::jet(v.shifted(1));
  };
  return apply(d, a);
}

DiffPoly total_x(const DiffPoly& a, int times, const RxRule& rx) {
  DiffPoly r = a;
  for (int k = 0; k < times; ++k) r = total_x(r, rx);
  return r;
}

DiffPoly::TermMap collect(const DiffPoly& a) { return a.terms(); }

// ---------------------------------------------------------------- printing

std::string to_string(const JetVar& v) {
  std::string s;
  switch (v.kind) {
    case JetKind::Even: s = "u"; break;
    case JetKind::OddP: s = "p"; break;
    case JetKind::OddR: s = "r"; break;
  }
  s += std::to_string(v.index + 1);
  if (v.xorder == 1) s += "_x";
  else if (v.xorder == 2) s += "_xx";
  else if (v.xorder >= 3) s += "_x" + std::to_string(v.xorder);
  return s;
}

std::string to_string(const DiffMonomial& m) {
  std::string s;
  auto append = [&](const std::string& f) {
    if (!s.empty()) s += '*';
    s += f;
  };
  const auto& ev = m.even();
  for (std::size_t k = 0; k < ev.size();) {
    std::size_t j = k;
    while (j < ev.size() && ev[j] == ev[k]) ++j;
    std::string f = to_string(ev[k]);
    if (j - k > 1) f += "^" + std::to_string(j - k);
    append(f);
    k = j;
  }
  if (m.odd()) append(to_string(*m.odd()));
  return s.empty() ? "1" : s;
}

std::string to_string(const DiffPoly& a) {
  if (a.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    RatFunc coef = c;
    bool negative = false;
    if (coef.num().is_monomial() && coef.num().leading_coefficient() < 0) {
      negative = true;
      coef = -coef;
    }
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      s += to_string(coef);
      continue;
    }
    if (is_one(coef)) {
      s += to_string(m);
    } else if (coef.is_polynomial() && coef.num().is_monomial()) {
      s += to_string(coef) + "*" + to_string(m);
    } else {
      std::string cs = to_string(coef);
      if (coef.is_polynomial()) cs = "(" + cs + ")";
      s += cs + "*" + to_string(m);
    }
  }
  return s;
}

}  // namespace hhokit
