#include "hhokit/parse.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "hhokit/errors.hpp"

namespace hhokit {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opts) : s_(text), opts_(opts) {}

  DiffPoly parse() {
    skip_ws();
    if (pos_ == s_.size()) fail("empty expression");
    DiffPoly e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }

  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  DiffPoly expr() {
    DiffPoly e = term();
    while (true) {
      if (accept('+')) {
        e += term();
      } else if (accept('-')) {
        e -= term();
      } else {
        return e;
      }
    }
  }

  DiffPoly term() {
    DiffPoly e = unary();
    while (true) {
      if (accept('*')) {
        const std::size_t at = pos_;
        DiffPoly f = unary();
        try {
          e *= f;
        } catch (const OddDegreeOverflow&) {
          fail_at("product of two odd variables", at);
        }
      } else if (accept('/')) {
        skip_ws();
        const std::size_t at = pos_;
        DiffPoly d = unary();
        if (!d.is_coefficient()) fail_at("division by an expression containing jets", at);
        const RatFunc c = d.coefficient();
        if (c.is_zero()) fail_at("division by zero", at);
        if (c.has_params()) fail_at("parameters may not appear in a denominator", at);
        e *= c.inverse();
      } else {
        return e;
      }
    }
  }

  DiffPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  DiffPoly power() {
    DiffPoly base = atom();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t at = pos_;
    const long e = integer();
    if (e > 1000) fail_at("exponent too large", at);
    if (e >= 2 && !base.is_odd_free()) fail_at("power of an odd variable", at);
    if (base.is_coefficient()) return base.coefficient().pow(static_cast<int>(e));
    return base.pow(static_cast<unsigned>(e));
  }

  long integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer");
    if (pos_ - start > 6) fail_at("integer exponent too large", start);
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  DiffPoly atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      DiffPoly e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(Rat(mpz_class(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      return identifier(std::string(s_.substr(start, pos_ - start)), start);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  DiffPoly identifier(std::string name, std::size_t at) {
    if (auto it = opts_.aliases.find(name); it != opts_.aliases.end()) name = it->second;
    const char kind = name[0];
    std::size_t i = 1;
    std::size_t digits_start = i;
    while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i]))) ++i;
    int index = 1;
    if (i > digits_start) {
      if (i - digits_start > 4) fail_at("index too large in '" + name + "'", at);
      index = std::stoi(name.substr(digits_start, i - digits_start));
    } else if (kind == 'c') {
      fail_at("parameter needs an index: '" + name + "'", at);
    }
    int order = 0;
    if (i < name.size()) {
      if (name[i] != '_' || i + 1 >= name.size() || name[i + 1] != 'x') {
        fail_at("unknown identifier '" + name + "'", at);
      }
      const std::string suffix = name.substr(i + 1);
      if (suffix == "x") {
        order = 1;
      } else if (suffix == "xx") {
        order = 2;
      } else {
        const std::string digits = suffix.substr(1);
        if (digits.empty() || digits.size() > 3 ||
            !std::all_of(digits.begin(), digits.end(),
                         [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
          fail_at("malformed jet suffix in '" + name + "'", at);
        }
        order = std::stoi(digits);
      }
    }
    if (index < 1) fail_at("indices start at 1 in '" + name + "'", at);
    if (order > jet_cap()) fail_at("jet order above the cap in '" + name + "'", at);
    switch (kind) {
      case 'u':
      case 'p':
        if (opts_.n > 0 && index > opts_.n) {
          fail_at("index exceeds n = " + std::to_string(opts_.n) + " in '" + name + "'", at);
        }
        if (index > kMaxFieldVars) fail_at("at most 8 dependent variables", at);
        return kind == 'u' ? DiffPoly::u(index - 1, order) : DiffPoly::p(index - 1, order);
      case 'r':
        if (order != 0) fail_at("nonlocal variables carry no jets: '" + name + "'", at);
        return DiffPoly::r(index - 1);
      case 'c':
        if (order != 0) fail_at("parameters carry no jets: '" + name + "'", at);
        return RatFunc::param(index);
      default:
        fail_at("unknown identifier '" + name + "'", at);
    }
  }

  std::string_view s_;
  const ParseOptions& opts_;
  std::size_t pos_ = 0;
};

}  // namespace

DiffPoly parse_diffpoly(std::string_view text, const ParseOptions& opts) {
  return Parser(text, opts).parse();
}

RatFunc parse_ratfunc(std::string_view text, const ParseOptions& opts) {
  DiffPoly d = parse_diffpoly(text, opts);
  if (!d.is_coefficient()) {
    throw InputError("expected a function of u1..un only: '" + std::string(text) + "'");
  }
  return d.coefficient();
}

}  // namespace hhokit
