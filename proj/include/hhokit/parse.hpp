#pragma once

#include <map>
#include <string>
#include <string_view>

#include "hhokit/diffpoly.hpp"

namespace hhokit {

struct ParseOptions {
  /// Number of dependent variables; indices above it are rejected. 0 means
  /// unchecked.
  int n = 0;
  /// Extra identifier spellings, e.g. {"u", "u1"} or {"b1_x", "u1"}.
  std::map<std::string, std::string> aliases;
};

/// Parses the expression grammar: u1, u1_x, u1_xx, u1_x3, p1, p1_x, r1, c1,
/// integers, + - * / ^ and parentheses. Bare u, p, r stand for index 1.
/// Division is allowed by parameter-free functions of u only.
DiffPoly parse_diffpoly(std::string_view text, const ParseOptions& opts = {});

/// Parses an expression that must not contain jets or odd variables.
RatFunc parse_ratfunc(std::string_view text, const ParseOptions& opts = {});

}  // namespace hhokit
