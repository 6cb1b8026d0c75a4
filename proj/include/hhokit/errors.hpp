#pragma once

#include <stdexcept>
#include <string>

namespace hhokit {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// A product of two odd factors was requested; the calculus is odd-linear.
class OddDegreeOverflow : public Error {
 public:
  OddDegreeOverflow() : Error("odd degree overflow") {}
};

class JetOrderExceeded : public Error {
 public:
  explicit JetOrderExceeded(int cap)
      : Error("jet order cap exceeded (cap " + std::to_string(cap) + ")") {}
};

/// A parameter appears non-linearly where a linear occurrence is required.
class NonlinearAnsatz : public Error {
 public:
  NonlinearAnsatz() : Error("nonlinear ansatz") {}
};

class ParameterInDenominator : public Error {
 public:
  ParameterInDenominator() : Error("parameters may not appear in a denominator") {}
};

class DegenerateMetric : public Error {
 public:
  explicit DegenerateMetric(const std::string& what)
      : Error("degenerate metric: " + what) {}
};

/// Malformed or inconsistent user input (surfaces as exit code 2 in the CLI).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, int line, int column)
      : InputError("parse error at " + std::to_string(line) + ":" +
                   std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace hhokit
