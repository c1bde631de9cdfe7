#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace singchi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed curve file. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ValidationError : public Error {
 public:
  enum class Kind { ZeroBranch, NonzeroConstantTerm, NonPrimitiveBranch, DuplicateBranch, EmptyCurve,
                    NotPuiseuxForm };

  // Branch indices are 0-based; `second` is only meaningful for DuplicateBranch.
  ValidationError(Kind kind, std::size_t first, std::size_t second, const std::string& message)
      : Error(message), kind_(kind), first_(first), second_(second) {}

  Kind kind() const { return kind_; }
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  Kind kind_;
  std::size_t first_;
  std::size_t second_;
};

class NotStabilized : public Error {
 public:
  explicit NotStabilized(unsigned bound_tried)
      : Error("codimension increments did not stabilize within box bound " +
              std::to_string(bound_tried)),
        bound_tried_(bound_tried) {}

  unsigned bound_tried() const { return bound_tried_; }

 private:
  unsigned bound_tried_;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

class NotCoprime : public Error {
 public:
  using Error::Error;
};

// Thrown when two independent computations of the same quantity disagree,
// or when a contract such as Delta(0) = 1 fails. Always a bug upstream.
class InternalMismatch : public Error {
 public:
  using Error::Error;
};

class NormalizationViolation : public InternalMismatch {
 public:
  using InternalMismatch::InternalMismatch;
};

}  // namespace singchi
