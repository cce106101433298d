#ifndef ADL_ERRORS_HPP
#define ADL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adl {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed formula construction: bad symbol, probability out of range,
// wrong operand count for an abbreviation.
class FormulaError : public Error {
 public:
  using Error::Error;
};

class ArityError : public FormulaError {
 public:
  using FormulaError::FormulaError;
};

class PathError : public FormulaError {
 public:
  using FormulaError::FormulaError;
};

// A model that violates its own invariants (schema, dangling role target,
// weights that do not sum to one, duplicate individual).
class ModelError : public Error {
 public:
  enum class Kind { Schema, DanglingReference, WeightSum, Duplicate };

  ModelError(Kind kind, const std::string& message)
      : Error(message), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// A symbol or individual that the model does not declare.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// File-system failure while reading or writing models and reports.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace adl

#endif  // ADL_ERRORS_HPP
