#pragma once

#include <stdexcept>
#include <string>

namespace fncalc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands disagree on variable count, dimension or arity.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An exact computation would leave the polynomial ring (e.g. a matrix
// inverse whose determinant is not a nonzero constant).
class NonPolynomialError : public Error {
 public:
  using Error::Error;
};

// A geometric object fails one of its defining axioms. `what()` names the
// axiom and the first offending coefficient.
class ValidationError : public Error {
 public:
  ValidationError(std::string axiom, std::string witness)
      : Error(axiom + ": " + witness), axiom_(std::move(axiom)), witness_(std::move(witness)) {}

  const std::string& axiom() const noexcept { return axiom_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string axiom_;
  std::string witness_;
};

// Malformed model input. The message starts with the JSON path of the field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace fncalc
