#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qgb {

// Root of every error raised by the library. The CLI maps the concrete
// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ring parameter rejected (k < 2 or not squarefree).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Operation precondition violated by the input value.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

// Search or enumeration would exceed its configured budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class NumericFailure : public Error {
 public:
  NumericFailure(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// An invariant that only an arithmetic bug can break.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qgb
