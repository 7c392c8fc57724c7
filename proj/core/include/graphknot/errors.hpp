#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphknot {

// Base for every failure raised by the library. Exceptions derived from
// NotDivisible, GluingMismatch and InvariantViolation indicate a broken
// theorem at a call site and are never expected in a correct run.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class ZeroPolynomial : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ColorCeilingExceeded : public Error {
 public:
  using Error::Error;
};

class NoFit : public Error {
 public:
  using Error::Error;
};

class PrecondViolated : public Error {
 public:
  using Error::Error;
};

class GluingMismatch : public Error {
 public:
  using Error::Error;
};

class UnknotLeaf : public Error {
 public:
  using Error::Error;
};

class AtSlope : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace graphknot
