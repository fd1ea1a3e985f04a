#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace gconn {

/// Base class of every error thrown by the engine.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in an expression, form, derivation or manifest source text.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t offset, std::string expected)
      : Error(what + " at offset " + std::to_string(offset) +
              (expected.empty() ? "" : " (expected " + expected + ")")),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

private:
  std::size_t offset_;
  std::string expected_;
};

/// A name that is neither a coordinate, a known function, nor a declared entity.
class UnknownIdentifier : public Error {
public:
  explicit UnknownIdentifier(std::string name)
      : Error("unknown identifier '" + name + "'"), name_(std::move(name)) {}

  const std::string& name() const { return name_; }

private:
  std::string name_;
};

/// Pointwise evaluation hit a NaN/Inf subterm (division by zero, log of a
/// nonpositive value, fractional power of a negative base, ...).
class EvalSingularity : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// An operation that needs a definite parity was handed a mixed-parity value.
class NonHomogeneous : public Error {
public:
  using Error::Error;
};

class ParityViolation : public Error {
public:
  using Error::Error;
};

class SingularMetric : public Error {
public:
  using Error::Error;
};

class FrameNotOrthonormal : public Error {
public:
  using Error::Error;
};

class NotInDistribution : public Error {
public:
  using Error::Error;
};

class NotIntegrable : public Error {
public:
  using Error::Error;
};

class NonConstantStructure : public Error {
public:
  using Error::Error;
};

class PreconditionViolated : public Error {
public:
  using Error::Error;
};

/// Manifest validation failure; carries the offending field path.
class ValidationError : public Error {
public:
  ValidationError(std::string field, const std::string& what)
      : Error(what + " [" + field + "]"), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

private:
  std::string field_;
};

class ExpressionBlowup : public Error {
public:
  using Error::Error;
};

}  // namespace gconn
