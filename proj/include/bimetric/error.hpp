#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bimetric {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor shape problems: rank or dimension out of range, mismatched operands.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class VarianceError : public Error {
 public:
  using Error::Error;
};

/// Malformed expression or manifest. `offset` is a byte offset into the
/// offending source text (npos when not applicable).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset = std::string::npos)
      : Error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Evaluation left the domain of a function or produced a non-finite value.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, std::size_t offset = std::string::npos)
      : Error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// A point (or finite-difference stencil point) fails a field's domain guard.
class SingularPointError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefiniteError : public Error {
 public:
  using Error::Error;
};

class ChartMismatchError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration (wrong metric count, empty sample region, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace bimetric
