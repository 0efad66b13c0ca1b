#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial text. `position()` is the 0-based byte offset.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Input data that violates a type invariant (dimension mismatch, zero generator, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// A requested second jet does not satisfy the algebraic jet system.
class InadmissibleJet : public Error {
public:
  using Error::Error;
};

/// A certificate failed exact re-verification.
class CertificateError : public Error {
public:
  using Error::Error;
};

} // namespace sot
