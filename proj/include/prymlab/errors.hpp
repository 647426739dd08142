#pragma once

#include <stdexcept>
#include <string>

namespace prymlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's domain (bad root indices, rank mismatch, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Valid input the engine deliberately refuses (rank too large, positive base genus, ...).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data (JSON, product relation, scenario constraints).
class InputError : public Error {
 public:
  using Error::Error;
};

class GenerationFailure : public Error {
 public:
  using Error::Error;
};

/// A mathematical invariant that must hold for correct code failed.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace prymlab
