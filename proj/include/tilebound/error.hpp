#pragma once

#include <stdexcept>
#include <string>

namespace tilebound {

/// Base class of the library's own failure kinds. Precondition violations on
/// plain inputs (singular matrix, bad dimension) use the std exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed pair specification (syntax or shape).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The (M, R) data does not form a standard pair.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A point budget or the exact coordinate range would be exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An invariant that holds mathematically was observed to fail.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tilebound
