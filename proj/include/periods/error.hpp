#pragma once

#include <stdexcept>
#include <string>

namespace periods {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs outside an operation's domain (non-prime p, non-unit argument, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Raised when the requested precision cannot be delivered. Carries the
/// absolute precision that is actually achievable.
class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, long achievable)
      : Error(what + " (achievable precision " + std::to_string(achievable) + ")"),
        achievable_(achievable) {}

  long achievable() const noexcept { return achievable_; }

 private:
  long achievable_;
};

/// A linear system whose pivot is indistinguishable from zero.
class SingularError : public Error {
 public:
  using Error::Error;
};

}  // namespace periods
