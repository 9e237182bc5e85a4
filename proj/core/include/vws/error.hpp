#pragma once

#include <stdexcept>
#include <string>

namespace vws {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or a blown-up time integration.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed experiment configuration; the message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] inline void fail_domain(const std::string& what) { throw DomainError(what); }

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace vws
