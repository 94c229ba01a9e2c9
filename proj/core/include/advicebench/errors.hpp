#pragma once

#include <stdexcept>
#include <string>

namespace advicebench {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value cannot be represented in the requested advice encoding.
class EncodingError : public Error {
 public:
  using Error::Error;
};

// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A caller broke an operation's precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// The request exceeds the exhaustive-enumeration caps.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A reduction back-map produced an infeasible source output.
class ReductionError : public Error {
 public:
  using Error::Error;
};

// A lower-bound verifier cannot produce a witness (e.g. enough advice to
// separate every input).
class InapplicableError : public Error {
 public:
  using Error::Error;
};

}  // namespace advicebench
