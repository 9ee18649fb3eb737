// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace otamp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two distributions compared over different outcome sets.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Entropy or parameter premise of a lemma does not hold.
class PremiseViolation : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Exhaustive computation would exceed its configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class DeadlockError : public Error {
 public:
  using Error::Error;
};

class FunctionalityReuse : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] void throw_precondition(const std::string& what);

}  // namespace otamp
