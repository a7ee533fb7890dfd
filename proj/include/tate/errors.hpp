#pragma once

#include <stdexcept>
#include <string>

namespace tate {

/// Malformed ring, polynomial, session or witness text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was invoked outside its documented preconditions.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured search or resolution budget ran out before an answer was found.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical identity that must hold by construction failed to verify.
/// Always a bug in this library, never a property of the input.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tate
