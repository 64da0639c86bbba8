#pragma once

#include <stdexcept>
#include <string>

namespace facdio {

// Caller violated a documented precondition or supplied a bad config.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Factorization gave up within its budget. Never paired with a partial answer.
class UnfactoredError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal identity failed to hold; indicates an arithmetic bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace facdio
