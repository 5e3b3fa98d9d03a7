#pragma once

#include <stdexcept>
#include <string>

namespace nshyp {

// Thrown when an operation's precondition on its inputs is not met.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a computation fails: non-finite values, non-convergence,
// exhausted step budgets, or a solution that has left its smooth regime.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nshyp
