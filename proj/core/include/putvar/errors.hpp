#pragma once

#include <stdexcept>
#include <string>

namespace putvar {

// Input violates a documented precondition or type invariant.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// No admissible hedge exists under the given budget.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The VaR equation could not be bracketed.
class UnsolvableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace putvar
