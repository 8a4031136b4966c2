#pragma once

#include <stdexcept>
#include <string>

namespace hcross {

// Bad input: malformed parameters, violated preconditions, dimension mismatches.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation would exceed one of the configured size budgets.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hcross
