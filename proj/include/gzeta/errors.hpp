#pragma once

#include <stdexcept>
#include <string>

namespace gzeta {

// Bad input or a violated precondition (CLI exit code 2).
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerically checked identity failed beyond its tolerance (CLI exit code 1).
class IdentityViolation : public std::runtime_error {
public:
    explicit IdentityViolation(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration or generation exceeded its configured work budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Iterative numerical routine did not converge.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gzeta
