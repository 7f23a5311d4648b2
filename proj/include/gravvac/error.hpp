#pragma once

#include <stdexcept>
#include <string>

namespace gravvac {

/// Bad input: violated precondition or parameter invariant.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical invariant (trace, Hermiticity, positivity, ...) was broken.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative procedure did not reach its tolerance.
class ConvergenceFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gravvac
