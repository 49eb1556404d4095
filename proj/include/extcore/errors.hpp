#pragma once

#include <stdexcept>
#include <string>

namespace extcore {

/// Malformed or inconsistent input (bad file, out-of-range vertex, mismatched trace).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called outside the domain where its result is defined.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Something that a theorem guarantees did not happen. Always a bug or a
/// hypothesis violation upstream, never a normal "no" answer.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Exhaustive enumeration would exceed the configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace extcore
